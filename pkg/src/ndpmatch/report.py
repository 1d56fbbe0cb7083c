"""Occurrences and match reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from .distance import INF, rank_distance
from .nettree import NodeEdgeStats


@dataclass(frozen=True)
class Occurrence:
    positions: Tuple[int, ...]   # 1-based, one per pattern level
    gdist: int

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(self.positions))

    def __len__(self) -> int:
        return len(self.positions)

    def overlaps(self, other: "Occurrence") -> bool:
        return any(a == b for a, b in zip(self.positions, other.positions))

    def __str__(self) -> str:
        return "<" + ", ".join(map(str, self.positions)) + ">"


class OccurrenceSet:
    """Occurrences in discovery order, with a position-sorted view."""

    def __init__(self, occurrences: Iterable[Occurrence] = ()):
        self.occurrences: List[Occurrence] = list(occurrences)

    def __len__(self) -> int:
        return len(self.occurrences)

    def __iter__(self):
        return iter(self.occurrences)

    def __getitem__(self, idx):
        return self.occurrences[idx]

    def __eq__(self, other) -> bool:
        if isinstance(other, OccurrenceSet):
            return self.occurrences == other.occurrences
        return NotImplemented

    def __repr__(self) -> str:
        return "OccurrenceSet(" + ", ".join(map(str, self.occurrences)) + ")"

    def append(self, occ: Occurrence) -> None:
        self.occurrences.append(occ)

    def sorted(self) -> List[Occurrence]:
        return sorted(self.occurrences, key=lambda o: o.positions)

    def position_set(self) -> set:
        return {o.positions for o in self.occurrences}

    def is_nonoverlapping(self) -> bool:
        seen = set()
        for occ in self.occurrences:
            for j, pos in enumerate(occ.positions):
                if (j, pos) in seen:
                    return False
                seen.add((j, pos))
        return True


def deviation_profile(s, p, occ: Occurrence) -> List[int]:
    """Ordinal symbol distance at each aligned position, whatever metric matched."""
    pranks = p.ranks(s.alphabet)
    return [rank_distance(s.ranks[pos - 1], pr) for pos, pr in zip(occ.positions, pranks)]


@dataclass
class MatchReport:
    algorithm: str
    occurrences: OccurrenceSet
    stats: NodeEdgeStats = field(default_factory=NodeEdgeStats)
    elapsed: float = 0.0
    params: Dict[str, Any] = field(default_factory=dict)
    deviations: List[List[int]] = field(default_factory=list)
    deviation_limit: Optional[int] = None
    retries: int = 0
    source_id: str = ""

    @property
    def occ_count(self) -> int:
        return len(self.occurrences)

    @property
    def max_deviations(self) -> List[int]:
        return [max(d) if d else 0 for d in self.deviations]

    @property
    def flagged(self) -> List[int]:
        """Indices of occurrences whose ordinal deviation exceeds the limit."""
        if self.deviation_limit is None:
            return []
        return [k for k, mx in enumerate(self.max_deviations) if mx > self.deviation_limit]

    def attach_deviations(self, s, p) -> "MatchReport":
        self.deviations = [deviation_profile(s, p, occ) for occ in self.occurrences]
        return self

    def to_dict(self) -> Dict[str, Any]:
        flagged = set(self.flagged)
        occs = []
        for k, occ in enumerate(self.occurrences):
            dev = self.deviations[k] if k < len(self.deviations) else []
            occs.append({
                "positions": list(occ.positions),
                "gdist": occ.gdist,
                "deviations": [None if d >= INF else d for d in dev],
                "flagged": k in flagged,
            })
        return {
            "algorithm": self.algorithm,
            "source_id": self.source_id,
            "params": dict(self.params),
            "occ_count": self.occ_count,
            "occurrences": occs,
            "stats": self.stats.as_dict(),
            "elapsed_ms": round(self.elapsed * 1000.0, 6),
            "retries": self.retries,
        }
