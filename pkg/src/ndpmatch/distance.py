"""Ordered alphabets and the character/string distances used for matching.

All distances are exact integers. Symbols outside the alphabet may be
carried through a sequence in lenient mode; they receive rank ``UNKNOWN``
and sit at distance ``INF`` from everything, so they never match.
"""

from __future__ import annotations

import enum
import string
from typing import Dict, Iterable, Sequence, Tuple

# Saturating "infinite" distance. Larger than any legal threshold.
INF = 1 << 30
UNKNOWN = -1


class AlphabetError(ValueError):
    pass


class Metric(str, enum.Enum):
    ORDINAL = "ordinal"
    INDICATOR = "indicator"

    @classmethod
    def parse(cls, name: str) -> "Metric":
        name = name.lower()
        if name == "hamming":
            return cls.INDICATOR
        return cls(name)


class Alphabet:
    """Ordered symbol set; a symbol's rank is its 0-based position."""

    __slots__ = ("symbols", "rank")

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        if not symbols:
            raise AlphabetError("alphabet is empty")
        for s in symbols:
            if len(s) != 1:
                raise AlphabetError(f"alphabet symbols must be single characters, got {s!r}")
        if len(set(symbols)) != len(symbols):
            raise AlphabetError("alphabet symbols must be distinct")
        self.symbols: Tuple[str, ...] = symbols
        self.rank: Dict[str, int] = {s: i for i, s in enumerate(symbols)}

    @classmethod
    def from_string(cls, text: str) -> "Alphabet":
        return cls(text.strip())

    @classmethod
    def from_file(cls, path) -> "Alphabet":
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    return cls.from_string(line)
        raise AlphabetError(f"{path}: no alphabet line found")

    @classmethod
    def upper(cls, size: int = 26) -> "Alphabet":
        return cls(string.ascii_uppercase[:size])

    @classmethod
    def lower(cls, size: int = 26) -> "Alphabet":
        return cls(string.ascii_lowercase[:size])

    @classmethod
    def infer(cls, *texts: str) -> "Alphabet":
        """Pick ``a-z`` or ``A-Z`` from the letters present in ``texts``."""
        letters = {c for t in texts for c in t if c.isalpha()}
        if letters and all(c in string.ascii_lowercase for c in letters):
            return cls.lower()
        if all(c in string.ascii_uppercase for c in letters):
            return cls.upper()
        raise AlphabetError("mixed-case input; pass an explicit alphabet")

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, symbol) -> bool:
        return symbol in self.rank

    def __iter__(self):
        return iter(self.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"Alphabet({''.join(self.symbols)!r})"

    def rank_of(self, symbol: str, strict: bool = True) -> int:
        try:
            return self.rank[symbol]
        except KeyError:
            if strict:
                raise AlphabetError(f"symbol {symbol!r} is not in alphabet") from None
            return UNKNOWN


def rank_distance(x: int, y: int, metric: Metric = Metric.ORDINAL) -> int:
    if x < 0 or y < 0:
        return INF
    if metric is Metric.INDICATOR:
        return 0 if x == y else 1
    return abs(x - y)


def delta_distance(c: str, d: str, alphabet: Alphabet, metric: Metric = Metric.ORDINAL) -> int:
    """Distance between two symbols: ``|rank(c) - rank(d)|``, or 0/1 mismatch."""
    return rank_distance(alphabet.rank_of(c), alphabet.rank_of(d), metric)


def gamma_distance(
    x: Sequence[str], y: Sequence[str], alphabet: Alphabet, metric: Metric = Metric.ORDINAL
) -> int:
    """Sum of per-position symbol distances between equal-length strings."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    return sum(delta_distance(c, d, alphabet, metric) for c, d in zip(x, y))


def sat_add(a: int, b: int) -> int:
    s = a + b
    return INF if s >= INF else s
