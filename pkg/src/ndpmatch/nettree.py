"""The local approximate Nettree.

Level ``j`` (1-based) holds one node per sequence position ``i`` whose symbol
is within ``delta`` of pattern symbol ``p_j``. Each node stores its symbol
distance and its minimal root distance (MRD): the smallest summed distance
over all paths from the node up to a level-1 root. A parent at level ``j-1``
is any node whose position satisfies the ``j-1``-th gap constraint.

With pruning on, nodes whose MRD exceeds ``gamma`` are dropped, and so are
edges whose parent MRD plus child distance exceeds ``gamma``; neither can lie
on a path satisfying the global constraint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, NamedTuple, Optional

from .distance import INF, Metric, rank_distance, sat_add
from .ingest import RankedSequence
from .pattern import Pattern


class NodeId(NamedTuple):
    level: int
    pos: int

    def __str__(self) -> str:
        return f"n_{self.level}^{self.pos}"


class TreeError(RuntimeError):
    pass


class Node:
    __slots__ = ("level", "pos", "delta", "mrd", "parents", "children",
                 "alive", "pass_mrd", "pass_id")

    def __init__(self, level: int, pos: int, delta: int, mrd: int):
        self.level = level
        self.pos = pos
        self.delta = delta
        self.mrd = mrd
        self.parents: List["Node"] = []
        self.children: List["Node"] = []
        self.alive = True
        # per-search scratch, see matcher.reach_leaf
        self.pass_mrd = INF
        self.pass_id = -1

    @property
    def id(self) -> NodeId:
        return NodeId(self.level, self.pos)

    def __repr__(self) -> str:
        return f"Node({self.level}, {self.pos}, delta={self.delta}, mrd={self.mrd})"


@dataclass
class NodeEdgeStats:
    total_nodes: int = 0
    total_edges: int = 0
    pruned_nodes: int = 0
    pruned_edges: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {
            "total_nodes": self.total_nodes,
            "total_edges": self.total_edges,
            "pruned_nodes": self.pruned_nodes,
            "pruned_edges": self.pruned_edges,
        }


class LANTree:
    """Leveled node store plus the parameters it was built with.

    ``levels[j-1]`` maps position to node for level ``j`` and is kept in
    ascending position order (insertion order during the left-to-right build).
    """

    def __init__(self, pattern: Pattern, n: int, delta: int, gamma: int,
                 metric: Metric, prune: bool):
        self.pattern = pattern
        self.n = n
        self.m = pattern.m
        self.delta = delta
        self.gamma = gamma
        self.metric = metric
        self.prune = prune
        self.levels: List[Dict[int, Node]] = [{} for _ in range(pattern.m)]
        self.counters = NodeEdgeStats()
        self.pass_id = 0
        self.retries = 0

    def node(self, level: int, pos: int) -> Optional[Node]:
        return self.levels[level - 1].get(pos)

    def __contains__(self, nid) -> bool:
        level, pos = nid
        return pos in self.levels[level - 1]

    def roots(self) -> List[Node]:
        return list(self.levels[0].values())

    def leaves(self) -> List[Node]:
        return list(self.levels[-1].values())

    def nodes(self) -> Iterator[Node]:
        for level in self.levels:
            yield from level.values()

    def edge_count(self) -> int:
        return sum(len(nd.children) for nd in self.nodes())

    def remove_node(self, nd: Node) -> None:
        if not nd.alive:
            raise TreeError(f"{nd.id} already deleted")
        for par in nd.parents:
            par.children.remove(nd)
        for ch in nd.children:
            ch.parents.remove(nd)
        nd.parents = []
        nd.children = []
        nd.alive = False
        del self.levels[nd.level - 1][nd.pos]

    def dump(self) -> str:
        """Text rendering, one line per level: ``pos(delta,mrd)<-[parents]``."""
        lines = []
        for j, level in enumerate(self.levels, start=1):
            cells = []
            for nd in level.values():
                mrd = "inf" if nd.mrd >= INF else str(nd.mrd)
                cell = f"{nd.pos}({nd.delta},{mrd})"
                if nd.parents:
                    cell += "<-[" + ",".join(str(p.pos) for p in nd.parents) + "]"
                cells.append(cell)
            lines.append(f"{j}: " + " ".join(cells))
        return "\n".join(lines)


def build(s: RankedSequence, p: Pattern, delta: int, gamma: int,
          metric: Metric = Metric.ORDINAL, prune: bool = True) -> LANTree:
    """Create the local approximate Nettree for ``s`` and ``p``.

    Positions are scanned left to right and levels top-down. A node at level
    ``j >= 2`` is materialized only when it has at least one gap-eligible
    parent; its MRD is the minimum parent MRD plus its own distance.

    ``total_*`` counters are the structural size after the build.
    ``pruned_nodes`` counts nodes dropped for MRD > gamma (roots included);
    ``pruned_edges`` counts gap-eligible parent/child pairs between
    materialized nodes that were not linked, including those of pruned nodes.
    """
    if delta < 0 or gamma < 0:
        raise ValueError("delta and gamma must be non-negative")
    pranks = p.ranks(s.alphabet)
    t = LANTree(p, s.n, delta, gamma, metric, prune)
    stats = t.counters
    mins, maxs = p.mins, p.maxs
    levels = t.levels

    for i, r in enumerate(s.ranks, start=1):
        for j in range(1, p.m + 1):
            d = rank_distance(r, pranks[j - 1], metric)
            if d > delta:
                continue
            if j == 1:
                if prune and d > gamma:
                    stats.pruned_nodes += 1
                    continue
                levels[0][i] = Node(1, i, d, d)
                stats.total_nodes += 1
                continue

            prev = levels[j - 2]
            lo = max(1, i - maxs[j - 2] - 1)
            hi = i - mins[j - 2] - 1
            parents = [prev[q] for q in range(lo, hi + 1) if q in prev]
            if not parents:
                continue
            mrd = sat_add(min(par.mrd for par in parents), d)
            if prune and mrd > gamma:
                stats.pruned_nodes += 1
                stats.pruned_edges += len(parents)
                continue
            nd = Node(j, i, d, mrd)
            for par in parents:
                if prune and par.mrd + d > gamma:
                    stats.pruned_edges += 1
                    continue
                nd.parents.append(par)
                par.children.append(nd)
                stats.total_edges += 1
            levels[j - 1][i] = nd
            stats.total_nodes += 1
    return t


def delete_occurrence(t: LANTree, occ) -> None:
    """Unlink the ``m`` nodes of ``occ`` (one per level) and their edges.

    No other node is removed, even if it is left without parents or children.
    """
    positions = getattr(occ, "positions", occ)
    if len(positions) != t.m:
        raise TreeError(f"occurrence has {len(positions)} positions, tree has {t.m} levels")
    nodes = []
    for j, pos in enumerate(positions, start=1):
        nd = t.node(j, pos)
        if nd is None:
            raise TreeError(f"n_{j}^{pos} is not a live node")
        nodes.append(nd)
    for nd in nodes:
        t.remove_node(nd)


def stats(t: LANTree) -> NodeEdgeStats:
    c = t.counters
    return NodeEdgeStats(c.total_nodes, c.total_edges, c.pruned_nodes, c.pruned_edges)
