"""Nonoverlapping (delta, gamma)-approximate matching over the Nettree.

``net_ndp`` scans roots from right to left. For each root it recomputes MRDs
inside that root's sub-Nettree (``reach_leaf``), takes the rightmost absolute
leaf still within ``gamma``, walks back to the root by always choosing the
rightmost parent whose fresh MRD fits the remaining budget
(``rightmost_occurrence``), and deletes the resulting occurrence.

``netlap_variant`` and ``greedy_leftmost`` are weaker baselines kept for
comparison.
"""

from __future__ import annotations

import time
from typing import List, Optional

from . import kernel
from .distance import Metric, rank_distance
from .ingest import RankedSequence
from .nettree import LANTree, Node, NodeEdgeStats, NodeId, TreeError, build, delete_occurrence
from .pattern import Pattern
from .report import MatchReport, Occurrence, OccurrenceSet

ENGINES = ("kernel", "python", "tree")


class StaleMRDError(TreeError):
    """Raised when ``rightmost_occurrence`` runs on MRDs from another pass."""


def _params(p, delta, gamma, metric, prune):
    params = {
        "pattern": str(p),
        "delta": delta,
        "gamma": gamma,
        "metric": Metric(metric).value,
        "prune": prune,
    }
    if Metric(metric) is Metric.INDICATOR:
        # indicator metric with delta=1 is a Hamming bound of gamma mismatches
        params["label"] = f"hamming({gamma})"
    return params


def verify_occurrence(s: RankedSequence, p: Pattern, occ, delta: int, gamma: int,
                      metric: Metric = Metric.ORDINAL) -> bool:
    positions = tuple(getattr(occ, "positions", occ))
    if len(positions) != p.m:
        return False
    if positions[0] < 1 or positions[-1] > s.n:
        return False
    for j in range(p.m - 1):
        gap = positions[j + 1] - positions[j] - 1
        if not p.gaps[j][0] <= gap <= p.gaps[j][1]:
            return False
    pranks = p.ranks(s.alphabet)
    dists = [rank_distance(s.ranks[pos - 1], pr, metric) for pos, pr in zip(positions, pranks)]
    return max(dists) <= delta and sum(dists) <= gamma


def _as_node(t: LANTree, nid) -> Node:
    if isinstance(nid, Node):
        return nid
    nd = t.node(*nid)
    if nd is None:
        raise TreeError(f"{NodeId(*nid)} is not a live node")
    return nd


def reach_leaf(t: LANTree, root, gamma: Optional[int] = None) -> Optional[NodeId]:
    """Rightmost absolute leaf reachable from ``root`` within ``gamma``.

    Starts a new pass: every node in the root's sub-Nettree gets a fresh
    ``pass_mrd``; nodes outside keep a stale pass id and count as infinite.
    """
    gamma = t.gamma if gamma is None else gamma
    rt = _as_node(t, root)
    if rt.level != 1:
        raise TreeError(f"{rt.id} is not a root")
    t.pass_id += 1
    k = t.pass_id
    rt.pass_id = k
    rt.pass_mrd = rt.delta
    frontier = [rt]
    for _ in range(1, t.m):
        reached = {}
        for par in frontier:
            for ch in par.children:
                v = par.pass_mrd + ch.delta
                if ch.pass_id != k:
                    ch.pass_id = k
                    ch.pass_mrd = v
                    reached[ch.pos] = ch
                elif v < ch.pass_mrd:
                    ch.pass_mrd = v
        if not reached:
            return None
        frontier = [reached[pos] for pos in sorted(reached)]
    for leaf in reversed(frontier):
        if leaf.pass_mrd <= gamma:
            return leaf.id
    return None


def rightmost_occurrence(t: LANTree, root, leaf, gamma: Optional[int] = None) -> Occurrence:
    """Walk from ``leaf`` to ``root`` taking the rightmost parent that fits.

    The remaining budget starts at ``gamma`` and drops by each visited node's
    distance; a parent fits when its pass MRD is within what is left. A dead
    end would force a retry of an earlier choice; such retries are counted on
    ``t.retries`` (they never happen while MRDs are fresh).
    """
    gamma = t.gamma if gamma is None else gamma
    rt = _as_node(t, root)
    lf = _as_node(t, leaf)
    k = t.pass_id
    if lf.pass_id != k or rt.pass_id != k:
        raise StaleMRDError("MRDs are not from the current reach_leaf pass")
    if lf.pass_mrd > gamma:
        raise StaleMRDError(f"{lf.id} is not within gamma in this pass")

    def fitting(nd, budget):
        return iter([q for q in reversed(nd.parents)
                     if q.pass_id == k and q.pass_mrd <= budget])

    budget = gamma - lf.delta
    stack = [(lf, fitting(lf, budget), budget)]
    retries = 0
    while stack:
        nd, options, budget = stack[-1]
        if nd.level == 1:
            if nd is rt:
                break
            stack.pop()
            retries += 1
            continue
        nxt = next(options, None)
        if nxt is None:
            stack.pop()
            retries += 1
            continue
        left = budget - nxt.delta
        stack.append((nxt, fitting(nxt, left), left))
    t.retries += retries
    if not stack:
        raise StaleMRDError(f"no path from {lf.id} to {rt.id} within gamma={gamma}")
    path = [nd for nd, _, _ in reversed(stack)]
    return Occurrence(tuple(nd.pos for nd in path), sum(nd.delta for nd in path))


def _net_ndp_tree(t: LANTree, gamma: int) -> OccurrenceSet:
    found = OccurrenceSet()
    for root in reversed(t.roots()):
        if not root.alive:
            continue
        leaf = reach_leaf(t, root, gamma)
        if leaf is None:
            continue
        occ = rightmost_occurrence(t, root, leaf, gamma)
        found.append(occ)
        delete_occurrence(t, occ)
    return found


def net_ndp(s: RankedSequence, p: Pattern, delta: int, gamma: int,
            metric: Metric = Metric.ORDINAL, prune: bool = True,
            engine: str = "kernel") -> MatchReport:
    """Maximum-seeking nonoverlapping (delta, gamma)-approximate matching.

    ``engine`` picks the implementation: ``"kernel"`` (compiled when
    available), ``"python"`` (flat-array fallback) or ``"tree"`` (the
    inspectable :class:`LANTree` object model). All three return the same
    occurrences in the same order.
    """
    if delta < 0 or gamma < 0:
        raise ValueError("delta and gamma must be non-negative")
    metric = Metric(metric)
    pranks = p.ranks(s.alphabet)
    retries = 0
    if engine == "tree":
        t0 = time.perf_counter()
        t = build(s, p, delta, gamma, metric, prune)
        occs = _net_ndp_tree(t, gamma)
        elapsed = time.perf_counter() - t0
        stats = t.counters
        retries = t.retries
    elif engine in ("kernel", "python"):
        if engine == "kernel":
            fn, ranks = kernel.net_ndp, s.ranks_array if kernel.COMPILED else s.ranks
        else:
            fn, ranks = kernel.py_net_ndp, s.ranks
        mins, maxs = p.mins, p.maxs
        t0 = time.perf_counter()
        raw, gdists, counts = fn(ranks, pranks, mins, maxs, delta, gamma,
                                 1 if metric is Metric.INDICATOR else 0, prune)
        elapsed = time.perf_counter() - t0
        # wrapping results in report objects is not part of the timed work
        occs = OccurrenceSet(Occurrence(pos, g) for pos, g in zip(raw, gdists))
        stats = NodeEdgeStats(*(int(c) for c in counts))
    else:
        raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")
    report = MatchReport(
        algorithm="netndp" if prune else "netndp-nonp",
        occurrences=occs,
        stats=stats,
        elapsed=elapsed,
        params=_params(p, delta, gamma, metric, prune),
        deviation_limit=delta if metric is Metric.ORDINAL else 1,
        retries=retries,
        source_id=s.source_id,
    )
    return report.attach_deviations(s, p)


# -- NETLAP-style baseline ---------------------------------------------------

def _cascade(t: LANTree, seeds) -> None:
    """Remove nodes that can no longer lie on a full path."""
    work = list(seeds)
    while work:
        nd = work.pop()
        if not nd.alive:
            continue
        orphan = nd.level > 1 and not nd.parents
        barren = nd.level < t.m and not nd.children
        if orphan or barren:
            work.extend(nd.parents)
            work.extend(nd.children)
            t.remove_node(nd)


def _remove_with_cascade(t: LANTree, nodes) -> None:
    neighbours = []
    for nd in nodes:
        neighbours.extend(nd.parents)
        neighbours.extend(nd.children)
        t.remove_node(nd)
    _cascade(t, neighbours)


def _backtracking_path(leaf: Node, gamma: int) -> Optional[List[Node]]:
    """Rightmost-parent descent with backtracking on the accumulated distance."""
    dead = set()

    def walk(nd, acc):
        if nd.level == 1:
            return [nd]
        if (nd.pos, nd.level, acc) in dead:
            return None
        for par in reversed(nd.parents):
            if acc + par.delta > gamma:
                continue
            rest = walk(par, acc + par.delta)
            if rest is not None:
                rest.append(nd)
                return rest
        dead.add((nd.pos, nd.level, acc))
        return None

    if leaf.delta > gamma:
        return None
    return walk(leaf, leaf.delta)


def netlap_variant(s: RankedSequence, p: Pattern, delta: int, gamma: int,
                   metric: Metric = Metric.ORDINAL) -> MatchReport:
    """Repeatedly match from the rightmost live absolute leaf.

    No per-root prejudging: a leaf is tried by rightmost-parent descent with
    backtracking. A found occurrence is deleted together with every node left
    without parents or children; a leaf that yields nothing is discarded the
    same way.
    """
    metric = Metric(metric)
    t0 = time.perf_counter()
    t = build(s, p, delta, gamma, metric, prune=True)
    _cascade(t, list(t.nodes()))
    found = OccurrenceSet()
    while t.levels[-1]:
        leaf = t.levels[-1][max(t.levels[-1])]
        path = _backtracking_path(leaf, gamma)
        if path is None:
            _remove_with_cascade(t, [leaf])
            continue
        found.append(Occurrence(tuple(nd.pos for nd in path), sum(nd.delta for nd in path)))
        _remove_with_cascade(t, path)
    report = MatchReport(
        algorithm="netlap",
        occurrences=found,
        stats=t.counters,
        elapsed=time.perf_counter() - t0,
        params=_params(p, delta, gamma, metric, True),
        deviation_limit=delta if metric is Metric.ORDINAL else 1,
        source_id=s.source_id,
    )
    return report.attach_deviations(s, p)


# -- one-off greedy baseline -------------------------------------------------

def greedy_leftmost(s: RankedSequence, p: Pattern, delta: int, gamma: int,
                    metric: Metric = Metric.ORDINAL) -> MatchReport:
    """Left-to-right greedy matching; every sequence position is used at most once.

    From each unused start, each level takes the first unused position in its
    gap window that keeps both constraints. There is no backtracking.
    """
    metric = Metric(metric)
    t0 = time.perf_counter()
    pranks = p.ranks(s.alphabet)
    ranks = s.ranks
    n = s.n
    used = [False] * (n + 2)
    found = OccurrenceSet()
    for start in range(1, n + 1):
        if used[start]:
            continue
        d = rank_distance(ranks[start - 1], pranks[0], metric)
        if d > delta or d > gamma:
            continue
        positions = [start]
        acc = d
        for j in range(1, p.m):
            lo = positions[-1] + p.gaps[j - 1][0] + 1
            hi = min(positions[-1] + p.gaps[j - 1][1] + 1, n)
            for pos in range(lo, hi + 1):
                if used[pos]:
                    continue
                d = rank_distance(ranks[pos - 1], pranks[j], metric)
                if d <= delta and acc + d <= gamma:
                    positions.append(pos)
                    acc += d
                    break
            else:
                break
        if len(positions) == p.m:
            for pos in positions:
                used[pos] = True
            found.append(Occurrence(tuple(positions), acc))
    report = MatchReport(
        algorithm="greedy",
        occurrences=found,
        elapsed=time.perf_counter() - t0,
        params=_params(p, delta, gamma, metric, False),
        deviation_limit=delta if metric is Metric.ORDINAL else 1,
        source_id=s.source_id,
    )
    return report.attach_deviations(s, p)
