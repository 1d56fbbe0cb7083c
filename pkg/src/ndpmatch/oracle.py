"""Brute-force ground truth for small instances.

``enumerate_all`` lists every (delta, gamma)-approximate occurrence with no
overlap restriction. ``max_nonoverlapping`` finds a largest subset in which
no two occurrences share a position at the same pattern level.
"""

from __future__ import annotations

import itertools
from typing import List, Sequence, Tuple

import numpy as np

from .distance import Metric, rank_distance
from .report import Occurrence, OccurrenceSet


class OracleTooLarge(ValueError):
    pass


def enumerate_all(s, p, delta: int, gamma: int, metric: Metric = Metric.ORDINAL,
                  budget_pruning: bool = True) -> List[Occurrence]:
    """Depth-first search over the gap windows, in lexicographic order.

    With ``budget_pruning`` off, prefixes whose partial distance already
    exceeds ``gamma`` are still extended and only rejected at full length.
    """
    metric = Metric(metric)
    pranks = p.ranks(s.alphabet)
    ranks = s.ranks
    n, m = s.n, p.m
    out: List[Occurrence] = []
    positions = [0] * m

    def extend(j, lo, hi, acc):
        for pos in range(lo, min(hi, n) + 1):
            d = rank_distance(ranks[pos - 1], pranks[j], metric)
            if d > delta:
                continue
            total = acc + d
            if budget_pruning and total > gamma:
                continue
            positions[j] = pos
            if j == m - 1:
                if total <= gamma:
                    out.append(Occurrence(tuple(positions), total))
            else:
                lo_gap, hi_gap = p.gaps[j]
                extend(j + 1, pos + lo_gap + 1, pos + hi_gap + 1, total)

    extend(0, 1, n, 0)
    return out


def enumerate_product(s, p, delta: int, gamma: int, metric: Metric = Metric.ORDINAL) -> List[Occurrence]:
    """Even simpler generator: every start, every gap choice, then check."""
    metric = Metric(metric)
    pranks = p.ranks(s.alphabet)
    out = []
    windows = [range(lo, hi + 1) for lo, hi in p.gaps]
    for start in range(1, s.n + 1):
        for skips in itertools.product(*windows):
            positions = [start]
            for k in skips:
                positions.append(positions[-1] + k + 1)
            if positions[-1] > s.n:
                continue
            dists = [rank_distance(s.ranks[q - 1], pr, metric) for q, pr in zip(positions, pranks)]
            if max(dists) <= delta and sum(dists) <= gamma:
                out.append(Occurrence(tuple(positions), sum(dists)))
    out.sort(key=lambda o: o.positions)
    return out


def conflicts(a: Occurrence, b: Occurrence) -> bool:
    return any(x == y for x, y in zip(a.positions, b.positions))


def _components(occs: Sequence[Occurrence]) -> List[List[int]]:
    # occurrences sharing a (level, position) cell end up in one component
    parent = list(range(len(occs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner = {}
    for idx, occ in enumerate(occs):
        for cell in enumerate(occ.positions):
            if cell in owner:
                parent[find(idx)] = find(owner[cell])
            else:
                owner[cell] = idx
    groups = {}
    for idx in range(len(occs)):
        groups.setdefault(find(idx), []).append(idx)
    return list(groups.values())


def _level_bound(occs, idxs) -> int:
    if not idxs:
        return 0
    m = len(occs[idxs[0]].positions)
    return min(len({occs[i].positions[j] for i in idxs}) for j in range(m))


def _branch_and_bound(occs: Sequence[Occurrence], idxs: List[int]) -> List[int]:
    best: List[int] = []

    def search(cands, chosen):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if not cands:
            return
        if len(chosen) + min(len(cands), _level_bound(occs, cands)) <= len(best):
            return
        head, rest = cands[0], cands[1:]
        chosen.append(head)
        search([c for c in rest if not conflicts(occs[head], occs[c])], chosen)
        chosen.pop()
        search(rest, chosen)

    search(idxs, [])
    return best


def _milp(occs: Sequence[Occurrence], idxs: List[int]) -> List[int]:
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import lil_matrix

    cells = {}
    for col, i in enumerate(idxs):
        for cell in enumerate(occs[i].positions):
            cells.setdefault(cell, []).append(col)
    rows = [cols for cols in cells.values() if len(cols) > 1]
    k = len(idxs)
    c = -np.ones(k)
    constraints = []
    if rows:
        a = lil_matrix((len(rows), k))
        for r, cols in enumerate(rows):
            for col in cols:
                a[r, col] = 1
        constraints.append(LinearConstraint(a.tocsr(), -np.inf, 1))
    res = milp(c, constraints=constraints, integrality=np.ones(k), bounds=Bounds(0, 1))
    if not res.success:
        raise RuntimeError(f"MILP solver failed: {res.message}")
    return [idxs[col] for col in range(k) if res.x[col] > 0.5]


def max_nonoverlapping(occs: Sequence[Occurrence], method: str = "auto",
                       exhaustive_limit: int = 40) -> Tuple[int, OccurrenceSet]:
    """Largest pairwise-nonoverlapping subset of ``occs`` and its size.

    Each connected conflict component is solved on its own, by exhaustive
    branch and bound (``"exhaustive"``) or as a 0/1 integer program
    (``"milp"``). ``"auto"`` uses branch and bound for components of at most
    ``exhaustive_limit`` occurrences and the integer program above that.
    """
    if method not in ("auto", "exhaustive", "milp"):
        raise ValueError(f"unknown method {method!r}")
    occs = list(occs)
    chosen: List[int] = []
    for comp in _components(occs):
        if len(comp) == 1:
            chosen.extend(comp)
            continue
        if method == "exhaustive" and len(comp) > exhaustive_limit:
            raise OracleTooLarge(
                f"conflict component of {len(comp)} occurrences exceeds limit {exhaustive_limit}")
        if method == "milp" or (method == "auto" and len(comp) > exhaustive_limit):
            chosen.extend(_milp(occs, comp))
        else:
            chosen.extend(_branch_and_bound(occs, comp))
    witness = OccurrenceSet(occs[i] for i in sorted(chosen))
    return len(witness), witness
