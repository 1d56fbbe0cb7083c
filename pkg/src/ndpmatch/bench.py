"""Synthetic runtime sweeps over sequence length, pattern length and gap width."""

from __future__ import annotations

import gc
import random
import statistics
from typing import Dict, Iterable, List, Optional

from .distance import Alphabet, Metric
from .ingest import RankedSequence
from .matcher import net_ndp
from .pattern import Pattern, uniform_pattern

SWEEPS = ("n", "m", "W")
DEFAULT_VALUES = {"n": [1000, 2000, 4000, 8000], "m": [5, 7, 9], "W": [7, 8, 9, 10]}

# pattern shapes: fixed gaps with growing length, fixed length with growing gaps
LENGTH_SHAPE = "ELSELSELS"
WIDTH_SHAPE = "QELELN"

WARMUP_ROUNDS = 2

COLUMNS = ["sweep", "value", "pattern", "n", "gap_width", "repetitions", "engine",
           "mean_elapsed_ms", "occ_count", "total_nodes", "total_edges",
           "pruned_nodes", "pruned_edges"]


def random_sequence(n: int, alphabet: Alphabet, seed: int) -> RankedSequence:
    """Uniform i.i.d. symbols; same ``(n, alphabet, seed)`` gives the same text."""
    rng = random.Random(seed)
    text = "".join(rng.choice(alphabet.symbols) for _ in range(n))
    return RankedSequence.from_text(text, alphabet, source_id=f"random(n={n},seed={seed})")


def sweep_pattern(sweep: str, value: int) -> Pattern:
    if sweep == "m":
        return uniform_pattern(LENGTH_SHAPE[:value], 0, 9)
    if sweep == "W":
        return uniform_pattern(WIDTH_SHAPE, 1, value)
    return uniform_pattern(LENGTH_SHAPE[:7], 0, 9)


def run_sweep(sweep: str, values: Optional[Iterable[int]] = None, n: int = 20000,
              repetitions: int = 5, seed: int = 0, delta: int = 1, gamma: int = 3,
              alphabet_size: int = 20, engine: str = "kernel", pattern: Optional[Pattern] = None,
              timing: bool = True) -> List[Dict]:
    """One row per swept value; elapsed is the mean over ``repetitions`` runs.

    The ``n`` sweep draws a fresh sequence per length (seeded by ``seed`` and
    the length); the ``m`` and ``W`` sweeps reuse one sequence of length ``n``.
    """
    if sweep not in SWEEPS:
        raise ValueError(f"sweep must be one of {SWEEPS}")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    values = list(values) if values is not None else DEFAULT_VALUES[sweep]
    alphabet = Alphabet.upper(alphabet_size)
    shared = None if sweep == "n" else random_sequence(n, alphabet, seed)
    cases = []
    for value in values:
        if sweep == "n":
            s = random_sequence(value, alphabet, seed * 1_000_003 + value)
            p = pattern or sweep_pattern("n", value)
        else:
            s = shared
            p = sweep_pattern(sweep, value)
        p.check_alphabet(alphabet)
        cases.append((value, s, p))

    # repetitions are interleaved across values so machine noise hits all alike;
    # the first rounds run slow (caches, clock ramp-up) and are not timed
    times = {value: [] for value, _, _ in cases}
    reports = {}
    gc_was_on = gc.isenabled()
    gc.disable()
    try:
        for rnd in range(WARMUP_ROUNDS + repetitions):
            for value, s, p in cases:
                report = net_ndp(s, p, delta, gamma, Metric.ORDINAL, True, engine)
                if rnd >= WARMUP_ROUNDS:
                    times[value].append(report.elapsed * 1000.0)
                reports[value] = report
    finally:
        if gc_was_on:
            gc.enable()

    rows = []
    for value, s, p in cases:
        report = reports[value]
        st = report.stats
        rows.append({
            "sweep": sweep,
            "value": value,
            "pattern": str(p),
            "n": s.n,
            "gap_width": p.gap_width,
            "repetitions": repetitions,
            "engine": engine,
            "mean_elapsed_ms": f"{statistics.fmean(times[value]):.4f}" if timing else "",
            "occ_count": report.occ_count,
            "total_nodes": st.total_nodes,
            "total_edges": st.total_edges,
            "pruned_nodes": st.pruned_nodes,
            "pruned_edges": st.pruned_edges,
        })
    return rows
