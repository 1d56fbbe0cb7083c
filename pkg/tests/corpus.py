"""Deterministic corpus of small random matching instances.

Bounds: n <= 60, m <= 5, gaps within [0,4], alphabet size <= 6,
delta <= 2, gamma <= 3.
"""

import random
from dataclasses import dataclass

from ndpmatch import Alphabet, Metric, Pattern, RankedSequence
from ndpmatch.oracle import enumerate_all

UNBOUNDED = 10 ** 6


@dataclass(frozen=True)
class Instance:
    s: RankedSequence
    p: Pattern
    delta: int
    gamma: int

    def __str__(self):
        return f"S={self.s.symbols} P={self.p} delta={self.delta} gamma={self.gamma}"


def random_instance(rng: random.Random, max_n: int = 60) -> Instance:
    size = rng.randint(2, 6)
    alphabet = Alphabet.lower(size)
    n = rng.randint(1, max_n)
    m = rng.randint(1, 5)
    text = "".join(rng.choice(alphabet.symbols) for _ in range(n))
    chars = tuple(rng.choice(alphabet.symbols) for _ in range(m))
    gaps = []
    for _ in range(m - 1):
        lo = rng.randint(0, 4)
        hi = rng.randint(lo, 4)
        gaps.append((lo, hi))
    return Instance(RankedSequence.from_text(text, alphabet), Pattern(chars, tuple(gaps)),
                    rng.randint(0, 2), rng.randint(0, 3))


def corpus(count: int = 1000, seed: int = 20211, max_n: int = 60):
    rng = random.Random(seed)
    return [random_instance(rng, max_n) for _ in range(count)]


def true_mrd(s, p, delta, metric=Metric.ORDINAL):
    """{(level, pos): minimal prefix distance}, found by enumerating every prefix."""
    out = {}
    for j in range(1, p.m + 1):
        prefix = Pattern(p.chars[:j], p.gaps[:j - 1])
        for occ in enumerate_all(s, prefix, delta, UNBOUNDED, metric):
            key = (j, occ.positions[-1])
            out[key] = min(out.get(key, UNBOUNDED), occ.gdist)
    return out
