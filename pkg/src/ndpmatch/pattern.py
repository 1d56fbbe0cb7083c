"""Gap-constrained pattern grammar.

A pattern is a run of single-character symbols separated by gap intervals::

    pattern := symbol (gap symbol)*
    gap     := "[" uint "," uint "]"

``b[0,1]a[0,2]b`` means: ``b``, then 0 or 1 skipped positions, then ``a``,
then 0 to 2 skipped positions, then ``b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .distance import Alphabet


class PatternError(ValueError):
    """Base class for all pattern parsing and validation failures."""


class PatternSyntaxError(PatternError):
    pass


class PatternConstraintError(PatternError):
    pass


class PatternAlphabetError(PatternError):
    pass


@dataclass(frozen=True)
class Pattern:
    chars: Tuple[str, ...]
    gaps: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "chars", tuple(self.chars))
        object.__setattr__(self, "gaps", tuple(tuple(g) for g in self.gaps))
        if not self.chars:
            raise PatternConstraintError("pattern must contain at least one symbol")
        if len(self.gaps) != len(self.chars) - 1:
            raise PatternConstraintError(
                f"{len(self.chars)} symbols need {len(self.chars) - 1} gaps, got {len(self.gaps)}"
            )
        for j, (lo, hi) in enumerate(self.gaps, start=1):
            if lo < 0 or hi < 0:
                raise PatternConstraintError(f"gap {j}: negative bound in [{lo},{hi}]")
            if lo > hi:
                raise PatternConstraintError(f"gap {j}: min {lo} exceeds max {hi}")

    @property
    def m(self) -> int:
        return len(self.chars)

    @property
    def mins(self) -> Tuple[int, ...]:
        return tuple(g[0] for g in self.gaps)

    @property
    def maxs(self) -> Tuple[int, ...]:
        return tuple(g[1] for g in self.gaps)

    @property
    def gap_width(self) -> int:
        """Widest gap window, ``max(max_j - min_j + 1)``; 1 for a single symbol."""
        return max((hi - lo + 1 for lo, hi in self.gaps), default=1)

    def check_alphabet(self, alphabet: Alphabet) -> None:
        for c in self.chars:
            if c not in alphabet:
                raise PatternAlphabetError(f"symbol {c!r} is not in alphabet {alphabet.symbols!r}")

    def ranks(self, alphabet: Alphabet) -> Tuple[int, ...]:
        self.check_alphabet(alphabet)
        return tuple(alphabet.rank[c] for c in self.chars)

    def __str__(self) -> str:
        return format_pattern(self)


_GAP = re.compile(r"\[(\d+),(\d+)\]")


def parse_pattern(text: str, alphabet: Optional[Alphabet] = None) -> Pattern:
    """Parse ``text`` into a :class:`Pattern`.

    When ``alphabet`` is given every symbol must belong to it.
    Whitespace is not allowed anywhere in the text.
    """
    if not text:
        raise PatternSyntaxError("empty pattern")
    if any(ch.isspace() for ch in text):
        raise PatternSyntaxError("whitespace is not allowed in patterns")

    chars = []
    gaps = []
    pos = 0
    expect_symbol = True
    while pos < len(text):
        ch = text[pos]
        if expect_symbol:
            if ch in "[],":
                raise PatternSyntaxError(f"expected a symbol at offset {pos}, found {ch!r}")
            chars.append(ch)
            pos += 1
            expect_symbol = False
            continue
        if ch != "[":
            raise PatternSyntaxError(f"expected '[' at offset {pos}, found {ch!r}")
        match = _GAP.match(text, pos)
        if match is None:
            # negative bounds get a constraint error rather than a syntax error
            if re.match(r"\[-?\d+,-?\d+\]", text[pos:]):
                raise PatternConstraintError(f"negative gap bound at offset {pos}")
            raise PatternSyntaxError(f"malformed gap at offset {pos}")
        gaps.append((int(match.group(1)), int(match.group(2))))
        pos = match.end()
        expect_symbol = True
    if expect_symbol:
        raise PatternSyntaxError("pattern ends with a gap; a symbol must follow")

    pattern = Pattern(tuple(chars), tuple(gaps))
    if alphabet is not None:
        pattern.check_alphabet(alphabet)
    return pattern


def format_pattern(p: Pattern) -> str:
    out = [p.chars[0]]
    for (lo, hi), c in zip(p.gaps, p.chars[1:]):
        out.append(f"[{lo},{hi}]{c}")
    return "".join(out)


def uniform_pattern(chars: Sequence[str], lo: int, hi: int) -> Pattern:
    """Pattern over ``chars`` with the same ``[lo,hi]`` gap everywhere."""
    return Pattern(tuple(chars), tuple((lo, hi) for _ in range(len(chars) - 1)))
