"""Sequence loading and SAX symbolization of numeric time series."""

from __future__ import annotations

import csv
import string
from dataclasses import dataclass
from functools import cached_property
from statistics import NormalDist
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .distance import Alphabet, AlphabetError


class IngestError(ValueError):
    pass


@dataclass(frozen=True)
class RankedSequence:
    symbols: str
    ranks: Tuple[int, ...]
    alphabet: Alphabet
    source_id: str = ""

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    @cached_property
    def ranks_array(self) -> np.ndarray:
        return np.asarray(self.ranks, dtype=np.intc)

    @classmethod
    def from_text(cls, text: str, alphabet: Optional[Alphabet] = None,
                  source_id: str = "", strict: bool = True) -> "RankedSequence":
        if alphabet is None:
            alphabet = Alphabet.infer(text)
        ranks = tuple(alphabet.rank_of(c, strict) for c in text)
        return cls(text, ranks, alphabet, source_id)


@dataclass
class TimeSeries:
    values: List[float]
    label: str = ""

    def __len__(self) -> int:
        return len(self.values)


def _rank(text, alphabet, source_id, strict):
    try:
        return RankedSequence.from_text(text, alphabet, source_id, strict)
    except AlphabetError as exc:
        raise IngestError(f"{source_id or 'sequence'}: {exc}") from None


def read_fasta(path, alphabet: Optional[Alphabet] = None, strict: bool = True) -> List[RankedSequence]:
    """Read every record of a FASTA file.

    Residues are uppercased; the header (without ``>``) becomes ``source_id``.
    The default alphabet is ``A-Z``.
    """
    if alphabet is None:
        alphabet = Alphabet.upper()
    records = []
    header = None
    chunks: List[str] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith(";"):
                continue
            if line.startswith(">"):
                if header is not None:
                    records.append((header, "".join(chunks)))
                header = line[1:].strip()
                chunks = []
            else:
                if header is None:
                    raise IngestError(f"{path}:{lineno}: sequence data before first '>' header")
                chunks.append("".join(line.split()).upper())
    if header is not None:
        records.append((header, "".join(chunks)))
    if not records:
        raise IngestError(f"{path}: no FASTA records")

    out = []
    for header, seq in records:
        if not seq:
            raise IngestError(f"{path}: record {header!r} is empty")
        out.append(_rank(seq, alphabet, header, strict))
    return out


def read_plain(path, alphabet: Optional[Alphabet] = None, strict: bool = True) -> RankedSequence:
    with open(path, encoding="utf-8") as fh:
        text = "".join(fh.read().split())
    if not text:
        raise IngestError(f"{path}: empty sequence file")
    return _rank(text, alphabet, str(path), strict)


def read_series_csv(path, column) -> TimeSeries:
    """Read one numeric column (by header name or 0-based index) from a CSV file."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError(f"{path}: empty CSV file") from None
        header = [h.strip() for h in header]
        if isinstance(column, int) or (isinstance(column, str) and column.isdigit() and column not in header):
            idx = int(column)
            if idx >= len(header):
                raise IngestError(f"{path}: column index {idx} out of range")
        else:
            if column not in header:
                raise IngestError(f"{path}: no column named {column!r}")
            idx = header.index(column)
        values = []
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                values.append(float(row[idx]))
            except (ValueError, IndexError):
                cell = row[idx] if idx < len(row) else ""
                raise IngestError(f"{path}: row {row_no}: cannot parse {cell!r} as a number") from None
    return TimeSeries(values, label=str(header[idx]))


def sax_breakpoints(alphabet_size: int) -> np.ndarray:
    """Standard-normal quantiles cutting the line into equiprobable regions."""
    nd = NormalDist()
    return np.array([nd.inv_cdf(k / alphabet_size) for k in range(1, alphabet_size)])


def znormalize(values) -> Optional[np.ndarray]:
    x = np.asarray(values, dtype=float)
    sd = x.std()
    if sd == 0.0 or not np.isfinite(sd):
        return None
    return (x - x.mean()) / sd


def paa(x: np.ndarray, segments: int) -> np.ndarray:
    """Piecewise aggregate approximation with fractional frame boundaries.

    Each point is split across frames in proportion to its overlap, which is
    the same as repeating every point ``segments`` times and averaging blocks
    of ``len(x)``.
    """
    n = len(x)
    if n % segments == 0:
        return x.reshape(segments, n // segments).mean(axis=1)
    return np.repeat(x, segments).reshape(segments, n).mean(axis=1)


def sax_symbolize(ts: TimeSeries, segments: Optional[int] = None,
                  alphabet_size: int = 20) -> RankedSequence:
    if not 2 <= alphabet_size <= 26:
        raise IngestError(f"alphabet_size must be in 2..26, got {alphabet_size}")
    n = len(ts.values)
    if n == 0:
        raise IngestError("cannot symbolize an empty series")
    if segments is None:
        segments = n
    if segments < 1:
        raise IngestError("segments must be >= 1")
    if segments > n:
        raise IngestError(f"segments ({segments}) exceeds series length ({n})")

    alphabet = Alphabet.upper(alphabet_size)
    breaks = sax_breakpoints(alphabet_size)
    z = znormalize(ts.values)
    if z is None:
        # zero variance: every frame sits at 0
        means = np.zeros(segments)
    else:
        means = paa(z, segments)
    # side="left": a value equal to a breakpoint belongs to the lower region
    idx = np.searchsorted(breaks, means, side="left")
    text = "".join(string.ascii_uppercase[i] for i in idx)
    return RankedSequence(text, tuple(int(i) for i in idx), alphabet, ts.label)
