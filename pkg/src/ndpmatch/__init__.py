"""Nonoverlapping (delta, gamma)-approximate pattern matching with gap constraints."""

from .distance import Alphabet, Metric, delta_distance, gamma_distance
from .ingest import RankedSequence, TimeSeries, read_fasta, read_plain, read_series_csv, sax_symbolize
from .matcher import greedy_leftmost, net_ndp, netlap_variant, reach_leaf, rightmost_occurrence, verify_occurrence
from .nettree import LANTree, NodeEdgeStats, NodeId, build, delete_occurrence, stats
from .oracle import enumerate_all, max_nonoverlapping
from .pattern import Pattern, format_pattern, parse_pattern
from .report import MatchReport, Occurrence, OccurrenceSet

__version__ = "0.1.0"


def match(sequence: str, pattern: str, delta: int, gamma: int, metric="ordinal",
          alphabet=None, prune=True) -> MatchReport:
    """Convenience wrapper: match raw strings, inferring the alphabet from case."""
    if alphabet is None:
        alphabet = Alphabet.infer(sequence, pattern)
    elif isinstance(alphabet, str):
        alphabet = Alphabet(alphabet)
    s = RankedSequence.from_text(sequence, alphabet)
    p = parse_pattern(pattern, alphabet)
    return net_ndp(s, p, delta, gamma, Metric.parse(metric), prune)
