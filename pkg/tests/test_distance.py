import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ndpmatch import Alphabet, Metric, delta_distance, gamma_distance
from ndpmatch.distance import INF, UNKNOWN, AlphabetError, rank_distance

LOWER = Alphabet.lower()


def test_walkthrough_distances():
    assert delta_distance("a", "c", LOWER) == 2
    assert delta_distance("e", "e", LOWER) == 0
    assert delta_distance("f", "e", LOWER) == 1
    assert gamma_distance("aef", "cee", LOWER) == 3


def test_indicator():
    assert delta_distance("a", "c", LOWER, Metric.INDICATOR) == 1
    assert delta_distance("a", "a", LOWER, Metric.INDICATOR) == 0
    assert gamma_distance("aef", "cee", LOWER, Metric.INDICATOR) == 2


def test_hamming_alias():
    assert Metric.parse("hamming") is Metric.INDICATOR
    assert Metric.parse("ordinal") is Metric.ORDINAL


def test_errors():
    with pytest.raises(AlphabetError):
        delta_distance("a", "A", LOWER)
    with pytest.raises(ValueError):
        gamma_distance("ab", "abc", LOWER)
    with pytest.raises(AlphabetError):
        Alphabet("aa")
    with pytest.raises(AlphabetError):
        Alphabet("")


def test_unknown_symbols_never_match():
    assert LOWER.rank_of("?", strict=False) == UNKNOWN
    assert rank_distance(UNKNOWN, 0) == INF
    assert rank_distance(3, UNKNOWN, Metric.INDICATOR) == INF


def test_alphabet_ranks_and_files(tmp_path):
    a = Alphabet.upper(20)
    assert "".join(a.symbols) == "ABCDEFGHIJKLMNOPQRST"
    assert a.rank["T"] == 19
    path = tmp_path / "alpha.txt"
    path.write_text("ABCDEFGHIJKLMNOPQRST\n")
    assert Alphabet.from_file(path) == a


def test_infer():
    assert Alphabet.infer("acaba") == Alphabet.lower()
    assert Alphabet.infer("ACABA", "A[0,1]B") == Alphabet.upper()
    with pytest.raises(AlphabetError):
        Alphabet.infer("aB")


SMALL = Alphabet.lower(7)


@pytest.mark.parametrize("metric", list(Metric))
def test_symmetry_identity_exhaustive(metric):
    for c, d in itertools.product(SMALL.symbols, repeat=2):
        assert delta_distance(c, d, SMALL, metric) == delta_distance(d, c, SMALL, metric)
        assert (delta_distance(c, d, SMALL, metric) == 0) == (c == d)


def test_triangle_inequality_exhaustive():
    for a, b, c in itertools.product(SMALL.symbols, repeat=3):
        assert delta_distance(a, c, SMALL) <= delta_distance(a, b, SMALL) + delta_distance(b, c, SMALL)


words = st.text(alphabet="abcdefg", min_size=0, max_size=10)


@given(st.data())
def test_gamma_monotone_under_append(data):
    x = data.draw(words)
    y = data.draw(st.text(alphabet="abcdefg", min_size=len(x), max_size=len(x)))
    c = data.draw(st.sampled_from("abcdefg"))
    d = data.draw(st.sampled_from("abcdefg"))
    for metric in Metric:
        assert gamma_distance(x + c, y + d, SMALL, metric) >= gamma_distance(x, y, SMALL, metric)
        assert gamma_distance(x, x, SMALL, metric) == 0


@given(st.data())
def test_indicator_gamma_counts_mismatches(data):
    x = data.draw(words)
    y = data.draw(st.text(alphabet="abcdefg", min_size=len(x), max_size=len(x)))
    assert gamma_distance(x, y, SMALL, Metric.INDICATOR) == sum(a != b for a, b in zip(x, y))
