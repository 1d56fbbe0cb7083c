import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ndpmatch import Alphabet, RankedSequence, parse_pattern  # noqa: E402

LOWER = Alphabet.lower()


@pytest.fixture
def ex7():
    """Nine-symbol walkthrough instance (delta=1, gamma=1)."""
    return (RankedSequence.from_text("baabcbbab", LOWER),
            parse_pattern("b[0,1]a[0,2]b[0,2]b", LOWER))


@pytest.fixture
def ex2():
    return (RankedSequence.from_text("acaba", LOWER),
            parse_pattern("a[0,1]b[0,2]a", LOWER))
