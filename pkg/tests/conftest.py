import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

# filled by test_acceptance, printed after the run
ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20201)


def random_words(rng, count, n):
    """``count`` random packed truth tables of ``n`` variables as rows."""
    width = 1 << (n - 6) if n > 6 else 1
    words = rng.integers(0, 1 << 64, size=(count, width), dtype=np.uint64)
    if n < 6:
        words &= np.uint64((1 << (1 << n)) - 1)
    return words


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
