"""Exact counts of Boolean functions by algebraic degree."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .degree import NEG_INF, Degree, deg_oracle_rows, to_degree

FORMULA_MAX_N = 16
ENUMERATE_MAX_N = 4


def count_formula(n: int, k: int) -> int:
    """Number of functions of ``n`` variables with degree exactly ``k``.

    Degree ``k >= 1`` means: some coefficient of weight ``k`` is set (any of
    the ``2^C(n,k) - 1`` nonzero patterns) and lower-weight coefficients are
    free; no coefficient above ``k`` is set. Degree 0 is the constant one.
    """
    if not 0 <= n <= FORMULA_MAX_N:
        raise ValueError(f"n must be in 0..{FORMULA_MAX_N}")
    if not 0 <= k <= n:
        raise ValueError(f"k must be in 0..{n}")
    if k == 0:
        return 1
    below = sum(comb(n, i) for i in range(k))
    return ((1 << comb(n, k)) - 1) << below


@dataclass
class DegreeDistribution:
    n: int
    counts: dict[Degree, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, deg: Degree) -> int:
        return self.counts.get(deg, 0)


def formula_distribution(n: int) -> DegreeDistribution:
    counts: dict[Degree, int] = {NEG_INF: 1}
    for k in range(n + 1):
        counts[k] = count_formula(n, k)
    return DegreeDistribution(n, counts)


def all_truth_tables(n: int) -> np.ndarray:
    """Every truth table of ``n`` variables as a ``(2^(2^n), 2^n)`` uint8 array;
    row ``r`` has ``f_j`` equal to bit ``j`` of ``r``."""
    size = 1 << n
    r = np.arange(1 << size, dtype=np.uint32)
    return ((r[:, None] >> np.arange(size, dtype=np.uint32)) & 1).astype(np.uint8)


def enumerate_distribution(n: int, chunk: int = 1 << 14) -> DegreeDistribution:
    """Tally the degree of every function of ``n <= 4`` variables."""
    if not 1 <= n <= ENUMERATE_MAX_N:
        raise ValueError(f"enumeration is limited to 1 <= n <= {ENUMERATE_MAX_N}")
    tables = all_truth_tables(n)
    tally = np.zeros(n + 2, dtype=np.int64)  # slot 0 is the zero function
    for start in range(0, tables.shape[0], chunk):
        degs = deg_oracle_rows(tables[start : start + chunk], n)
        tally += np.bincount(degs.astype(np.int64) + 1, minlength=n + 2)
    counts = {to_degree(i - 1): int(c) for i, c in enumerate(tally)}
    return DegreeDistribution(n, counts)


def high_degree_fraction(n: int) -> Fraction:
    """Share of functions with degree ``n`` or ``n - 1``."""
    if not 1 <= n <= FORMULA_MAX_N:
        raise ValueError(f"n must be in 1..{FORMULA_MAX_N}")
    return Fraction(count_formula(n, n) + count_formula(n, n - 1), 1 << (1 << n))
