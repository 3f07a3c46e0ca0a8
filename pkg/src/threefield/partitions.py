"""Signed colored partitions and the q-hypergeometric sigma series."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qseries import INT64_MAX, QSeries, _maxabs, _mul_binomial, _narrow, _unit, _widen, qpochhammer_product

__all__ = [
    "ColoredPartitionCount",
    "colored_partition_counts",
    "colored_partition_table",
    "rho_partition_series",
    "unsigned_partition_series",
    "SIGMA_CONVENTIONS",
    "sigma_hypergeometric",
]


@dataclass(frozen=True)
class ColoredPartitionCount:
    """r_e / r_o: partitions of n into distinct 3-colored odd parts and an
    even / odd number of distinct 2-colored even parts."""

    n: int
    r_e: int
    r_o: int

    def __post_init__(self):
        if self.r_e < 0 or self.r_o < 0:
            raise ValueError("counts are nonnegative")

    @property
    def r(self) -> int:
        return self.r_e - self.r_o

    def to_json_dict(self) -> dict:
        return {"n": self.n, "r_e": self.r_e, "r_o": self.r_o, "r": self.r}


def _shift(a: np.ndarray, k: int) -> np.ndarray:
    out = np.zeros_like(a)
    if k < a.size:
        out[k:] = a[: a.size - k]
    return out


@lru_cache(maxsize=8)
def _table(N: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # E[n], O[n]: weighted counts with an even / odd number of even parts so far.
    # Odd part k used m times in distinct colors: C(3, m) ways, m <= 3.
    # Even part k used m times: C(2, m) ways, flips parity when m = 1.
    E = np.zeros(N + 1, dtype=object)
    O = np.zeros(N + 1, dtype=object)
    E[0] = 1
    for k in range(1, N + 1):
        if k % 2:
            E = E + 3 * _shift(E, k) + 3 * _shift(E, 2 * k) + _shift(E, 3 * k)
            O = O + 3 * _shift(O, k) + 3 * _shift(O, 2 * k) + _shift(O, 3 * k)
        else:
            E, O = (E + 2 * _shift(O, k) + _shift(E, 2 * k),
                    O + 2 * _shift(E, k) + _shift(O, 2 * k))
    return tuple(int(v) for v in E), tuple(int(v) for v in O)


def colored_partition_table(N: int) -> list[ColoredPartitionCount]:
    """Counts for every n = 0..N from one dynamic-programming pass."""
    if N < 0:
        return []
    E, O = _table(N)
    return [ColoredPartitionCount(n, E[n], O[n]) for n in range(N + 1)]


def colored_partition_counts(n: int) -> ColoredPartitionCount:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return colored_partition_table(n)[n]


def rho_partition_series(N: int) -> QSeries:
    """(-q;q^2)^3 (q^2;q^2)^2 to q^N."""
    return qpochhammer_product([(1, 1, 2, 3), (-1, 2, 2, 2)], N).renamed("rho")


def unsigned_partition_series(N: int) -> QSeries:
    """(-q;q^2)^3 (-q^2;q^2)^2, whose coefficients are r_e + r_o (may overflow int64)."""
    return qpochhammer_product([(1, 1, 2, 3), (1, 2, 2, 2)], N)


SIGMA_CONVENTIONS = {
    "n_choose_2": lambda n: n * (n - 1) // 2,
    "n_times_n_plus_1_over_2": lambda n: n * (n + 1) // 2,
}


def sigma_hypergeometric(N: int, convention: str = "n_times_n_plus_1_over_2") -> QSeries:
    """sum_{n>=0} q^{e(n)} / ((1+q)(1+q^2)...(1+q^n)) to q^N.

    Summation stops at the first n with e(n) > N: every later term starts
    above q^N because the denominators have constant term 1 and e grows.
    """
    if convention not in SIGMA_CONVENTIONS:
        raise ValueError(f"unknown convention {convention}; use one of {sorted(SIGMA_CONVENTIONS)}")
    if N < 0:
        return QSeries.zero(N)
    e = SIGMA_CONVENTIONS[convention]
    inv = _unit(N)
    total = np.zeros(N + 1, dtype=np.int64)
    n = 0
    while e(n) <= N:
        if n > 0:
            inv = _mul_binomial(inv, n, 1, -1)
        k = e(n)
        if total.dtype != object and (inv.dtype == object or _maxabs(total) + _maxabs(inv) > INT64_MAX):
            total = _widen(total)
        total[k:] += inv[: N + 1 - k]
        n += 1
    return QSeries(_narrow(total), 0, N, f"sigma[{convention}]")
