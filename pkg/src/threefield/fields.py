"""Field constants, the ideal-count oracle, and eta-quotient modularity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping

from .quadform import RayClassRow

__all__ = [
    "FieldData",
    "FIELDS",
    "kronecker",
    "divisors",
    "prime_factors",
    "ideal_count_oracle",
    "sturm_bound",
    "ModularityReport",
    "eta_quotient_checks",
    "cusp_order",
    "RHO_ETA_QUOTIENT",
    "RHO_LEVEL",
]

RHO_ETA_QUOTIENT = {24: -3, 48: 8, 96: -3}
RHO_LEVEL = 2304


def prime_factors(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("divisors need a positive integer")
    ds = [1]
    for p, e in prime_factors(n).items():
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def _jacobi(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D / n) for any integers D, n."""
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if D % 2 == 0:
            return 0
        if v % 2 and D % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * _jacobi(D, n)


_ORACLE_DISCRIMINANTS = (-24, -4, 24)


def ideal_count_oracle(D: int, n: int) -> int:
    """Number of integral ideals of norm n: sum over d | n of (D / d)."""
    if D not in _ORACLE_DISCRIMINANTS:
        raise ValueError(f"discriminant {D} not supported; use one of {_ORACLE_DISCRIMINANTS}")
    if n < 1:
        raise ValueError("norm must be positive")
    return sum(kronecker(D, d) for d in divisors(n))


def sturm_bound(level: int) -> Fraction:
    """(level^2 / 12) * prod_{p | level} (1 - 1/p^2), exactly.

    Returned as a Fraction so that a non-integral value (e.g. 1/12 at level 1)
    is visible rather than rounded; check ``.denominator == 1``.
    """
    if level < 1:
        raise ValueError("level must be positive")
    value = Fraction(level * level, 12)
    for p in prime_factors(level):
        value *= 1 - Fraction(1, p * p)
    return value


def _validate_quotient(r: Mapping[int, int], level: int) -> dict[int, int]:
    if level < 1:
        raise ValueError("level must be positive")
    out = {int(d): int(e) for d, e in r.items()}
    for d in out:
        if d < 1 or level % d:
            raise ValueError(f"delta {d} does not divide level {level}")
    return out


def cusp_order(r: Mapping[int, int], level: int, d: int) -> Fraction:
    """(level/24) * sum_delta gcd(d, delta)^2 r_delta / (gcd(d, level/d) d delta)."""
    r = _validate_quotient(r, level)
    if d < 1 or level % d:
        raise ValueError(f"{d} does not divide level {level}")
    s = sum(Fraction(gcd(d, dl) ** 2 * e, gcd(d, level // d) * d * dl) for dl, e in r.items())
    return Fraction(level, 24) * s


@dataclass(frozen=True)
class ModularityReport:
    level: int
    weight: Fraction
    sum_delta_r: int
    sum_Ndelta_r: int
    cusp_orders: dict[int, Fraction]
    vanishes_at_infinity: bool
    sturm_bound: Fraction
    weight_integral: bool = field(init=False)
    sum_delta_ok: bool = field(init=False)
    sum_Ndelta_ok: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "weight_integral", self.weight.denominator == 1)
        object.__setattr__(self, "sum_delta_ok", self.sum_delta_r % 24 == 0)
        object.__setattr__(self, "sum_Ndelta_ok", self.sum_Ndelta_r % 24 == 0)

    @property
    def holomorphic_at_cusps(self) -> bool:
        return all(v >= 0 for v in self.cusp_orders.values())

    @property
    def passed(self) -> bool:
        return self.weight_integral and self.sum_delta_ok and self.sum_Ndelta_ok and self.holomorphic_at_cusps

    def to_json_dict(self) -> dict:
        def q(x: Fraction):
            return x.numerator if x.denominator == 1 else str(x)

        return {
            "level": self.level,
            "weight": q(self.weight),
            "weight_integral": self.weight_integral,
            "sum_delta_r": self.sum_delta_r,
            "sum_delta_r_ok": self.sum_delta_ok,
            "sum_Ndelta_r": self.sum_Ndelta_r,
            "sum_Ndelta_r_ok": self.sum_Ndelta_ok,
            "cusp_orders": {str(d): q(v) for d, v in sorted(self.cusp_orders.items())},
            "vanishes_at_infinity": self.vanishes_at_infinity,
            "sturm_bound": q(self.sturm_bound),
            "sturm_bound_integral": self.sturm_bound.denominator == 1,
            "passed": self.passed,
        }


def eta_quotient_checks(r: Mapping[int, int], level: int) -> ModularityReport:
    r = _validate_quotient(r, level)
    weight = Fraction(sum(r.values()), 2)
    s1 = sum(d * e for d, e in r.items())
    s2 = sum((level // d) * e for d, e in r.items())
    orders = {d: cusp_order(r, level, d) for d in divisors(level)}
    return ModularityReport(
        level=level,
        weight=weight,
        sum_delta_r=s1,
        sum_Ndelta_r=s2,
        cusp_orders=orders,
        vanishes_at_infinity=s1 > 0,
        sturm_bound=sturm_bound(level),
    )


@dataclass(frozen=True)
class FieldData:
    """Constants of one quadratic field together with its ray-class rows."""

    field_id: str
    name: str
    discriminant: int
    conductor: str
    conductor_norm: int
    infinite_places_in_conductor: int
    unit_count: int
    has_nontorsion_unit: bool
    ray_class_group: str
    rows: tuple[RayClassRow, ...]


def _fields() -> dict[str, FieldData]:
    from .tables import K1_ROWS, K2_ROWS, K3_ROWS

    return {
        "K1": FieldData("K1", "Q(sqrt-6)", -24, "(4 sqrt-6)", 96, 0, 2, False, "(Z/4)^2 x Z/2", K1_ROWS),
        "K2": FieldData("K2", "Q(i)", -4, "(24)", 576, 0, 4, False, "Z/8 x Z/4 x Z/2", K2_ROWS),
        "K3": FieldData("K3", "Q(sqrt6)", 24, "(4 sqrt6) oo1 oo2", 96, 2, 2, True, "Z/4 x (Z/2)^3", K3_ROWS),
    }


FIELDS = _fields()
