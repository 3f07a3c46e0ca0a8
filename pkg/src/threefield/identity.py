"""Every route to Theta, rho, rho*, sigma and sigma*, and the comparator between them."""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fields import RHO_ETA_QUOTIENT
from .indefinite import UNIT_U, UNIT_V, Wedge, extract_progression, sigma_pair_bqf, sigma_theta_bqf, theta_indefinite
from .partitions import rho_partition_series, sigma_hypergeometric
from .qseries import QSeries, eta_quotient_series, qs_shift, qs_substitute_power
from .quadform import (
    FORM_K1_NONPRINCIPAL,
    FORM_K1_PRINCIPAL,
    FORM_K2,
    FORM_K3_OTHER,
    FORM_K3_TOTALLY_POSITIVE,
    theta_definite,
)
from .tables import k1_rho_set, k1_rhostar_set, k2_rho_set, k2_rhostar_set, k3_rho_set, k3_rhostar_set

__all__ = [
    "RouteId",
    "SERIES",
    "ROUTES_FOR",
    "IdentityReport",
    "theta_component",
    "rho_via",
    "rhostar_via",
    "theta_full",
    "sigma_via",
    "sigmastar_via",
    "series_via",
    "verify",
    "sigma_identity_check",
    "K3_RHO_WEDGE",
    "K3_RHOSTAR_WEDGE",
]


class RouteId(str, Enum):
    K1_congruence = "k1"
    K2_congruence = "k2"
    K3_indefinite = "k3"
    EtaQuotient = "eta"
    PartitionProduct = "partitions"
    SigmaBQF = "bqf"
    SigmaHypergeometric = "hyper"

    @classmethod
    def parse(cls, s: "str | RouteId") -> "RouteId":
        if isinstance(s, RouteId):
            return s
        for r in cls:
            if s in (r.value, r.name):
                return r
        raise ValueError(f"unknown route {s!r}")


_FIELD_ROUTES = (RouteId.K1_congruence, RouteId.K2_congruence, RouteId.K3_indefinite)
SERIES = ("theta", "rho", "rhostar", "sigma", "sigmastar")
ROUTES_FOR: dict[str, tuple[RouteId, ...]] = {
    "theta": _FIELD_ROUTES,
    "rho": _FIELD_ROUTES + (RouteId.EtaQuotient, RouteId.PartitionProduct),
    "rhostar": _FIELD_ROUTES,
    "sigma": (RouteId.SigmaBQF, RouteId.SigmaHypergeometric),
    "sigmastar": (RouteId.SigmaBQF,),
}

# 2x > sqrt6 |y|  <=>  2x^2 > 3y^2, x > 0;   x > sqrt6 |y|  <=>  x^2 > 6y^2, x > 0
K3_RHO_WEDGE = Wedge("pos_x_dominant", 2, 3)
K3_RHOSTAR_WEDGE = Wedge("pos_x_dominant", 1, 6)


def theta_component(route: RouteId, residue: int, N: int, rule: str = "min_abs_y") -> QSeries:
    """The part of Theta supported on ``residue`` (1 or 5) mod 24, to q^N."""
    route = RouteId.parse(route)
    if residue not in (1, 5):
        raise ValueError("Theta only has components at 1 and 5 mod 24")
    rho = residue == 1
    if route is RouteId.K1_congruence:
        if rho:
            return theta_definite(FORM_K1_PRINCIPAL, k1_rho_set(), N)
        return theta_definite(FORM_K1_NONPRINCIPAL, k1_rhostar_set(), N)
    if route is RouteId.K2_congruence:
        return theta_definite(FORM_K2, k2_rho_set() if rho else k2_rhostar_set(), N)
    if route is RouteId.K3_indefinite:
        if rho:
            w = K3_RHO_WEDGE
            return theta_indefinite(FORM_K3_TOTALLY_POSITIVE, k3_rho_set(), w, w.mirrored(), UNIT_V, N, rule)
        w = K3_RHOSTAR_WEDGE
        return theta_indefinite(FORM_K3_OTHER, k3_rhostar_set(), w, w.mirrored(), UNIT_U, N, rule)
    raise ValueError(f"route {route.name} does not produce Theta")


def _check_routes(series: str, route: RouteId) -> None:
    if route not in ROUTES_FOR[series]:
        allowed = ", ".join(r.value for r in ROUTES_FOR[series])
        raise ValueError(f"route {route.value} does not produce {series}; choose from {allowed}")


def rho_via(route: RouteId | str, N: int) -> QSeries:
    route = RouteId.parse(route)
    _check_routes("rho", route)
    if N < 0:
        return QSeries.zero(N)
    if route is RouteId.PartitionProduct:
        return rho_partition_series(N)
    if route is RouteId.EtaQuotient:
        full = eta_quotient_series(RHO_ETA_QUOTIENT, 24 * N + 1)
    else:
        full = theta_component(route, 1, 24 * N + 1)
    return extract_progression(full, 1).renamed("rho")


def rhostar_via(route: RouteId | str, N: int) -> QSeries:
    route = RouteId.parse(route)
    _check_routes("rhostar", route)
    if N < 0:
        return QSeries.zero(N)
    return extract_progression(theta_component(route, 5, 24 * N + 5), 5).renamed("rho*")


def theta_full(route: RouteId | str, N: int, rule: str = "min_abs_y") -> QSeries:
    route = RouteId.parse(route)
    _check_routes("theta", route)
    th = theta_component(route, 1, N, rule) + theta_component(route, 5, N, rule)
    for n, c in th.nonzero():
        if n % 24 not in (1, 5):
            raise ValueError(f"Theta via {route.value} has coefficient {c} at q^{n}, outside 1 and 5 mod 24")
    return th.renamed("theta")


def theta_from_parts(rho: QSeries, rhostar: QSeries) -> QSeries:
    """q rho(q^24) + q^5 rho*(q^24)."""
    return qs_shift(qs_substitute_power(rho, 24), 1) + qs_shift(qs_substitute_power(rhostar, 24), 5)


def sigma_via(route: RouteId | str, N: int, convention: str = "n_times_n_plus_1_over_2") -> QSeries:
    route = RouteId.parse(route)
    _check_routes("sigma", route)
    if route is RouteId.SigmaHypergeometric:
        return sigma_hypergeometric(N, convention)
    return sigma_pair_bqf(N)[0]


def sigmastar_via(route: RouteId | str, N: int) -> QSeries:
    route = RouteId.parse(route)
    _check_routes("sigmastar", route)
    return sigma_pair_bqf(N)[1]


def series_via(series: str, route: RouteId | str, N: int, **kw) -> QSeries:
    if series not in SERIES:
        raise ValueError(f"unknown series {series!r}")
    fn = {
        "theta": theta_full,
        "rho": rho_via,
        "rhostar": rhostar_via,
        "sigma": sigma_via,
        "sigmastar": sigmastar_via,
    }[series]
    return fn(route, N, **kw)


@dataclass(frozen=True)
class IdentityReport:
    lhs: RouteId
    rhs: RouteId
    series: str
    compared_up_to: int
    equal: bool
    first_mismatch: tuple[int, int, int] | None
    elapsed: float

    def __post_init__(self):
        if self.equal != (self.first_mismatch is None):
            raise ValueError("equal must hold exactly when there is no mismatch")

    def to_json_dict(self) -> dict:
        fm = None
        if self.first_mismatch is not None:
            n, a, b = self.first_mismatch
            fm = {"exponent": n, "lhs": a, "rhs": b}
        return {
            "series": self.series,
            "lhs": self.lhs.value,
            "rhs": self.rhs.value,
            "compared_up_to": self.compared_up_to,
            "equal": self.equal,
            "first_mismatch": fm,
            "elapsed_seconds": round(self.elapsed, 3),
        }


def _compare(lhs: RouteId, rhs: RouteId, series: str, a: QSeries, b: QSeries, upto: int, t0: float) -> IdentityReport:
    diff = a.first_difference(b, upto)
    top = min(upto, a.top, b.top)
    return IdentityReport(lhs, rhs, series, top, diff is None, diff, time.perf_counter() - t0)


def verify(lhs: RouteId | str, rhs: RouteId | str, N: int, series: str = "rho", **kw) -> IdentityReport:
    """Compute ``series`` by both routes and compare exactly up to q^N."""
    lhs, rhs = RouteId.parse(lhs), RouteId.parse(rhs)
    t0 = time.perf_counter()
    a = series_via(series, lhs, N, **kw)
    b = a if rhs is lhs else series_via(series, rhs, N, **kw)
    return _compare(lhs, rhs, series, a, b, N, t0)


def sigma_identity_check(N: int, convention: str = "n_times_n_plus_1_over_2") -> IdentityReport:
    """q^2 sigma(q^24) + sigma*(q^24) against q times the binary-form series.

    sigma comes from the q-hypergeometric sum, sigma* and the right side from
    the binary-form sums.  Compared through q^(24N+2).
    """
    t0 = time.perf_counter()
    top = 24 * N + 2
    bqf = sigma_theta_bqf(24 * N + 1)
    for n, c in bqf.nonzero():
        if n % 24 not in (1, 23):
            raise ValueError(f"binary-form series has coefficient {c} at q^{n}, outside +-1 mod 24")
    rhs = qs_shift(bqf, 1)
    sig = sigma_hypergeometric(N, convention)
    star = sigma_pair_bqf(N)[1]
    lhs = qs_shift(qs_substitute_power(sig, 24), 2) + qs_substitute_power(star, 24)
    return _compare(RouteId.SigmaHypergeometric, RouteId.SigmaBQF, "sigma-combined", lhs, rhs, top, t0)
