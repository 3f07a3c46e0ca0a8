"""Indefinite theta sums over unit orbits.

For the real field Q(sqrt6) a lattice point and its images under the
fundamental unit eps = 5 + 2 sqrt6 describe the same ideal, so the sums run
over orbits.  Each orbit is represented by a canonical point, and which of
its points lie in a congruence set is decided by following the orbit modulo
the set's modulus (the orbit meets a residue class iff its reduction does).

The unit has to preserve the form.  On x^2 - 6y^2 (and its negative) eps acts
by U = [[5, 12], [2, 5]].  On 2x^2 - 3y^2, where x sqrt2 + y sqrt3 is the
relevant number, it acts by V = [[5, 6], [4, 5]]; U does not preserve that form.

Everything here is integer arithmetic.  Wedges compare cx*x^2 with cy*y^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable

import numpy as np

from .qseries import QSeries
from .quadform import FORM_SIGMA, FORM_SIGMA_STAR, QuadForm, ResiduePairSet

__all__ = [
    "UnitAction",
    "UNIT_U",
    "UNIT_V",
    "unit_for",
    "Wedge",
    "WEDGE_KINDS",
    "RULES",
    "canonicalize",
    "is_canonical",
    "orbit_signature_table",
    "theta_indefinite",
    "sigma_theta_bqf",
    "sigma_pair_bqf",
    "extract_progression",
]


@dataclass(frozen=True)
class UnitAction:
    """(x, y) -> (a x + b y, c x + d y) with ad - bc = 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("unit action must have determinant 1")

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def inverse(self) -> "UnitAction":
        return UnitAction(self.d, -self.b, -self.c, self.a)

    def apply(self, p: tuple[int, int]) -> tuple[int, int]:
        x, y = p
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def apply_arrays(self, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return self.a * x + self.b * y, self.c * x + self.d * y

    def transform(self, form: QuadForm) -> QuadForm:
        """The form Q(U(x, y)) written in x, y."""
        A, B, C = form.A, form.B, form.C
        a, b, c, d = self.a, self.b, self.c, self.d
        return QuadForm(
            A * a * a + B * a * c + C * c * c,
            2 * A * a * b + B * (a * d + b * c) + 2 * C * c * d,
            A * b * b + B * b * d + C * d * d,
            form.D,
        )

    def preserves(self, form: QuadForm) -> bool:
        return self.transform(form) == form


UNIT_U = UnitAction(5, 12, 2, 5)
UNIT_V = UnitAction(5, 6, 4, 5)


def unit_for(form: QuadForm) -> UnitAction:
    for u in (UNIT_U, UNIT_V):
        if u.preserves(form):
            return u
    raise ValueError(f"neither supported unit action preserves {form}")


WEDGE_KINDS = ("pos_x_dominant", "neg_x_dominant", "pos_y_dominant", "neg_y_dominant")


@dataclass(frozen=True)
class Wedge:
    """An open cone cut out by cx*x^2 vs cy*y^2 and the sign of one coordinate.

    x-dominant kinds need cx x^2 > cy y^2 and take the sign of x;
    y-dominant kinds need cy y^2 > cx x^2 and take the sign of y.
    """

    kind: str
    cx: int
    cy: int

    def __post_init__(self):
        if self.kind not in WEDGE_KINDS:
            raise ValueError(f"unknown wedge kind {self.kind}")
        if self.cx < 1 or self.cy < 1:
            raise ValueError("wedge coefficients must be positive")

    @property
    def x_dominant(self) -> bool:
        return self.kind.endswith("x_dominant")

    @property
    def sign(self) -> int:
        return 1 if self.kind.startswith("pos") else -1

    def contains(self, x: int, y: int) -> bool:
        if self.x_dominant:
            return self.cx * x * x > self.cy * y * y and (x > 0 if self.sign > 0 else x < 0)
        return self.cy * y * y > self.cx * x * x and (y > 0 if self.sign > 0 else y < 0)

    def mask(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.x_dominant:
            m = self.cx * x * x > self.cy * y * y
            return m & ((x > 0) if self.sign > 0 else (x < 0))
        m = self.cy * y * y > self.cx * x * x
        return m & ((y > 0) if self.sign > 0 else (y < 0))

    def mirrored(self) -> "Wedge":
        flip = {"pos": "neg", "neg": "pos"}
        head, tail = self.kind.split("_", 1)
        return Wedge(f"{flip[head]}_{tail}", self.cx, self.cy)


# canonicalization ---------------------------------------------------------
#
# Along an orbit u^k p of a point with Q(p) != 0 each coordinate is
# alpha*eps^k + beta*eps^-k, so |x| and |y| are unimodal in k.  The keys
# below are therefore minimized at a unique point, and a point is that
# minimum iff it beats both neighbours u p and u^-1 p.

def _key_min_abs_y(x, y):
    return (abs(y), -x, -y)


def _key_min_abs_x(x, y):
    return (abs(x), -y, -x)


RULES: dict[str, Callable] = {"min_abs_y": _key_min_abs_y, "min_abs_x": _key_min_abs_x}


def canonicalize(p: tuple[int, int], u: UnitAction = UNIT_U, rule: str = "min_abs_y") -> tuple[int, int]:
    """The orbit point minimizing the rule's key; default is least |y|, then larger x."""
    x, y = int(p[0]), int(p[1])
    if x == 0 and y == 0:
        raise ValueError("the zero pair has no orbit representative")
    key = RULES[rule]
    ui = u.inverse()
    cur = (x, y)
    for step in (u, ui):
        while True:
            nxt = step.apply(cur)
            if key(*nxt) < key(*cur):
                cur = nxt
            else:
                break
    return cur


def is_canonical(p: tuple[int, int], u: UnitAction = UNIT_U, rule: str = "min_abs_y") -> bool:
    key = RULES[rule]
    k = key(*p)
    return k < key(*u.apply(p)) and k < key(*u.inverse().apply(p))


def _lexless(a: tuple, b: tuple) -> np.ndarray:
    """Elementwise lexicographic a < b for tuples of equal-shape arrays."""
    out = np.zeros(a[0].shape, dtype=bool)
    eq = np.ones(a[0].shape, dtype=bool)
    for ai, bi in zip(a, b):
        out |= eq & (ai < bi)
        eq &= ai == bi
    return out


def _canonical_mask(x: np.ndarray, y: np.ndarray, u: UnitAction, rule: str) -> np.ndarray:
    key = RULES[rule]
    k0 = key(x, y)
    x1, y1 = u.apply_arrays(x, y)
    x2, y2 = u.inverse().apply_arrays(x, y)
    return _lexless(k0, key(x1, y1)) & _lexless(k0, key(x2, y2))


# orbit membership -----------------------------------------------------------

def orbit_signature_table(u: UnitAction, residues: ResiduePairSet) -> np.ndarray:
    """For every class (x, y) mod L: the contribution of an orbit through it.

    An orbit counts once for each sign of entry it meets (the quotient of a
    signed set by the orbit relation), with that entry's weight.
    """
    L = residues.modulus
    ents = residues.entries
    table = np.zeros((L, L), dtype=np.int64)
    seen = np.zeros((L, L), dtype=bool)
    for x0 in range(L):
        for y0 in range(L):
            if seen[x0, y0]:
                continue
            orbit = []
            p = (x0, y0)
            while True:
                orbit.append(p)
                p = ((u.a * p[0] + u.b * p[1]) % L, (u.c * p[0] + u.d * p[1]) % L)
                if p == (x0, y0):
                    break
            weights: dict[int, set[int]] = {1: set(), -1: set()}
            for q in orbit:
                for e in ents:
                    if e.contains(*q):
                        weights[e.sign].add(e.weight)
            for s, ws in weights.items():
                if len(ws) > 1:
                    raise ValueError(f"orbit through {(x0, y0)} meets entries of different weights")
            val = sum(s * next(iter(ws)) for s, ws in weights.items() if ws)
            for q in orbit:
                table[q] = val
                seen[q] = True
    return table


# enumeration ----------------------------------------------------------------

def _ceil_sqrt(n: int) -> int:
    if n <= 0:
        return 0
    r = isqrt(n)
    return r if r * r == n else r + 1


def _check_positive(form: QuadForm, w: Wedge) -> None:
    A, C = form.A, form.C
    if w.x_dominant:
        ok = A > 0 and A * w.cy + C * w.cx >= 0
    else:
        ok = C > 0 and C * w.cx + A * w.cy >= 0
    if not ok:
        raise ValueError(f"{form} is not positive on the wedge {w}")


def _rows(form: QuadForm, w: Wedge, bound: int, ylo: int, yhi: int):
    """Wedge points with 0 < numerator <= bound and ylo <= |y| <= yhi."""
    A, C = form.A, form.C
    xs_all, ys_all = [], []
    for ya in range(ylo, yhi + 1):
        for y in ((ya, -ya) if ya else (0,)):
            if A > 0:
                lo2, hi2 = 1 - C * y * y, bound - C * y * y
                lo2, hi2 = -(-lo2 // A), hi2 // A
            else:
                lo2, hi2 = C * y * y - bound, C * y * y - 1
                lo2, hi2 = -(-lo2 // -A), hi2 // -A
            if hi2 < 0:
                continue
            xa_lo, xa_hi = _ceil_sqrt(max(lo2, 0)), isqrt(hi2)
            if w.x_dominant:
                xa_lo = max(xa_lo, isqrt(w.cy * y * y // w.cx))
            else:
                xa_hi = min(xa_hi, isqrt(w.cy * y * y // w.cx) + 1)
            if xa_hi < xa_lo:
                continue
            xa = np.arange(xa_lo, xa_hi + 1, dtype=np.int64)
            xs = np.concatenate([xa, -xa[xa > 0]])
            xs_all.append(xs)
            ys_all.append(np.full(xs.size, y, dtype=np.int64))
    if not xs_all:
        e = np.zeros(0, dtype=np.int64)
        return e, e
    x = np.concatenate(xs_all)
    y = np.concatenate(ys_all)
    num = A * x * x + C * y * y
    keep = w.mask(x, y) & (num > 0) & (num <= bound)
    return x[keep], y[keep]


def _scan(form, w, u, rule, table, L, bound, ylo, yhi):
    x, y = _rows(form, w, bound, ylo, yhi)
    canon = _canonical_mask(x, y, u, rule)
    x, y = x[canon], y[canon]
    sig = table[x % L, y % L]
    hit = sig != 0
    num = form.A * x[hit] * x[hit] + form.C * y[hit] * y[hit]
    if np.any(num % form.D):
        raise ValueError(f"{form} takes a non-integral value on a counted orbit")
    return x.size, num // form.D, sig[hit]


def theta_indefinite(
    form: QuadForm,
    residues: ResiduePairSet,
    wedge_pos: Wedge | None,
    wedge_neg: Wedge | None,
    u: UnitAction,
    N: int,
    rule: str = "min_abs_y",
    max_doublings: int = 24,
) -> QSeries:
    """Orbit-counting theta sum, exact to q^N.

    coefficient of q^n = sum over orbits with value n whose canonical point
    lies in ``wedge_pos`` of the orbit's signature, minus the same over
    ``wedge_neg``.  Pass ``None`` for a wedge that is not used.

    The |y| range starts at sqrt(N*D) and is extended by doubling until a
    whole new band holds no canonical point of value <= N.
    """
    if form.definite or form.discriminant <= 0:
        raise ValueError(f"{form} is not indefinite")
    if form.B != 0:
        raise ValueError("only diagonal indefinite forms are supported")
    if not u.preserves(form):
        raise ValueError(f"unit {u.matrix} does not preserve {form}")
    if rule not in RULES:
        raise ValueError(f"unknown canonicalization rule {rule}")
    if N < 0:
        return QSeries.zero(N)
    total = np.zeros(N + 1, dtype=np.int64)
    if len(residues) == 0:
        return QSeries(total, 0, N)
    table = orbit_signature_table(u, residues)
    L = residues.modulus
    bound = N * form.D
    for w, s in ((wedge_pos, 1), (wedge_neg, -1)):
        if w is None:
            continue
        _check_positive(form, w)
        Y = isqrt(bound) + 2
        _, vals, sig = _scan(form, w, u, rule, table, L, bound, 0, Y)
        np.add.at(total, vals, s * sig)
        for _ in range(max_doublings):
            found, vals, sig = _scan(form, w, u, rule, table, L, bound, Y + 1, 2 * Y)
            np.add.at(total, vals, s * sig)
            if found == 0:
                break
            Y *= 2
        else:
            raise RuntimeError("orbit enumeration did not stabilize; enumeration bound insufficient")
    return QSeries(total, 0, N)


def extract_progression(series: QSeries, residue: int, modulus: int = 24) -> QSeries:
    """c_k = coefficient of q^(modulus*k + residue), after checking nothing lies elsewhere."""
    for n, c in series.nonzero():
        if n % modulus != residue % modulus:
            raise ValueError(f"coefficient {c} at q^{n} lies outside {residue} mod {modulus}")
    T = series.top
    K = (T - residue) // modulus
    if K < 0:
        return QSeries.zero(K)
    dense = series.window(0, T)
    return QSeries(dense[residue % modulus :: modulus][: K + 1], 0, K)


# sigma / sigma* ----------------------------------------------------------------

SIGMA_WEDGE = Wedge("pos_x_dominant", 1, 6)
SIGMA_STAR_WEDGE = Wedge("pos_y_dominant", 1, 6)


def _sigma_set() -> ResiduePairSet:
    from .tables import sigma_set

    return sigma_set()


def sigma_theta_bqf(N: int, rule: str = "min_abs_y") -> QSeries:
    """sum_{S1} q^{x^2-6y^2} + sum_{S23} q^{6y^2-x^2}, signed by A+/A-, to q^N.

    Points p and -p are identified (both lie in the same residue set, and an
    ideal has the generators +-eps^k), which is realized by using only the
    half-cones x > 0 and y > 0.
    """
    s = _sigma_set()
    a = theta_indefinite(FORM_SIGMA, s, SIGMA_WEDGE, None, UNIT_U, N, rule)
    b = theta_indefinite(FORM_SIGMA_STAR, s, SIGMA_STAR_WEDGE, None, UNIT_U, N, rule)
    return a + b


def sigma_pair_bqf(N: int, rule: str = "min_abs_y") -> tuple[QSeries, QSeries]:
    """(sigma, sigma*) to q^N from the binary-form sums.

    sigma has exponents (x^2-6y^2-1)/24, sigma* has (6y^2-x^2+1)/24.
    """
    if N < 0:
        return QSeries.zero(N), QSeries.zero(N)
    s = _sigma_set()
    a = theta_indefinite(FORM_SIGMA, s, SIGMA_WEDGE, None, UNIT_U, 24 * N + 1, rule)
    sigma = extract_progression(a, 1).truncate(N)
    b = theta_indefinite(FORM_SIGMA_STAR, s, SIGMA_STAR_WEDGE, None, UNIT_U, 24 * N + 23, rule)
    # q^(24k-1) carries sigma*_k; the progression 23 mod 24 starts at k = 1
    tail = extract_progression(b, 23)
    coeffs = np.concatenate([[0], tail.dense()])[: N + 1]
    star = QSeries(coeffs, 0, N)
    return sigma.renamed("sigma"), star.renamed("sigma*")
