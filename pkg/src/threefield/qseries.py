"""Exact truncated q-series with integer coefficients.

A :class:`QSeries` stores coefficients densely from ``offset`` upward and a
``truncation`` N: every coefficient of exponent <= N is exact, anything
above is unknown.  ``truncation=None`` marks an exact polynomial.

Coefficients live in int64 arrays.  Every kernel checks a magnitude bound
before doing vector arithmetic; when the bound cannot be met it redoes the
work on Python integers, and the final result is narrowed back to int64 or an
:class:`OverflowError` is raised.  Nothing wraps silently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

INT64_MAX = 2**63 - 1

__all__ = [
    "INT64_MAX",
    "QSeries",
    "qs_add",
    "qs_sub",
    "qs_neg",
    "qs_mul",
    "qs_scale",
    "qs_inverse",
    "qs_substitute_power",
    "qs_shift",
    "qpochhammer_product",
    "eta_quotient_series",
    "pentagonal_terms",
    "jacobi_cube_terms",
]


# --------------------------------------------------------------------------
# overflow plumbing

def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(v)) for v in a.flat)
    return int(np.abs(a).max())


def _widen(a: np.ndarray) -> np.ndarray:
    return a if a.dtype == object else a.astype(object)


def _narrow(a: np.ndarray) -> np.ndarray:
    if a.dtype != object:
        return a
    if a.size and _maxabs(a) > INT64_MAX:
        raise OverflowError("series coefficient exceeds the int64 range")
    return a.astype(np.int64)


def _to_int64(values) -> np.ndarray:
    if isinstance(values, np.ndarray) and values.dtype == np.int64:
        return values.copy()
    obj = np.array([int(v) for v in values], dtype=object)
    return _narrow(obj) if obj.size else np.zeros(0, dtype=np.int64)


def _tmin(*ts):
    known = [t for t in ts if t is not None]
    return min(known) if known else None


# --------------------------------------------------------------------------
# the value type

@dataclass(frozen=True, eq=False)
class QSeries:
    """Truncated series sum_{n>=offset} c_n q^n, exact for n <= truncation."""

    coeffs: np.ndarray
    offset: int = 0
    truncation: int | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError("offset must be nonnegative")
        arr = _to_int64(self.coeffs)
        t = self.truncation
        if t is not None:
            if t < self.offset - 1:
                raise ValueError("truncation must be >= offset - 1")
            arr = arr[: t - self.offset + 1]
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "offset", int(self.offset))
        object.__setattr__(self, "truncation", None if t is None else int(t))

    # constructors ---------------------------------------------------------

    @classmethod
    def from_dense(cls, values: Sequence[int], truncation: int | None = None, name: str = "") -> "QSeries":
        """Series with coefficient ``values[n]`` at q^n; truncation defaults to len-1."""
        if truncation is None:
            truncation = len(values) - 1
        return cls(values, 0, truncation, name)

    @classmethod
    def polynomial(cls, values: Sequence[int], offset: int = 0, name: str = "") -> "QSeries":
        return cls(values, offset, None, name)

    @classmethod
    def zero(cls, truncation: int | None = None) -> "QSeries":
        return cls(np.zeros(0, dtype=np.int64), 0, truncation)

    @classmethod
    def one(cls, truncation: int | None = None) -> "QSeries":
        return cls([1], 0, truncation)

    # access ---------------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.truncation is None

    @property
    def top(self) -> int:
        """Largest exponent with a known coefficient (stored or implied zero)."""
        if self.truncation is not None:
            return self.truncation
        return self.offset + len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def coeff(self, n: int) -> int:
        if self.truncation is not None and n > self.truncation:
            raise ValueError(f"coefficient of q^{n} lies beyond truncation {self.truncation}")
        k = n - self.offset
        if k < 0 or k >= len(self.coeffs):
            return 0
        return int(self.coeffs[k])

    def __getitem__(self, n: int) -> int:
        return self.coeff(n)

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients of exponents lo..hi inclusive (a fresh int64 array)."""
        if self.truncation is not None and hi > self.truncation:
            raise ValueError(f"window top {hi} lies beyond truncation {self.truncation}")
        out = np.zeros(max(hi - lo + 1, 0), dtype=np.int64)
        if out.size == 0:
            return out
        a0 = max(lo, self.offset)
        a1 = min(hi, self.offset + len(self.coeffs) - 1)
        if a1 >= a0:
            out[a0 - lo : a1 - lo + 1] = self.coeffs[a0 - self.offset : a1 - self.offset + 1]
        return out

    def dense(self, upto: int | None = None) -> np.ndarray:
        return self.window(0, self.top if upto is None else upto)

    def to_list(self, upto: int | None = None) -> list[int]:
        return [int(v) for v in self.dense(upto)]

    def nonzero(self) -> list[tuple[int, int]]:
        idx = np.flatnonzero(self.coeffs)
        return [(int(i) + self.offset, int(self.coeffs[i])) for i in idx]

    def support(self) -> list[int]:
        return [n for n, _ in self.nonzero()]

    def truncate(self, n: int) -> "QSeries":
        """Forget everything above q^n (never raises the truncation)."""
        t = n if self.truncation is None else min(n, self.truncation)
        off = min(self.offset, t + 1)
        return QSeries(self.coeffs[: max(t - self.offset + 1, 0)], off, t, self.name)

    def renamed(self, name: str) -> "QSeries":
        return QSeries(self.coeffs, self.offset, self.truncation, name)

    # comparison -----------------------------------------------------------

    def first_difference(self, other: "QSeries", upto: int | None = None):
        """First (n, self_n, other_n) that differs on the common known range, else None."""
        ts = [s.truncation for s in (self, other) if s.truncation is not None]
        top = min(ts) if ts else max(self.top, other.top)
        if upto is not None:
            top = min(top, upto)
        a = self.window(0, top)
        b = other.window(0, top)
        bad = np.flatnonzero(a != b)
        if bad.size == 0:
            return None
        n = int(bad[0])
        return n, int(a[n]), int(b[n])

    def agrees_with(self, other: "QSeries", upto: int | None = None) -> bool:
        return self.first_difference(other, upto) is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.truncation == other.truncation and self.agrees_with(other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        head = " + ".join(f"{c}q^{n}" for n, c in self.nonzero()[:8])
        more = " + ..." if len(self.nonzero()) > 8 else ""
        t = "exact" if self.truncation is None else f"O(q^{self.truncation + 1})"
        return f"QSeries({head or '0'}{more}, {t})"

    # operators --------------------------------------------------------------

    def __add__(self, other):
        return qs_add(self, other)

    def __sub__(self, other):
        return qs_sub(self, other)

    def __neg__(self):
        return qs_neg(self)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return qs_scale(self, int(other))
        return qs_mul(self, other)

    __rmul__ = __mul__

    # serialization ----------------------------------------------------------

    def to_json_dict(self, name: str | None = None) -> dict:
        hi = self.top
        coeffs = self.window(self.offset, hi) if hi >= self.offset else np.zeros(0, dtype=np.int64)
        return {
            "name": self.name if name is None else name,
            "offset": self.offset,
            "truncation": self.truncation,
            "coeffs": [int(c) for c in coeffs],
        }

    def to_json(self, name: str | None = None) -> str:
        return json.dumps(self.to_json_dict(name))

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "QSeries":
        return cls([int(c) for c in d["coeffs"]], int(d["offset"]), d["truncation"], d.get("name", ""))

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        return cls.from_json_dict(json.loads(text))

    def to_csv_lines(self, dense: bool = False) -> list[str]:
        """``"n,c"`` lines: nonzero coefficients only, or every exponent 0..top."""
        if dense:
            return [f"{n},{c}" for n, c in enumerate(self.to_list())]
        return [f"{n},{c}" for n, c in self.nonzero()]


# --------------------------------------------------------------------------
# algebra

def qs_add(a: QSeries, b: QSeries) -> QSeries:
    t = _tmin(a.truncation, b.truncation)
    lo = min(a.offset, b.offset)
    hi = max(a.offset + len(a), b.offset + len(b)) - 1
    if t is not None:
        hi = min(hi, t)
        lo = min(lo, t + 1)
    if hi < lo:
        return QSeries(np.zeros(0, dtype=np.int64), lo, t)
    x, y = a.window(lo, hi), b.window(lo, hi)
    if _maxabs(x) + _maxabs(y) > INT64_MAX:
        out = _narrow(_widen(x) + _widen(y))
    else:
        out = x + y
    return QSeries(out, lo, t)


def qs_scale(a: QSeries, k: int) -> QSeries:
    if _maxabs(a.coeffs) * abs(k) > INT64_MAX:
        out = _narrow(_widen(a.coeffs) * k)
    else:
        out = a.coeffs * k
    return QSeries(out, a.offset, a.truncation)


def qs_neg(a: QSeries) -> QSeries:
    return qs_scale(a, -1)


def qs_sub(a: QSeries, b: QSeries) -> QSeries:
    return qs_add(a, qs_neg(b))


def _convolve(x: np.ndarray, y: np.ndarray, n_out: int) -> np.ndarray:
    x, y = x[:n_out], y[:n_out]
    if x.size == 0 or y.size == 0:
        return np.zeros(0, dtype=np.int64)
    if x.dtype != object and y.dtype != object:
        if min(x.size, y.size) * _maxabs(x) * _maxabs(y) <= INT64_MAX:
            return np.convolve(x, y)[:n_out]
    return np.convolve(_widen(x), _widen(y))[:n_out]


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product; exact up to min(a.truncation + b.offset, b.truncation + a.offset)."""
    cands = []
    if a.truncation is not None:
        cands.append(a.truncation + b.offset)
    if b.truncation is not None:
        cands.append(b.truncation + a.offset)
    t = min(cands) if cands else None
    off = a.offset + b.offset
    n_out = len(a) + len(b) - 1 if len(a) and len(b) else 0
    if t is not None:
        n_out = min(n_out, t - off + 1)
        off = min(off, t + 1)
    if n_out <= 0:
        return QSeries(np.zeros(0, dtype=np.int64), off, t)
    return QSeries(_narrow(_convolve(a.coeffs, b.coeffs, n_out)), off, t)


def qs_inverse(a: QSeries, N: int) -> QSeries:
    """1/a to q^N for a series with constant term 1, by the usual recurrence."""
    if a.offset != 0 or a.coeff(0) != 1:
        raise ValueError("series inversion needs constant term 1")
    if a.truncation is not None:
        N = min(N, a.truncation)
    c = a.window(0, N)
    exps = np.flatnonzero(c[1:]) + 1
    return QSeries(_narrow(_div_sparse(_unit(N), exps, c[exps])), 0, N)


def qs_substitute_power(a: QSeries, k: int) -> QSeries:
    """q -> q^k.  Exponents between k*T and k*(T+1) are known zeros, so the
    new truncation is k*(T+1) - 1."""
    if k < 1:
        raise ValueError("substitution power must be >= 1")
    t = None if a.truncation is None else k * (a.truncation + 1) - 1
    if len(a) == 0:
        return QSeries(np.zeros(0, dtype=np.int64), k * a.offset if t is None else min(k * a.offset, t + 1), t)
    out = np.zeros(k * (len(a) - 1) + 1, dtype=np.int64)
    out[::k] = a.coeffs
    return QSeries(out, k * a.offset, t)


def qs_shift(a: QSeries, m: int) -> QSeries:
    if m < 0:
        raise ValueError("negative shifts are not supported")
    t = None if a.truncation is None else a.truncation + m
    return QSeries(a.coeffs, a.offset + m, t, a.name)


# --------------------------------------------------------------------------
# sparse kernels on dense arrays indexed 0..N

def _unit(N: int) -> np.ndarray:
    out = np.zeros(N + 1, dtype=np.int64)
    if N >= 0:
        out[0] = 1
    return out


def _mul_sparse(arr: np.ndarray, exps: np.ndarray, coefs: np.ndarray) -> np.ndarray:
    """arr * (sum c_j q^{e_j}), truncated to len(arr)."""
    n = arr.size
    if arr.dtype != object and int(np.abs(coefs).sum()) * _maxabs(arr) > INT64_MAX:
        arr = _widen(arr)
    out = np.zeros_like(arr)
    for e, c in zip(exps.tolist(), coefs.tolist()):
        if e >= n:
            continue
        if c == 1:
            out[e:] += arr[: n - e]
        elif c == -1:
            out[e:] -= arr[: n - e]
        else:
            out[e:] += c * arr[: n - e]
    return out


def _div_sparse(arr: np.ndarray, exps: np.ndarray, coefs: np.ndarray) -> np.ndarray:
    """Solve b * (1 + sum c_j q^{e_j}) = arr for b, e_j >= 1 ascending.

    When every e_j is a multiple of d the residue classes mod d decouple, so
    the recurrence runs over rows of an (n/d, d) reshape.
    """
    n = arr.size
    keep = exps < n
    exps, coefs = exps[keep].astype(np.int64), coefs[keep].astype(np.int64)
    if exps.size == 0:
        return arr.copy()
    d = 0
    for e in exps.tolist():
        d = gcd(d, e)
    rows = -(-n // d)
    b = np.zeros(rows * d, dtype=arr.dtype)
    b[:n] = arr
    b = b.reshape(rows, d)
    src = b.copy()
    steps = exps // d
    neg = -coefs
    abs_prefix = np.cumsum(np.abs(coefs)).tolist()
    steps_l = steps.tolist()
    wide = b.dtype == object
    if wide:
        neg = _widen(neg)
    run = 0 if wide else int(np.abs(b[0]).max())
    k = 0
    for m in range(1, rows):
        while k < len(steps_l) and steps_l[k] <= m:
            k += 1
        if not wide:
            rowmax = int(np.abs(src[m]).max())
            if abs_prefix[k - 1] * run + rowmax > INT64_MAX:
                b, src, wide = _widen(b), _widen(src), True
                neg = _widen(neg)
        idx = m - steps[:k]
        if d == 1:
            b[m, 0] = src[m, 0] + np.dot(neg[:k], b[idx, 0])
        else:
            b[m] = src[m] + neg[:k] @ b[idx]
        if not wide:
            run = max(run, int(np.abs(b[m]).max()))
    return b.reshape(-1)[:n]


def _mul_binomial(arr: np.ndarray, e: int, sign: int, power: int) -> np.ndarray:
    """arr * (1 + sign q^e)^power truncated; power may be negative."""
    n = arr.size
    if e >= n or power == 0:
        return arr
    if power > 0:
        for _ in range(power):
            if arr.dtype != object and 2 * _maxabs(arr) > INT64_MAX:
                arr = _widen(arr)
            nxt = arr.copy()
            nxt[e:] += sign * arr[: n - e]
            arr = nxt
        return arr
    for _ in range(-power):
        if sign == -1:
            arr = _div_geometric(arr, e)
        else:
            # 1/(1+q^e) = (1-q^e)/(1-q^{2e})
            arr = _mul_binomial(arr, e, -1, 1)
            arr = _div_geometric(arr, 2 * e)
    return arr


def _div_geometric(arr: np.ndarray, s: int) -> np.ndarray:
    """arr / (1 - q^s): a running sum along each residue class mod s."""
    n = arr.size
    if s >= n:
        return arr
    if arr.dtype != object and _maxabs(arr) * (n // s + 1) > INT64_MAX:
        arr = _widen(arr)
    rows = -(-n // s)
    pad = np.zeros(rows * s, dtype=arr.dtype)
    pad[:n] = arr
    return np.cumsum(pad.reshape(rows, s), axis=0).reshape(-1)[:n]


# --------------------------------------------------------------------------
# products

def qpochhammer_product(terms: Iterable[tuple[int, int, int, int]], N: int) -> QSeries:
    """prod over terms of prod_{k>=0} (1 + sign*q^(first + k*step))^power, to q^N."""
    terms = list(terms)
    for sign, first, step, power in terms:
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if step < 1:
            raise ValueError("step must be positive")
        if first < 1:
            raise ValueError("first exponent must be positive")
    if N < 0:
        return QSeries.zero(N)
    # multiply positive powers before dividing, smallest exponents first
    factors = []
    for sign, first, step, power in terms:
        factors.extend((power < 0, e, sign, power) for e in range(first, N + 1, step))
    factors.sort()
    arr = _unit(N)
    for _, e, sign, power in factors:
        arr = _mul_binomial(arr, e, sign, power)
    return QSeries(_narrow(arr), 0, N)


def pentagonal_terms(N: int, d: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Exponents and signs of (q^d;q^d)_inf up to q^N (Euler)."""
    exps, coefs = [0], [1]
    k = 1
    while d * k * (3 * k - 1) // 2 <= N:
        s = -1 if k % 2 else 1
        for e in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if d * e <= N:
                exps.append(d * e)
                coefs.append(s)
        k += 1
    order = np.argsort(exps, kind="stable")
    return np.array(exps, dtype=np.int64)[order], np.array(coefs, dtype=np.int64)[order]


def jacobi_cube_terms(N: int, d: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """(q^d;q^d)_inf^3 = sum_k (-1)^k (2k+1) q^{d k(k+1)/2} up to q^N (Jacobi)."""
    exps, coefs = [], []
    k = 0
    while d * k * (k + 1) // 2 <= N:
        exps.append(d * k * (k + 1) // 2)
        coefs.append((-1) ** k * (2 * k + 1))
        k += 1
    return np.array(exps, dtype=np.int64), np.array(coefs, dtype=np.int64)


def _eta_chunks(r: int) -> list[int]:
    """Split |r| into powers 3 and 1 of (q^d;q^d), cubes first."""
    r = abs(r)
    return [3] * (r // 3) + [1] * (r % 3)


def eta_quotient_series(r: Mapping[int, int], N: int) -> QSeries:
    """q^{sum(delta r_delta)/24} prod_delta (q^delta;q^delta)_inf^{r_delta} to q^N.

    The product is computed in the variable q^g, g = gcd of the deltas, then
    spread back out.  Numerator factors go first and the denominators are
    divided out one cube at a time, cycling over delta, which keeps every
    intermediate a holomorphic quotient for the quotients used here.
    """
    r = {int(dl): int(e) for dl, e in r.items() if int(e) != 0}
    for dl in r:
        if dl < 1:
            raise ValueError("eta arguments delta must be positive")
    total = sum(dl * e for dl, e in r.items())
    if total % 24:
        raise ValueError(f"leading power {total}/24 is not an integer")
    lead = total // 24
    if lead < 0:
        raise ValueError("leading power is negative; not a power series")
    if N < lead:
        return QSeries(np.zeros(0, dtype=np.int64), min(lead, N + 1) if N >= -1 else 0, N)
    g = 0
    for dl in r:
        g = gcd(g, dl)
    g = g or 1
    M = (N - lead) // g
    arr = _unit(M)
    for dl in sorted(dl for dl, e in r.items() if e > 0):
        for c in _eta_chunks(r[dl]):
            exps, coefs = (jacobi_cube_terms if c == 3 else pentagonal_terms)(M, dl // g)
            arr = _mul_sparse(arr, exps, coefs)
    queues = {dl: _eta_chunks(e) for dl, e in sorted(r.items()) if e < 0}
    while any(queues.values()):
        for dl, q in queues.items():
            if q:
                c = q.pop(0)
                exps, coefs = (jacobi_cube_terms if c == 3 else pentagonal_terms)(M, dl // g)
                arr = _div_sparse(arr, exps[1:], coefs[1:])
    reduced = QSeries(_narrow(arr), 0, M)
    return qs_shift(qs_substitute_power(reduced, g), lead).truncate(N)
