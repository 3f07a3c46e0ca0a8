"""Binary quadratic forms, congruence sets of lattice points, and definite theta sums."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np

from .qseries import QSeries

__all__ = [
    "QuadForm",
    "ResidueEntry",
    "ResiduePairSet",
    "RayClassRow",
    "FORM_K1_PRINCIPAL",
    "FORM_K1_NONPRINCIPAL",
    "FORM_K2",
    "FORM_K3_TOTALLY_POSITIVE",
    "FORM_K3_OTHER",
    "FORM_SIGMA",
    "FORM_SIGMA_STAR",
    "row_form",
    "theta_definite",
    "theta_from_row",
    "theta_from_rows",
    "residue_of_form",
]


@dataclass(frozen=True)
class QuadForm:
    """(A x^2 + B x y + C y^2) / D."""

    A: int
    B: int
    C: int
    D: int = 1

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("denominator D must be positive")

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    @property
    def definite(self) -> bool:
        return self.discriminant < 0 and self.A > 0

    def numerator(self, x: int, y: int) -> int:
        return self.A * x * x + self.B * x * y + self.C * y * y

    def value(self, x: int, y: int) -> int:
        num = self.numerator(x, y)
        if num % self.D:
            raise ValueError(f"form value at {(x, y)} is not an integer")
        return num // self.D

    def check_integral_on(self, residues: "ResiduePairSet") -> None:
        """Raise unless D divides the numerator on every point of every entry.

        The numerator mod D only depends on (x, y) mod D, and an entry pins
        x mod mx, so x = rx + mx*s with s mod D covers every admissible class.
        """
        D = self.D
        if D == 1:
            return
        for e in residues.entries:
            for s in range(D):
                x = e.rx + e.mx * s
                for t in range(D):
                    y = e.ry + e.my * t
                    if self.numerator(x, y) % D:
                        raise ValueError(f"{self} is not integral on x={e.rx} mod {e.mx}, y={e.ry} mod {e.my}")

    def __str__(self) -> str:
        body = f"{self.A}x^2{self.B:+d}xy{self.C:+d}y^2"
        return body if self.D == 1 else f"({body})/{self.D}"


FORM_K1_PRINCIPAL = QuadForm(1, 0, 6, 6)
FORM_K1_NONPRINCIPAL = QuadForm(2, 0, 3, 6)
FORM_K2 = QuadForm(1, 0, 1, 1)
FORM_K3_TOTALLY_POSITIVE = QuadForm(2, 0, -3, 6)
FORM_K3_OTHER = QuadForm(1, 0, -6, 6)
FORM_SIGMA = QuadForm(1, 0, -6, 1)
FORM_SIGMA_STAR = QuadForm(-1, 0, 6, 1)


@dataclass(frozen=True)
class ResidueEntry:
    """x = rx (mod mx), y = ry (mod my), counted sign*weight times."""

    mx: int
    rx: int
    my: int
    ry: int
    weight: int = 1
    sign: int = 1

    def __post_init__(self):
        if self.mx < 1 or self.my < 1:
            raise ValueError("moduli must be positive")
        if not (0 <= self.rx < self.mx and 0 <= self.ry < self.my):
            raise ValueError("residues must be reduced")
        if self.weight < 1:
            raise ValueError("weight must be a positive integer")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def multiplier(self) -> int:
        return self.sign * self.weight

    def contains(self, x: int, y: int) -> bool:
        return (x - self.rx) % self.mx == 0 and (y - self.ry) % self.my == 0

    def overlaps(self, other: "ResidueEntry") -> bool:
        # CRT: the two progressions meet iff residues agree modulo the gcds
        return (self.rx - other.rx) % gcd(self.mx, other.mx) == 0 and (self.ry - other.ry) % gcd(
            self.my, other.my
        ) == 0


@dataclass(frozen=True)
class ResiduePairSet:
    entries: tuple[ResidueEntry, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        ents = tuple(self.entries)
        object.__setattr__(self, "entries", ents)
        for a in range(len(ents)):
            for b in range(a + 1, len(ents)):
                if ents[a].overlaps(ents[b]):
                    raise ValueError(f"entries {ents[a]} and {ents[b]} overlap")

    @classmethod
    def from_pairs(cls, m: int | tuple[int, int], plus: Iterable[tuple[int, int]] = (), minus: Iterable[tuple[int, int]] = (), weight: int = 1, name: str = "") -> "ResiduePairSet":
        mx, my = (m, m) if isinstance(m, int) else m
        ents = [ResidueEntry(mx, a % mx, my, b % my, weight, 1) for a, b in plus]
        ents += [ResidueEntry(mx, a % mx, my, b % my, weight, -1) for a, b in minus]
        return cls(tuple(ents), name)

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other: "ResiduePairSet") -> "ResiduePairSet":
        return ResiduePairSet(self.entries + other.entries, self.name or other.name)

    def entry_for(self, x: int, y: int) -> ResidueEntry | None:
        for e in self.entries:
            if e.contains(x, y):
                return e
        return None

    @property
    def modulus(self) -> int:
        """A common modulus L such that membership depends only on (x, y) mod L."""
        L = 1
        for e in self.entries:
            for m in (e.mx, e.my):
                L = L * m // gcd(L, m)
        return L

    def signature_table(self) -> np.ndarray:
        """L x L table of sign*weight for each residue class (0 outside)."""
        L = self.modulus
        tab = np.zeros((L, L), dtype=np.int64)
        xs = np.arange(L)[:, None]
        ys = np.arange(L)[None, :]
        for e in self.entries:
            hit = ((xs - e.rx) % e.mx == 0) & ((ys - e.ry) % e.my == 0)
            tab[hit] += e.multiplier
        return tab


_COSETS = ("I", "J", "B", "B'")
_FIELDS = ("K1", "K2", "K3")


@dataclass(frozen=True)
class RayClassRow:
    """One printed ray-class row: the class label and its congruence data.

    ``principal_form`` picks the first form of the field: for K1 the
    principal-class form (x^2+6y^2)/6, for K3 the form (2x^2-3y^2)/6 used by
    classes with totally positive generators.  K2 has a single form.
    ``erratum`` is empty unless the stored data differ from the print.
    """

    field_id: str
    label: str
    x1: Fraction
    y1: Fraction
    M: int
    i: int
    j: int
    q_residue: int
    coset: str
    principal_form: bool
    erratum: str = ""

    def __post_init__(self):
        if self.field_id not in _FIELDS:
            raise ValueError(f"unknown field {self.field_id}")
        if self.coset not in _COSETS:
            raise ValueError(f"unknown coset {self.coset}")
        object.__setattr__(self, "x1", Fraction(self.x1))
        object.__setattr__(self, "y1", Fraction(self.y1))
        if self.M * self.x1 != self.i or self.M * self.y1 != self.j:
            raise ValueError(f"row {self.label}: (i, j) != M (x1, y1)")
        allowed = {1, 5, 7, 11} if self.field_id == "K1" else {1, 5}
        if self.q_residue not in allowed:
            raise ValueError(f"row {self.label}: residue {self.q_residue} not allowed for {self.field_id}")

    @property
    def key(self) -> tuple[str, str, int, int]:
        return (self.field_id, self.coset, self.i, self.j)

    def to_json_dict(self) -> dict:
        return {
            "field_id": self.field_id,
            "label": self.label,
            "x1": str(self.x1),
            "y1": str(self.y1),
            "M": self.M,
            "i": self.i,
            "j": self.j,
            "q_residue": self.q_residue,
            "coset": self.coset,
            "principal_form": self.principal_form,
            "erratum": self.erratum,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "RayClassRow":
        return cls(
            d["field_id"], d["label"], Fraction(d["x1"]), Fraction(d["y1"]), int(d["M"]),
            int(d["i"]), int(d["j"]), int(d["q_residue"]), d["coset"], bool(d["principal_form"]),
            d.get("erratum", ""),
        )


def row_form(row: RayClassRow) -> QuadForm:
    if row.field_id == "K1":
        return FORM_K1_PRINCIPAL if row.principal_form else FORM_K1_NONPRINCIPAL
    if row.field_id == "K2":
        return FORM_K2
    return FORM_K3_TOTALLY_POSITIVE if row.principal_form else FORM_K3_OTHER


def residue_of_form(row: RayClassRow) -> int:
    return row_form(row).value(row.i, row.j) % 24


def _entry_counts(form: QuadForm, e: ResidueEntry, N: int) -> np.ndarray:
    """#{(x, y) in the entry : form = n} for n = 0..N (unsigned)."""
    A, B, C, D = form.A, form.B, form.C, form.D
    bound = N * D
    delta = 4 * A * C - B * B
    counts = np.zeros(N + 1, dtype=np.int64)
    if bound < 0:
        return counts
    # y-discriminant 4*C*bound - delta*x^2 must be >= 0
    X = isqrt(4 * C * bound // delta) + 1
    x0 = -X + ((e.rx + X) % e.mx)
    chunks = []
    for x in range(x0, X + 1, e.mx):
        disc = 4 * C * bound - delta * x * x
        if disc < 0:
            continue
        s = isqrt(disc) + 1
        lo = (-B * x - s) // (2 * C) - 1
        hi = (-B * x + s) // (2 * C) + 1
        lo += (e.ry - lo) % e.my
        if lo > hi:
            continue
        ys = np.arange(lo, hi + 1, e.my, dtype=np.int64)
        num = A * x * x + B * x * ys + C * ys * ys
        chunks.append(num[num <= bound])
    if not chunks:
        return counts
    num = np.concatenate(chunks)
    if np.any(num % D):
        raise ValueError(f"{form} takes non-integral values on entry {e}")
    return np.bincount(num // D, minlength=N + 1)[: N + 1].astype(np.int64)


def theta_definite(form: QuadForm, residues: ResiduePairSet, N: int) -> QSeries:
    """sum over entries of sign*weight * sum_{(x,y) in entry} q^{form(x,y)}, exact to q^N."""
    if not form.definite:
        raise ValueError(f"{form} is not positive definite")
    if N < 0:
        return QSeries.zero(N)
    form.check_integral_on(residues)
    total = np.zeros(N + 1, dtype=np.int64)
    for e in residues.entries:
        total += e.multiplier * _entry_counts(form, e, N)
    return QSeries(total, 0, N)


def theta_from_row(row: RayClassRow, N: int) -> QSeries:
    if row.field_id == "K3":
        raise ValueError("K3 rows are indefinite; use the indefinite module")
    entry = ResiduePairSet((ResidueEntry(row.M, row.i % row.M, row.M, row.j % row.M),))
    return theta_definite(row_form(row), entry, N)


def theta_from_rows(plus: Sequence[RayClassRow], minus: Sequence[RayClassRow], N: int) -> QSeries:
    """sum of row thetas over ``plus`` minus those over ``minus``."""
    if N < 0:
        return QSeries.zero(N)
    total = np.zeros(N + 1, dtype=np.int64)
    for rows, s in ((plus, 1), (minus, -1)):
        for row in rows:
            total += s * theta_from_row(row, N).dense(N)
    return QSeries(total, 0, N)
