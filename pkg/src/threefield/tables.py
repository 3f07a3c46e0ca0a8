"""Embedded ray-class rows for the three fields and the congruence sets built from them.

Rows are keyed by (field, coset, i, j).  Labels are comments; two K2 labels
occur in both cosets with different congruence data, and that is fine here.
Where a stored row differs from the printed one, ``erratum`` says how and why.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .quadform import RayClassRow, ResidueEntry, ResiduePairSet, residue_of_form

__all__ = [
    "K1_ROWS",
    "K2_ROWS",
    "K3_ROWS",
    "ALL_ROWS",
    "rows_for",
    "k1_rho_set",
    "k1_rhostar_set",
    "k2_rho_set",
    "k2_rhostar_set",
    "k3_rho_set",
    "k3_rhostar_set",
    "sigma_set",
    "export_rows_jsonl",
    "load_rows_jsonl",
    "DATA_FILE",
]

F = Fraction

# (coset, label, x1, y1, i, j, Q mod 24, principal_form[, erratum])
_K1 = [
    ("I", "[O_K1]", "0", "1/24", 0, 1, 1, True),
    ("I", "[(43+14√−6)]", "1/2", "5/24", 12, 5, 1, True),
    ("I", "[(1−2√−6)]", "1/2", "1/24", 12, 1, 1, True),
    ("I", "[(211−72√−6)]", "0", "19/24", 0, 19, 1, True),
    ("I", "[(5, 2+√−6)]", "1/8", "11/12", 3, 22, 5, False),
    ("I", "[(15125, 14912+√−6)]", "1/8", "1/12", 3, 2, 5, False),
    ("I", "[(125, 37+√−6)]", "3/8", "7/12", 9, 14, 5, False),
    ("I", "[(378125, 45162+√−6)]", "3/8", "5/12", 9, 10, 5, False),
    ("J", "[(13)]", "0", "11/24", 0, 11, 1, True),
    ("J", "[(559+182√−6)]", "1/2", "7/24", 12, 7, 1, True),
    ("J", "[(13−26√−6)]", "1/2", "13/24", 12, 13, 1, True),
    ("J", "[(2743−936√−6)]", "0", "7/24", 0, 7, 1, True),
    ("J", "[(65, 26+13√−6)]", "5/8", "11/12", 15, 22, 5, False),
    ("J", "[(196625, 193856+13√−6)]", "5/8", "1/12", 15, 2, 5, False),
    ("J", "[(1625, 481+13√−6)]", "7/8", "7/12", 21, 14, 5, False),
    ("J", "[(4915625, 587106+13√−6)]", "7/8", "5/12", 21, 10, 5, False),
    ("B", "[(91+13√−6)]", "3/4", "19/24", 18, 19, 7, True),
    ("B", "[(2821+1833√−6)]", "3/4", "13/24", 18, 13, 7, True),
    ("B", "[(247−169√−6)]", "1/4", "7/24", 6, 7, 7, True),
    ("B", "[(24817−3809√−6)]", "1/4", "1/24", 6, 1, 7, True),
    ("B", "[(3575, 806+13√−6)]", "3/8", "1/3", 9, 8, 11, False),
    ("B", "[(10814375, 8452106+13√−6)]", "1/8", "5/6", 3, 20, 11, False),
    ("B", "[(89375, 50856+13√−6)]", "3/8", "5/6", 9, 20, 11, False,
     "printed x1 = 3/4 contradicts i = 9 = 24*x1; stored x1 = 3/8"),
    ("B", "[(270359375, 192296481+13√−6)]", "1/8", "1/3", 3, 8, 11, False),
    ("B'", "[(7+√−6)]", "3/4", "7/24", 18, 7, 7, True),
    ("B'", "[(217+141√−6)]", "3/4", "1/24", 18, 1, 7, True),
    ("B'", "[(19−13√−6)]", "1/4", "19/24", 6, 19, 7, True),
    ("B'", "[(1909−293√−6)]", "1/4", "13/24", 6, 13, 7, True),
    ("B'", "[(275, 62+√−6)]", "7/8", "1/3", 21, 8, 11, False),
    ("B'", "[(831875, 650162+√−6)]", "5/8", "5/6", 15, 20, 11, False),
    ("B'", "[(6875, 3912+√−6)]", "7/8", "5/6", 21, 20, 11, False),
    ("B'", "[(20796875, 14792037+√−6)]", "5/8", "1/3", 15, 8, 11, False),
]

_K2 = [
    ("I", "[O_K2]", "1/24", "0", 1, 0, 1),
    ("I", "[(13)]", "13/24", "0", 13, 0, 1),
    ("I", "[(3956+267i)]", "1/6", "7/8", 4, 21, 1),
    ("I", "[(51428+3471i)]", "1/6", "3/8", 4, 9, 1),
    ("I", "[(3713+2016i)]", "7/24", "0", 7, 0, 1),
    ("I", "[(48269+26208i)]", "19/24", "0", 19, 0, 1),
    ("I", "[(14150356+8966667i)]", "1/6", "1/8", 4, 3, 1, True,
     "printed x1 = 4/6, i = 16; with (16, 3) the I-minus-J sum is not the theta series, "
     "with (4, 3) it is (the other I rows pair 4 with 21, 9, 15)"),
    ("I", "[(183954628+116566671i)]", "1/6", "5/8", 4, 15, 1),
    ("I", "[(2287−3086i)]", "7/24", "5/12", 7, 10, 5),
    ("I", "[(29731−40118i)]", "19/24", "5/12", 19, 10, 5),
    ("I", "[(3586−1973i)]", "5/12", "19/24", 10, 19, 5),
    ("I", "[(46618−25649i)]", "5/12", "7/24", 10, 7, 5),
    ("I", "[(14713007−6847726i)]", "23/24", "1/12", 23, 2, 5),
    ("I", "[(191269091−89020438i)]", "11/24", "1/12", 11, 2, 5),
    ("I", "[(17292386−96373i)]", "11/12", "13/24", 22, 13, 5),
    ("I", "[(224801018−1252849i)]", "11/12", "1/24", 22, 1, 5),
    ("J", "[(60−11i)]", "1/2", "11/24", 12, 11, 1),
    ("J", "[(780−143i)]", "1/2", "23/24", 12, 23, 1),
    ("J", "[(63+16i)]", "3/8", "1/3", 9, 8, 1),
    ("J", "[(819+208i)]", "7/8", "1/3", 21, 8, 1),
    ("J", "[(244956+80117i)]", "1/2", "5/24", 12, 5, 1),
    ("J", "[(3184428+1041521i)]", "1/2", "7/24", 12, 7, 1),
    ("J", "[(20166+186416i)]", "5/8", "1/3", 15, 8, 1),
    ("J", "[(2621619+2423408i)]", "1/8", "1/3", 3, 8, 1),
    ("J", "[(46−43i)]", "1/12", "19/24", 2, 19, 5),
    ("J", "[(598−599i)]", "1/12", "7/24", 2, 7, 5),
    ("J", "[(193457−157826i)]", "17/24", "11/12", 17, 22, 5),
    ("J", "[(2514941−2051738i)]", "5/24", "11/12", 5, 22, 5),
    ("J", "[(17292386−96373i)]", "7/12", "13/24", 14, 13, 5),
    ("J", "[(224801018−1252849i)]", "7/12", "1/24", 14, 1, 5),
    ("J", "[(1036483057−195998626i)]", "23/24", "5/12", 23, 10, 5),
    ("J", "[(13474279741−2547982138i)]", "11/24", "5/12", 11, 10, 5),
]

_NEG = "stored as the negated representative; with the printed pair the orbit sum does not reproduce the series"
_K3 = [
    ("I", "[O_K3]", "1/8", "1/12", 3, 2, 1, True),
    ("I", "[(4927−416√6)]", "7/8", "7/12", 21, 14, 1, True,
     "printed y1 = 5/12 contradicts j = 14 = 24*y1; stored y1 = 7/12"),
    ("I", "[(631+50√6)]", "3/8", "11/12", 9, 22, 1, True),
    ("I", "[(2984137−16146√6)]", "5/8", "5/12", 15, 10, 1, True,
     "printed (x1, y1, i, j) = (3/8, 7/12, 9, 14); " + _NEG),
    ("I", "[(73+201√6)]", "1/4", "1/24", 6, 1, 5, False,
     "printed (3/4, 23/24, 18, 23); " + _NEG),
    ("I", "[(1001−2535√6)]", "3/4", "7/24", 18, 7, 5, False),
    ("I", "[(106363+130481√6)]", "1/4", "19/24", 6, 19, 5, False,
     "printed (3/4, 5/24, 18, 5); " + _NEG),
    ("I", "[(128869+1549535√6)]", "3/4", "13/24", 18, 13, 5, False,
     "printed (1/4, 11/24, 6, 11); " + _NEG),
    ("J", "[(13)]", "5/8", "1/12", 15, 2, 1, True),
    ("J", "[(379−32√6)]", "3/8", "7/12", 9, 14, 1, True),
    ("J", "[(18203+650√6)]", "1/8", "7/12", 3, 14, 1, True),
    ("J", "[(229549−1242√6)]", "7/8", "7/12", 21, 14, 1, True),
    ("J", "[(77−195√6)]", "3/4", "19/24", 18, 19, 5, False),
    ("J", "[(949+2613√6)]", "3/4", "11/24", 18, 11, 5, False),
    ("J", "[(9913+119195√6)]", "1/4", "23/24", 6, 23, 5, False),
    ("J", "[(1382719+1696253√6)]", "3/4", "17/24", 18, 17, 5, False),
]


def _build(field_id: str, raw) -> tuple[RayClassRow, ...]:
    out = []
    for r in raw:
        coset, label, x1, y1, i, j, q = r[:7]
        principal = r[7] if len(r) > 7 else True
        if not isinstance(principal, bool):
            raise TypeError(f"row {label}: principal_form must be a bool")
        erratum = r[8] if len(r) > 8 else ""
        row = RayClassRow(field_id, label, F(x1), F(y1), 24, i, j, q, coset, principal, erratum)
        if residue_of_form(row) != q:
            raise ValueError(f"row {label}: form value at ({i}, {j}) is not {q} mod 24")
        out.append(row)
    return tuple(out)


K1_ROWS = _build("K1", _K1)
K2_ROWS = _build("K2", _K2)
K3_ROWS = _build("K3", _K3)
ALL_ROWS = K1_ROWS + K2_ROWS + K3_ROWS


def rows_for(field_id: str | None = None, coset: str | None = None, q_residue: int | None = None) -> list[RayClassRow]:
    return [
        r for r in ALL_ROWS
        if (field_id is None or r.field_id == field_id)
        and (coset is None or r.coset == coset)
        and (q_residue is None or r.q_residue == q_residue)
    ]


def _signed_from_rows(field_id: str, residue: int, name: str) -> ResiduePairSet:
    plus = [(r.i, r.j) for r in rows_for(field_id, "I", residue)]
    minus = [(r.i, r.j) for r in rows_for(field_id, "J", residue)]
    return ResiduePairSet.from_pairs(24, plus, minus, name=name)


def k1_rho_set() -> ResiduePairSet:
    """A1,+ (coset I, residue 1) counted +1 and A1,- (coset J) counted -1."""
    return _signed_from_rows("K1", 1, "K1 A1")


def k1_rhostar_set() -> ResiduePairSet:
    return _signed_from_rows("K1", 5, "K1 A5")


def k2_rho_set() -> ResiduePairSet:
    # S1,+ / T1,+ / S1,- / T1,-; weight 2 on the T sets
    return ResiduePairSet((
        ResidueEntry(24, 0, 6, 1, 1, 1),
        ResidueEntry(24, 4, 12, 3, 2, 1),
        ResidueEntry(24, 12, 6, 1, 1, -1),
        ResidueEntry(24, 8, 12, 3, 2, -1),
    ), "K2 S1/T1")


def k2_rhostar_set() -> ResiduePairSet:
    return ResiduePairSet((
        ResidueEntry(24, 2, 12, 1, 2, 1),
        ResidueEntry(24, 10, 12, 5, 2, 1),
        ResidueEntry(24, 2, 12, 5, 2, -1),
        ResidueEntry(24, 10, 12, 1, 2, -1),
    ), "K2 T5")


def k3_rho_set() -> ResiduePairSet:
    """A1 from the coset-I rows of K3 (sign comes from the wedge, not the set)."""
    return ResiduePairSet.from_pairs(24, [(r.i, r.j) for r in rows_for("K3", "I", 1)], name="K3 A1")


def k3_rhostar_set() -> ResiduePairSet:
    return ResiduePairSet.from_pairs(24, [(r.i, r.j) for r in rows_for("K3", "I", 5)], name="K3 A5")


def sigma_set() -> ResiduePairSet:
    """A+ counted +1, A- counted -1, x mod 12 and y mod 4."""
    return ResiduePairSet.from_pairs(
        (12, 4),
        [(1, 0), (11, 0), (5, 2), (7, 2)],
        [(5, 0), (7, 0), (1, 2), (11, 2)],
        name="sigma A+/A-",
    )


DATA_FILE = "ray_class_rows.jsonl"


def export_rows_jsonl(path: str | Path, rows=ALL_ROWS) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in rows:
            fh.write(json.dumps(r.to_json_dict(), ensure_ascii=False) + "\n")


def load_rows_jsonl(path: str | Path | None = None) -> tuple[RayClassRow, ...]:
    """Rows from a JSONL file; defaults to the copy shipped with the package."""
    if path is None:
        text = resources.files("threefield").joinpath("data", DATA_FILE).read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return tuple(RayClassRow.from_json_dict(json.loads(line)) for line in text.splitlines() if line.strip())
