"""Command line: compute series, compare routes, and print the modularity data.

Exit codes: 0 success or equality, 1 a verification mismatch or failed check,
2 usage or data errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .fields import RHO_LEVEL, eta_quotient_checks, sturm_bound
from .identity import ROUTES_FOR, SERIES, RouteId, series_via, verify
from .partitions import SIGMA_CONVENTIONS, colored_partition_counts
from .tables import ALL_ROWS

__all__ = ["RunConfig", "parse_args", "run", "main"]

COMMANDS = ("compute", "verify", "sturm", "eta-check", "partitions", "tables")
ROUTE_NAMES = tuple(r.value for r in RouteId)
# series whose natural index is n rather than a Theta exponent
DENSE_SERIES = {"rho", "rhostar", "sigma", "sigmastar"}


@dataclass
class RunConfig:
    command: str
    series: str | None = None
    routes: list[str] = field(default_factory=list)
    terms: int = 0
    format: str = "json"
    output_path: Path | None = None
    long_mode: bool = False
    level: int | None = None
    quotient: dict[int, int] | None = None
    n: int | None = None
    field_id: str | None = None
    convention: str = "n_times_n_plus_1_over_2"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command}")
        if self.terms < 0:
            raise ValueError("terms must be nonnegative")
        if self.command == "verify" and len(self.routes) != 2:
            raise ValueError("verify needs two routes")
        if self.command == "compute" and len(self.routes) != 1:
            raise ValueError("compute needs one route")


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be a nonnegative integer")
    return v


def _pos_int(text: str) -> int:
    v = _nonneg_int(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _quotient(text: str) -> dict[int, int]:
    out: dict[int, int] = {}
    try:
        for part in text.split(","):
            d, e = part.split(":")
            out[int(d)] = out.get(int(d), 0) + int(e)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad quotient {text!r}; expected e.g. 24:-3,48:8,96:-3")
    return out


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="threefield", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp):
        sp.add_argument("--output", type=Path, help="write to this file instead of stdout")

    c = sub.add_parser("compute", help="expand one series by one route")
    c.add_argument("--series", choices=SERIES, required=True)
    c.add_argument("--route", choices=ROUTE_NAMES, required=True)
    c.add_argument("--terms", type=_nonneg_int, required=True, help="largest exponent N")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--convention", choices=sorted(SIGMA_CONVENTIONS), default="n_times_n_plus_1_over_2")
    out(c)

    v = sub.add_parser("verify", help="compare two routes coefficient by coefficient")
    v.add_argument("--series", choices=SERIES, default="rho")
    v.add_argument("--lhs", choices=ROUTE_NAMES, required=True)
    v.add_argument("--rhs", choices=ROUTE_NAMES, required=True)
    v.add_argument("--terms", type=_nonneg_int, default=2000)
    v.add_argument("--long-sturm", action="store_true", help=f"compare through the level-{RHO_LEVEL} Sturm bound")
    v.add_argument("--convention", choices=sorted(SIGMA_CONVENTIONS), default="n_times_n_plus_1_over_2")
    out(v)

    s = sub.add_parser("sturm", help="Sturm bound for Gamma1(level)")
    s.add_argument("--level", type=_pos_int, required=True)
    out(s)

    e = sub.add_parser("eta-check", help="weight, congruence sums and cusp orders of an eta quotient")
    e.add_argument("--quotient", type=_quotient, required=True)
    e.add_argument("--level", type=_pos_int, required=True)
    out(e)

    pt = sub.add_parser("partitions", help="signed colored partition counts")
    pt.add_argument("--n", type=_nonneg_int, required=True)
    out(pt)

    t = sub.add_parser("tables", help="dump the embedded ray-class rows as JSON lines")
    t.add_argument("--field", choices=("K1", "K2", "K3"))
    out(t)
    return p


def parse_args(argv: list[str]) -> RunConfig:
    """Parse and validate; argparse exits with status 2 on usage errors."""
    parser = _parser()
    ns = parser.parse_args(argv)
    kw: dict = {"command": ns.command, "output_path": getattr(ns, "output", None)}
    if ns.command == "compute":
        kw.update(series=ns.series, routes=[ns.route], terms=ns.terms, format=ns.format, convention=ns.convention)
    elif ns.command == "verify":
        terms = int(sturm_bound(RHO_LEVEL)) if ns.long_sturm else ns.terms
        kw.update(series=ns.series, routes=[ns.lhs, ns.rhs], terms=terms, long_mode=ns.long_sturm,
                  convention=ns.convention)
    elif ns.command == "sturm":
        kw.update(level=ns.level)
    elif ns.command == "eta-check":
        kw.update(quotient=ns.quotient, level=ns.level)
    elif ns.command == "partitions":
        kw.update(n=ns.n)
    elif ns.command == "tables":
        kw.update(field_id=ns.field)
    for r in kw.get("routes", []):
        if RouteId.parse(r) not in ROUTES_FOR[kw["series"]]:
            allowed = ", ".join(x.value for x in ROUTES_FOR[kw["series"]])
            parser.error(f"route {r} does not produce {kw['series']} (choose from {allowed})")
    return RunConfig(**kw)


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output_path is None:
        sys.stdout.write(text)
    else:
        cfg.output_path.write_text(text, encoding="utf-8")


def _series_kwargs(cfg: RunConfig) -> dict:
    return {"convention": cfg.convention} if cfg.series == "sigma" else {}


def run(cfg: RunConfig) -> int:
    try:
        return _run(cfg)
    except (ValueError, OverflowError, OSError) as exc:
        print(f"threefield: error: {exc}", file=sys.stderr)
        return 2


def _run(cfg: RunConfig) -> int:
    if cfg.command == "compute":
        route = cfg.routes[0]
        s = series_via(cfg.series, route, cfg.terms, **_series_kwargs(cfg))
        if cfg.format == "csv":
            _emit(cfg, "\n".join(s.to_csv_lines(dense=cfg.series in DENSE_SERIES)))
        else:
            _emit(cfg, json.dumps(s.to_json_dict(f"{cfg.series} via {route}")))
        return 0
    if cfg.command == "verify":
        lhs, rhs = cfg.routes
        rep = verify(lhs, rhs, cfg.terms, series=cfg.series, **_series_kwargs(cfg))
        _emit(cfg, json.dumps(rep.to_json_dict()))
        return 0 if rep.equal else 1
    if cfg.command == "sturm":
        b = sturm_bound(cfg.level)
        val = b.numerator if b.denominator == 1 else str(b)
        _emit(cfg, json.dumps({"level": cfg.level, "sturm_bound": val, "integral": b.denominator == 1}))
        return 0
    if cfg.command == "eta-check":
        rep = eta_quotient_checks(cfg.quotient, cfg.level)
        _emit(cfg, json.dumps(rep.to_json_dict()))
        return 0 if rep.passed else 1
    if cfg.command == "partitions":
        _emit(cfg, json.dumps(colored_partition_counts(cfg.n).to_json_dict()))
        return 0
    if cfg.command == "tables":
        rows = [r for r in ALL_ROWS if cfg.field_id in (None, r.field_id)]
        _emit(cfg, "\n".join(json.dumps(r.to_json_dict(), ensure_ascii=False) for r in rows))
        return 0
    raise ValueError(f"unknown command {cfg.command}")


def main(argv: list[str] | None = None) -> int:
    cfg = parse_args(sys.argv[1:] if argv is None else argv)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
