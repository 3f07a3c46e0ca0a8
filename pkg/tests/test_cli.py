import json
import subprocess
import sys

import pytest

from threefield.cli import RunConfig, parse_args, run
from threefield.qseries import QSeries


def invoke(capsys, *argv):
    code = run(parse_args(list(argv)))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_verify():
    cfg = parse_args(["verify", "--series", "rho", "--lhs", "eta", "--rhs", "k1", "--terms", "2000"])
    assert cfg == RunConfig(command="verify", series="rho", routes=["eta", "k1"], terms=2000)


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "--series", "rho", "--route", "eta", "--terms", "-5"],
        ["compute", "--series", "rho", "--route", "eta", "--terms", "ten"],
        ["compute", "--series", "rho", "--route", "eta"],
        ["compute", "--series", "rho", "--route", "bqf", "--terms", "3"],
        ["verify", "--lhs", "eta", "--rhs", "k1", "--colour"],
        ["sturm", "--level", "0"],
        ["eta-check", "--quotient", "24:-3;48", "--level", "2304"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        parse_args(argv)
    assert exc.value.code == 2


def test_long_mode_sets_terms():
    cfg = parse_args(["verify", "--lhs", "eta", "--rhs", "k1", "--long-sturm"])
    assert cfg.long_mode and cfg.terms == 294912


def test_sturm(capsys):
    code, out, _ = invoke(capsys, "sturm", "--level", "2304")
    assert code == 0 and json.loads(out) == {"level": 2304, "sturm_bound": 294912, "integral": True}
    code, out, _ = invoke(capsys, "sturm", "--level", "1")
    assert json.loads(out)["sturm_bound"] == "1/12"


def test_verify_exit_codes(capsys):
    code, out, _ = invoke(capsys, "verify", "--series", "rho", "--lhs", "eta", "--rhs", "k1", "--terms", "2000")
    rep = json.loads(out)
    assert code == 0 and rep["equal"] and rep["compared_up_to"] == 2000
    code, out, _ = invoke(capsys, "verify", "--series", "sigma", "--lhs", "hyper", "--rhs", "bqf",
                          "--terms", "50", "--convention", "n_choose_2")
    assert code == 1 and json.loads(out)["first_mismatch"]["exponent"] == 0


def test_compute_csv(capsys):
    code, out, _ = invoke(capsys, "compute", "--series", "rho", "--route", "eta", "--terms", "7", "--format", "csv")
    assert code == 0
    assert out.split() == ["0,1", "1,3", "2,1", "3,-2", "4,2", "5,1", "6,-4", "7,-1"]


def test_compute_theta_csv_is_sparse(capsys):
    _, out, _ = invoke(capsys, "compute", "--series", "theta", "--route", "k1", "--terms", "60", "--format", "csv")
    assert out.split() == ["1,1", "5,2", "25,3", "29,-2", "49,1", "53,-2"]


@pytest.mark.parametrize("series, route", [("rho", "k3"), ("theta", "k2"), ("sigmastar", "bqf"), ("sigma", "hyper")])
def test_json_round_trip(capsys, series, route):
    from threefield.identity import series_via

    _, out, _ = invoke(capsys, "compute", "--series", series, "--route", route, "--terms", "120")
    back = QSeries.from_json(out)
    assert back == series_via(series, route, 120)


def test_eta_check(capsys):
    code, out, _ = invoke(capsys, "eta-check", "--quotient", "24:-3,48:8,96:-3", "--level", "2304")
    rep = json.loads(out)
    assert code == 0 and rep["sum_delta_r"] == 24 and rep["sum_Ndelta_r"] == 24 and rep["weight"] == 1
    code, _, _ = invoke(capsys, "eta-check", "--quotient", "1:2", "--level", "1")
    assert code == 1
    code, _, err = invoke(capsys, "eta-check", "--quotient", "5:2", "--level", "24")
    assert code == 2 and "does not divide" in err


def test_partitions(capsys):
    _, out, _ = invoke(capsys, "partitions", "--n", "7")
    assert json.loads(out) == {"n": 7, "r_e": 37, "r_o": 38, "r": -1}


def test_tables(capsys):
    _, out, _ = invoke(capsys, "tables")
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 80
    _, out, _ = invoke(capsys, "tables", "--field", "K3")
    assert all(json.loads(line)["field_id"] == "K3" for line in out.splitlines())


def test_output_file(tmp_path, capsys):
    target = tmp_path / "rho.json"
    code, out, _ = invoke(capsys, "compute", "--series", "rho", "--route", "partitions", "--terms", "7",
                          "--output", str(target))
    assert code == 0 and out == ""
    assert QSeries.from_json(target.read_text()).to_list() == [1, 3, 1, -2, 2, 1, -4, -1]


def test_unwritable_output_exit_2(tmp_path, capsys):
    code, _, err = invoke(capsys, "sturm", "--level", "24", "--output", str(tmp_path / "missing" / "x.json"))
    assert code == 2 and err


def test_deterministic(capsys):
    outs = [invoke(capsys, "compute", "--series", "rhostar", "--route", "k2", "--terms", "200")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "threefield", "partitions", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["r"] == 1


@pytest.mark.parametrize(
    "kw",
    [
        dict(command="verify", routes=["eta"]),
        dict(command="compute", routes=[], terms=3),
        dict(command="compute", routes=["eta"], terms=-1),
        dict(command="plot"),
    ],
)
def test_config_invariants(kw):
    with pytest.raises(ValueError):
        RunConfig(**kw)
