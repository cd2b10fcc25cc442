import csv
import io
import json
from fractions import Fraction as Fr

import pytest
from click.testing import CliRunner

from gnsharp import bounds_engine as be
from gnsharp import cli
from gnsharp.errors import NumericalError


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(cli.main, [str(a) for a in args], env=env)

    return invoke


def test_parse_number():
    assert cli.parse_number("37/40") == Fr(37, 40)
    assert cli.parse_number("3") == Fr(3)
    assert cli.parse_number("0.5", inexact=True) == 0.5
    with pytest.raises(Exception, match="p/q"):
        cli.parse_number("0.5")
    with pytest.raises(Exception):
        cli.parse_number("1/0")


def test_bounds_json_row_one(run):
    res = run("bounds", "--d", 1, "--j", 0, "--n", 1, "--theta", "1/3", "--format", "json")
    assert res.exit_code == 0, res.output
    rec = json.loads(res.output)
    assert rec["schema_version"] == "1"
    vals = rec["values"]
    assert vals["g_minusminus"] == {"value": pytest.approx(0.83268317765560), "rounded": "0.832", "rounding": "down"}
    assert vals["g_plus"]["rounded"] == "1.204" and vals["g_plus"]["rounding"] == "up"
    assert vals["g_plusplus"]["rounded"] == "0.873"
    assert vals["g_minus"]["rounding"] == "down" and vals["g_minus"]["value"] >= 0.849
    assert rec["best_lower_source"] == "g_minus" and rec["best_upper_source"] == "g_plusplus"
    assert "timing" not in rec
    # every numeric field carries a rounding tag
    for cell in vals.values():
        assert cell is None or cell["rounding"] in ("up", "down", "nearest")


def test_bounds_round_trip_and_determinism(run):
    args = ("bounds", "--d", 3, "--j", 2, "--n", 3, "--theta", "99/100", "--format", "json", "--no-minus")
    first, second = run(*args), run(*args)
    assert first.exit_code == 0
    assert first.output == second.output
    p = json.loads(first.output)["params"]
    assert be.GnsParams(p["d"], Fr(p["j"]), Fr(p["n"]), Fr(p["theta"])) == be.GnsParams(3, 2, 3, Fr(99, 100))
    assert p["r"] == "300/53"


def test_bounds_timing_flag(run):
    res = run("bounds", "--d", 1, "--j", 0, "--n", 1, "--theta", "1/2", "--format", "json", "--timing")
    assert res.exit_code == 0
    assert "seconds" in json.loads(res.output)["timing"]


def test_bounds_text_marks_best(run):
    res = run("bounds", "--d", 1, "--j", 1, "--n", 2, "--theta", "5/8", "--no-minus", "--table-iii-rounding")
    assert res.exit_code == 0
    lines = {line.split()[0].lstrip("*"): line for line in res.output.splitlines()[1:] if line.strip()}
    assert lines["g_minusminus"].startswith(" *")
    assert lines["g_plusplus"].startswith(" *")
    assert not lines["g_plus"].startswith(" *")


def test_exit_code_parameter_errors(run):
    res = run("bounds", "--d", 2, "--j", 0, "--n", 1, "--theta", 1)
    assert res.exit_code == 2
    assert "theta != 1" in res.output
    assert run("bounds", "--d", 1, "--j", 0, "--n", 1, "--theta", "0.5").exit_code == 2
    assert run("bounds", "--d", 1, "--j", 0, "--n", 1, "--theta", "0.5", "--inexact", "--no-minus").exit_code == 0
    assert run("sharp", "--d", 1, "--j", 0, "--n", 1, "--theta", "1/3").exit_code == 2


def test_exit_code_numerical_error(run, monkeypatch):
    def boom(*args, **kwargs):
        raise NumericalError("tolerance not met")

    monkeypatch.setattr(be, "best_bounds", boom)
    res = run("bounds", "--d", 1, "--j", 0, "--n", 1, "--theta", "1/3")
    assert res.exit_code == 3


def test_config_file_and_overrides(run, tmp_path):
    cfg = tmp_path / "q.cfg"
    cfg.write_text("# coarse grid\neps_min = 0.5\neps_max = 1.0\neps_step = 0.25\n")
    res = run("bounds", "--d", 1, "--j", 0, "--n", 1, "--theta", "1/3", "--format", "json",
              "--config", cfg, "--set", "eps_step=0.5")
    assert res.exit_code == 0, res.output
    method = json.loads(res.output)["method"]
    assert method["eps_min"] == 0.5 and method["eps_step"] == 0.5 and method["eps_count"] == 2
    assert run("bounds", "--d", 1, "--j", 0, "--n", 1, "--theta", "1/3", "--set", "bogus=1").exit_code == 2


def test_threads_env(run):
    args = ("maximizer", "--kind", "trial", "--d", 3, "--j", 0, "--n", 1, "--eps", 0.5, "--rho", "0,1,2")
    one = run(*args, env={"GNS_THREADS": "1"})
    four = run(*args, env={"GNS_THREADS": "4"})
    assert one.exit_code == 0 and one.output == four.output
    assert run(*args, env={"GNS_THREADS": "many"}).exit_code == 2


def test_sharp_examples(run):
    rec = json.loads(run("sharp", "--d", 2, "--j", 0, "--n", 2, "--format", "json").output)
    assert rec["params"]["theta"] == "1/2"
    assert rec["values"]["S"]["value"] == pytest.approx(2**-1.5, rel=1e-14)
    assert rec["values"]["G"]["value"] == pytest.approx(0.5, rel=1e-14)
    rec = json.loads(run("sharp", "--d", 1, "--j", 1, "--n", 2, "--format", "json").output)
    assert rec["params"]["theta"] == "3/4"
    assert rec["values"]["S"]["value"] == pytest.approx(2**-0.75, rel=1e-14)
    assert rec["values"]["G"]["value"] == pytest.approx(2**0.25 / 3**0.375, rel=1e-14)
    rec = json.loads(run("sharp", "--d", 1, "--j", 0, "--n", 1, "--theta", "1/2", "--format", "json").output)
    assert rec["values"]["G"]["value"] == pytest.approx(1.0)
    assert rec["values"]["S"]["value"] == pytest.approx(2**-0.5)
    rec = json.loads(run("sharp", "--d", 3, "--j", 0, "--n", 1, "--theta", 1, "--format", "json").output)
    assert rec["regime"]["kind"] == "theta_one"
    assert rec["values"]["G"]["value"] == pytest.approx(0.42726054286252666, rel=1e-13)


def test_maximizer_spec(run):
    res = run("maximizer", "--kind", "linf", "--d", 1, "--j", 1, "--n", 2, "--spec")
    assert res.exit_code == 0
    assert res.output.strip() == "0.5 * G(1/2 ; - ; 0, 1/2, 1/2 ; 1/4, 3/4) | (rho/4)^4"
    rec = json.loads(run("maximizer", "--kind", "linf", "--d", 3, "--j", 1, "--n", 3, "--spec", "--format", "json").output)
    assert rec["g"]["a"] == ["1/3"] and rec["g"]["b_star"] == ["-1/6", "1/6", "1/2"] and rec["arg_scale"] == 6
    assert run("maximizer", "--kind", "theta1", "--d", 3, "--j", 0, "--n", 1, "--spec").exit_code == 2


def test_maximizer_values(run):
    res = run("maximizer", "--kind", "theta1", "--d", 3, "--j", 0, "--n", 1, "--rho", 1)
    assert res.exit_code == 0
    header, row = res.output.strip().splitlines()
    assert header == "rho,value"
    assert float(row.split(",")[1]) == pytest.approx(2**-0.5, rel=1e-12)
    rec = json.loads(run("maximizer", "--kind", "linf", "--d", 3, "--j", 0, "--n", 2, "--rho", "1",
                         "--format", "json").output)
    assert rec["values"][0]["value"] == pytest.approx(0.40145611429290008, rel=1e-9)
    res = run("maximizer", "--kind", "linf", "--d", 1, "--j", 0, "--n", 1, "--points", 11, "--rho-max", 5)
    assert len(res.output.strip().splitlines()) == 12
    assert run("maximizer", "--kind", "trial", "--d", 3, "--j", 0, "--n", 1).exit_code == 2
    assert run("maximizer", "--kind", "linf", "--d", 2, "--j", 0, "--n", 1, "--rho", 1).exit_code == 2


def test_tables_i_and_ii(run):
    res = run("tables", "--which", "I", "--verify")
    assert res.exit_code == 0
    body = [line for line in res.output.splitlines() if line.startswith("| ") and "pass" in line]
    assert len(body) == 12
    assert "0 mismatching cell(s)" in res.output
    res = run("tables", "--which", "II", "--format", "csv", "--verify")
    rows = [line for line in res.output.splitlines() if line and line[0].isdigit() and "," in line]
    assert len(rows) == 9 and all(line.endswith("pass") for line in rows)


def test_tables_iii_closed_form_columns(run, monkeypatch):
    # skip the eps scan here; the full column is exercised by the acceptance suite
    real = be.best_bounds
    monkeypatch.setattr(be, "best_bounds", lambda params, cfg=None, with_minus=True: real(params, cfg, False))
    res = run("tables", "--which", "III", "--format", "csv")
    assert res.exit_code == 0
    rows = list(csv.reader(io.StringIO(res.output)))
    assert len(rows) == 19
    assert rows[0][4:8] == ["G-", "G--", "G+", "G++"]
    assert rows[1][5:8] == ["**0.832**", "1.204", "**0.873**"]
