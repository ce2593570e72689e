import csv
import io
import json

import pytest
from click.testing import CliRunner

from rdbound.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, **kw):
        return runner.invoke(main, list(args), catch_exceptions=False, **kw)
    return invoke


def test_bound_psu3_11(run):
    res = run("bound", "psu3", "--q", "11", "--format", "json")
    assert res.exit_code == 0
    cert = json.loads(res.output)
    assert cert["bound"] == 106 and cert["degrees"] == [4, 4, 4]


def test_bound_psu2_7_text(run):
    res = run("bound", "psu2", "--q", "7")
    assert res.exit_code == 0
    assert "RD(product)      1 <= 3 - 1 - 1 = 1" in res.output


def test_bound_psu3_2(run):
    res = run("bound", "psu3", "--q", "2", "--format", "csv")
    assert res.output.splitlines()[1] == "2,2,1,None,9,4"


def test_usage_errors_exit_2(run):
    assert run("bound", "psu3", "--q", "6").exit_code == 2
    assert run("bound", "psu9", "--q", "7").exit_code == 2
    assert run("table", "psu3", "--q-min", "9", "--q-max", "5").exit_code == 2
    assert run("verify", "oracle", "--q-max", "3", "--oracle-max-order", "0").exit_code == 2


def test_computation_error_exit_1(run):
    res = run("bound", "psu2", "--q", "3")
    assert res.exit_code == 1
    assert "NotSimple" in res.output or "NotSimple" in (res.stderr if hasattr(res, "stderr") else "")


def test_table_csv_columns(run):
    res = run("table", "psu3", "--q-max", "5", "--format", "csv")
    rows = list(csv.reader(io.StringIO(res.output)))
    assert rows[0] == ["q", "dim_V", "bound_thm", "degrees", "mu", "bound_mu", "blocker"]
    assert rows[2] == ["3", "6", "4", "6", "28", "22", "irreducibility"]
    assert rows[4] == ["5", "20", "17", "4, 4", "50", "44", "irreducibility"]


def test_table_json_embeds_certificate(run):
    res = run("table", "psu3", "--q-min", "17", "--q-max", "17", "--format", "json")
    row = json.loads(res.output)[0]
    assert (row["dim_V"], row["bound_thm"], row["degrees"], row["mu"], row["bound_mu"]) == \
        (272, 267, [4, 4, 4, 4], 4914, 4905)
    assert row["certificate"]["product"] == 256


def test_table_is_byte_stable(run):
    a = run("table", "psu2", "--q-max", "13", "--format", "json").output
    b = run("table", "psu2", "--q-max", "13", "--format", "json").output
    assert a == b


def test_paper_compat_touches_only_flagged_rows(run):
    a = json.loads(run("table", "psu2", "--q-max", "37", "--format", "json").output)
    b = json.loads(run("table", "psu2", "--q-max", "37", "--format", "json", "--paper-compat").output)
    changed = [x["q"] for x, y in zip(a, b) if (x["mu"], x["bound_mu"]) != (y["mu"], y["bound_mu"])]
    assert changed == [9, 13, 16, 37]
    assert all(x["flagged"] for x in a if x["q"] in changed)


def test_molien_json(run):
    res = run("molien", "--group", "psl2", "--q", "71", "--max-degree", "6")
    assert json.loads(res.output)["coefficients"] == [1, 0, 0, 0, 3, 2, 40]


def test_rd_upper(run):
    assert run("rd-upper", "32").output.strip() == "RD(32) <= 26"
    assert run("rd-upper", "6", "--paper-compat").output.strip() == "RD(6) <= 1"


def test_ladder_override_env(run, tmp_path):
    path = tmp_path / "ladder.txt"
    path.write_text("1 = 1\nfrom 2: n - 1\n")
    res = run("rd-upper", "32", env={"RDBOUND_LADDER": str(path)})
    assert res.output.strip() == "RD(32) <= 31"


def test_power_table_csv(run):
    res = run("power-table", "--q", "5", "--k", "2", "--format", "csv")
    rows = {r[0]: r[1:] for r in csv.reader(io.StringIO(res.output))}
    header = rows.pop("target")
    assert int(rows["C6p"][header.index("C6")]) == 1


def test_dump_commands(run):
    assert "C8" in run("dump-classes", "psu3", "--q", "4").output
    chars = json.loads(run("dump-chars", "--q", "5", "--format", "json").output)
    assert chars["characters"]["St"]["1"] == "5"


def test_verify_passes(run):
    res = run("verify", "molien", "--q-max", "16")
    assert res.exit_code == 0
    assert res.output.strip().endswith("0 failed")


def test_verify_failure_exit_1(run, monkeypatch):
    from rdbound import molien

    monkeypatch.setattr(molien, "closed_form_m4", lambda q: -1)
    res = run("verify", "molien", "--q-max", "4")
    assert res.exit_code == 1
