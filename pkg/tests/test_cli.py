import json

import pytest

from lineconf import catalog, schema
from lineconf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_schema(capsys):
    code, out, _ = run(capsys, "enumerate", "q-minus", "3")
    data = json.loads(out)
    assert code == 0 and len(data["points"]) == 27 and len(data["lines"]) == 45 and data["dim"] == 5


def test_enumerate_profile(capsys):
    code, out, _ = run(capsys, "enumerate", "q-minus3", "--profile")
    prof = json.loads(out)["profile"]
    assert prof["v"] == [1, 10, 16] and prof["diameter"] == 2


def test_enumerate_dot(capsys):
    code, out, _ = run(capsys, "enumerate", "fano", "--dot")
    assert out.startswith("graph incidence {") and out.count("--") == 21


def test_verify_aut(capsys):
    assert run(capsys, "verify", "aut", "fano", "--expect", "168")[0] == 0
    assert run(capsys, "verify", "aut", "fano", "--expect", "167")[0] == 1


def test_verify_json_manifest(capsys):
    code, out, _ = run(capsys, "verify", "numerics", "q-minus3", "--against", "q-minus2", "--json")
    m = json.loads(out)
    assert code == 0 and m["passed"]
    assert {"command", "parameters", "version", "wall_time", "summary", "checks"} <= set(m)
    assert all("lhs" in c and "rhs" in c for c in m["checks"])


def test_verify_vconfig_negative(capsys):
    assert run(capsys, "verify", "vconfig", "q-minus3", "points4")[0] == 1


def test_schema_file_accepted(capsys, tmp_path):
    path = tmp_path / "w.json"
    path.write_text(schema.dumps(catalog.schlaefli_configuration()))
    assert run(capsys, "verify", "iso", str(path), "q-minus3")[0] == 0


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "enumerate", "nonsense")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "verify", "axioms", str(bad))[0] == 2
    assert run(capsys, "ledger", "--rules", "garbage")[0] == 2
    assert run(capsys, "classify", "line", "--budget", "lots")[0] == 2
    with pytest.raises(SystemExit):
        main(["classify", "line"])


def test_classify_exit_codes(capsys):
    code, out, _ = run(capsys, "classify", "line", "--budget", "1e6", "--json")
    m = json.loads(out)
    assert code == 0 and m["status"] == "complete" and m["identified"] == {"0": "fano"}
    assert run(capsys, "classify", "q-minus2", "--budget", "50")[0] == 3


def test_ledger_command(capsys):
    code, out, _ = run(capsys, "ledger", "--json")
    assert code == 0 and json.loads(out)["summary"]["total"] == 119
    assert run(capsys, "ledger", "--rules", "0,4=0")[0] == 1


def test_seedless(capsys):
    code, out, err = run(capsys, "verify", "iso", "schlaefli", "q-minus3", "--json", "--seedless")
    assert code == 0 and not err and json.loads(out)["passed"]
