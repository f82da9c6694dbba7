import json
import subprocess
import sys

import pytest

from periodscope.cli import canonical_dumps, main, run
from periodscope.ode import ODEOperator
from periodscope.verification import hypergeometric_curve_operator

CURVE_ARGS = ["pf", "curve", "--n", "3", "--roots", "0,1,λ", "--mults", "1,1,2", "--form", "dt/v"]


def _numbers_are_strings(obj) -> bool:
    if isinstance(obj, dict):
        return all(_numbers_are_strings(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_numbers_are_strings(v) for v in obj)
    return isinstance(obj, (str, bool)) or obj is None


def _invoke(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hodge_bv(capsys):
    code, out, _ = _invoke(["hodge", "bv", "--k", "10"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "ok"
    assert data["payload"]["h11"] == "65" and data["payload"]["h21"] == "1"
    assert data["provenance"]
    assert "milliseconds" in data["timing"]


def test_pf_curve_output_file_and_local(tmp_path, capsys):
    path = tmp_path / "op.json"
    code, out, _ = _invoke(CURVE_ARGS + ["--output", str(path)], capsys)
    assert code == 0 and out == ""
    data = json.loads(path.read_text(encoding="utf-8"))
    op = ODEOperator.from_json(data["payload"]["operator"])
    assert op.equals_up_to_unit(hypergeometric_curve_operator())
    assert data["payload"]["genus"] == "2"

    code, out, _ = _invoke(["local", "--op", str(path), "--point", "0"], capsys)
    assert code == 0
    pt = json.loads(out)["payload"]["points"][0]
    assert pt["jordan_blocks"] == ["2"]
    assert pt["mum"] is True
    assert pt["full_variation"] == {"max_jordan_block": "2", "mum": False, "multiplicity": "2"}

    code, out, _ = _invoke(["local", "--op", str(path), "--point", "all"], capsys)
    labels = {p["point"]["label"] for p in json.loads(out)["payload"]["points"]}
    assert labels == {"0", "1", "oo"}


def test_monodromy_command(tmp_path, capsys, monkeypatch):
    path = tmp_path / "op.json"
    path.write_text(json.dumps(hypergeometric_curve_operator().to_json()), encoding="utf-8")
    monkeypatch.setenv("PERIODSCOPE_DIGITS", "25")
    code, out, _ = _invoke(["monodromy", "--op", str(path), "--around", "0"], capsys)
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["precision_digits"] == "25"
    assert len(payload["entries"]) == 2
    assert float(payload["radius"]) < 1e-12

    code, out, _ = _invoke(["monodromy", "--op", str(path), "--around", "0", "--digits", "30"], capsys)
    assert json.loads(out)["payload"]["precision_digits"] == "30"


def test_monodromy_loop_too_close_is_domain_error(tmp_path, capsys):
    path = tmp_path / "op.json"
    path.write_text(json.dumps(hypergeometric_curve_operator().to_json()), encoding="utf-8")
    code, out, _ = _invoke(["monodromy", "--op", str(path), "--loop", "1/2,0;3/2,0;1,1"], capsys)
    assert code == 1
    assert json.loads(out)["payload"]["code"] == "loop too close"


def test_hodge_ball_and_boundary(capsys):
    code, out, _ = _invoke(["hodge", "ball", "--q", "2", "--w", "0.5,0"], capsys)
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["polarized"] is True and payload["diagnostics"] == []
    code, out, _ = _invoke(["hodge", "ball", "--q", "1", "--w", "1"], capsys)
    assert code == 1
    assert json.loads(out)["payload"]["code"] == "boundary point"


def test_hodge_catalog_and_rohde(capsys):
    code, out, _ = _invoke(["hodge", "catalog", "--name", "rohde-q4"], capsys)
    data = json.loads(out)
    assert code == 0 and data["payload"]["h11"] == "40" and data["provenance"]
    code, out, _ = _invoke(["hodge", "rohde", "--deg-g", "2", "--deg-h", "2"], capsys)
    assert json.loads(out)["payload"]["h11"] == "73"
    code, out, _ = _invoke(["hodge", "rohde", "--deg-g", "2", "--deg-h", "5"], capsys)
    assert code == 1 and json.loads(out)["payload"]["code"] == "unknown entry"


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["verify", "bogus"],
    ["hodge", "bv"],
    ["pf", "curve", "--form", "dt/v"],
    ["hodge", "ball", "--q", "2", "--w", "0.5"],
    ["monodromy", "--op", "/nonexistent.json", "--around", "0"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, out, err = _invoke(argv, capsys)
    assert code == 2
    assert "usage:" in err
    assert json.loads(out)["payload"]["code"] == "usage"


def test_bad_digits_env_is_usage_error(tmp_path, capsys, monkeypatch):
    path = tmp_path / "op.json"
    path.write_text(json.dumps(hypergeometric_curve_operator().to_json()), encoding="utf-8")
    monkeypatch.setenv("PERIODSCOPE_DIGITS", "many")
    code, _, _ = _invoke(["monodromy", "--op", str(path), "--around", "0"], capsys)
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["hodge", "bv", "--k", "10"],
    ["hodge", "catalog", "--name", "triple-elliptic-G4"],
    ["hodge", "ball", "--q", "1", "--w", "0.3+0.1j"],
    ["hodge", "domain", "--q", "3"],
    CURVE_ARGS,
])
def test_json_is_canonical_and_all_numbers_are_strings(argv):
    res, _, _ = run(argv)
    text = res.dumps()
    data = json.loads(text)
    assert canonical_dumps(data) == text
    assert _numbers_are_strings(data)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "periodscope", "hodge", "bv", "--k", "10"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["h11"] == "65"


def test_pf_dwork_command(capsys):
    code, out, _ = _invoke(["pf", "dwork"], capsys)
    assert code == 0
    payload = json.loads(out)["payload"]
    assert payload["operator"]["order"] == "4"
    assert payload["provenance"]["sample_points"]
    assert int(payload["provenance"]["certificates_checked"]) > 0
