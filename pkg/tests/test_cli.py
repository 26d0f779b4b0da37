import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from ncqsde.cli import main, normalize_argv
from ncqsde.modelfile import ModelFile, ModelFileError, from_model, validate

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([a.replace("{golden}", str(GOLDEN)) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_golden(case):
    code, out, _ = run(case["argv"])
    assert code == case["exit"]
    assert out == (GOLDEN / f"{case['name']}.out").read_text(encoding="utf-8")
    if "--json" in case["argv"]:
        validate(json.loads(out), "result")


def test_spec_cli_examples():
    assert run(["simplify", "p*q"])[1] == "q*p - i\n"
    code, out, _ = run(["check", "{golden}/linear_ok.model.json"])
    assert code == 0 and "H = 1/2*q^2 + 1/2*p^2 - q*p + 1/2*i\n" in out
    code, out, _ = run(["synthesize", "--f1", "q^3", "--g1", "-1", "--g2", "-i"])
    assert code == 0 and out.startswith("f2 = -3*q^2*p + 3*i*q - 2*p\n")


@pytest.mark.parametrize("argv", [
    ["simplify", "q +"],
    ["simplify", "0.5*q"],
    ["simplify", "cos(q)"],
    ["simplify", "q", "--modes", "2"],
    ["simplify", "q", "--deriv", "x"],
    ["check", "/nonexistent/model.json"],
    ["synthesize", "--f1", "q", "--g1", "-1"],
    ["synthesize", "--f1", "q", "--g1", "-1", "--g2", "-i", "--direction", "f1"],
    ["frobnicate"],
])
def test_input_errors_exit_2(argv):
    code, out, err = run(argv)
    assert code == 2 and out == "" and err


def test_bad_model_files(tmp_path):
    cases = {
        "not_json.json": "{",
        "wrong_shape.json": json.dumps({"modes": 1, "channels": 1, "f": ["q"], "g": [["0"], ["0"]]}),
        "extra_field.json": json.dumps({"modes": 1, "channels": 1, "f": ["q", "p"],
                                        "g": [["0"], ["0"]], "bogus": 1}),
        "bad_expr.json": json.dumps({"modes": 1, "channels": 1, "f": ["q +", "p"],
                                     "g": [["0"], ["0"]]}),
        "non_unitary.json": json.dumps({"modes": 1, "channels": 1, "f": ["q", "p"],
                                        "g": [["0"], ["0"]], "S": [["2"]]}),
        "bad_S_entry.json": json.dumps({"modes": 1, "channels": 1, "f": ["q", "p"],
                                        "g": [["0"], ["0"]], "S": [["q"]]}),
    }
    for name, text in cases.items():
        path = tmp_path / name
        path.write_text(text)
        code, _, err = run(["check", str(path)])
        assert code == 2, name
        assert err


def test_error_message_names_the_field(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"modes": 1, "channels": 1, "f": ["q", "p ^ x"], "g": [["0"], ["0"]]}))
    _, _, err = run(["check", str(path)])
    assert "f[1]" in err and "position 4" in err


def test_model_file_round_trip():
    mf = ModelFile.load(GOLDEN / "two_mode.model.json")
    model = mf.to_model()
    again = ModelFile.from_json(from_model(model, mf.coupling_constants()).to_json())
    assert again.to_model() == model


def test_model_file_validation_error_type():
    with pytest.raises(ModelFileError):
        ModelFile.from_json({"modes": 0, "channels": 1, "f": [], "g": []})


def test_dash_values_are_not_options():
    assert normalize_argv(["synthesize", "--g1", "-1", "--g2", "-i"]) == \
        ["synthesize", "--g1=-1", "--g2=-i"]
    assert run(["simplify", "-p*q"])[1] == "-q*p + i\n"


def test_verify_fock_flag():
    code, out, _ = run(["check", "{golden}/cubic.model.json", "--verify-fock", "--json"])
    obj = json.loads(out)
    assert code == 0 and obj["fock"]["ok"] and obj["fock"]["max_residual"] < 1e-9
    code, out, _ = run(["synthesize", "--f1", "q^3", "--g1", "-1", "--g2", "-i", "--verify-fock"])
    assert "fock: max residual" in out and "(ok)" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ncqsde", "simplify", "p^2*q"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "q*p^2 - 2*i*p\n"
