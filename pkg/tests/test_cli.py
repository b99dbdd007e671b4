import csv
import io
import json

import pytest

from mediabargain.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_example(capsys):
    code, out, _ = run(capsys, "classify", "--structure", "separation", "--alpha", "1", "--beta", "1", "--t", "1", "--r", "0", "--lambda", "0.5")
    assert code == 0 and json.loads(out)["region"] == "Es_Es"


def test_lambda_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--vary", "lambda:0:1:0.01", "--alpha", "1", "--beta", "1", "--t", "1", "--r", "1", "--quantity", "region", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 101
    by_lam = {float(r["lambda"]): r["region"] for r in rows}
    assert by_lam[0.29] == "Eo_Eo" and by_lam[0.3] == "Boundary" and by_lam[0.31] == "Es_Es"


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "p.json"
    cfg.write_text(json.dumps({"v": 10, "alpha": 1, "beta": 1, "t": 1, "r": 1, "lambda": 0.1}))
    _, out, _ = run(capsys, "classify", "--config", str(cfg))
    assert json.loads(out)["region"] == "Eo_Eo"
    _, out, _ = run(capsys, "classify", "--config", str(cfg), "--lambda", "0.45")
    assert json.loads(out)["region"] == "Es_Es"


def test_errors_are_json(capsys):
    code, _, err = run(capsys, "validate", "--alpha", "3", "--beta", "1", "--t", "1")
    assert code == 1 and json.loads(err)["code"] == "ViabilityViolated"
    code, _, err = run(capsys, "sweep", "--alpha", "1")
    assert code == 2 and json.loads(err)["code"] == "ConfigError"
    code, _, err = run(capsys, "game", "--format", "csv")
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("downstream", "--carriers-a", "1", "--carriers-b", "12"),
        ("bargain", "--b-u", "2", "--b-d", "4", "--lambda", "0.5", "--oracle"),
        ("game", "--structure", "one-vi", "--r", "0.5"),
        ("thresholds", "--r", "1"),
        ("welfare", "--label", "(N,E_2)", "--structure", "one-vi"),
        ("merger", "--kind", "B2-first", "--lambda", "0.9"),
        ("merger", "--kind", "counter-B2", "--two-vi-label", "E,N", "--lambda", "0.95"),
    ],
)
def test_commands_run(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out


def test_bargain_fee(capsys):
    _, out, _ = run(capsys, "bargain", "--b-u", "2", "--b-d", "4", "--lambda", "0.5")
    assert json.loads(out)["fee"] == 1


def test_output_file(tmp_path, capsys):
    target = tmp_path / "t.json"
    assert main(["thresholds", "--r", "1", "--output", str(target)]) == 0
    assert json.loads(target.read_text())["lambda_tilde"] == pytest.approx(0.3)
