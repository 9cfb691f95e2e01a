import json
import os

import pytest

from superbethe.cli import (
    SchemaError,
    emit_report,
    load_config,
    main,
    parse_config,
    run_suites,
)

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def write_config(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_minimal_config_defaults(tmp_path):
    cfg = load_config(write_config(tmp_path, {"suites": ["rtt"], "chains": [{"L": 1, "xi": ["0"]}]}))
    assert cfg.c == 1
    assert cfg.chains[0].twist == (1, 1, 1)
    assert cfg.seed == 1729
    assert cfg.suites == ("rtt",)


def test_schema_error_pointers(tmp_path):
    with pytest.raises(SchemaError) as err:
        parse_config({"chains": [{"L": 2, "xi": ["0", "0"]}]})
    assert err.value.pointer == "/chains/0/xi"
    with pytest.raises(SchemaError) as err:
        parse_config({"c": "0", "chains": []})
    assert err.value.pointer == "/c"
    with pytest.raises(SchemaError) as err:
        parse_config({"chains": [], "suites": ["nope"]})
    assert err.value.pointer == "/suites/0"
    with pytest.raises(SchemaError) as err:
        parse_config({"chains": [{"L": 9, "xi": [str(i) for i in range(9)]}]})
    assert err.value.pointer == "/chains/0/L"
    with pytest.raises(SchemaError) as err:
        parse_config({"chains": [{"L": 1, "xi": ["0"], "twist": ["1", "1"]}]})
    assert err.value.pointer == "/chains/0/twist"
    with pytest.raises(SchemaError) as err:
        parse_config(
            {
                "chains": [
                    {"L": 1, "xi": ["0"]},
                    {"L": 1, "xi": ["1"], "signature": "gl(1|2)"},
                ],
                "split": [0, 1],
            }
        )
    assert err.value.pointer == "/split"


def test_bethe_eval_worked_example(tmp_path, capsys):
    cfg = write_config(tmp_path, {"suites": [], "chains": [{"L": 1, "xi": ["0"]}]})
    assert main(["bethe", "eval", "--config", cfg, "--u", "3", "--v", "1"]) == 0
    assert json.loads(capsys.readouterr().out) == {"3": "1/3"}
    assert main(["bethe", "eval", "--config", cfg]) == 0
    assert json.loads(capsys.readouterr().out) == {"1": "1"}


def test_empty_suites_run(tmp_path, capsys):
    cfg = write_config(tmp_path, {"suites": [], "chains": [{"L": 1, "xi": ["0"]}]})
    assert main(["verify", "--config", cfg]) == 0
    out = capsys.readouterr().out
    assert "0/0 checks" in out


def test_verify_and_report_roundtrip(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        {
            "suites": ["rtt", "bethe"],
            "campaigns": 1,
            "chains": [{"L": 1, "xi": ["0"], "twist": ["2", "1", "3"]}],
        },
    )
    out_path = str(tmp_path / "report.json")
    assert main(["verify", "--config", cfg, "--report", out_path]) == 0
    capsys.readouterr()
    data = json.loads(open(out_path).read())
    assert data["checks"] and all(c["residual_is_zero"] for c in data["checks"])
    assert data["environment"]["seed"] == 1729


def _strip_runtime(report_json):
    for check in report_json["checks"]:
        check.pop("runtime")
    return report_json


def test_determinism_same_seed(tmp_path):
    raw = {
        "suites": ["rtt", "bethe", "composite"],
        "campaigns": 1,
        "max_a": 1,
        "max_b": 1,
        "chains": [
            {"L": 1, "xi": ["0"], "twist": ["2", "1", "3"]},
            {"L": 1, "xi": ["1"], "twist": ["1", "1", "-1"]},
        ],
    }
    cfg = parse_config(raw)
    a = _strip_runtime(run_suites(cfg).to_json())
    b = _strip_runtime(run_suites(parse_config(raw)).to_json())
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    raw["seed"] = 5
    c = _strip_runtime(run_suites(parse_config(raw)).to_json())
    assert json.dumps(a, sort_keys=True) != json.dumps(c, sort_keys=True)


def test_negative_control_config_fails(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        {
            "suites": ["actions"],
            "max_a": 1,
            "max_b": 1,
            "chains": [{"L": 1, "xi": ["0"], "twist": ["2", "1", "3"]}],
            "action_formula_file": os.path.join(FIXTURES, "corrupted_action_formulas.json"),
        },
    )
    assert main(["verify", "--config", cfg]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_unknown_suite_flag(tmp_path, capsys):
    cfg = write_config(tmp_path, {"suites": ["rtt"], "chains": [{"L": 1, "xi": ["0"]}]})
    assert main(["verify", "--config", cfg, "--suite", "bogus"]) == 2
    capsys.readouterr()


def test_malformed_config_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert main(["verify", "--config", str(path)]) == 2
    capsys.readouterr()


def test_shipped_full_config_runs_green():
    path = os.path.join(os.path.dirname(__file__), "..", "configs", "full.json")
    report = run_suites(load_config(path))
    assert report.records and report.all_zero()
    assert report.sign_convention == 1


def test_emit_report_stable_shape(tmp_path):
    cfg = parse_config({"suites": ["scalar"], "chains": []})
    report = run_suites(cfg)
    path = tmp_path / "r.json"
    emit_report(report, str(path))
    data = json.loads(path.read_text())
    assert set(data) == {"checks", "environment", "sign_convention"}
    assert all(
        set(c) == {"suite", "name", "parameters", "residual_is_zero", "residual_sample", "runtime"}
        for c in data["checks"]
    )
