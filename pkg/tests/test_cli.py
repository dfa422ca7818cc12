import json
from pathlib import Path

from qcycle.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, main
from qcycle.tensor import QCycleStructure


def test_scc_emit_and_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "scc.json"
    assert main(["scc", "--n", "4", "--v0", "1", "--params", "1,1", "--emit-json", str(out)]) == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["schema"] == 1
    assert payload["n"] == 4
    restored = QCycleStructure.from_payload(payload)
    assert restored.to_payload()["p"] == payload["p"]

    report = tmp_path / "report.json"
    assert main(
        ["verify", "--tensor", str(out), "--full", "--solution", "--report-json", str(report)]
    ) == EXIT_OK
    captured = capsys.readouterr().out
    assert "braid_full: pass" in captured
    assert "solution_involutive: True" in captured
    results = json.loads(report.read_text())
    assert results["schema"] == 1
    assert results["results"]["braid_full"] is True


def test_verify_detects_corruption(tmp_path, capsys):
    out = tmp_path / "scc.json"
    main(["scc", "--n", "3", "--v0", "1", "--params", "1", "--emit-json", str(out)])
    payload = json.loads(out.read_text())
    payload["p"][2][1][1] = "7"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(payload))
    assert main(["verify", "--tensor", str(bad)]) == EXIT_CHECK_FAILED
    assert "FAIL" in capsys.readouterr().out


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", "--tensor", str(bad)]) == EXIT_USAGE
    assert main(["scc", "--n", "4", "--v0", "1", "--params", "1,zzz"]) == EXIT_USAGE


def test_validation_error_exit_code():
    assert main(["scc", "--n", "4", "--v0", "1", "--params", "1,2,3"]) == EXIT_USAGE


def test_ops_check(capsys):
    assert main(["ops-check", "--n", "3", "--v0", "2", "--params", "", "--pad", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "identity suite: all pass" in out


def test_classify_output(tmp_path, capsys):
    out = tmp_path / "scc.json"
    main(["scc", "--n", "3", "--v0", "1", "--params", "2", "--emit-json", str(out)])
    capsys.readouterr()
    assert main(["classify", "--tensor", str(out)]) == EXIT_OK
    assert "row: p11_nonzero" in capsys.readouterr().out


def test_family_nonroot(tmp_path, capsys):
    out = tmp_path / "family.json"
    code = main(
        ["family", "nonroot", "--n", "3", "--lambdas", "2,1", "--mu", "3", "--emit-json", str(out)]
    )
    assert code == EXIT_OK
    printed = capsys.readouterr().out
    assert "involutive: False" in printed
    restored = QCycleStructure.from_payload(json.loads(out.read_text()))
    assert restored.d.entry(2, 0, 1) == 3
    assert main(["verify", "--tensor", str(out), "--full", "--solution"]) == EXIT_OK
    assert "solution_involutive: False" in capsys.readouterr().out


def test_family_rejects_root_of_unity():
    assert main(["family", "nonroot", "--n", "3", "--lambdas=-1,1", "--mu", "2"]) == EXIT_CHECK_FAILED


def test_fixture_emission(tmp_path):
    out_dir = tmp_path / "fixtures"
    assert main(["fixtures", "--n", "3", "--emit", str(out_dir)]) == EXIT_OK
    files = sorted(Path(out_dir).glob("*.json"))
    assert len(files) == 9
    for path in files:
        QCycleStructure.from_payload(json.loads(path.read_text()))


def test_fixture_wrong_n():
    assert main(["fixtures", "--n", "4", "--emit", "/tmp/unused"]) == EXIT_USAGE
