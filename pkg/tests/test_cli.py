import json
from pathlib import Path

import pytest

from cli import EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, build_parser, classify_rows, csv_table, main

DATA = Path(__file__).resolve().parent.parent / "data"


def _lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_parser_requires_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_check_single_scenario(capsys):
    assert main(["check", str(DATA / "scenario_pompeiu_squares.json")]) == EXIT_OK
    (record,) = _lines(capsys.readouterr().out)
    assert record["passed"] is True
    assert record["observed"][0]["gap"] == pytest.approx(1.0)


def test_check_scenario_list(capsys):
    assert main(["check", str(DATA / "scenario_normalization.json")]) == EXIT_OK
    assert len(_lines(capsys.readouterr().out)) == 2


def test_check_failing_expectation(tmp_path, capsys):
    doc = json.loads((DATA / "scenario_pompeiu_squares.json").read_text(encoding="utf-8"))
    doc["expect"]["gap"] = 3.0
    path = tmp_path / "wrong.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    assert main(["check", str(path)]) == EXIT_VIOLATION


def test_malformed_document_is_input_error(tmp_path):
    path = tmp_path / "kaputt.json"
    path.write_text('{"check": "pompeiu",', encoding="utf-8")
    assert main(["check", str(path)]) == EXIT_INPUT
    assert main(["check", str(tmp_path / "fehlt.json")]) == EXIT_INPUT


def test_suite_output_is_byte_identical(tmp_path, capsys):
    args = ["suite", str(DATA / "suite_default.json"), "--trials", "3", "--dim-max", "3", "--seed", "5"]
    assert main(args + ["--out", str(tmp_path / "a")]) == EXIT_OK
    assert main(args + ["--out", str(tmp_path / "b")]) == EXIT_OK
    for name in ("reports.jsonl", "summary.jsonl", "summary.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert not (tmp_path / "a" / "violations.jsonl").exists()
    summary = _lines((tmp_path / "a" / "summary.jsonl").read_text(encoding="utf-8"))
    assert summary[0]["seed"] == 5
    assert summary[0]["dim_range"] == [1, 3]


def test_suite_theorem_filter_and_csv(tmp_path, capsys):
    code = main(["suite", "--trials", "2", "--theorems", "cauchy,kantorovich_upper", "--format", "csv", "--out", str(tmp_path)])
    assert code == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("theorem_id,trials,holds")
    assert out[0].endswith(",mixed_explored,mixed_worst_gap")
    assert [line.split(",")[0] for line in out[1:]] == ["cauchy", "kantorovich_upper"]


def test_suite_rejects_bad_theorem(tmp_path):
    assert main(["suite", "--theorems", "hoelder", "--out", str(tmp_path)]) == EXIT_INPUT


def test_classify_regions(capsys):
    assert main(["classify", str(DATA / "functions_regions.json")]) == EXIT_OK
    rows = _lines(capsys.readouterr().out)
    assert rows[0]["scan"] == "synchrony"
    assert rows[0]["classification"] == "asynchronous"
    regions = {row["r"]: row["classification"] for row in rows if row["scan"] == "region"}
    assert regions[0.0] == "asynchronous"
    assert regions[2.0] == "synchronous"
    assert regions[-3.0] == "synchronous"


def test_classify_power_against_log(capsys):
    assert main(["classify", str(DATA / "functions_regions_power_log.json")]) == EXIT_OK
    rows = _lines(capsys.readouterr().out)
    regions = {row["r"]: row["classification"] for row in rows if row["scan"] == "region"}
    assert regions[-1.0] == "asynchronous"
    assert regions[-4.0] == "synchronous"
    assert regions[1.0] == "mixed"


def test_classify_to_csv_file(tmp_path):
    out = tmp_path / "regions.csv"
    assert main(["classify", str(DATA / "functions_regions.json"), "--format", "csv", "--out", str(out)]) == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("scan,h,r,classification,min,max\n")


def test_classify_rows_without_h():
    rows = classify_rows({"interval": [1.0, 2.0], "functions": {"f": {"kind": "exp"}}})
    assert [row["scan"] for row in rows] == ["monotonicity"]
    assert rows[0]["classification"] == "h-increasing"


def test_falsify_without_hypothesis(capsys):
    args = ["falsify", "pompeiu", "--drop", "synchrony", "--budget", "2000", "--seed", "1",
            "--triple", str(DATA / "falsify_triple.json"), "--interval", "1", "4"]
    assert main(args) == EXIT_OK
    (record,) = _lines(capsys.readouterr().out)
    assert record["found"] is True
    assert record["gap"] < 0


def test_falsify_intact_theorem(capsys):
    assert main(["falsify", "pompeiu", "--budget", "300", "--seed", "1"]) == EXIT_OK
    (record,) = _lines(capsys.readouterr().out)
    assert record["found"] is False


def test_falsify_unknown_theorem():
    assert main(["falsify", "hoelder", "--budget", "10"]) == EXIT_INPUT


def test_pinned_library_command(capsys):
    assert main(["paper-examples"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.rstrip().endswith("Szenarien bestanden")


def test_csv_cells():
    text = csv_table([{"a": None, "b": True, "c": 0.1}], ("a", "b", "c"))
    assert text == "a,b,c\n,true,0.10000000000000001\n"
