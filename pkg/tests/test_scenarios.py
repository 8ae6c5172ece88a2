from pathlib import Path

import pytest

import codec
from errors import NotHermitian, ScenarioError
from harness import THEOREM_IDS
from scenarios import COVERAGE, PINNED_LIBRARY, check_coverage, error_class, run_library, run_scenario

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.mark.parametrize("doc", PINNED_LIBRARY, ids=[doc["name"] for doc in PINNED_LIBRARY])
def test_pinned_scenario(doc):
    outcome = run_scenario(doc)
    assert outcome.passed, outcome.message


def test_library_names_are_unique():
    names = [doc["name"] for doc in PINNED_LIBRARY]
    assert len(names) == len(set(names))


def test_every_theorem_has_a_scenario():
    manifest = check_coverage()
    assert set(manifest) == set(THEOREM_IDS)
    assert manifest == COVERAGE


def test_coverage_gap_is_reported():
    library = [doc for doc in PINNED_LIBRARY if doc["check"] != "cauchy"]
    with pytest.raises(ScenarioError, match="cauchy"):
        check_coverage(library)


def test_run_library_reports_each_outcome():
    seen = []
    outcomes = run_library(PINNED_LIBRARY[:5], on_outcome=seen.append)
    assert seen == outcomes
    assert all(o.passed for o in outcomes)


@pytest.mark.parametrize("name", ["scenario_pompeiu_squares.json"])
def test_data_scenario_file(name):
    outcome = run_scenario(codec.load_document(DATA / name))
    assert outcome.passed, outcome.message
    assert outcome.observed[0]["verdict"] == "holds"


def test_normalization_data_file():
    doc = codec.load_document(DATA / "scenario_normalization.json")
    outcomes = run_library(doc["scenarios"])
    assert [o.passed for o in outcomes] == [True] * len(doc["scenarios"])


# ------------------------------------------------------------------------------
# Fehlerpfade
# ------------------------------------------------------------------------------
BASE = {
    "name": "sample",
    "check": "pompeiu",
    "interval": [1.0, 2.0],
    "operators": [{"eigenvalues": [1.0, 2.0]}],
    "states": [{"components": [1.0, 1.0], "normalize": True}],
    "functions": {"f": {"kind": "power", "p": 2.0}, "g": {"kind": "power", "p": 2.0}, "h": {"kind": "identity"}},
}


def test_wrong_expectation_fails_with_message():
    outcome = run_scenario({**BASE, "expect": {"gap": 2.0}})
    assert not outcome.passed
    assert "gap" in outcome.message


def test_missing_field_is_scenario_error():
    doc = {k: v for k, v in BASE.items() if k != "functions"}
    with pytest.raises(ScenarioError, match="functions"):
        run_scenario(doc)


def test_unknown_check():
    with pytest.raises(ScenarioError):
        run_scenario({**BASE, "check": "hoelder"})


def test_expected_error_that_does_not_occur():
    outcome = run_scenario({**BASE, "expect_error": "NotHermitian"})
    assert not outcome.passed


def test_other_error_than_expected():
    doc = {**BASE, "operators": [{"matrix": [[1, 1], [0, 2]]}], "expect_error": "DimensionMismatch"}
    outcome = run_scenario(doc)
    assert not outcome.passed
    assert "NotHermitian" in outcome.message


def test_unexpected_verification_error_propagates():
    with pytest.raises(NotHermitian):
        run_scenario({**BASE, "operators": [{"matrix": [[1, 1], [0, 2]]}]})


def test_error_class_lookup():
    assert error_class("NotHermitian") is NotHermitian
    with pytest.raises(ScenarioError):
        error_class("KeyError")
