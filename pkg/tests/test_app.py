from pathlib import Path

import pytest

from engine_core import VerificationCore

APP = Path(__file__).resolve().parent.parent / "app.py"


def test_pulse_contract():
    pulse = VerificationCore.get_pulse((1.0, 2.0), seed=7, trials=2, grid_n=16)
    meta = pulse["metadata"]
    assert meta["library_failed"] == []
    assert meta["violations"] == 0
    assert meta["positive"] is True
    assert len(pulse["chain"]["links"]) == 3
    assert {row["Paar"] for row in pulse["regions"]} >= {"1 · s", "s · s⁻¹"}
    log_row = next(row for row in pulse["regions"] if row["Paar"] == "s⁻³ · log")
    assert log_row["Intervall"] == "[1.5, 3]"
    assert (log_row["r=-1"], log_row["r=1"], log_row["r=3"]) == ("asynchronous", "mixed", "synchronous")
    assert all(row["trials"] == 2 for row in pulse["suite"])


def test_pulse_without_positive_interval():
    pulse = VerificationCore.get_pulse((0.0, 1.0), seed=7, trials=2, grid_n=16)
    assert pulse["metadata"]["positive"] is False
    assert pulse["regions"] == [] and pulse["suite"] == []
    assert pulse["chain"] is None


def test_app_renders_without_exceptions():
    testing = pytest.importorskip("streamlit.testing.v1")
    at = testing.AppTest.from_file(str(APP), default_timeout=300).run()
    assert not at.exception
    assert at.sidebar.slider[0].value == 20


def test_app_rejects_reversed_interval():
    testing = pytest.importorskip("streamlit.testing.v1")
    at = testing.AppTest.from_file(str(APP), default_timeout=300).run()
    at.number_input[0].set_value(3.0).run()
    assert at.error
