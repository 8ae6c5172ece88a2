import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import IntervalMismatch, NonPositiveSpectrum, NotUnitState, ScenarioError
from functionals import (
    NOTE_KANTOROVICH_TYPO,
    NOTE_REVERSED_CENTERED,
    NOTE_UNDECLARED_SPECTRUM,
    Direction,
    Verdict,
    cebysev,
    check_cauchy,
    check_centered,
    check_integral_pompeiu,
    check_inverse_pair,
    check_pompeiu,
    check_two_operator,
    integral_cebysev,
    integral_pompeiu,
    kantorovich_chain,
    make_report,
    pompeiu_cebysev,
)
from functions import IDENTITY, INVERSE, ONE, ScalarFunction
from harness import random_operator, random_state, trial_rng
from spectral_core import HermitianOperator, SpectralInterval, StateVector

I12 = SpectralInterval(1.0, 2.0)
SQUARE = ScalarFunction.power(2.0)
CUBE = ScalarFunction.power(3.0)
SQRT = ScalarFunction.power(0.5)
EXP = ScalarFunction.exp()


# ------------------------------------------------------------------------------
# Richtung & Bericht
# ------------------------------------------------------------------------------
@pytest.mark.parametrize("raw, expected", [("ge", Direction.GE), (">=", Direction.GE), ("≤", Direction.LE), ("le", Direction.LE)])
def test_direction_aliases(raw, expected):
    assert Direction.parse(raw) is expected


def test_direction_rejects_unknown():
    with pytest.raises(ScenarioError):
        Direction.parse("gt")


def test_violation_band_separates_roundoff():
    inputs = {"check": "test"}
    tiny = make_report("t", 1.0, 1.0 + 4e-9, Direction.GE, inputs)
    assert tiny.verdict is Verdict.VIOLATED and not tiny.is_violation
    real = make_report("t", 1.0, 1.1, Direction.GE, inputs)
    assert real.is_violation
    ok = make_report("t", 1.0, 1.0 + 1e-12, Direction.GE, inputs)
    assert ok.verdict is Verdict.HOLDS


def test_inputs_digest_is_stable(diag12, equal_state):
    a = check_pompeiu(SQUARE, SQUARE, IDENTITY, diag12, equal_state)
    b = check_pompeiu(SQUARE, SQUARE, IDENTITY, diag12, equal_state)
    assert a.inputs_digest == b.inputs_digest
    assert len(a.inputs_digest) == 64


# ------------------------------------------------------------------------------
# Funktionale
# ------------------------------------------------------------------------------
def test_cebysev_hand_values(diag12, equal_state):
    assert cebysev(IDENTITY, IDENTITY, diag12, equal_state) == pytest.approx(0.25, rel=1e-12)
    assert cebysev(IDENTITY, INVERSE, diag12, equal_state) == pytest.approx(-0.125, rel=1e-12)


def test_cebysev_vanishes_for_identity_operator():
    A = HermitianOperator.diagonal([1.0, 1.0, 1.0], I12)
    x = StateVector.unit([1.0, 2.0, 3.0])
    assert cebysev(EXP, ScalarFunction.log(), A, x) == pytest.approx(0.0, abs=1e-15)


def test_pompeiu_hand_values(diag12, equal_state):
    assert pompeiu_cebysev(SQUARE, SQUARE, IDENTITY, diag12, equal_state) == pytest.approx(1.0, rel=1e-12)
    assert pompeiu_cebysev(IDENTITY, INVERSE, ONE, diag12, equal_state) == pytest.approx(-0.125, rel=1e-12)


def test_functionals_require_unit_state(diag12):
    with pytest.raises(NotUnitState):
        cebysev(IDENTITY, IDENTITY, diag12, StateVector([1.0, 1.0]))


def test_pompeiu_with_h_one_is_cebysev(diag12, equal_state):
    assert pompeiu_cebysev(EXP, SQRT, ONE, diag12, equal_state) == pytest.approx(cebysev(EXP, SQRT, diag12, equal_state), abs=1e-14)


def _direct(phi, lam, theta):
    c2, s2 = math.cos(theta) ** 2, math.sin(theta) ** 2
    return c2 * phi(lam[0]) + s2 * phi(lam[1])


def test_pompeiu_matches_brute_force_on_diagonal_grid():
    f, g, h = (lambda t: t * t), (lambda t: t**3), (lambda t: t)
    lam_grid = np.linspace(1.0, 2.0, 21)
    angles = np.linspace(0.0, math.pi, 21)
    for l1 in lam_grid:
        for l2 in lam_grid:
            A = HermitianOperator.diagonal([l1, l2], I12)
            lam = (l1, l2)
            for theta in angles:
                x = StateVector([math.cos(theta), math.sin(theta)])
                expected = _direct(lambda t: h(t) ** 2, lam, theta) * _direct(lambda t: f(t) * g(t), lam, theta) - _direct(
                    lambda t: h(t) * g(t), lam, theta
                ) * _direct(lambda t: h(t) * f(t), lam, theta)
                actual = pompeiu_cebysev(SQUARE, CUBE, IDENTITY, A, x)
                assert actual == pytest.approx(expected, rel=1e-12, abs=1e-12)


# ------------------------------------------------------------------------------
# Pompeiu-Prüfer
# ------------------------------------------------------------------------------
def test_pompeiu_squares(diag12, equal_state):
    report = check_pompeiu(SQUARE, SQUARE, IDENTITY, diag12, equal_state)
    assert report.verdict is Verdict.HOLDS
    assert report.lhs == pytest.approx(21.25, rel=1e-12)
    assert report.rhs == pytest.approx(20.25, rel=1e-12)
    assert report.gap == pytest.approx(1.0, rel=1e-12)
    assert report.hypothesis["classification"] == "synchronous"


def test_pompeiu_asynchronous_pair_reversed(diag12, equal_state):
    report = check_pompeiu(IDENTITY, INVERSE, ONE, diag12, equal_state, Direction.LE)
    assert report.verdict is Verdict.HOLDS
    assert report.gap == pytest.approx(0.125, rel=1e-12)


def test_pompeiu_gate_blocks_unsupported_direction(diag12, equal_state):
    gated = check_pompeiu(IDENTITY, INVERSE, ONE, diag12, equal_state, Direction.GE)
    assert gated.verdict is Verdict.HYPOTHESIS_NOT_MET
    ungated = check_pompeiu(IDENTITY, INVERSE, ONE, diag12, equal_state, Direction.GE, gate=False)
    assert ungated.verdict is Verdict.VIOLATED
    assert ungated.gap == pytest.approx(-0.125, rel=1e-12)


def test_one_function_form_with_power_above_one(diag12, equal_state):
    # ⟨A²x,x⟩⟨A³x,x⟩ gegen ⟨Ax,x⟩⟨A⁴x,x⟩: das Paar (s³, 1) ist s-asynchron
    ge = check_pompeiu(CUBE, ONE, IDENTITY, diag12, equal_state, Direction.GE)
    assert ge.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert ge.lhs == pytest.approx(11.25, rel=1e-12)
    assert ge.rhs == pytest.approx(12.75, rel=1e-12)
    le = check_pompeiu(CUBE, ONE, IDENTITY, diag12, equal_state, Direction.LE)
    assert le.verdict is Verdict.HOLDS
    assert le.gap == pytest.approx(1.5, rel=1e-12)


def test_one_function_form_with_power_below_one(diag12, equal_state):
    assert check_pompeiu(SQRT, ONE, IDENTITY, diag12, equal_state).verdict is Verdict.HOLDS


def test_self_triple_has_zero_gap(diag12, equal_state):
    report = check_pompeiu(EXP, EXP, EXP, diag12, equal_state)
    assert report.verdict is Verdict.HOLDS
    assert report.gap == pytest.approx(0.0, abs=1e-12)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@given(seed=seeds, dim=st.integers(1, 6))
def test_pompeiu_holds_for_synchronous_triples(seed, dim):
    rng = trial_rng(seed)
    A, x = random_operator(rng, dim, I12), random_state(rng, dim)
    for f, g, h in [(SQUARE, CUBE, IDENTITY), (EXP, EXP, SQRT), (INVERSE, ONE, SQUARE)]:
        report = check_pompeiu(f, g, h, A, x, grid_n=32)
        assert report.verdict is Verdict.HOLDS, report


@given(seed=seeds, dim=st.integers(1, 6))
def test_pompeiu_reverses_for_asynchronous_triples(seed, dim):
    rng = trial_rng(seed)
    A, x = random_operator(rng, dim, I12), random_state(rng, dim)
    report = check_pompeiu(IDENTITY, INVERSE, ONE, A, x, Direction.LE, grid_n=32)
    assert report.verdict is Verdict.HOLDS


I14 = SpectralInterval(1.0, 4.0)


@given(seed=seeds, dim=st.integers(1, 6))
def test_pompeiu_is_symmetric_in_f_and_g(seed, dim):
    rng = trial_rng(seed)
    A, x = random_operator(rng, dim, I14), random_state(rng, dim)
    forward = pompeiu_cebysev(SQUARE, EXP, SQRT, A, x)
    swapped = pompeiu_cebysev(EXP, SQUARE, SQRT, A, x)
    assert swapped == pytest.approx(forward, rel=1e-12, abs=1e-9)


@given(seed=seeds, dim=st.integers(1, 6))
def test_pompeiu_changes_sign_with_f(seed, dim):
    rng = trial_rng(seed)
    A, x = random_operator(rng, dim, I14), random_state(rng, dim)
    value = pompeiu_cebysev(SQUARE, EXP, SQRT, A, x)
    assert pompeiu_cebysev(-SQUARE, EXP, SQRT, A, x) == pytest.approx(-value, rel=1e-12, abs=1e-9)


@given(seed=seeds, dim=st.integers(1, 6), c=st.floats(0.1, 10.0))
def test_pompeiu_is_quadratic_in_weight(seed, dim, c):
    rng = trial_rng(seed)
    A, x = random_operator(rng, dim, I14), random_state(rng, dim)
    plain = check_pompeiu(SQUARE, EXP, SQRT, A, x, grid_n=32)
    scaled = check_pompeiu(SQUARE, EXP, SQRT.scaled(c), A, x, grid_n=32)
    scale = abs(plain.lhs) + abs(plain.rhs)
    assert scaled.gap == pytest.approx(c**2 * plain.gap, rel=1e-9, abs=1e-12 * c**2 * scale)
    assert scaled.verdict is plain.verdict is Verdict.HOLDS


@given(seed=seeds, dim=st.integers(1, 6), k=st.integers(0, 5))
def test_functionals_vanish_on_eigenvectors(seed, dim, k):
    A = random_operator(trial_rng(seed), dim, I14)
    x = StateVector(np.array(A.eigenvectors[:, k % dim]))
    report = check_pompeiu(SQUARE, EXP, SQRT, A, x, grid_n=32)
    assert report.gap == pytest.approx(0.0, abs=1e-12 * (1.0 + abs(report.lhs)))
    assert pompeiu_cebysev(SQUARE, EXP, SQRT, A, x) == pytest.approx(0.0, abs=1e-12 * (1.0 + abs(report.lhs)))
    assert cebysev(SQUARE, EXP, A, x) == pytest.approx(0.0, abs=1e-9)


# ------------------------------------------------------------------------------
# Cauchy & Kantorovich
# ------------------------------------------------------------------------------
def test_cauchy_square_root(diag12, equal_state):
    report = check_cauchy(SQRT, IDENTITY, diag12, equal_state)
    assert report.lhs == pytest.approx(3.75, rel=1e-12)
    assert report.rhs == pytest.approx(((1 + 2 * math.sqrt(2)) / 2) ** 2, rel=1e-12)
    assert report.gap == pytest.approx(1.5 - math.sqrt(2), rel=1e-9)


def test_cauchy_gives_inverse_bound(diag12, equal_state):
    report = check_cauchy(SQRT, ScalarFunction.power(-0.5), diag12, equal_state)
    assert report.lhs == pytest.approx(1.125, rel=1e-12)
    assert report.rhs == pytest.approx(1.0, rel=1e-12)


def test_cauchy_equality_on_eigenvector(diag12, e1):
    assert check_cauchy(SQRT, IDENTITY, diag12, e1).gap == pytest.approx(0.0, abs=1e-15)


def test_kantorovich_extremal_state(diag12, equal_state):
    lower, upper = kantorovich_chain(diag12, equal_state)
    assert lower.lhs == pytest.approx(1.125, rel=1e-12)
    assert lower.gap == pytest.approx(0.125, rel=1e-12)
    assert upper.rhs == pytest.approx(9 / 8, rel=1e-12)
    assert upper.gap == pytest.approx(0.0, abs=1e-12)
    assert upper.verdict is Verdict.HOLDS
    assert NOTE_KANTOROVICH_TYPO in upper.notes


def test_kantorovich_scalar_operator():
    A = HermitianOperator.diagonal([3.0, 3.0], SpectralInterval(3.0, 3.0))
    lower, upper = kantorovich_chain(A, StateVector.unit([1.0, 1.0]))
    assert lower.gap == pytest.approx(0.0, abs=1e-15)
    assert upper.rhs == pytest.approx(1.0)


def test_kantorovich_undeclared_spectrum_is_hypothesis_failure():
    A = HermitianOperator.diagonal([1.0, 3.0], SpectralInterval(1.0, 3.0))
    x = StateVector.unit([1.0, 1.0])
    _, upper = kantorovich_chain(A, x, SpectralInterval(1.0, 2.0))
    assert upper.verdict is Verdict.HYPOTHESIS_NOT_MET
    assert NOTE_UNDECLARED_SPECTRUM in upper.notes
    _, ungated = kantorovich_chain(A, x, SpectralInterval(1.0, 2.0), gate=False)
    assert ungated.is_violation


def test_kantorovich_requires_positive_interval(equal_state):
    A = HermitianOperator.diagonal([1.0, 2.0], SpectralInterval(0.0, 2.0))
    with pytest.raises(NonPositiveSpectrum):
        kantorovich_chain(A, equal_state)


@given(seed=seeds, dim=st.integers(1, 8))
def test_kantorovich_chain_holds_for_random_draws(seed, dim):
    rng = trial_rng(seed)
    interval = SpectralInterval(0.5, 3.0)
    lower, upper = kantorovich_chain(random_operator(rng, dim, interval), random_state(rng, dim))
    assert lower.verdict is Verdict.HOLDS
    assert upper.verdict is Verdict.HOLDS


# ------------------------------------------------------------------------------
# Zwei Operatoren, zentriert, inverses Paar
# ------------------------------------------------------------------------------
def test_two_operator_with_equal_operators(diag12, equal_state):
    report = check_two_operator(SQUARE, SQUARE, IDENTITY, diag12, diag12, equal_state, equal_state)
    assert report.gap == pytest.approx(2.0, rel=1e-12)
    assert report.gap == pytest.approx(2 * pompeiu_cebysev(SQUARE, SQUARE, IDENTITY, diag12, equal_state), rel=1e-12)


def test_two_operator_requires_shared_interval(diag12, equal_state):
    B = HermitianOperator.diagonal([1.0, 2.0], SpectralInterval(0.5, 2.0))
    with pytest.raises(IntervalMismatch):
        check_two_operator(SQUARE, SQUARE, IDENTITY, diag12, B, equal_state, equal_state)


def test_centered_identity(diag12, equal_state):
    report = check_centered(IDENTITY, IDENTITY, ONE, diag12, equal_state)
    assert report.lhs == pytest.approx(0.25, rel=1e-12)
    assert report.rhs == pytest.approx(0.0, abs=1e-15)
    assert report.verdict is Verdict.HOLDS


def test_centered_reversed_reading(diag12, equal_state):
    report = check_centered(IDENTITY, INVERSE, ONE, diag12, equal_state, Direction.LE)
    assert report.verdict is Verdict.HOLDS
    assert report.gap == pytest.approx(0.125, rel=1e-12)
    assert NOTE_REVERSED_CENTERED in report.notes


@given(seed=seeds, dim=st.integers(1, 6))
def test_centered_holds_for_equal_functions(seed, dim):
    rng = trial_rng(seed)
    A, x = random_operator(rng, dim, I12), random_state(rng, dim)
    assert check_centered(CUBE, CUBE, SQRT, A, x, grid_n=32).verdict is Verdict.HOLDS


def test_inverse_pair_identity(diag12, equal_state):
    report = check_inverse_pair(IDENTITY, IDENTITY, ONE, diag12, equal_state)
    assert report.lhs == pytest.approx(2.8125, rel=1e-12)
    assert report.rhs == pytest.approx(2.25, rel=1e-12)
    assert report.gap == pytest.approx(0.5625, rel=1e-12)
    assert report.inputs["a"] == pytest.approx(1.5)
    assert report.inputs["b"] == pytest.approx(0.75)


def test_inverse_pair_gates_on_hull(diag12, equal_state):
    report = check_inverse_pair(IDENTITY, IDENTITY, ONE, diag12, equal_state)
    assert report.hypothesis["interval"] == [0.75, 2.0]


def test_inverse_pair_reciprocal_reversed(diag12, equal_state):
    report = check_inverse_pair(IDENTITY, INVERSE, ONE, diag12, equal_state, Direction.LE)
    assert report.gap == pytest.approx(0.5, rel=1e-12)


def test_inverse_pair_vanishes_for_identity_operator():
    A = HermitianOperator.diagonal([1.0, 1.0], I12)
    report = check_inverse_pair(EXP, SQUARE, SQRT, A, StateVector.unit([1.0, 1.0]))
    assert report.gap == pytest.approx(0.0, abs=1e-12)


# ------------------------------------------------------------------------------
# Integralform
# ------------------------------------------------------------------------------
def test_integral_cebysev_of_identity():
    assert integral_cebysev(IDENTITY, IDENTITY, SpectralInterval(0.0, 1.0)) == pytest.approx(1 / 12, rel=1e-12)


def test_integral_cebysev_on_degenerate_interval():
    assert integral_cebysev(IDENTITY, IDENTITY, SpectralInterval(1.0, 1.0)) == 0.0


def test_integral_pompeiu_with_unit_weight_scales_cebysev():
    interval = SpectralInterval(1.0, 3.0)
    assert integral_pompeiu(SQUARE, EXP, ONE, interval) == pytest.approx(4 * integral_cebysev(SQUARE, EXP, interval), rel=1e-10)


def test_integral_pompeiu_check():
    report = check_integral_pompeiu(SQUARE, SQUARE, IDENTITY, I12)
    assert report.verdict is Verdict.HOLDS
    assert report.gap > 0
