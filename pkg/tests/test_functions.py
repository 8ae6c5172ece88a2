import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import ArgumentOrder, ConfigInvalid, DomainViolation, ScenarioError
from functions import (
    IDENTITY,
    INVERSE,
    ONE,
    Monotonicity,
    ScalarFunction,
    Synchrony,
    classify_monotonicity,
    classify_synchrony,
    lemma_holds,
    mono_defect,
    scan_tr_regions,
    sync_product,
)
from spectral_core import SpectralInterval

I12 = SpectralInterval(1.0, 2.0)
SQUARE = ScalarFunction.power(2.0)
CUBE = ScalarFunction.power(3.0)
SQRT = ScalarFunction.power(0.5)
EXP = ScalarFunction.exp()
PARABOLA = ScalarFunction.parabola()


# ------------------------------------------------------------------------------
# Auswertung & Definitionsbereich
# ------------------------------------------------------------------------------
def test_scalar_in_scalar_out():
    assert SQUARE(3.0) == 9.0
    assert isinstance(SQUARE(3.0), float)
    np.testing.assert_allclose(SQUARE(np.array([1.0, 2.0])), [1.0, 4.0])


@pytest.mark.parametrize(
    "fn, point",
    [
        (ScalarFunction.log(), 0.0),
        (ScalarFunction.log(), -1.0),
        (INVERSE, 0.0),
        (ScalarFunction.power(-0.5), 0.0),
        (SQRT, -1.0),
    ],
)
def test_natural_domain_violations(fn, point):
    with pytest.raises(DomainViolation) as info:
        fn(point)
    assert info.value.point == point


def test_declared_domain_is_enforced():
    fn = IDENTITY.restricted(SpectralInterval(0.0, 1.0))
    assert fn(1.0 + 1e-9) == pytest.approx(1.0)
    with pytest.raises(DomainViolation):
        fn(1.5)


def test_overflow_is_a_domain_violation():
    with pytest.raises(DomainViolation):
        EXP(1e4)


def test_tabulated_interpolates_linearly():
    fn = ScalarFunction.tabulated([0.0, 1.0, 2.0], [0.0, 2.0, 0.0])
    assert fn(0.5) == pytest.approx(1.0)
    assert fn.domain.as_list() == [0.0, 2.0]
    with pytest.raises(DomainViolation):
        fn(2.5)


def test_tabulated_rejects_unsorted_knots():
    with pytest.raises(ScenarioError):
        ScalarFunction.tabulated([0.0, 2.0, 1.0], [0.0, 1.0, 2.0])


def test_product_and_sum_compose():
    fn = SQUARE * EXP + ONE.scaled(3.0)
    assert fn(1.0) == pytest.approx(math.e + 3.0)
    assert (-IDENTITY)(2.0) == -2.0


@pytest.mark.parametrize(
    "fn",
    [
        SQUARE,
        ScalarFunction.affine(2.0, -1.0),
        ScalarFunction.tabulated([1.0, 2.0], [3.0, 4.0]),
        (SQUARE * EXP + ONE).restricted(SpectralInterval(0.0, 5.0)),
    ],
)
def test_descriptor_survives_the_file_format(fn):
    assert ScalarFunction.from_descriptor(fn.to_descriptor()) == fn


def test_descriptor_without_kind_is_rejected():
    with pytest.raises(ScenarioError):
        ScalarFunction.from_descriptor({"p": 2})
    with pytest.raises(ScenarioError):
        ScalarFunction.from_descriptor({"kind": "power"})
    with pytest.raises(ScenarioError):
        ScalarFunction.from_descriptor({"kind": "sinh"})


# ------------------------------------------------------------------------------
# Punktprädikate
# ------------------------------------------------------------------------------
def test_sync_product_witness():
    assert sync_product(ONE, IDENTITY, SQRT, 1.0, 4.0) == pytest.approx(-2.0)


def test_mono_defect_parabola():
    assert mono_defect(PARABOLA, IDENTITY, 0.25, 0.75) == pytest.approx(-0.09375)


def test_mono_defect_requires_ordered_arguments():
    with pytest.raises(ArgumentOrder):
        mono_defect(PARABOLA, IDENTITY, 0.75, 0.25)


@given(x=st.floats(1.0, 2.0), y=st.floats(1.0, 2.0))
def test_sync_product_is_symmetric(x, y):
    assert sync_product(SQUARE, CUBE, SQRT, x, y) == pytest.approx(sync_product(SQUARE, CUBE, SQRT, y, x), abs=1e-12)


@given(x=st.floats(1.0, 2.0), y=st.floats(1.0, 2.0))
def test_self_pair_is_synchronous_pointwise(x, y):
    assert sync_product(EXP, EXP, SQRT, x, y) >= 0.0


# ------------------------------------------------------------------------------
# Gitter-Urteile
# ------------------------------------------------------------------------------
@pytest.mark.parametrize(
    "f, g, h, interval, expected",
    [
        (SQUARE, CUBE, IDENTITY, I12, Synchrony.SYNCHRONOUS),
        (IDENTITY, INVERSE, ONE, I12, Synchrony.ASYNCHRONOUS),
        (EXP, EXP, ScalarFunction.power(-1.5), I12, Synchrony.SYNCHRONOUS),
        (ONE, IDENTITY, SQRT, SpectralInterval(1.0, 4.0), Synchrony.ASYNCHRONOUS),
        (CUBE, ONE, IDENTITY, I12, Synchrony.ASYNCHRONOUS),
        (PARABOLA, IDENTITY, ONE, SpectralInterval(0.0, 1.0), Synchrony.MIXED),
    ],
)
def test_classify_synchrony(f, g, h, interval, expected):
    verdict = classify_synchrony(f, g, h, interval, 64)
    assert verdict.classification is expected
    if expected is Synchrony.MIXED:
        assert verdict.witness_pos is not None and verdict.witness_neg is not None


def test_synchrony_rejects_negative_weight():
    with pytest.raises(DomainViolation):
        classify_synchrony(IDENTITY, IDENTITY, ScalarFunction.affine(1.0, -1.5), I12, 16)


def test_synchrony_needs_two_grid_points():
    with pytest.raises(ConfigInvalid):
        classify_synchrony(IDENTITY, IDENTITY, ONE, I12, 1)


def test_synchrony_summary_is_plain_data():
    summary = classify_synchrony(IDENTITY, INVERSE, ONE, I12, 16).summary()
    assert summary["classification"] == "asynchronous"
    assert summary["grid_size"] == 16
    assert summary["interval"] == [1.0, 2.0]


I14 = SpectralInterval(1.0, 4.0)
# s² - 5s fällt bis 2.5 und steigt danach
VALLEY = SQUARE + ScalarFunction.affine(-5.0, 0.0)
GRID_FUNCTIONS = st.sampled_from([SQUARE, EXP, INVERSE, -SQRT, VALLEY])


@given(f=GRID_FUNCTIONS, g=GRID_FUNCTIONS, h=st.sampled_from([ONE, IDENTITY, CUBE]), c=st.floats(0.1, 10.0))
def test_synchrony_ignores_positive_weight_scale(f, g, h, c):
    plain = classify_synchrony(f, g, h, I14, 32)
    scaled = classify_synchrony(f, g, h.scaled(c), I14, 32)
    assert scaled.classification is plain.classification


@given(f=GRID_FUNCTIONS, g=GRID_FUNCTIONS)
def test_unit_weight_gives_classical_synchrony(f, g):
    grid = I14.grid(32)
    F, G = f(grid), g(grid)
    products = np.subtract.outer(F, F) * np.subtract.outer(G, G)
    tol = 1e-12 * (1.0 + np.max(np.abs(products)))
    if products.min() >= -tol:
        classical = Synchrony.SYNCHRONOUS
    elif products.max() <= tol:
        classical = Synchrony.ASYNCHRONOUS
    else:
        classical = Synchrony.MIXED
    assert classify_synchrony(f, g, ONE, I14, 32).classification is classical


@pytest.mark.parametrize(
    "f, h, interval, expected",
    [
        (ONE, SQUARE, I12, Monotonicity.DECREASING),
        (IDENTITY, SQRT, I12, Monotonicity.INCREASING),
        (INVERSE, ScalarFunction.power(-2.0), I12, Monotonicity.INCREASING),
        (PARABOLA, IDENTITY, SpectralInterval(0.0, 1.0).open_shrink(), Monotonicity.DECREASING),
        (SQUARE, SQUARE, I12, Monotonicity.INCREASING),
    ],
)
def test_classify_monotonicity(f, h, interval, expected):
    assert classify_monotonicity(f, h, interval, 64).classification is expected


def test_monotonicity_needs_strictly_positive_h():
    with pytest.raises(DomainViolation):
        classify_monotonicity(PARABOLA, IDENTITY, SpectralInterval(0.0, 1.0), 16)


def test_lemma_in_provable_form():
    assert lemma_holds(SQUARE, IDENTITY, I12) is True


def test_lemma_converse_fails_for_parabola():
    interval = SpectralInterval(0.1, 0.9)
    assert classify_monotonicity(PARABOLA, IDENTITY, interval).classification is Monotonicity.DECREASING
    assert classify_monotonicity(PARABOLA, ONE, interval).classification is Monotonicity.MIXED
    assert lemma_holds(PARABOLA, IDENTITY, interval) is None


def test_unrestricted_lemma_is_false():
    h = ScalarFunction.power(-2.0)
    assert classify_monotonicity(INVERSE, h, I12).classification is Monotonicity.INCREASING
    assert classify_monotonicity(INVERSE, ONE, I12).classification is Monotonicity.DECREASING
    assert lemma_holds(INVERSE, h, I12) is None


# ------------------------------------------------------------------------------
# Regionen
# ------------------------------------------------------------------------------
def _labels(scan):
    return [verdict.classification.value for _, verdict in scan]


@pytest.mark.parametrize(
    "f, g, r_values, expected",
    [
        (ONE, IDENTITY, [-1.0, 0.5, 2.0], ["synchronous", "asynchronous", "synchronous"]),
        (IDENTITY, INVERSE, [-2.0, 0.0, 2.0], ["synchronous", "asynchronous", "synchronous"]),
        (SQUARE, CUBE, [0.5, 1.0], ["synchronous", "synchronous"]),
        (SQUARE, CUBE, [2.5], ["asynchronous"]),
        (EXP, EXP, [-1.0, 0.0, 3.0], ["synchronous"] * 3),
    ],
)
def test_scan_regions(f, g, r_values, expected):
    assert _labels(scan_tr_regions(f, g, r_values, I12, 64)) == expected


I_LOG = SpectralInterval(1.5, 3.0)
LOG = ScalarFunction.log()
POWER_M3 = ScalarFunction.power(-3.0)


def test_scan_power_against_log():
    r_values = [-4.0, -3.5, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0]
    expected = ["synchronous"] * 2 + ["asynchronous"] * 5 + ["mixed", "synchronous"]
    assert _labels(scan_tr_regions(POWER_M3, LOG, r_values, I_LOG, 64)) == expected


@given(r=st.floats(-2.9, -0.1))
def test_power_and_log_are_asynchronous_between_exponent_and_zero(r):
    # f/s^r fällt, log/s^r steigt
    assert classify_synchrony(POWER_M3, LOG, ScalarFunction.power(r), I_LOG, 32).classification is Synchrony.ASYNCHRONOUS


@given(r=st.floats(-6.0, -3.1))
def test_power_and_log_are_synchronous_below_exponent(r):
    assert classify_synchrony(POWER_M3, LOG, ScalarFunction.power(r), I_LOG, 32).classification is Synchrony.SYNCHRONOUS


def test_scan_regions_needs_positive_gamma_for_negative_r():
    with pytest.raises(DomainViolation):
        scan_tr_regions(IDENTITY, IDENTITY, [-1.0], SpectralInterval(0.0, 1.0))
