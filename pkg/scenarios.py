# ==============================================================================
# 📚 SCENARIOS (Festgepinnte Bibliothek & Abdeckungs-Manifest)
# ------------------------------------------------------------------------------
# ZWECK:    Jedes durchgerechnete Beispiel und jede Spezialisierung als
#           Szenario-Dokument mit erwartetem Ergebnis. `run_library` rechnet
#           alles nach, `check_coverage` verlangt für jede theorem_id
#           mindestens ein Szenario.
# FORMAT:   {"name", "check", "interval", "operators", "states", "functions",
#            "direction", "expect" | "expect_error", ...}
# ==============================================================================
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import codec
import errors
from errors import ScenarioError, VerificationError
from functionals import (
    InequalityReport,
    cebysev,
    check_cauchy,
    check_centered,
    check_integral_pompeiu,
    check_inverse_pair,
    check_pompeiu,
    check_two_operator,
    integral_cebysev,
    kantorovich_chain,
    pompeiu_cebysev,
)
from functions import (
    DEFAULT_GRID,
    ONE,
    ScalarFunction,
    classify_monotonicity,
    classify_synchrony,
    lemma_holds,
    mono_defect,
    scan_tr_regions,
    sync_product,
)
from harness import FAMILIES, THEOREM_IDS
from multi_op import (
    NormalizationMode,
    OperatorEnsemble,
    check_ensemble_centered,
    check_ensemble_pompeiu,
    check_ensemble_square_bound,
    discrete_chebyshev,
    kantorovich_ensemble_chain,
)
from spectral_core import SpectralInterval, block_diagonal, expectation

logger = logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# KONFIGURATION
# ------------------------------------------------------------------------------
TOL_PINNED = 1e-12


# ==============================================================================
# 1. SZENARIO AUSFÜHREN
# ==============================================================================
@dataclass(frozen=True)
class ScenarioOutcome:
    name: str
    check: str
    passed: bool
    observed: list[dict[str, Any]] = field(default_factory=list)
    message: str = ""

    def to_record(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "check": self.check,
            "passed": self.passed,
            "message": self.message,
            "observed": self.observed,
        }


class _Doc:
    """Zugriff auf ein Szenario-Dokument mit Parse-Diagnosen."""

    def __init__(self, doc: Mapping[str, Any]):
        if not isinstance(doc, Mapping):
            raise ScenarioError(f"Szenario muss ein Objekt sein, erhalten {type(doc).__name__}")
        self.doc = doc
        self.name = str(doc.get("name", "<unbenannt>"))

    def field(self, key: str) -> Any:
        try:
            return self.doc[key]
        except KeyError:
            raise ScenarioError(f"{self.name}: Feld '{key}' fehlt") from None

    @property
    def interval(self) -> SpectralInterval:
        interval = codec.interval_from_doc(self.field("interval"))
        return interval.open_shrink() if self.doc.get("open") else interval

    @property
    def operators(self):
        return [codec.operator_from_doc(op, self.interval) for op in self.field("operators")]

    @property
    def states(self):
        return [codec.state_from_doc(x) for x in self.field("states")]

    def fn(self, key: str) -> ScalarFunction:
        functions = self.field("functions")
        if key not in functions:
            raise ScenarioError(f"{self.name}: Funktion '{key}' fehlt")
        return ScalarFunction.from_descriptor(functions[key])

    @property
    def fgh(self):
        return self.fn("f"), self.fn("g"), self.fn("h")

    @property
    def direction(self) -> str:
        return self.doc.get("direction", "ge")

    @property
    def grid_n(self) -> int:
        return int(self.doc.get("grid_n", DEFAULT_GRID))

    @property
    def ensemble(self) -> OperatorEnsemble:
        mode = NormalizationMode(self.doc.get("normalization", NormalizationMode.SUM_OF_SQUARES.value))
        return OperatorEnsemble(tuple(self.operators), tuple(self.states), mode)


Observed = list[InequalityReport] | dict[str, Any]


def _run_value(kind: str, d: _Doc) -> dict[str, Any]:
    if kind == "eigenvalues":
        return {"eigenvalues": d.operators[0].eigenvalues.tolist()}
    if kind == "expectation":
        return {"value": expectation(d.operators[0], d.fn("f"), d.states[0])}
    if kind == "block_expectation":
        big, x = block_diagonal(d.operators, d.states)
        return {"dim": big.dim, "value": expectation(big, d.fn("f"), x)}
    if kind == "cebysev":
        return {"value": cebysev(d.fn("f"), d.fn("g"), d.operators[0], d.states[0])}
    if kind == "pompeiu_value":
        f, g, h = d.fgh
        return {"value": pompeiu_cebysev(f, g, h, d.operators[0], d.states[0])}
    if kind == "integral_cebysev":
        return {"value": integral_cebysev(d.fn("f"), d.fn("g"), d.interval)}
    if kind == "sync_product":
        f, g, h = d.fgh
        x, y = d.field("points")
        return {"value": sync_product(f, g, h, x, y)}
    if kind == "mono_defect":
        x, t = d.field("points")
        return {"value": mono_defect(d.fn("f"), d.fn("h"), x, t)}
    if kind == "synchrony":
        f, g, h = d.fgh
        return {"classification": classify_synchrony(f, g, h, d.interval, d.grid_n).classification.value}
    if kind == "monotonicity":
        return {"classification": classify_monotonicity(d.fn("f"), d.fn("h"), d.interval, d.grid_n).classification.value}
    if kind == "lemma":
        f, h = d.fn("f"), d.fn("h")
        return {
            "h_monotonicity": classify_monotonicity(f, h, d.interval, d.grid_n).classification.value,
            "monotonicity": classify_monotonicity(f, ONE, d.interval, d.grid_n).classification.value,
            "lemma_holds": lemma_holds(f, h, d.interval, d.grid_n),
        }
    if kind == "regions":
        scan = scan_tr_regions(d.fn("f"), d.fn("g"), d.field("r_values"), d.interval, d.grid_n)
        return {"classifications": [verdict.classification.value for _, verdict in scan]}
    raise ScenarioError(f"{d.name}: unbekannte Prüfung '{kind}'")


def _run_check(kind: str, d: _Doc) -> Observed:
    if kind == "pompeiu":
        f, g, h = d.fgh
        return [check_pompeiu(f, g, h, d.operators[0], d.states[0], d.direction, d.grid_n)]
    if kind == "cauchy":
        return [check_cauchy(d.fn("f"), d.fn("h"), d.operators[0], d.states[0])]
    if kind == "kantorovich":
        declared = codec.interval_from_doc(d.doc["declared_interval"]) if "declared_interval" in d.doc else None
        return list(kantorovich_chain(d.operators[0], d.states[0], declared))
    if kind == "two_operator":
        f, g, h = d.fgh
        (A, B), (x, y) = d.operators, d.states
        return [check_two_operator(f, g, h, A, B, x, y, d.direction, d.grid_n)]
    if kind == "centered":
        f, g, h = d.fgh
        return [check_centered(f, g, h, d.operators[0], d.states[0], d.direction, d.grid_n)]
    if kind == "inverse_pair":
        f, g, h = d.fgh
        return [check_inverse_pair(f, g, h, d.operators[0], d.states[0], d.direction, d.grid_n)]
    if kind == "integral_pompeiu":
        f, g, h = d.fgh
        return [check_integral_pompeiu(f, g, h, d.interval, d.direction, d.grid_n)]
    if kind == "ensemble_pompeiu":
        f, g, h = d.fgh
        return [check_ensemble_pompeiu(f, g, h, d.ensemble, d.direction, d.grid_n)]
    if kind == "ensemble_centered":
        f, g, h = d.fgh
        return [check_ensemble_centered(f, g, h, d.ensemble, d.direction, d.grid_n)]
    if kind == "ensemble_square_bound":
        return [check_ensemble_square_bound(d.ensemble)]
    if kind == "discrete_chebyshev":
        return [discrete_chebyshev(d.field("a"), d.field("b"))]
    if kind == "chain":
        intervals = [codec.interval_from_doc(iv) for iv in d.doc["per_op_intervals"]] if "per_op_intervals" in d.doc else None
        return list(kantorovich_ensemble_chain(d.ensemble, intervals).links)
    return _run_value(kind, d)


def _close(actual: Any, expected: Any) -> bool:
    if isinstance(expected, bool) or expected is None or isinstance(expected, str):
        return actual == expected
    if isinstance(expected, (int, float)):
        return actual is not None and not isinstance(actual, str) and abs(float(actual) - expected) <= TOL_PINNED * (1.0 + abs(expected))
    if isinstance(expected, (list, tuple)):
        return isinstance(actual, (list, tuple)) and len(actual) == len(expected) and all(_close(a, e) for a, e in zip(actual, expected))
    return actual == expected


def _compare(observed: Mapping[str, Any], expected: Mapping[str, Any], label: str) -> list[str]:
    problems = []
    for key, want in expected.items():
        got = observed.get(key)
        if not _close(got, want):
            problems.append(f"{label}{key}: erwartet {want!r}, erhalten {got!r}")
    return problems


def run_scenario(doc: Mapping[str, Any]) -> ScenarioOutcome:
    d = _Doc(doc)
    kind = str(d.field("check"))
    expect_error = doc.get("expect_error")
    if expect_error:
        error_class(expect_error)
    try:
        result = _run_check(kind, d)
    except ScenarioError:
        raise
    except VerificationError as exc:
        if expect_error and type(exc).__name__ == expect_error:
            return ScenarioOutcome(d.name, kind, True, [], f"{expect_error}: {exc}")
        if expect_error:
            return ScenarioOutcome(d.name, kind, False, [], f"erwartet {expect_error}, erhalten {type(exc).__name__}: {exc}")
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"{d.name}: fehlerhaftes Dokument ({type(exc).__name__}: {exc})") from None
    if expect_error:
        return ScenarioOutcome(d.name, kind, False, [], f"erwartet {expect_error}, aber kein Fehler")

    expected = d.doc.get("expect", {})
    if isinstance(result, dict):
        observed = [result]
        problems = _compare(result, expected, "")
    else:
        observed = [report.to_record() for report in result]
        by_id = {record["theorem_id"]: record for record in observed}
        if len(observed) == 1 and not (set(expected) & set(by_id)):
            problems = _compare(observed[0], expected, "")
        else:
            problems = []
            for tid, want in expected.items():
                if tid not in by_id:
                    problems.append(f"{tid}: kein Bericht")
                    continue
                problems += _compare(by_id[tid], want, f"{tid}.")
    outcome = ScenarioOutcome(d.name, kind, not problems, observed, "; ".join(problems))
    if not outcome.passed:
        logger.warning("Szenario %s fehlgeschlagen: %s", d.name, outcome.message)
    return outcome


# ==============================================================================
# 2. BAUSTEINE DER BIBLIOTHEK
# ==============================================================================
ID = {"kind": "identity"}
ONE_FN = {"kind": "constant", "c": 1.0}
SQUARE = {"kind": "power", "p": 2.0}
CUBE = {"kind": "power", "p": 3.0}
SQRT = {"kind": "power", "p": 0.5}
INV = {"kind": "power", "p": -1.0}
EXP = {"kind": "exp"}
LOG = {"kind": "log"}
PARABOLA = {"kind": "parabola"}


def power(p: float) -> dict[str, Any]:
    return {"kind": "power", "p": p}


def fns(f=None, g=None, h=None) -> dict[str, Any]:
    return {key: value for key, value in (("f", f), ("g", g), ("h", h)) if value is not None}


def diag(*values: float) -> dict[str, Any]:
    return {"eigenvalues": list(values)}


EQUAL = {"components": [1.0, 1.0], "normalize": True}
HALVES = [0.5, 0.5]
E1 = [1.0, 0.0]
I12 = [1.0, 2.0]
D12 = diag(1.0, 2.0)

# Cauchy-Wert: ((1 + 2√2)/2)² gegen 2.5 · 1.5
CAUCHY_RHS = ((1.0 + 2.0 * math.sqrt(2.0)) / 2.0) ** 2

PINNED_LIBRARY: tuple[dict[str, Any], ...] = (
    # --- Spektralkern ------------------------------------------------------------
    {"name": "eigen_diagonal", "check": "eigenvalues", "interval": I12, "operators": [{"matrix": [[1, 0], [0, 2]]}],
     "expect": {"eigenvalues": [1.0, 2.0]}},
    {"name": "eigen_swap", "check": "eigenvalues", "interval": [-1.0, 1.0], "operators": [{"matrix": [[0, 1], [1, 0]]}],
     "expect": {"eigenvalues": [-1.0, 1.0]}},
    {"name": "eigen_symmetric", "check": "eigenvalues", "interval": [0.0, 4.0], "operators": [{"matrix": [[2, 1], [1, 2]]}],
     "expect": {"eigenvalues": [1.0, 3.0]}},
    {"name": "eigen_not_hermitian", "check": "eigenvalues", "interval": [0.0, 4.0],
     "operators": [{"matrix": [[2, 1], [0, 2]]}], "expect_error": "NotHermitian"},
    {"name": "eigen_outside_interval", "check": "eigenvalues", "interval": [1.5, 2.0],
     "operators": [{"matrix": [[1, 0], [0, 2]]}], "expect_error": "SpectrumOutOfInterval"},
    {"name": "expectation_mean", "check": "expectation", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(f=ID), "expect": {"value": 1.5}},
    {"name": "expectation_eigenvector", "check": "expectation", "interval": I12, "operators": [D12], "states": [E1],
     "functions": fns(f=SQUARE), "expect": {"value": 1.0}},
    {"name": "expectation_inverse", "check": "expectation", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(f=INV), "expect": {"value": 0.75}},
    {"name": "block_two_copies", "check": "block_expectation", "interval": I12, "operators": [D12, D12],
     "states": [HALVES, HALVES], "functions": fns(f=ID), "expect": {"dim": 4, "value": 1.5}},
    {"name": "block_interval_mismatch", "check": "block_expectation", "interval": I12,
     "operators": [{"eigenvalues": [1.0, 2.0], "interval": [1.0, 2.0]}, {"eigenvalues": [3.0, 4.0], "interval": [3.0, 4.0]}],
     "states": [HALVES, HALVES], "functions": fns(f=ID), "expect_error": "IntervalMismatch"},
    # --- Funktionen ----------------------------------------------------------------
    {"name": "sync_product_witness", "check": "sync_product", "functions": fns(ONE_FN, ID, SQRT), "points": [1.0, 4.0],
     "expect": {"value": -2.0}},
    {"name": "mono_defect_parabola", "check": "mono_defect", "functions": fns(f=PARABOLA, h=ID), "points": [0.25, 0.75],
     "expect": {"value": -0.09375}},
    {"name": "mono_defect_argument_order", "check": "mono_defect", "functions": fns(f=PARABOLA, h=ID),
     "points": [0.75, 0.25], "expect_error": "ArgumentOrder"},
    {"name": "synchrony_powers", "check": "synchrony", "interval": I12, "grid_n": 64, "functions": fns(SQUARE, CUBE, ID),
     "expect": {"classification": "synchronous"}},
    {"name": "synchrony_inverse", "check": "synchrony", "interval": I12, "grid_n": 64, "functions": fns(ID, INV, ONE_FN),
     "expect": {"classification": "asynchronous"}},
    {"name": "synchrony_exp", "check": "synchrony", "interval": I12, "grid_n": 64, "functions": fns(EXP, EXP, power(-1.5)),
     "expect": {"classification": "synchronous"}},
    {"name": "monotonicity_constant", "check": "monotonicity", "interval": I12, "functions": fns(f=ONE_FN, h=SQUARE),
     "expect": {"classification": "h-decreasing"}},
    {"name": "monotonicity_identity", "check": "monotonicity", "interval": I12, "functions": fns(f=ID, h=SQRT),
     "expect": {"classification": "h-increasing"}},
    {"name": "monotonicity_inverse", "check": "monotonicity", "interval": I12, "functions": fns(f=INV, h=power(-2.0)),
     "expect": {"classification": "h-increasing"}},
    {"name": "monotonicity_parabola_open", "check": "monotonicity", "interval": [0.0, 1.0], "open": True,
     "functions": fns(f=PARABOLA, h=ID), "expect": {"classification": "h-decreasing"}},
    {"name": "lemma_converse_refuted", "check": "lemma", "interval": [0.1, 0.9], "functions": fns(f=PARABOLA, h=ID),
     "expect": {"h_monotonicity": "h-decreasing", "monotonicity": "mixed", "lemma_holds": None}},
    {"name": "lemma_unrestricted_refuted", "check": "lemma", "interval": I12, "functions": fns(f=INV, h=power(-2.0)),
     "expect": {"h_monotonicity": "h-increasing", "monotonicity": "h-decreasing", "lemma_holds": None}},
    {"name": "lemma_provable_form", "check": "lemma", "interval": I12, "functions": fns(f=SQUARE, h=ID),
     "expect": {"h_monotonicity": "h-increasing", "monotonicity": "h-increasing", "lemma_holds": True}},
    {"name": "regions_one_vs_identity", "check": "regions", "interval": I12, "functions": fns(ONE_FN, ID),
     "r_values": [-1.0, 0.5, 2.0], "expect": {"classifications": ["synchronous", "asynchronous", "synchronous"]}},
    {"name": "regions_identity_vs_inverse", "check": "regions", "interval": I12, "functions": fns(ID, INV),
     "r_values": [-2.0, 0.0, 2.0], "expect": {"classifications": ["synchronous", "asynchronous", "synchronous"]}},
    {"name": "regions_exp", "check": "regions", "interval": I12, "functions": fns(EXP, EXP),
     "r_values": [-1.0, 0.0, 1.0, 2.0], "expect": {"classifications": ["synchronous"] * 4}},
    {"name": "regions_powers", "check": "regions", "interval": I12, "functions": fns(SQUARE, CUBE),
     "r_values": [0.5, 1.0], "expect": {"classifications": ["synchronous", "synchronous"]}},
    # s^p und log für s > 1: das Gitter liefert asynchron für p < r < 0 und synchron für r < p,
    # also genau umgekehrt zur verbreiteten Lesart; r = 1 hat sein Extremum von log(s)/s im Intervall
    {"name": "regions_power_vs_log", "check": "regions", "interval": [1.5, 3.0], "grid_n": 64,
     "functions": fns(power(-3.0), LOG), "r_values": [-4.0, -3.5, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0],
     "expect": {"classifications": ["synchronous"] * 2 + ["asynchronous"] * 5 + ["mixed", "synchronous"]}},
    # --- Funktionale -----------------------------------------------------------------
    {"name": "cebysev_identity", "check": "cebysev", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(ID, ID), "expect": {"value": 0.25}},
    {"name": "cebysev_inverse", "check": "cebysev", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(ID, INV), "expect": {"value": -0.125}},
    {"name": "cebysev_identity_operator", "check": "cebysev", "interval": I12, "operators": [diag(1.0, 1.0, 1.0)],
     "states": [{"components": [1.0, 2.0, 3.0], "normalize": True}], "functions": fns(EXP, LOG),
     "expect": {"value": 0.0}},
    {"name": "pompeiu_value_squares", "check": "pompeiu_value", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(SQUARE, SQUARE, ID), "expect": {"value": 1.0}},
    {"name": "pompeiu_value_unit_weight", "check": "pompeiu_value", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(ID, INV, ONE_FN), "expect": {"value": -0.125}},
    {"name": "integral_cebysev_identity", "check": "integral_cebysev", "interval": [0.0, 1.0], "functions": fns(ID, ID),
     "expect": {"value": 1.0 / 12.0}},
    # --- Ein-Operator-Sätze -------------------------------------------------------------
    {"name": "pompeiu_squares", "check": "pompeiu", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(SQUARE, SQUARE, ID), "expect": {"verdict": "holds", "lhs": 21.25, "rhs": 20.25, "gap": 1.0}},
    {"name": "pompeiu_asynchronous", "check": "pompeiu", "direction": "le", "interval": I12, "operators": [D12],
     "states": [EQUAL], "functions": fns(ID, INV, ONE_FN), "expect": {"verdict": "holds", "gap": 0.125}},
    {"name": "pompeiu_self", "check": "pompeiu", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(EXP, EXP, EXP), "expect": {"verdict": "holds", "gap": 0.0}},
    {"name": "pompeiu_wrong_direction", "check": "pompeiu", "direction": "ge", "interval": I12, "operators": [D12],
     "states": [EQUAL], "functions": fns(ID, INV, ONE_FN), "expect": {"verdict": "hypothesis-not-met"}},
    {"name": "pompeiu_h_identity", "check": "pompeiu", "interval": [0.5, 3.0],
     "operators": [{"matrix": [[2, 1], [1, 2]]}], "states": [{"components": [[1.0, 0.5], [0.0, -1.0]], "normalize": True}],
     "functions": fns(SQUARE, CUBE, ID), "expect": {"verdict": "holds"}},
    {"name": "pompeiu_one_function_h_identity", "check": "pompeiu", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(SQRT, ONE_FN, ID), "expect": {"verdict": "holds"}},
    {"name": "pompeiu_one_function_power_above_one", "check": "pompeiu", "interval": I12, "operators": [D12],
     "states": [EQUAL], "functions": fns(CUBE, ONE_FN, ID), "expect": {"verdict": "hypothesis-not-met", "gap": -1.5}},
    {"name": "pompeiu_one_function_power_above_one_reversed", "check": "pompeiu", "direction": "le", "interval": I12,
     "operators": [D12], "states": [EQUAL], "functions": fns(CUBE, ONE_FN, ID), "expect": {"verdict": "holds", "gap": 1.5}},
    {"name": "pompeiu_one_function_general_h", "check": "pompeiu", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(INV, ONE_FN, SQUARE), "expect": {"verdict": "holds"}},
    {"name": "cauchy_self", "check": "cauchy", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(f=EXP, h=EXP), "expect": {"verdict": "holds", "gap": 0.0}},
    {"name": "cauchy_square_root", "check": "cauchy", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(f=SQRT, h=ID), "expect": {"verdict": "holds", "lhs": 3.75, "rhs": CAUCHY_RHS}},
    {"name": "cauchy_eigenvector", "check": "cauchy", "interval": I12, "operators": [D12], "states": [E1],
     "functions": fns(f=SQRT, h=ID), "expect": {"verdict": "holds", "gap": 0.0}},
    {"name": "cauchy_reciprocal_product", "check": "cauchy", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(f=SQRT, h=power(-0.5)), "expect": {"verdict": "holds", "lhs": 1.125, "rhs": 1.0}},
    {"name": "kantorovich_extremal", "check": "kantorovich", "interval": I12, "operators": [D12], "states": [EQUAL],
     "expect": {"kantorovich_lower": {"verdict": "holds", "lhs": 1.125, "gap": 0.125},
                "kantorovich_upper": {"verdict": "holds", "lhs": 1.125, "rhs": 1.125, "gap": 0.0}}},
    {"name": "kantorovich_eigenvector", "check": "kantorovich", "interval": I12, "operators": [D12], "states": [E1],
     "expect": {"kantorovich_lower": {"verdict": "holds", "lhs": 1.0, "gap": 0.0}}},
    {"name": "kantorovich_scalar", "check": "kantorovich", "interval": [3.0, 3.0], "operators": [diag(3.0, 3.0)],
     "states": [EQUAL], "expect": {"kantorovich_lower": {"verdict": "holds", "gap": 0.0},
                                   "kantorovich_upper": {"verdict": "holds", "rhs": 1.0, "gap": 0.0}}},
    {"name": "kantorovich_undeclared_spectrum", "check": "kantorovich", "interval": [1.0, 3.0], "operators": [diag(1.0, 3.0)],
     "states": [EQUAL], "declared_interval": [1.0, 2.0],
     "expect": {"kantorovich_upper": {"verdict": "hypothesis-not-met"}}},
    {"name": "kantorovich_nonpositive", "check": "kantorovich", "interval": [0.0, 2.0], "operators": [D12],
     "states": [EQUAL], "expect_error": "NonPositiveSpectrum"},
    {"name": "two_operator_same", "check": "two_operator", "interval": I12, "operators": [D12, D12], "states": [EQUAL, EQUAL],
     "functions": fns(SQUARE, SQUARE, ID), "expect": {"verdict": "holds", "gap": 2.0}},
    {"name": "two_operator_powers", "check": "two_operator", "interval": I12, "operators": [D12, diag(1.0, 1.5)],
     "states": [EQUAL, EQUAL], "functions": fns(SQUARE, SQUARE, ID), "expect": {"verdict": "holds"}},
    {"name": "two_operator_exp", "check": "two_operator", "interval": I12, "operators": [D12, diag(1.25, 1.75)],
     "states": [EQUAL, E1], "functions": fns(EXP, EXP, INV), "expect": {"verdict": "holds"}},
    {"name": "centered_identity", "check": "centered", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(ID, ID, ONE_FN), "expect": {"verdict": "holds", "lhs": 0.25, "rhs": 0.0, "gap": 0.25}},
    {"name": "centered_self", "check": "centered", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(SQUARE, SQUARE, SQUARE), "expect": {"verdict": "holds"}},
    {"name": "centered_f_equals_g", "check": "centered", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(CUBE, CUBE, SQRT), "expect": {"verdict": "holds"}},
    {"name": "centered_f_equals_g_h_identity", "check": "centered", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(EXP, EXP, ID), "expect": {"verdict": "holds"}},
    {"name": "centered_inverse_reversed", "check": "centered", "direction": "le", "interval": I12, "operators": [D12],
     "states": [EQUAL], "functions": fns(ID, INV, ONE_FN), "expect": {"verdict": "holds", "gap": 0.125}},
    {"name": "inverse_pair_identity", "check": "inverse_pair", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(ID, ID, ONE_FN), "expect": {"verdict": "holds", "lhs": 2.8125, "rhs": 2.25, "gap": 0.5625}},
    {"name": "inverse_pair_f_equals_g", "check": "inverse_pair", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(SQUARE, SQUARE, ID), "expect": {"verdict": "holds"}},
    {"name": "inverse_pair_identity_operator", "check": "inverse_pair", "interval": I12, "operators": [diag(1.0, 1.0)],
     "states": [EQUAL], "functions": fns(EXP, SQUARE, SQRT), "expect": {"gap": 0.0}},
    {"name": "inverse_pair_reciprocal", "check": "inverse_pair", "direction": "le", "interval": I12, "operators": [D12],
     "states": [EQUAL], "functions": fns(ID, INV, ONE_FN), "expect": {"verdict": "holds", "gap": 0.5}},
    {"name": "integral_pompeiu_squares", "check": "integral_pompeiu", "interval": I12, "functions": fns(SQUARE, SQUARE, ID),
     "expect": {"verdict": "holds"}},
    # --- Ensembles -------------------------------------------------------------------------
    {"name": "ensemble_pompeiu_two_blocks", "check": "ensemble_pompeiu", "interval": I12, "operators": [D12, D12],
     "states": [HALVES, HALVES], "functions": fns(SQUARE, SQUARE, ID),
     "expect": {"verdict": "holds", "lhs": 21.25, "rhs": 20.25, "gap": 1.0}},
    {"name": "ensemble_pompeiu_single", "check": "ensemble_pompeiu", "interval": I12, "operators": [D12], "states": [EQUAL],
     "functions": fns(SQUARE, SQUARE, ID), "expect": {"verdict": "holds", "gap": 1.0}},
    {"name": "ensemble_pompeiu_f_equals_g", "check": "ensemble_pompeiu", "interval": I12,
     "operators": [D12, diag(1.25, 1.75)], "states": [HALVES, HALVES], "functions": fns(CUBE, CUBE, SQRT),
     "expect": {"verdict": "holds"}},
    {"name": "ensemble_pompeiu_f_equals_g_h_identity", "check": "ensemble_pompeiu", "interval": I12,
     "operators": [D12, diag(1.25, 1.75)], "states": [HALVES, HALVES], "functions": fns(EXP, EXP, ID),
     "expect": {"verdict": "holds"}},
    {"name": "ensemble_pompeiu_bad_normalization", "check": "ensemble_pompeiu", "interval": I12, "operators": [D12, D12],
     "states": [E1, E1], "functions": fns(SQUARE, SQUARE, ID), "expect_error": "NormalizationViolation"},
    {"name": "ensemble_centered_two_blocks", "check": "ensemble_centered", "interval": I12, "operators": [D12, D12],
     "states": [HALVES, HALVES], "functions": fns(ID, ID, ONE_FN), "expect": {"verdict": "holds", "lhs": 0.25, "rhs": 0.0}},
    {"name": "ensemble_centered_f_equals_g", "check": "ensemble_centered", "interval": I12,
     "operators": [D12, diag(1.25, 1.75)], "states": [HALVES, HALVES], "functions": fns(SQUARE, SQUARE, SQRT),
     "expect": {"verdict": "holds"}},
    {"name": "ensemble_centered_f_equals_g_h_identity", "check": "ensemble_centered", "interval": I12,
     "operators": [D12, diag(1.25, 1.75)], "states": [HALVES, HALVES], "functions": fns(CUBE, CUBE, ID),
     "expect": {"verdict": "holds"}},
    {"name": "ensemble_square_bound_counterexample", "check": "ensemble_square_bound", "interval": I12,
     "operators": [diag(1.0, 1.0), diag(1.0, 1.0)],
     "states": [[math.sqrt(0.5), 0.0], [math.sqrt(0.5), 0.0]], "normalization": "sum_of_squares",
     "expect": {"verdict": "violated", "lhs": 1.0, "rhs": 4.0}},
    {"name": "ensemble_square_bound_per_vector", "check": "ensemble_square_bound", "interval": I12,
     "operators": [diag(1.0, 1.0), diag(1.0, 1.0)], "states": [E1, E1], "normalization": "per_vector",
     "expect": {"verdict": "holds", "lhs": 4.0, "rhs": 4.0, "gap": 0.0}},
    {"name": "discrete_chebyshev_equal", "check": "discrete_chebyshev", "a": [1.0, 2.0, 3.0], "b": [1.0, 2.0, 3.0],
     "expect": {"verdict": "holds", "lhs": 14.0 / 3.0, "rhs": 4.0, "gap": 2.0 / 3.0}},
    {"name": "discrete_chebyshev_constant", "check": "discrete_chebyshev", "a": [2.0, 2.0, 2.0], "b": [1.0, 5.0, 3.0],
     "expect": {"verdict": "holds", "gap": 0.0}},
    {"name": "discrete_chebyshev_opposite", "check": "discrete_chebyshev", "a": [1.0, 2.0], "b": [2.0, 1.0],
     "expect_error": "NotSimilarlyOrdered"},
    {"name": "chain_single", "check": "chain", "interval": I12, "operators": [D12], "states": [EQUAL],
     "normalization": "per_vector",
     "expect": {"chain_lower": {"verdict": "holds", "lhs": 1.125},
                "chain_chebyshev": {"verdict": "holds", "lhs": 1.125, "rhs": 1.125},
                "chain_kantorovich": {"verdict": "holds", "lhs": 1.125, "rhs": 1.125}}},
    {"name": "chain_scalar", "check": "chain", "interval": [2.0, 2.0], "operators": [diag(2.0, 2.0), diag(2.0)],
     "states": [EQUAL, [1.0]], "normalization": "per_vector",
     "expect": {"chain_lower": {"lhs": 1.0, "gap": 0.0}, "chain_chebyshev": {"gap": 0.0},
                "chain_kantorovich": {"rhs": 1.0, "gap": 0.0}}},
    {"name": "chain_opposite_order", "check": "chain", "interval": [1.0, 3.0], "operators": [D12, diag(1.0, 3.0)],
     "states": [EQUAL, EQUAL], "normalization": "per_vector", "per_op_intervals": [[1.0, 2.0], [1.0, 3.0]],
     "expect": {"chain_lower": {"verdict": "holds"},
                "chain_chebyshev": {"verdict": "hypothesis-not-met", "lhs": (1.125 + 4.0 / 3.0) / 2.0},
                "chain_kantorovich": {"verdict": "holds", "gap": 0.0}}},
    {"name": "chain_sum_of_squares_rejected", "check": "chain", "interval": I12, "operators": [D12, D12],
     "states": [HALVES, HALVES], "expect_error": "NormalizationViolation"},
)


# ==============================================================================
# 3. ABDECKUNG
# ==============================================================================
def _coverage(library) -> dict[str, tuple[str, ...]]:
    manifest: dict[str, list[str]] = {tid: [] for tid in THEOREM_IDS}
    for doc in library:
        if "expect_error" in doc:
            continue
        for tid in FAMILIES.get(doc["check"], ()):
            manifest[tid].append(doc["name"])
    return {tid: tuple(names) for tid, names in manifest.items()}


COVERAGE: dict[str, tuple[str, ...]] = _coverage(PINNED_LIBRARY)


def check_coverage(library=PINNED_LIBRARY) -> dict[str, tuple[str, ...]]:
    manifest = _coverage(library)
    missing = [tid for tid, names in manifest.items() if not names]
    if missing:
        raise ScenarioError(f"theorem_ids ohne Szenario: {', '.join(missing)}")
    return manifest


def run_library(library=PINNED_LIBRARY, on_outcome: Callable[[ScenarioOutcome], None] | None = None) -> list[ScenarioOutcome]:
    outcomes = []
    for doc in library:
        try:
            outcome = run_scenario(doc)
        except VerificationError as exc:
            outcome = ScenarioOutcome(str(doc.get("name")), str(doc.get("check")), False, [], f"{type(exc).__name__}: {exc}")
        outcomes.append(outcome)
        if on_outcome is not None:
            on_outcome(outcome)
    logger.info("Bibliothek: %d/%d Szenarien bestanden", sum(o.passed for o in outcomes), len(outcomes))
    return outcomes


def error_class(name: str) -> type[VerificationError]:
    cls = getattr(errors, name, None)
    if not (isinstance(cls, type) and issubclass(cls, VerificationError)):
        raise ScenarioError(f"Unbekannte Fehlerklasse {name!r}")
    return cls
