# ==============================================================================
# 🔗 MULTI-OP (Operator-Ensembles)
# ------------------------------------------------------------------------------
# ZWECK:    n-Operator-Fassungen der Prüfer über Summen von Erwartungswerten,
#           die diskrete Čebyšev-Ungleichung und die Kantorovich-Ketten.
# GESETZ:   Jede Ensemble-Lücke ist gleich der Ein-Operator-Lücke auf dem
#           Blockdiagonal-Lift (Σ||x_j||² = 1).
#           Die Kantorovich-Kette verlangt dagegen ||x_j|| = 1 für jedes j,
#           unter Σ||x_j||² = 1 ist die n²-Schranke falsch.
# ==============================================================================
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence

import numpy as np

from codec import operator_to_doc, state_to_doc
from errors import DimensionMismatch, IntervalMismatch, NormalizationViolation, NotSimilarlyOrdered
from functionals import (
    NOTE_REVERSED_CENTERED,
    Direction,
    InequalityReport,
    centered_sides,
    gate_synchrony,
    make_report,
)
from functions import DEFAULT_GRID, IDENTITY, INVERSE, ScalarFunction
from spectral_core import TOL_NORM, HermitianOperator, SpectralInterval, StateVector, block_diagonal, expectation

logger = logging.getLogger(__name__)

NOTE_PER_VECTOR = "normalization: per-vector ||x_j|| = 1 (the n² bound is false under sum-of-squares)"
NOTE_SUM_OF_SQUARES = "normalization: sum-of-squares, outside the regime where the n² bound is provable"
NOTE_UNUSED_CONVEXITY = "convexity of h is not required by the derivation and is not checked"


class NormalizationMode(str, Enum):
    SUM_OF_SQUARES = "sum_of_squares"
    PER_VECTOR = "per_vector"


# ==============================================================================
# 1. ENSEMBLE
# ==============================================================================
@dataclass(frozen=True, eq=False)
class OperatorEnsemble:
    operators: tuple[HermitianOperator, ...]
    states: tuple[StateVector, ...]
    mode: NormalizationMode = NormalizationMode.SUM_OF_SQUARES

    def __post_init__(self):
        object.__setattr__(self, "operators", tuple(self.operators))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "mode", NormalizationMode(self.mode))
        if not self.operators or len(self.operators) != len(self.states):
            raise DimensionMismatch(f"{len(self.operators)} Operatoren, {len(self.states)} Zustände")
        interval = self.operators[0].interval
        for op, x in zip(self.operators, self.states):
            if op.interval != interval:
                raise IntervalMismatch(f"Intervall {op.interval.as_list()} != {interval.as_list()}")
            if op.dim != x.dim:
                raise DimensionMismatch(f"Block mit Dimension {op.dim}, Zustand {x.dim}")
        if self.mode is NormalizationMode.SUM_OF_SQUARES:
            total = sum(x.norm**2 for x in self.states)
            if abs(total - 1.0) > TOL_NORM:
                raise NormalizationViolation(f"Σ||x_j||² = {total!r}, erwartet 1")
        else:
            for j, x in enumerate(self.states):
                if not x.is_unit:
                    raise NormalizationViolation(f"||x_{j}|| = {x.norm!r}, erwartet 1")

    @property
    def n(self) -> int:
        return len(self.operators)

    @property
    def interval(self) -> SpectralInterval:
        return self.operators[0].interval

    def total(self, fn: ScalarFunction) -> float:
        """Σ_j <fn(A_j)x_j, x_j>"""
        return float(sum(expectation(op, fn, x) for op, x in zip(self.operators, self.states)))

    def lift(self) -> tuple[HermitianOperator, StateVector]:
        self.require_mode(NormalizationMode.SUM_OF_SQUARES)
        return block_diagonal(self.operators, self.states)

    def require_mode(self, mode: NormalizationMode) -> "OperatorEnsemble":
        if self.mode is not mode:
            raise NormalizationViolation(f"Ensemble im Modus {self.mode.value}, verlangt {mode.value}")
        return self

    def permuted(self, order: Sequence[int]) -> "OperatorEnsemble":
        return OperatorEnsemble(tuple(self.operators[k] for k in order), tuple(self.states[k] for k in order), self.mode)

    def to_doc(self) -> dict[str, Any]:
        return {
            "operators": [operator_to_doc(op) for op in self.operators],
            "states": [state_to_doc(x) for x in self.states],
            "normalization": self.mode.value,
        }


def _ensemble_inputs(check: str, E: OperatorEnsemble, functions: dict[str, ScalarFunction], **extra) -> dict[str, Any]:
    payload: dict[str, Any] = {"check": check, "functions": {k: fn.to_descriptor() for k, fn in functions.items()}}
    payload.update(E.to_doc())
    payload.update(extra)
    return payload


# ==============================================================================
# 2. ENSEMBLE-PRÜFER
# ==============================================================================
def check_ensemble_pompeiu(
    f: ScalarFunction,
    g: ScalarFunction,
    h: ScalarFunction,
    E: OperatorEnsemble,
    direction: Direction = Direction.GE,
    grid_n: int = DEFAULT_GRID,
    gate: bool = True,
) -> InequalityReport:
    """Σ<h²(A_j)x_j,x_j> Σ<f(A_j)g(A_j)x_j,x_j> >= (<=) Σ<h(A_j)g(A_j)x_j,x_j> Σ<h(A_j)f(A_j)x_j,x_j>"""
    direction = Direction.parse(direction)
    E.require_mode(NormalizationMode.SUM_OF_SQUARES)
    met, evidence = gate_synchrony(f, g, h, E.interval, direction, grid_n, gate)
    lhs = E.total(h.squared()) * E.total(f * g)
    rhs = E.total(h * g) * E.total(h * f)
    inputs = _ensemble_inputs("ensemble_pompeiu", E, {"f": f, "g": g, "h": h}, direction=direction, grid_n=grid_n, gate=gate)
    return make_report("ensemble_pompeiu", lhs, rhs, direction, inputs, met, evidence)


def check_ensemble_centered(
    f: ScalarFunction,
    g: ScalarFunction,
    h: ScalarFunction,
    E: OperatorEnsemble,
    direction: Direction = Direction.GE,
    grid_n: int = DEFAULT_GRID,
    gate: bool = True,
) -> InequalityReport:
    direction = Direction.parse(direction)
    E.require_mode(NormalizationMode.SUM_OF_SQUARES)
    met, evidence = gate_synchrony(f, g, h, E.interval, direction, grid_n, gate)
    a = E.total(IDENTITY)
    lhs, rhs = centered_sides(
        f, g, h, a,
        H2=E.total(h.squared()),
        FG=E.total(f * g),
        HF=E.total(h * f),
        HG=E.total(h * g),
    )
    notes = (NOTE_REVERSED_CENTERED,) if direction is Direction.LE else ()
    if f == g:
        notes += (NOTE_UNUSED_CONVEXITY,)
    inputs = _ensemble_inputs("ensemble_centered", E, {"f": f, "g": g, "h": h}, direction=direction, grid_n=grid_n, gate=gate)
    return make_report("ensemble_centered", lhs, rhs, direction, inputs, met, evidence, notes)


def check_ensemble_square_bound(E: OperatorEnsemble) -> InequalityReport:
    """n² <= Σ<A_j x_j,x_j> Σ<A_j⁻¹x_j,x_j>; beweisbar nur bei ||x_j|| = 1."""
    E.interval.require_positive()
    lhs = E.total(IDENTITY) * E.total(INVERSE)
    rhs = float(E.n**2)
    note = NOTE_PER_VECTOR if E.mode is NormalizationMode.PER_VECTOR else NOTE_SUM_OF_SQUARES
    inputs = _ensemble_inputs("ensemble_square_bound", E, {})
    return make_report(
        "ensemble_square_bound", lhs, rhs, Direction.GE, inputs,
        evidence={"classification": "normalization", "mode": E.mode.value},
        notes=(note,),
    )


# ==============================================================================
# 3. DISKRETE ČEBYŠEV-UNGLEICHUNG
# ==============================================================================
def similarly_ordered(a: Sequence[float], b: Sequence[float], tol: float = 0.0) -> tuple[bool, tuple[int, int] | None]:
    """(a_i - a_j)(b_i - b_j) >= -tol für alle Paare; Zeuge ist das negativste Paar."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise DimensionMismatch(f"Tupel der Längen {a.size} und {b.size}")
    if a.size < 2:
        return True, None
    i, j = np.triu_indices(a.size, k=1)
    products = (a[i] - a[j]) * (b[i] - b[j])
    worst = int(np.argmin(products))
    if products[worst] < -tol:
        return False, (int(i[worst]), int(j[worst]))
    return True, None


def discrete_chebyshev(a: Sequence[float], b: Sequence[float]) -> InequalityReport:
    """(1/m) Σ a_i b_i >= (1/m Σ a_i)(1/m Σ b_i) für gleich geordnete Tupel."""
    ordered, witness = similarly_ordered(a, b)
    if not ordered:
        raise NotSimilarlyOrdered(*witness)
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if a.size == 0:
        raise DimensionMismatch("Leere Tupel")
    lhs = float(np.mean(a * b))
    rhs = float(np.mean(a) * np.mean(b))
    inputs = {"check": "discrete_chebyshev", "a": a.tolist(), "b": b.tolist()}
    return make_report("discrete_chebyshev", lhs, rhs, Direction.GE, inputs)


# ==============================================================================
# 4. KANTOROVICH-KETTE FÜR ENSEMBLES
# ==============================================================================
@dataclass(frozen=True)
class ChainReport:
    """1 <= mean(a)·mean(b) <= mean(a_j b_j) <= mean(K_j)"""

    lower: InequalityReport
    chebyshev: InequalityReport
    kantorovich: InequalityReport
    a: tuple[float, ...]
    b: tuple[float, ...]
    constants: tuple[float, ...]
    minus_form_constants: tuple[float, ...]
    notes: tuple[str, ...]

    @property
    def links(self) -> tuple[InequalityReport, InequalityReport, InequalityReport]:
        return self.lower, self.chebyshev, self.kantorovich

    def to_record(self) -> dict[str, Any]:
        return {
            "links": [link.to_record() for link in self.links],
            "a": list(self.a),
            "b": list(self.b),
            "constants": list(self.constants),
            "minus_form_constants": list(self.minus_form_constants),
            "notes": list(self.notes),
        }


def kantorovich_ensemble_chain(
    E: OperatorEnsemble, per_op_intervals: Sequence[SpectralInterval] | None = None
) -> ChainReport:
    E.require_mode(NormalizationMode.PER_VECTOR)
    intervals = list(per_op_intervals) if per_op_intervals is not None else [op.interval for op in E.operators]
    if len(intervals) != E.n:
        raise DimensionMismatch(f"{len(intervals)} Intervalle für {E.n} Operatoren")

    a, b, K, K_minus = [], [], [], []
    for op, x, interval in zip(E.operators, E.states, intervals):
        interval.require_positive()
        local = op.with_interval(interval)
        a.append(expectation(local, IDENTITY, x))
        b.append(expectation(local, INVERSE, x))
        K.append(interval.kantorovich_constant())
        K_minus.append((interval.Gamma - interval.gamma) ** 2 / (4.0 * interval.gamma * interval.Gamma))

    mean_a, mean_b = float(np.mean(a)), float(np.mean(b))
    product = mean_a * mean_b
    mean_ab = float(np.mean(np.multiply(a, b)))
    mean_K = float(np.mean(K))
    ordered, witness = similarly_ordered(a, b)

    inputs = _ensemble_inputs("kantorovich_chain", E, {}, per_op_intervals=[iv.as_list() for iv in intervals])
    notes = (NOTE_PER_VECTOR,)
    lower = make_report("chain_lower", product, 1.0, Direction.GE, inputs, notes=notes)
    chebyshev = make_report(
        "chain_chebyshev", mean_ab, product, Direction.GE, inputs,
        hypothesis_met=ordered,
        evidence={"classification": "similarly-ordered" if ordered else "not-similarly-ordered", "witness": witness},
        notes=notes,
    )
    kantorovich = make_report(
        "chain_kantorovich", mean_ab, mean_K, Direction.LE, inputs,
        notes=notes + ("paper-typo-suspected: minus-form constants reported alongside",),
    )
    logger.debug("Kette n=%d: %.6g <= %.6g <= %.6g", E.n, product, mean_ab, mean_K)
    return ChainReport(
        lower=lower,
        chebyshev=chebyshev,
        kantorovich=kantorovich,
        a=tuple(a),
        b=tuple(b),
        constants=tuple(K),
        minus_form_constants=tuple(K_minus),
        notes=notes,
    )
