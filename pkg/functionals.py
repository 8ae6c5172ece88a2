# ==============================================================================
# ⚖️ FUNCTIONALS (Čebyšev / Pompeiu–Čebyšev & Ungleichungs-Prüfer)
# ------------------------------------------------------------------------------
# ZWECK:    Wertet die Funktionale aus und prüft jede Ein-Operator-Ungleichung.
#           Jede Prüfung liefert einen InequalityReport mit orientierter Lücke:
#           "holds" <=> gap >= -tolerance, für >= und <= gleichermassen.
# GESETZ:   Die Synchronie-Voraussetzung wird zuerst auf dem Gitter geprüft.
#           Fehlt sie, lautet das Urteil "hypothesis-not-met", nie "violated".
# ==============================================================================
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

import numpy as np
from scipy import integrate

from codec import digest, operator_to_doc, state_to_doc
from errors import IntervalMismatch, ScenarioError
from functions import (
    DEFAULT_GRID,
    IDENTITY,
    INVERSE,
    ONE,
    ScalarFunction,
    SynchronyVerdict,
    classify_synchrony,
    tol_sync,
)
from spectral_core import TOL_SPEC, HermitianOperator, SpectralInterval, StateVector, expectation

logger = logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# KONFIGURATION
# ------------------------------------------------------------------------------
TOL_INEQ_REL = 1e-9
VIOLATION_FACTOR = 10.0
QUAD_LIMIT = 200

NOTE_REVERSED_CENTERED = "reverse-sense-reading: <= variant taken as full sign reversal of the centered inequality"
NOTE_KANTOROVICH_TYPO = "paper-typo-suspected: minus-form constant (Gamma-gamma)^2/(4 gamma Gamma) reported alongside"
NOTE_UNDECLARED_SPECTRUM = "declared interval does not contain the spectrum"


def tol_ineq(lhs: float, rhs: float) -> float:
    return TOL_INEQ_REL * (1.0 + abs(lhs) + abs(rhs))


# ==============================================================================
# 1. RICHTUNG, URTEIL, BERICHT
# ==============================================================================
class Direction(str, Enum):
    GE = "ge"
    LE = "le"

    @classmethod
    def parse(cls, raw: Any) -> "Direction":
        if isinstance(raw, Direction):
            return raw
        aliases = {"ge": cls.GE, ">=": cls.GE, "≥": cls.GE, "le": cls.LE, "<=": cls.LE, "≤": cls.LE}
        try:
            return aliases[str(raw).strip()]
        except KeyError:
            raise ScenarioError(f"Richtung muss ge/le sein, erhalten {raw!r}") from None

    def orient(self, lhs: float, rhs: float) -> float:
        return lhs - rhs if self is Direction.GE else rhs - lhs

    @property
    def symbol(self) -> str:
        return "≥" if self is Direction.GE else "≤"


class Verdict(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    HYPOTHESIS_NOT_MET = "hypothesis-not-met"


@dataclass(frozen=True)
class InequalityReport:
    theorem_id: str
    lhs: float
    rhs: float
    gap: float
    tolerance: float
    verdict: Verdict
    direction: Direction
    hypothesis: dict[str, Any] | None
    inputs: dict[str, Any] = field(repr=False)
    inputs_digest: str = ""
    notes: tuple[str, ...] = ()

    @property
    def is_violation(self) -> bool:
        """Echter Gegenbeispiel-Kandidat, nicht Rundungsrauschen."""
        return self.verdict is Verdict.VIOLATED and self.gap < -VIOLATION_FACTOR * self.tolerance

    def to_record(self) -> dict[str, Any]:
        return {
            "theorem_id": self.theorem_id,
            "direction": self.direction.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "tolerance": self.tolerance,
            "verdict": self.verdict.value,
            "synchrony": self.hypothesis,
            "inputs_digest": self.inputs_digest,
            "notes": list(self.notes),
        }


def make_report(
    theorem_id: str,
    lhs: float,
    rhs: float,
    direction: Direction,
    inputs: dict[str, Any],
    hypothesis_met: bool = True,
    evidence: SynchronyVerdict | dict[str, Any] | None = None,
    notes: tuple[str, ...] = (),
) -> InequalityReport:
    lhs, rhs = float(lhs), float(rhs)
    gap = direction.orient(lhs, rhs)
    tolerance = tol_ineq(lhs, rhs)
    if not hypothesis_met:
        verdict = Verdict.HYPOTHESIS_NOT_MET
    elif gap >= -tolerance:
        verdict = Verdict.HOLDS
    else:
        verdict = Verdict.VIOLATED
    if isinstance(evidence, SynchronyVerdict):
        evidence = evidence.summary()
    report = InequalityReport(
        theorem_id=theorem_id,
        lhs=lhs,
        rhs=rhs,
        gap=gap,
        tolerance=tolerance,
        verdict=verdict,
        direction=direction,
        hypothesis=evidence,
        inputs=inputs,
        inputs_digest=digest(inputs),
        notes=notes,
    )
    if verdict is Verdict.VIOLATED:
        logger.warning("%s verletzt: gap = %.3e (tol %.1e)", theorem_id, gap, tolerance)
    return report


def supports(evidence: SynchronyVerdict, direction: Direction) -> bool:
    """Deckt das Gitter-Urteil die verlangte Richtung? Nullprodukte decken beide."""
    tol = tol_sync(max(abs(evidence.min_product), abs(evidence.max_product)))
    if direction is Direction.GE:
        return evidence.min_product >= -tol
    return evidence.max_product <= tol


def gate_synchrony(
    f: ScalarFunction, g: ScalarFunction, h: ScalarFunction, interval: SpectralInterval, direction: Direction, grid_n: int, gate: bool
) -> tuple[bool, SynchronyVerdict | None]:
    if not gate:
        return True, None
    evidence = classify_synchrony(f, g, h, interval, grid_n)
    return supports(evidence, direction), evidence


def _inputs(check: str, functions: Mapping[str, ScalarFunction], operators, states, **extra) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "check": check,
        "functions": {name: fn.to_descriptor() for name, fn in functions.items()},
        "operators": [operator_to_doc(op) for op in operators],
        "states": [state_to_doc(x) for x in states],
    }
    payload.update(extra)
    return payload


# ==============================================================================
# 2. FUNKTIONALE
# ==============================================================================
def cebysev(f: ScalarFunction, g: ScalarFunction, A: HermitianOperator, x: StateVector) -> float:
    """C(f,g;A,x) = <f(A)g(A)x,x> - <g(A)x,x><f(A)x,x>"""
    x.require_unit()
    return expectation(A, f * g, x) - expectation(A, g, x) * expectation(A, f, x)


def pompeiu_cebysev(f: ScalarFunction, g: ScalarFunction, h: ScalarFunction, A: HermitianOperator, x: StateVector) -> float:
    """P(f,g,h;A,x) = <h²(A)x,x><f(A)g(A)x,x> - <h(A)g(A)x,x><h(A)f(A)x,x>"""
    x.require_unit()
    lhs, rhs = _pompeiu_sides(f, g, h, A, x)
    return lhs - rhs


def _pompeiu_sides(f, g, h, A, x) -> tuple[float, float]:
    lhs = expectation(A, h.squared(), x) * expectation(A, f * g, x)
    rhs = expectation(A, h * g, x) * expectation(A, h * f, x)
    return lhs, rhs


def _integral(fn: ScalarFunction, interval: SpectralInterval) -> float:
    value, _ = integrate.quad(fn.evaluate, interval.gamma, interval.Gamma, limit=QUAD_LIMIT)
    return value


def _integral_sides(f, g, h, interval: SpectralInterval) -> tuple[float, float]:
    lhs = _integral(h.squared(), interval) * _integral(f * g, interval)
    rhs = _integral(f * h, interval) * _integral(h * g, interval)
    return lhs, rhs


def integral_pompeiu(f: ScalarFunction, g: ScalarFunction, h: ScalarFunction, interval: SpectralInterval) -> float:
    """∫h² ∫fg - ∫fh ∫hg über [gamma, Gamma] (Quadratur)."""
    lhs, rhs = _integral_sides(f, g, h, interval)
    return lhs - rhs


def integral_cebysev(f: ScalarFunction, g: ScalarFunction, interval: SpectralInterval) -> float:
    width = interval.width
    if width == 0:
        return 0.0
    return integral_pompeiu(f, g, ONE, interval) / width**2


# ==============================================================================
# 3. EIN-OPERATOR-PRÜFER
# ==============================================================================
def check_pompeiu(
    f: ScalarFunction,
    g: ScalarFunction,
    h: ScalarFunction,
    A: HermitianOperator,
    x: StateVector,
    direction: Direction = Direction.GE,
    grid_n: int = DEFAULT_GRID,
    gate: bool = True,
) -> InequalityReport:
    """P(f,g,h;A,x) >= 0 für h-synchrone, <= 0 für h-asynchrone f, g."""
    direction = Direction.parse(direction)
    x.require_unit()
    met, evidence = gate_synchrony(f, g, h, A.interval, direction, grid_n, gate)
    lhs, rhs = _pompeiu_sides(f, g, h, A, x)
    inputs = _inputs("pompeiu", {"f": f, "g": g, "h": h}, [A], [x], direction=direction, grid_n=grid_n, gate=gate)
    return make_report("pompeiu", lhs, rhs, direction, inputs, met, evidence)


def check_cauchy(f: ScalarFunction, h: ScalarFunction, A: HermitianOperator, x: StateVector) -> InequalityReport:
    """<h(A)f(A)x,x>² <= <h²(A)x,x><f²(A)x,x>, ohne Voraussetzung."""
    x.require_unit()
    lhs = expectation(A, h.squared(), x) * expectation(A, f.squared(), x)
    rhs = expectation(A, h * f, x) ** 2
    inputs = _inputs("cauchy", {"f": f, "h": h}, [A], [x])
    return make_report("cauchy", lhs, rhs, Direction.GE, inputs, evidence={"classification": "self-synchronous"})


def kantorovich_chain(
    A: HermitianOperator, x: StateVector, interval: SpectralInterval | None = None, gate: bool = True
) -> tuple[InequalityReport, InequalityReport]:
    """
    1 <= <A⁻¹x,x><Ax,x> <= (gamma+Gamma)²/(4 gamma Gamma).
    `interval` überschreibt das deklarierte Intervall der oberen Schranke.
    """
    x.require_unit()
    A.interval.require_positive()
    declared = A.interval if interval is None else interval
    K = declared.kantorovich_constant()
    minus_form = (declared.Gamma - declared.gamma) ** 2 / (4.0 * declared.gamma * declared.Gamma)

    a = expectation(A, IDENTITY, x)
    b = expectation(A, INVERSE, x)
    product = a * b
    contained = bool(
        declared.contains(float(A.eigenvalues[0]), TOL_SPEC) and declared.contains(float(A.eigenvalues[-1]), TOL_SPEC)
    )
    extra = {"a": a, "b": b, "declared_interval": declared.as_list(), "gate": gate}
    inputs = _inputs("kantorovich", {}, [A], [x], **extra)
    lower = make_report("kantorovich_lower", product, 1.0, Direction.GE, inputs)
    notes = (NOTE_KANTOROVICH_TYPO, f"minus_form_constant={minus_form!r}")
    if not contained:
        notes += (NOTE_UNDECLARED_SPECTRUM,)
    upper = make_report(
        "kantorovich_upper",
        product,
        K,
        Direction.LE,
        inputs,
        hypothesis_met=contained or not gate,
        evidence={"classification": "spectral-containment", "contained": contained},
        notes=notes,
    )
    return lower, upper


def check_two_operator(
    f: ScalarFunction,
    g: ScalarFunction,
    h: ScalarFunction,
    A: HermitianOperator,
    B: HermitianOperator,
    x: StateVector,
    y: StateVector,
    direction: Direction = Direction.GE,
    grid_n: int = DEFAULT_GRID,
    gate: bool = True,
) -> InequalityReport:
    direction = Direction.parse(direction)
    if A.interval != B.interval:
        raise IntervalMismatch(f"A auf {A.interval.as_list()}, B auf {B.interval.as_list()}")
    x.require_unit()
    y.require_unit()
    met, evidence = gate_synchrony(f, g, h, A.interval, direction, grid_n, gate)

    h2 = h.squared()
    lhs = expectation(B, h2, y) * expectation(A, f * g, x) + expectation(A, h2, x) * expectation(B, f * g, y)
    rhs = expectation(B, h * g, y) * expectation(A, h * f, x) + expectation(A, h * g, x) * expectation(B, h * f, y)
    inputs = _inputs("two_operator", {"f": f, "g": g, "h": h}, [A, B], [x, y], direction=direction, grid_n=grid_n, gate=gate)
    return make_report("two_operator", lhs, rhs, direction, inputs, met, evidence)


def centered_sides(f, g, h, a: float, H2: float, FG: float, HF: float, HG: float) -> tuple[float, float]:
    """
    Seiten der zentrierten Ungleichung, ausgewertet am Punkt a = <Ax,x>:
    lhs = h²(a)<fg> - <hf><hg>
    rhs = [h(a)<hf> - <h²>f(a)] g(a) + [h(a)f(a) - <hf>] <hg>
    """
    ha, fa, ga = h(a), f(a), g(a)
    lhs = ha**2 * FG - HF * HG
    rhs = (ha * HF - H2 * fa) * ga + (ha * fa - HF) * HG
    return lhs, rhs


def check_centered(
    f: ScalarFunction,
    g: ScalarFunction,
    h: ScalarFunction,
    A: HermitianOperator,
    x: StateVector,
    direction: Direction = Direction.GE,
    grid_n: int = DEFAULT_GRID,
    gate: bool = True,
) -> InequalityReport:
    direction = Direction.parse(direction)
    x.require_unit()
    met, evidence = gate_synchrony(f, g, h, A.interval, direction, grid_n, gate)
    a = expectation(A, IDENTITY, x)
    lhs, rhs = centered_sides(
        f, g, h, a,
        H2=expectation(A, h.squared(), x),
        FG=expectation(A, f * g, x),
        HF=expectation(A, h * f, x),
        HG=expectation(A, h * g, x),
    )
    notes = (NOTE_REVERSED_CENTERED,) if direction is Direction.LE else ()
    inputs = _inputs("centered", {"f": f, "g": g, "h": h}, [A], [x], direction=direction, grid_n=grid_n, gate=gate)
    return make_report("centered", lhs, rhs, direction, inputs, met, evidence, notes)


def check_inverse_pair(
    f: ScalarFunction,
    g: ScalarFunction,
    h: ScalarFunction,
    A: HermitianOperator,
    x: StateVector,
    direction: Direction = Direction.GE,
    grid_n: int = DEFAULT_GRID,
    gate: bool = True,
) -> InequalityReport:
    """
    Skalar in a = <Ax,x>, b = <A⁻¹x,x>:
    h²(a)f(b)g(b) + h²(b)f(a)g(a) >= (<=) h(a)h(b)[f(b)g(a) + f(a)g(b)].
    b kann ausserhalb von [gamma, Gamma] liegen; die Synchronie wird daher
    auf der Hülle von Intervall, a und b geprüft.
    """
    direction = Direction.parse(direction)
    x.require_unit()
    A.interval.require_positive()
    a = expectation(A, IDENTITY, x)
    b = expectation(A, INVERSE, x)
    points = np.array([a, b])
    for fn in (f, g, h):
        fn.check_domain(points)
    hull = A.interval.hull(a, b)
    met, evidence = gate_synchrony(f, g, h, hull, direction, grid_n, gate)

    ha, hb, fa, fb, ga, gb = h(a), h(b), f(a), f(b), g(a), g(b)
    lhs = ha**2 * fb * gb + hb**2 * fa * ga
    rhs = ha * hb * (fb * ga + fa * gb)
    inputs = _inputs(
        "inverse_pair", {"f": f, "g": g, "h": h}, [A], [x], direction=direction, grid_n=grid_n, gate=gate, a=a, b=b
    )
    return make_report("inverse_pair", lhs, rhs, direction, inputs, met, evidence)


def check_integral_pompeiu(
    f: ScalarFunction,
    g: ScalarFunction,
    h: ScalarFunction,
    interval: SpectralInterval,
    direction: Direction = Direction.GE,
    grid_n: int = DEFAULT_GRID,
    gate: bool = True,
) -> InequalityReport:
    direction = Direction.parse(direction)
    met, evidence = gate_synchrony(f, g, h, interval, direction, grid_n, gate)
    lhs, rhs = _integral_sides(f, g, h, interval)
    inputs = _inputs(
        "integral_pompeiu", {"f": f, "g": g, "h": h}, [], [],
        interval=interval.as_list(), direction=direction, grid_n=grid_n, gate=gate,
    )
    return make_report("integral_pompeiu", lhs, rhs, direction, inputs, met, evidence)
