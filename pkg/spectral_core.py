# ==============================================================================
# 🧬 SPECTRAL CORE
# ------------------------------------------------------------------------------
# ZWECK:    Hermitesche Operatoren in Spektraldarstellung, Funktionalkalkül
#           f(A) = U diag(f(λ)) U* und Erwartungswerte <f(A)x, x>.
# GESETZ:   Die Eigenzerlegung ist der EINZIGE Weg zu f(A). Kein Padé,
#           kein Scaling-and-Squaring. Entartete Eigenwerte brauchen keine
#           Sonderbehandlung, die Spektralabbildung ist dort ebenso exakt.
# ==============================================================================
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Protocol, Sequence

import numpy as np
import scipy.linalg as la

from errors import (
    ConfigInvalid,
    DimensionMismatch,
    IntervalMismatch,
    NonPositiveSpectrum,
    NormalizationViolation,
    NotHermitian,
    NotUnitary,
    NotUnitState,
    SpectrumOutOfInterval,
)

logger = logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# KONFIGURATION (Toleranzen, absolut)
# ------------------------------------------------------------------------------
TOL_HERM = 1e-10
TOL_UNITARY = 1e-10
TOL_NORM = 1e-10
TOL_SPEC = 1e-8
TOL_SUM = 1e-9


def tol_calc(f_max: float = 1.0, g_max: float = 1.0) -> float:
    """Skalenrelative Toleranz für Kalkül-Identitäten."""
    return 1e-9 * (1.0 + abs(f_max) * abs(g_max))


class SupportsEvaluate(Protocol):
    def evaluate(self, s) -> np.ndarray: ...


# ==============================================================================
# 1. SPEKTRALINTERVALL
# ==============================================================================
@dataclass(frozen=True)
class SpectralInterval:
    """
    Abgeschlossenes Intervall [gamma, Gamma].
    gamma == Gamma ist erlaubt (Skalaroperator c·I mit Intervall (c, c)).
    """

    gamma: float
    Gamma: float

    def __post_init__(self):
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "Gamma", float(self.Gamma))
        if not (np.isfinite(self.gamma) and np.isfinite(self.Gamma)):
            raise ConfigInvalid(f"Intervallgrenzen müssen endlich sein: ({self.gamma}, {self.Gamma})")
        if self.gamma > self.Gamma:
            raise ConfigInvalid(f"gamma > Gamma: ({self.gamma}, {self.Gamma})")

    @property
    def width(self) -> float:
        return self.Gamma - self.gamma

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.gamma - tol <= value <= self.Gamma + tol

    def require_positive(self) -> "SpectralInterval":
        if self.gamma <= 0:
            raise NonPositiveSpectrum(f"Inversion verlangt gamma > 0, erhalten gamma = {self.gamma!r}")
        return self

    def grid(self, n: int) -> np.ndarray:
        """Gleichmässiges Gitter mit n Punkten inklusive beider Endpunkte."""
        return np.linspace(self.gamma, self.Gamma, n)

    def open_shrink(self) -> "SpectralInterval":
        """(a, b) -> [a + δ, b - δ] mit δ = 1e-3 (b - a)."""
        delta = 1e-3 * self.width
        return SpectralInterval(self.gamma + delta, self.Gamma - delta)

    def hull(self, *points: float) -> "SpectralInterval":
        return SpectralInterval(min(self.gamma, *points), max(self.Gamma, *points))

    def kantorovich_constant(self) -> float:
        self.require_positive()
        return (self.gamma + self.Gamma) ** 2 / (4.0 * self.gamma * self.Gamma)

    def as_list(self) -> list[float]:
        return [self.gamma, self.Gamma]


# ==============================================================================
# 2. ZUSTANDSVEKTOR
# ==============================================================================
@dataclass(frozen=True, eq=False)
class StateVector:
    components: np.ndarray
    norm: float = field(init=False)

    def __post_init__(self):
        data = np.array(self.components, dtype=complex).reshape(-1)
        if data.size < 1:
            raise DimensionMismatch("Zustand braucht mindestens eine Komponente")
        data.flags.writeable = False
        object.__setattr__(self, "components", data)
        object.__setattr__(self, "norm", float(np.linalg.norm(data)))

    @classmethod
    def unit(cls, values: Sequence[complex]) -> "StateVector":
        raw = np.asarray(values, dtype=complex)
        length = np.linalg.norm(raw)
        if length == 0:
            raise NormalizationViolation("Nullvektor lässt sich nicht normieren")
        return cls(raw / length)

    @classmethod
    def basis(cls, dim: int, k: int) -> "StateVector":
        e = np.zeros(dim, dtype=complex)
        e[k] = 1.0
        return cls(e)

    @property
    def dim(self) -> int:
        return self.components.size

    @property
    def is_unit(self) -> bool:
        return abs(self.norm - 1.0) <= TOL_NORM

    def require_unit(self) -> "StateVector":
        if not self.is_unit:
            raise NotUnitState(f"||x|| = {self.norm!r}, erwartet 1")
        return self

    def scaled(self, factor: complex) -> "StateVector":
        return StateVector(self.components * factor)


# ==============================================================================
# 3. HERMITESCHER OPERATOR
# ==============================================================================
def _clamp_spectrum(eigenvalues: np.ndarray, interval: SpectralInterval) -> np.ndarray:
    # Grenzfälle innerhalb TOL_SPEC werden auf den Rand gezogen, alles darüber ist hart
    for value in eigenvalues:
        if not interval.contains(float(value), TOL_SPEC):
            raise SpectrumOutOfInterval(float(value), interval.gamma, interval.Gamma)
    return np.clip(eigenvalues, interval.gamma, interval.Gamma)


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """
    Selbstadjungierter Operator auf C^dim, gespeichert als (λ aufsteigend, U).
    Spalte k von U gehört zu eigenvalues[k].
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    interval: SpectralInterval

    def __post_init__(self):
        lam = np.array(self.eigenvalues, dtype=float).reshape(-1)
        vecs = np.array(self.eigenvectors, dtype=complex)
        if lam.size < 1 or vecs.shape != (lam.size, lam.size):
            raise DimensionMismatch(f"Eigenvektor-Matrix {vecs.shape} passt nicht zu {lam.size} Eigenwerten")
        if np.any(np.diff(lam) < 0):
            raise ConfigInvalid("Eigenwerte müssen aufsteigend sortiert sein")
        defect = np.linalg.norm(vecs.conj().T @ vecs - np.eye(lam.size))
        if defect > TOL_UNITARY:
            raise NotUnitary(float(defect), TOL_UNITARY)
        lam = _clamp_spectrum(lam, self.interval)
        lam.flags.writeable = False
        vecs.flags.writeable = False
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "eigenvectors", vecs)

    # --------------------------------------------------------------------------
    # Konstruktoren
    # --------------------------------------------------------------------------
    @classmethod
    def from_dense(cls, matrix, interval: SpectralInterval) -> "HermitianOperator":
        M = np.asarray(matrix, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
            raise DimensionMismatch(f"Quadratische Matrix erwartet, erhalten Form {M.shape}")
        deviation = float(np.linalg.norm(M - M.conj().T))
        if deviation > TOL_HERM:
            raise NotHermitian(deviation, TOL_HERM)
        eigenvalues, eigenvectors = la.eigh((M + M.conj().T) / 2)
        return cls(eigenvalues, eigenvectors, interval)

    @classmethod
    def from_eigen(cls, eigenvalues, interval: SpectralInterval, eigenvectors=None) -> "HermitianOperator":
        lam = np.asarray(eigenvalues, dtype=float).reshape(-1)
        vecs = np.eye(lam.size, dtype=complex) if eigenvectors is None else np.asarray(eigenvectors, dtype=complex)
        order = np.argsort(lam, kind="stable")
        if vecs.shape != (lam.size, lam.size):
            raise DimensionMismatch(f"Eigenvektor-Matrix {vecs.shape} passt nicht zu {lam.size} Eigenwerten")
        return cls(lam[order], vecs[:, order], interval)

    @classmethod
    def diagonal(cls, values, interval: SpectralInterval) -> "HermitianOperator":
        return cls.from_eigen(values, interval)

    # --------------------------------------------------------------------------
    # Eigenschaften
    # --------------------------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    @cached_property
    def matrix(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T

    def with_interval(self, interval: SpectralInterval) -> "HermitianOperator":
        return HermitianOperator(self.eigenvalues, self.eigenvectors, interval)


# ==============================================================================
# 4. FUNKTIONALKALKÜL
# ==============================================================================
def apply_function(A: HermitianOperator, f: SupportsEvaluate) -> np.ndarray:
    """f(A) = U diag(f(λ)) U*. DomainViolation kommt direkt aus f.evaluate."""
    values = np.asarray(f.evaluate(A.eigenvalues), dtype=float)
    U = A.eigenvectors
    return (U * values) @ U.conj().T


def expectation(A: HermitianOperator, f: SupportsEvaluate, x: StateVector) -> float:
    """Realteil von x* f(A) x; der Imaginärteil muss im Rauschen liegen."""
    if x.dim != A.dim:
        raise DimensionMismatch(f"Zustand hat Dimension {x.dim}, Operator {A.dim}")
    value = np.vdot(x.components, apply_function(A, f) @ x.components)
    if abs(value.imag) > TOL_HERM * (1.0 + abs(value.real)):
        raise NotHermitian(float(abs(value.imag)), TOL_HERM)
    return float(value.real)


def block_diagonal(
    ops: Sequence[HermitianOperator], states: Sequence[StateVector]
) -> tuple[HermitianOperator, StateVector]:
    """
    Direkte Summe: Ã = diag(A_1, ..., A_n), x̃ = (x_1, ..., x_n).
    Verlangt ein gemeinsames Intervall und Σ ||x_j||² = 1.
    """
    if not ops or len(ops) != len(states):
        raise DimensionMismatch(f"{len(ops)} Operatoren, {len(states)} Zustände")
    interval = ops[0].interval
    for op, state in zip(ops, states):
        if op.interval != interval:
            raise IntervalMismatch(f"Intervall {op.interval.as_list()} != {interval.as_list()}")
        if op.dim != state.dim:
            raise DimensionMismatch(f"Block mit Dimension {op.dim}, Zustand {state.dim}")
    total = sum(state.norm**2 for state in states)
    if abs(total - 1.0) > TOL_NORM:
        raise NormalizationViolation(f"Σ||x_j||² = {total!r}, erwartet 1")
    if len(ops) == 1:
        return ops[0], states[0]

    eigenvalues = np.concatenate([op.eigenvalues for op in ops])
    eigenvectors = la.block_diag(*(op.eigenvectors for op in ops))
    stacked = np.concatenate([state.components for state in states])
    logger.debug("block_diagonal: %d Blöcke, Dimension %d", len(ops), eigenvalues.size)
    return HermitianOperator.from_eigen(eigenvalues, interval, eigenvectors), StateVector(stacked)
