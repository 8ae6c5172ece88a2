# ==============================================================================
# 🌀 FUNCTIONS (Katalog & h-Synchronie)
# ------------------------------------------------------------------------------
# ZWECK:    Skalare Funktionen auf Intervallen (geschlossener Katalog plus
#           Tabellenform) und die Prädikate h-monoton / h-synchron.
# GESETZ:   Ein Gitter-Urteil ist Evidenz "auf diesem Gitter", kein Beweis.
# ==============================================================================
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Mapping, Sequence

import numpy as np

from errors import ArgumentOrder, ConfigInvalid, DomainViolation, ScenarioError
from spectral_core import TOL_SPEC, SpectralInterval

logger = logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# KONFIGURATION
# ------------------------------------------------------------------------------
DEFAULT_GRID = 128
TOL_SYNC_REL = 1e-12


def tol_sync(max_abs_product: float) -> float:
    return TOL_SYNC_REL * (1.0 + max_abs_product)


# ==============================================================================
# 1. SKALARE FUNKTION
# ==============================================================================
class FunctionKind(str, Enum):
    CONSTANT = "constant"
    IDENTITY = "identity"
    POWER = "power"
    LOG = "log"
    EXP = "exp"
    AFFINE = "affine"
    PARABOLA = "parabola"
    TABULATED = "tabulated"
    PRODUCT = "product"
    SUM = "sum"


@dataclass(frozen=True)
class ScalarFunction:
    """
    Stetige reelle Funktion. `params` je nach Art:
    constant (c,), power (p,), affine (a, b) für a·s + b.
    Tabellenform interpoliert linear zwischen den Stützstellen.
    """

    kind: FunctionKind
    params: tuple[float, ...] = ()
    parts: tuple["ScalarFunction", ...] = ()
    knots: tuple[float, ...] = ()
    values: tuple[float, ...] = ()
    domain: SpectralInterval | None = None

    def __post_init__(self):
        if self.kind is FunctionKind.TABULATED:
            knots = np.asarray(self.knots, dtype=float)
            if knots.size < 2 or knots.size != len(self.values):
                raise ScenarioError("Tabelle braucht >= 2 Stützstellen und gleich viele Werte")
            if np.any(np.diff(knots) <= 0):
                raise ScenarioError("Stützstellen müssen streng wachsen")
            if not np.all(np.isfinite(self.values)):
                raise ScenarioError("Tabellenwerte müssen endlich sein")
            if self.domain is None:
                object.__setattr__(self, "domain", SpectralInterval(knots[0], knots[-1]))
            elif knots[0] > self.domain.gamma or knots[-1] < self.domain.Gamma:
                raise ScenarioError("Stützstellen überdecken den Definitionsbereich nicht")

    # --------------------------------------------------------------------------
    # Katalog
    # --------------------------------------------------------------------------
    @classmethod
    def constant(cls, c: float) -> "ScalarFunction":
        return cls(FunctionKind.CONSTANT, (float(c),))

    @classmethod
    def identity(cls) -> "ScalarFunction":
        return cls(FunctionKind.IDENTITY)

    @classmethod
    def power(cls, p: float) -> "ScalarFunction":
        return cls(FunctionKind.POWER, (float(p),))

    @classmethod
    def log(cls) -> "ScalarFunction":
        return cls(FunctionKind.LOG)

    @classmethod
    def exp(cls) -> "ScalarFunction":
        return cls(FunctionKind.EXP)

    @classmethod
    def affine(cls, a: float, b: float) -> "ScalarFunction":
        return cls(FunctionKind.AFFINE, (float(a), float(b)))

    @classmethod
    def parabola(cls) -> "ScalarFunction":
        """s(1 - s)"""
        return cls(FunctionKind.PARABOLA)

    @classmethod
    def tabulated(cls, knots: Sequence[float], values: Sequence[float], domain: SpectralInterval | None = None):
        return cls(FunctionKind.TABULATED, knots=tuple(map(float, knots)), values=tuple(map(float, values)), domain=domain)

    @classmethod
    def product(cls, *factors: "ScalarFunction") -> "ScalarFunction":
        return cls(FunctionKind.PRODUCT, parts=tuple(factors))

    @classmethod
    def sum(cls, *terms: "ScalarFunction") -> "ScalarFunction":
        return cls(FunctionKind.SUM, parts=tuple(terms))

    def __mul__(self, other: "ScalarFunction") -> "ScalarFunction":
        return ScalarFunction.product(self, other)

    def __add__(self, other: "ScalarFunction") -> "ScalarFunction":
        return ScalarFunction.sum(self, other)

    def __neg__(self) -> "ScalarFunction":
        return self.scaled(-1.0)

    def scaled(self, c: float) -> "ScalarFunction":
        return ScalarFunction.product(ScalarFunction.constant(c), self)

    def squared(self) -> "ScalarFunction":
        return ScalarFunction.product(self, self)

    def restricted(self, domain: SpectralInterval) -> "ScalarFunction":
        return ScalarFunction(self.kind, self.params, self.parts, self.knots, self.values, domain)

    # --------------------------------------------------------------------------
    # Auswertung
    # --------------------------------------------------------------------------
    def _natural_domain_violation(self, s: np.ndarray) -> float | None:
        """Erster Punkt ausserhalb des natürlichen Definitionsbereichs, sonst None."""
        kind = self.kind
        if kind is FunctionKind.LOG:
            bad = s[s <= 0]
        elif kind is FunctionKind.POWER:
            p = self.params[0]
            if float(p).is_integer():
                bad = s[s == 0] if p < 0 else s[:0]
            else:
                bad = s[s <= 0] if p < 0 else s[s < 0]
        elif kind is FunctionKind.TABULATED:
            bad = s[(s < self.knots[0]) | (s > self.knots[-1])]
        else:
            bad = s[:0]
        return float(bad[0]) if bad.size else None

    def check_domain(self, s) -> None:
        points = np.atleast_1d(np.asarray(s, dtype=float))
        if self.domain is not None:
            outside = points[(points < self.domain.gamma - TOL_SPEC) | (points > self.domain.Gamma + TOL_SPEC)]
            if outside.size:
                raise DomainViolation(f"{self.label}: Punkt {outside[0]!r} ausserhalb {self.domain.as_list()}", float(outside[0]))
        bad = self._natural_domain_violation(points)
        if bad is not None:
            raise DomainViolation(f"{self.label}: nicht definiert bei {bad!r}", bad)
        for part in self.parts:
            part.check_domain(points)

    def evaluate(self, s):
        """Punktweise Auswertung; Skalar rein -> float raus, Array rein -> Array raus."""
        scalar = np.ndim(s) == 0
        points = np.atleast_1d(np.asarray(s, dtype=float))
        self.check_domain(points)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            out = self._raw(points)
        if not np.all(np.isfinite(out)):
            bad = points[~np.isfinite(out)][0]
            raise DomainViolation(f"{self.label}: nicht endlich bei {bad!r}", float(bad))
        return float(out[0]) if scalar else out

    def __call__(self, s):
        return self.evaluate(s)

    def _raw(self, s: np.ndarray) -> np.ndarray:
        kind = self.kind
        if kind is FunctionKind.CONSTANT:
            return np.full_like(s, self.params[0])
        if kind is FunctionKind.IDENTITY:
            return s.copy()
        if kind is FunctionKind.POWER:
            return np.power(s, self.params[0])
        if kind is FunctionKind.LOG:
            return np.log(s)
        if kind is FunctionKind.EXP:
            return np.exp(s)
        if kind is FunctionKind.AFFINE:
            return self.params[0] * s + self.params[1]
        if kind is FunctionKind.PARABOLA:
            return s * (1.0 - s)
        if kind is FunctionKind.TABULATED:
            return np.interp(s, self.knots, self.values)
        if kind is FunctionKind.PRODUCT:
            out = np.ones_like(s)
            for part in self.parts:
                out = out * part._raw(s)
            return out
        if kind is FunctionKind.SUM:
            out = np.zeros_like(s)
            for part in self.parts:
                out = out + part._raw(s)
            return out
        raise ScenarioError(f"Unbekannte Funktionsart: {kind}")

    # --------------------------------------------------------------------------
    # Beschreibung (Dateiformat)
    # --------------------------------------------------------------------------
    @property
    def label(self) -> str:
        kind = self.kind
        if kind is FunctionKind.CONSTANT:
            return f"{self.params[0]:g}"
        if kind is FunctionKind.IDENTITY:
            return "s"
        if kind is FunctionKind.POWER:
            return f"s^{self.params[0]:g}"
        if kind is FunctionKind.AFFINE:
            return f"{self.params[0]:g}·s+{self.params[1]:g}"
        if kind is FunctionKind.PARABOLA:
            return "s(1-s)"
        if kind is FunctionKind.TABULATED:
            return f"tab[{len(self.knots)}]"
        if kind is FunctionKind.PRODUCT:
            return "·".join(f"({part.label})" for part in self.parts)
        if kind is FunctionKind.SUM:
            return "+".join(f"({part.label})" for part in self.parts)
        return f"{kind.value}(s)"

    def to_descriptor(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"kind": self.kind.value}
        kind = self.kind
        if kind is FunctionKind.CONSTANT:
            doc["c"] = self.params[0]
        elif kind is FunctionKind.POWER:
            doc["p"] = self.params[0]
        elif kind is FunctionKind.AFFINE:
            doc["a"], doc["b"] = self.params
        elif kind is FunctionKind.TABULATED:
            doc["knots"] = list(self.knots)
            doc["values"] = list(self.values)
        elif kind is FunctionKind.PRODUCT:
            doc["factors"] = [part.to_descriptor() for part in self.parts]
        elif kind is FunctionKind.SUM:
            doc["terms"] = [part.to_descriptor() for part in self.parts]
        if self.domain is not None and kind is not FunctionKind.TABULATED:
            doc["domain"] = self.domain.as_list()
        return doc

    @classmethod
    def from_descriptor(cls, doc: Mapping[str, Any]) -> "ScalarFunction":
        if not isinstance(doc, Mapping) or "kind" not in doc:
            raise ScenarioError(f"Funktionsbeschreibung ohne 'kind': {doc!r}")
        try:
            kind = FunctionKind(doc["kind"])
        except ValueError:
            raise ScenarioError(f"Unbekannte Funktionsart: {doc['kind']!r}") from None
        domain = SpectralInterval(*doc["domain"]) if "domain" in doc else None
        try:
            if kind is FunctionKind.CONSTANT:
                fn = cls.constant(doc["c"])
            elif kind is FunctionKind.POWER:
                fn = cls.power(doc["p"])
            elif kind is FunctionKind.AFFINE:
                fn = cls.affine(doc["a"], doc["b"])
            elif kind is FunctionKind.TABULATED:
                return cls.tabulated(doc["knots"], doc["values"], domain)
            elif kind is FunctionKind.PRODUCT:
                fn = cls.product(*(cls.from_descriptor(part) for part in doc["factors"]))
            elif kind is FunctionKind.SUM:
                fn = cls.sum(*(cls.from_descriptor(part) for part in doc["terms"]))
            else:
                fn = cls(kind)
        except KeyError as exc:
            raise ScenarioError(f"Funktion '{kind.value}' ohne Feld {exc}") from None
        return fn.restricted(domain) if domain is not None else fn


ONE = ScalarFunction.constant(1.0)
IDENTITY = ScalarFunction.identity()
INVERSE = ScalarFunction.power(-1.0)


# ==============================================================================
# 2. PUNKTWEISE PRÄDIKATE
# ==============================================================================
def sync_product(f: ScalarFunction, g: ScalarFunction, h: ScalarFunction, x: float, y: float) -> float:
    """(h(y)f(x) - h(x)f(y)) (h(y)g(x) - h(x)g(y))"""
    hx, hy = h(x), h(y)
    return (hy * f(x) - hx * f(y)) * (hy * g(x) - hx * g(y))


def mono_defect(f: ScalarFunction, h: ScalarFunction, x: float, t: float) -> float:
    """h(x)f(t) - h(t)f(x) für x <= t."""
    if x > t:
        raise ArgumentOrder(f"mono_defect verlangt x <= t, erhalten x={x!r}, t={t!r}")
    return h(x) * f(t) - h(t) * f(x)


# ==============================================================================
# 3. GITTER-URTEILE
# ==============================================================================
class Synchrony(str, Enum):
    SYNCHRONOUS = "synchronous"
    ASYNCHRONOUS = "asynchronous"
    MIXED = "mixed"


class Monotonicity(str, Enum):
    INCREASING = "h-increasing"
    DECREASING = "h-decreasing"
    MIXED = "mixed"


@dataclass(frozen=True)
class SynchronyVerdict:
    classification: Synchrony
    min_product: float
    max_product: float
    witness_pos: tuple[float, float] | None
    witness_neg: tuple[float, float] | None
    grid_size: int
    interval: SpectralInterval

    def summary(self) -> dict[str, Any]:
        return {
            "classification": self.classification.value,
            "min_product": self.min_product,
            "max_product": self.max_product,
            "witness_pos": list(self.witness_pos) if self.witness_pos else None,
            "witness_neg": list(self.witness_neg) if self.witness_neg else None,
            "grid_size": self.grid_size,
            "interval": self.interval.as_list(),
        }


@dataclass(frozen=True)
class MonotonicityVerdict:
    classification: Monotonicity
    min_defect: float
    max_defect: float
    witness_pos: tuple[float, float] | None
    witness_neg: tuple[float, float] | None
    grid_size: int


def _require_grid(grid_n: int) -> None:
    if grid_n < 2:
        raise ConfigInvalid(f"Gitter braucht mindestens 2 Punkte, erhalten {grid_n}")


def _pair(grid: np.ndarray, i: int, j: int) -> tuple[float, float]:
    return float(grid[i]), float(grid[j])


@lru_cache(maxsize=4096)
def classify_synchrony(
    f: ScalarFunction, g: ScalarFunction, h: ScalarFunction, interval: SpectralInterval, grid_n: int = DEFAULT_GRID
) -> SynchronyVerdict:
    _require_grid(grid_n)
    grid = interval.grid(grid_n)
    F, G, H = f(grid), g(grid), h(grid)
    if np.any(H < 0):
        raise DomainViolation(f"h = {h.label} ist negativ auf {interval.as_list()}", float(grid[np.argmax(H < 0)]))

    # Paar (x, y) = (grid[i], grid[j]) mit i < j
    i, j = np.triu_indices(grid_n, k=1)
    products = (H[j] * F[i] - H[i] * F[j]) * (H[j] * G[i] - H[i] * G[j])
    lo, hi = int(np.argmin(products)), int(np.argmax(products))
    min_p, max_p = float(products[lo]), float(products[hi])
    tol = tol_sync(float(np.max(np.abs(products))))

    if min_p >= -tol:
        cls = Synchrony.SYNCHRONOUS
    elif max_p <= tol:
        cls = Synchrony.ASYNCHRONOUS
    else:
        cls = Synchrony.MIXED
    verdict = SynchronyVerdict(
        classification=cls,
        min_product=min_p,
        max_product=max_p,
        witness_pos=_pair(grid, i[hi], j[hi]) if max_p > tol else None,
        witness_neg=_pair(grid, i[lo], j[lo]) if min_p < -tol else None,
        grid_size=grid_n,
        interval=interval,
    )
    logger.debug("synchrony(%s, %s | %s) = %s", f.label, g.label, h.label, cls.value)
    return verdict


def classify_monotonicity(
    f: ScalarFunction, h: ScalarFunction, interval: SpectralInterval, grid_n: int = DEFAULT_GRID
) -> MonotonicityVerdict:
    """Bei f proportional zu h gelten beide Richtungen; gemeldet wird dann h-increasing."""
    _require_grid(grid_n)
    grid = interval.grid(grid_n)
    F, H = f(grid), h(grid)
    if np.any(H <= 0):
        raise DomainViolation(f"h = {h.label} muss auf {interval.as_list()} strikt positiv sein", float(grid[np.argmax(H <= 0)]))

    i, t = np.triu_indices(grid_n, k=1)
    defects = H[i] * F[t] - H[t] * F[i]
    lo, hi = int(np.argmin(defects)), int(np.argmax(defects))
    min_d, max_d = float(defects[lo]), float(defects[hi])
    tol = tol_sync(float(np.max(np.abs(defects))))

    if min_d >= -tol:
        cls = Monotonicity.INCREASING
    elif max_d <= tol:
        cls = Monotonicity.DECREASING
    else:
        cls = Monotonicity.MIXED
    return MonotonicityVerdict(
        classification=cls,
        min_defect=min_d,
        max_defect=max_d,
        witness_pos=_pair(grid, i[hi], t[hi]) if max_d > tol else None,
        witness_neg=_pair(grid, i[lo], t[lo]) if min_d < -tol else None,
        grid_size=grid_n,
    )


def lemma_holds(f: ScalarFunction, h: ScalarFunction, interval: SpectralInterval, grid_n: int = DEFAULT_GRID) -> bool | None:
    """
    h-increasing => increasing, in der beweisbaren Form:
    h > 0 und nicht fallend, f >= 0 auf dem Gitter.
    None, wenn die Voraussetzungen nicht erfüllt sind.
    """
    grid = interval.grid(grid_n)
    if np.any(f(grid) < 0) or classify_monotonicity(h, ONE, interval, grid_n).classification is not Monotonicity.INCREASING:
        return None
    if classify_monotonicity(f, h, interval, grid_n).classification is not Monotonicity.INCREASING:
        return None
    return classify_monotonicity(f, ONE, interval, grid_n).classification is Monotonicity.INCREASING


def scan_tr_regions(
    f: ScalarFunction,
    g: ScalarFunction,
    r_values: Sequence[float],
    interval: SpectralInterval,
    grid_n: int = DEFAULT_GRID,
) -> list[tuple[float, SynchronyVerdict]]:
    """Rohscan h(s) = s^r über die r-Werte; keine Monotonie-Annahme in r."""
    if any(r < 0 or not float(r).is_integer() for r in r_values) and interval.gamma <= 0:
        raise DomainViolation(f"s^r mit r < 0 oder gebrochenem r verlangt gamma > 0, erhalten {interval.as_list()}")
    return [(float(r), classify_synchrony(f, g, ScalarFunction.power(r), interval, grid_n)) for r in r_values]
