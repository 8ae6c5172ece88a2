# ==============================================================================
# 🎲 HARNESS (Zufallsinstanzen, Eigenschafts-Suiten, Gegenbeispiel-Suche)
# ------------------------------------------------------------------------------
# ZWECK:    Zieht reproduzierbare Instanzen, schickt sie durch die Prüfer und
#           zählt die Urteile. `falsify` schaltet eine Voraussetzung ab und
#           sucht gezielt nach negativen Lücken.
# RNG:      numpy PCG64. Strom (trial, family) = SeedSequence(seed,
#           spawn_key=(trial, family_index)); jede Instanz ist einzeln
#           nachziehbar, die Reihenfolge der Auswertung spielt keine Rolle.
# ==============================================================================
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Mapping, Sequence

import numpy as np
from scipy import optimize

import codec
from errors import ConfigInvalid, DomainViolation, ScenarioError, UnknownTheorem, VerificationError
from functionals import (
    Direction,
    InequalityReport,
    Verdict,
    check_cauchy,
    check_centered,
    check_integral_pompeiu,
    check_inverse_pair,
    check_pompeiu,
    check_two_operator,
    kantorovich_chain,
)
from functions import DEFAULT_GRID, IDENTITY, INVERSE, ONE, ScalarFunction, Synchrony, classify_synchrony
from multi_op import (
    NormalizationMode,
    OperatorEnsemble,
    check_ensemble_centered,
    check_ensemble_pompeiu,
    check_ensemble_square_bound,
    discrete_chebyshev,
    kantorovich_ensemble_chain,
)
from spectral_core import HermitianOperator, SpectralInterval, StateVector, expectation

logger = logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# KONFIGURATION
# ------------------------------------------------------------------------------
DEFAULT_SEED = 7
DEFAULT_TRIALS = 10_000
MAX_DIM = 16
ENSEMBLE_DIM_MAX = 4
LOG_INTERVAL = 1_000
RESTART_FEV = 200
MIXED_BUDGET = 60
MIXED_STREAM = 1

FAMILIES: dict[str, tuple[str, ...]] = {
    "pompeiu": ("pompeiu",),
    "cauchy": ("cauchy",),
    "kantorovich": ("kantorovich_lower", "kantorovich_upper"),
    "two_operator": ("two_operator",),
    "centered": ("centered",),
    "inverse_pair": ("inverse_pair",),
    "integral_pompeiu": ("integral_pompeiu",),
    "ensemble_pompeiu": ("ensemble_pompeiu",),
    "ensemble_centered": ("ensemble_centered",),
    "ensemble_square_bound": ("ensemble_square_bound",),
    "discrete_chebyshev": ("discrete_chebyshev",),
    "chain": ("chain_lower", "chain_chebyshev", "chain_kantorovich"),
}
THEOREM_IDS: tuple[str, ...] = tuple(tid for ids in FAMILIES.values() for tid in ids)
FAMILY_OF: dict[str, str] = {tid: family for family, ids in FAMILIES.items() for tid in ids}
POSITIVE_FAMILIES = {"kantorovich", "inverse_pair", "ensemble_square_bound", "chain"}

DEFAULT_POOL: tuple[ScalarFunction, ...] = (
    IDENTITY,
    ScalarFunction.power(2.0),
    ScalarFunction.power(3.0),
    ScalarFunction.power(0.5),
    INVERSE,
    ScalarFunction.exp(),
    ScalarFunction.log(),
    ONE,
)

DROPPABLE = ("synchrony", "spectral-containment", "normalization")


# ==============================================================================
# 1. KONFIGURATION DER SUITE
# ==============================================================================
Triple = tuple[ScalarFunction, ScalarFunction, ScalarFunction]


@dataclass(frozen=True)
class TrialConfig:
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    dim_range: tuple[int, int] = (1, 8)
    interval: SpectralInterval = SpectralInterval(1.0, 2.0)
    function_pool: tuple[ScalarFunction, ...] = DEFAULT_POOL
    triples: tuple[Triple, ...] = ()
    grid_n: int = DEFAULT_GRID
    theorem_ids: tuple[str, ...] = THEOREM_IDS
    ensemble_max: int = 4
    mixed_budget: int = MIXED_BUDGET

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise ConfigInvalid(f"seed muss eine 64-Bit-Zahl ohne Vorzeichen sein, erhalten {self.seed!r}")
        if int(self.trials) < 1:
            raise ConfigInvalid(f"trials muss >= 1 sein, erhalten {self.trials!r}")
        lo, hi = self.dim_range
        if not (1 <= lo <= hi <= MAX_DIM):
            raise ConfigInvalid(f"dim_range muss in [1, {MAX_DIM}] liegen, erhalten {self.dim_range!r}")
        if self.grid_n < 2:
            raise ConfigInvalid(f"grid_n muss >= 2 sein, erhalten {self.grid_n!r}")
        if not (1 <= self.ensemble_max <= MAX_DIM):
            raise ConfigInvalid(f"ensemble_max muss in [1, {MAX_DIM}] liegen, erhalten {self.ensemble_max!r}")
        if self.mixed_budget < 0:
            raise ConfigInvalid(f"mixed_budget muss >= 0 sein, erhalten {self.mixed_budget!r}")
        unknown = [tid for tid in self.theorem_ids if tid not in FAMILY_OF]
        if unknown or not self.theorem_ids:
            raise ConfigInvalid(f"Unbekannte theorem_ids: {unknown or '(leer)'}")
        if self.interval.gamma <= 0 and POSITIVE_FAMILIES & {FAMILY_OF[tid] for tid in self.theorem_ids}:
            raise ConfigInvalid(f"Inverse Prüfungen verlangen gamma > 0, erhalten {self.interval.as_list()}")
        if not self.triples and not self.function_pool:
            raise ConfigInvalid("function_pool ist leer")
        grid = self.interval.grid(self.grid_n)
        for fn in self.function_pool + tuple(fn for t in self.triples for fn in t):
            try:
                fn(grid)
            except DomainViolation as exc:
                raise ConfigInvalid(f"Funktion {fn.label} auf {self.interval.as_list()} nicht auswertbar: {exc}") from None
        if not self.triples and not self.h_pool:
            raise ConfigInvalid("Keine Funktion im Pool ist als h nichtnegativ")

    @property
    def h_pool(self) -> tuple[ScalarFunction, ...]:
        grid = self.interval.grid(self.grid_n)
        return tuple(fn for fn in self.function_pool if np.all(fn(grid) >= 0))

    @property
    def families(self) -> list[str]:
        wanted = {FAMILY_OF[tid] for tid in self.theorem_ids}
        return [family for family in FAMILIES if family in wanted]

    def with_overrides(self, **changes: Any) -> "TrialConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "TrialConfig":
        known = {"seed", "trials", "dim_range", "interval", "function_pool", "triples", "grid_n", "theorem_ids", "ensemble_max", "mixed_budget"}
        extra = set(doc) - known
        if extra:
            raise ScenarioError(f"Unbekannte Konfigurationsfelder: {sorted(extra)}")
        kwargs: dict[str, Any] = {}
        try:
            if "seed" in doc:
                kwargs["seed"] = int(doc["seed"])
            if "trials" in doc:
                kwargs["trials"] = int(doc["trials"])
            if "dim_range" in doc:
                kwargs["dim_range"] = tuple(int(v) for v in doc["dim_range"])
            if "interval" in doc:
                kwargs["interval"] = codec.interval_from_doc(doc["interval"])
            if "function_pool" in doc:
                kwargs["function_pool"] = tuple(ScalarFunction.from_descriptor(d) for d in doc["function_pool"])
            if "triples" in doc:
                kwargs["triples"] = tuple(triple_from_doc(t) for t in doc["triples"])
            if "grid_n" in doc:
                kwargs["grid_n"] = int(doc["grid_n"])
            if "theorem_ids" in doc:
                kwargs["theorem_ids"] = tuple(str(t) for t in doc["theorem_ids"])
            if "ensemble_max" in doc:
                kwargs["ensemble_max"] = int(doc["ensemble_max"])
            if "mixed_budget" in doc:
                kwargs["mixed_budget"] = int(doc["mixed_budget"])
        except (TypeError, ValueError) as exc:
            raise ScenarioError(f"Konfiguration fehlerhaft: {exc}") from None
        return cls(**kwargs)

    def to_doc(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "dim_range": list(self.dim_range),
            "interval": self.interval.as_list(),
            "function_pool": [fn.to_descriptor() for fn in self.function_pool],
            "triples": [{k: fn.to_descriptor() for k, fn in zip("fgh", t)} for t in self.triples],
            "grid_n": self.grid_n,
            "theorem_ids": list(self.theorem_ids),
            "ensemble_max": self.ensemble_max,
            "mixed_budget": self.mixed_budget,
        }


def triple_from_doc(doc: Any) -> Triple:
    if isinstance(doc, Mapping):
        parts = [doc.get(key) for key in "fgh"]
    else:
        parts = list(doc)
    if len(parts) != 3 or any(p is None for p in parts):
        raise ScenarioError(f"Tripel braucht f, g und h: {doc!r}")
    f, g, h = (ScalarFunction.from_descriptor(p) for p in parts)
    return f, g, h


# ==============================================================================
# 2. ZUFALLSINSTANZEN
# ==============================================================================
def trial_rng(seed: int, *stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=tuple(stream))))


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """QR einer komplexen Gauss-Matrix, Phasen der R-Diagonale herausgeteilt."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) * np.sqrt(0.5)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / abs(d))


def random_operator(rng: np.random.Generator, dim: int, interval: SpectralInterval) -> HermitianOperator:
    if dim < 1:
        raise ConfigInvalid(f"dim muss >= 1 sein, erhalten {dim}")
    eigenvalues = rng.uniform(interval.gamma, interval.Gamma, size=dim)
    return HermitianOperator.from_eigen(eigenvalues, interval, haar_unitary(rng, dim))


def _gaussian(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)


def random_state(rng: np.random.Generator, dim: int) -> StateVector:
    return StateVector.unit(_gaussian(rng, dim))


def random_ensemble(
    rng: np.random.Generator,
    n: int,
    dims: Sequence[int],
    interval: SpectralInterval,
    mode: NormalizationMode = NormalizationMode.SUM_OF_SQUARES,
) -> OperatorEnsemble:
    if n < 1 or len(dims) != n:
        raise ConfigInvalid(f"n = {n} passt nicht zu dims = {list(dims)}")
    operators = [random_operator(rng, d, interval) for d in dims]
    mode = NormalizationMode(mode)
    if mode is NormalizationMode.PER_VECTOR:
        states = [random_state(rng, d) for d in dims]
    else:
        # gemeinsam normieren, dann in Blöcke schneiden
        stacked = StateVector.unit(_gaussian(rng, int(sum(dims)))).components
        cuts = np.cumsum(dims)[:-1]
        states = [StateVector(part) for part in np.split(stacked, cuts)]
    return OperatorEnsemble(tuple(operators), tuple(states), mode)


def _pick_triple(rng: np.random.Generator, config: TrialConfig) -> Triple:
    if config.triples:
        return config.triples[int(rng.integers(len(config.triples)))]
    pool, h_pool = config.function_pool, config.h_pool
    f = pool[int(rng.integers(len(pool)))]
    g = pool[int(rng.integers(len(pool)))]
    h = h_pool[int(rng.integers(len(h_pool)))]
    return f, g, h


def _direction(f, g, h, interval: SpectralInterval, grid_n: int) -> Direction:
    """Richtung aus dem Gitter-Urteil; gemischt bleibt bei >=, scheitert am Gate und geht in `explore_mixed`."""
    verdict = classify_synchrony(f, g, h, interval, grid_n)
    return Direction.LE if verdict.classification is Synchrony.ASYNCHRONOUS else Direction.GE


def _dim(rng: np.random.Generator, config: TrialConfig, cap: int = MAX_DIM) -> int:
    lo, hi = config.dim_range
    return int(rng.integers(lo, min(hi, cap) + 1)) if lo <= cap else lo


def _ensemble_dims(rng: np.random.Generator, config: TrialConfig) -> list[int]:
    n = int(rng.integers(1, config.ensemble_max + 1))
    return [_dim(rng, config, ENSEMBLE_DIM_MAX) for _ in range(n)]


# ==============================================================================
# 3. FAMILIEN (eine Instanz -> ein oder mehrere Berichte)
# ==============================================================================
def _family_pompeiu(rng, config: TrialConfig) -> list[InequalityReport]:
    f, g, h = _pick_triple(rng, config)
    dim = _dim(rng, config)
    A, x = random_operator(rng, dim, config.interval), random_state(rng, dim)
    return [check_pompeiu(f, g, h, A, x, _direction(f, g, h, config.interval, config.grid_n), config.grid_n)]


def _family_cauchy(rng, config: TrialConfig) -> list[InequalityReport]:
    f, _, h = _pick_triple(rng, config)
    dim = _dim(rng, config)
    return [check_cauchy(f, h, random_operator(rng, dim, config.interval), random_state(rng, dim))]


def _family_kantorovich(rng, config: TrialConfig) -> list[InequalityReport]:
    dim = _dim(rng, config)
    return list(kantorovich_chain(random_operator(rng, dim, config.interval), random_state(rng, dim)))


def _family_two_operator(rng, config: TrialConfig) -> list[InequalityReport]:
    f, g, h = _pick_triple(rng, config)
    dim = _dim(rng, config)
    A, B = random_operator(rng, dim, config.interval), random_operator(rng, dim, config.interval)
    x, y = random_state(rng, dim), random_state(rng, dim)
    direction = _direction(f, g, h, config.interval, config.grid_n)
    return [check_two_operator(f, g, h, A, B, x, y, direction, config.grid_n)]


def _family_centered(rng, config: TrialConfig) -> list[InequalityReport]:
    f, g, h = _pick_triple(rng, config)
    dim = _dim(rng, config)
    A, x = random_operator(rng, dim, config.interval), random_state(rng, dim)
    return [check_centered(f, g, h, A, x, _direction(f, g, h, config.interval, config.grid_n), config.grid_n)]


def _family_inverse_pair(rng, config: TrialConfig) -> list[InequalityReport]:
    f, g, h = _pick_triple(rng, config)
    dim = _dim(rng, config)
    A, x = random_operator(rng, dim, config.interval), random_state(rng, dim)
    hull = config.interval.hull(expectation(A, IDENTITY, x), expectation(A, INVERSE, x))
    return [check_inverse_pair(f, g, h, A, x, _direction(f, g, h, hull, config.grid_n), config.grid_n)]


def _family_integral_pompeiu(rng, config: TrialConfig) -> list[InequalityReport]:
    f, g, h = _pick_triple(rng, config)
    direction = _direction(f, g, h, config.interval, config.grid_n)
    return [check_integral_pompeiu(f, g, h, config.interval, direction, config.grid_n)]


def _family_ensemble_pompeiu(rng, config: TrialConfig) -> list[InequalityReport]:
    f, g, h = _pick_triple(rng, config)
    dims = _ensemble_dims(rng, config)
    E = random_ensemble(rng, len(dims), dims, config.interval)
    return [check_ensemble_pompeiu(f, g, h, E, _direction(f, g, h, config.interval, config.grid_n), config.grid_n)]


def _family_ensemble_centered(rng, config: TrialConfig) -> list[InequalityReport]:
    f, g, h = _pick_triple(rng, config)
    dims = _ensemble_dims(rng, config)
    E = random_ensemble(rng, len(dims), dims, config.interval)
    return [check_ensemble_centered(f, g, h, E, _direction(f, g, h, config.interval, config.grid_n), config.grid_n)]


def _family_ensemble_square_bound(rng, config: TrialConfig) -> list[InequalityReport]:
    dims = _ensemble_dims(rng, config)
    E = random_ensemble(rng, len(dims), dims, config.interval, NormalizationMode.PER_VECTOR)
    return [check_ensemble_square_bound(E)]


def _family_discrete_chebyshev(rng, config: TrialConfig) -> list[InequalityReport]:
    m = _dim(rng, config)
    a = np.sort(rng.uniform(config.interval.gamma, config.interval.Gamma, m))
    b = np.sort(rng.standard_normal(m))
    if rng.random() < 0.5:
        a, b = a[::-1], b[::-1]
    return [discrete_chebyshev(a, b)]


def _family_chain(rng, config: TrialConfig) -> list[InequalityReport]:
    dims = _ensemble_dims(rng, config)
    outer = config.interval
    intervals = []
    for _ in dims:
        lo, hi = np.sort(rng.uniform(outer.gamma, outer.Gamma, 2))
        intervals.append(SpectralInterval(lo, hi))
    operators = [random_operator(rng, d, iv).with_interval(outer) for d, iv in zip(dims, intervals)]
    states = [random_state(rng, d) for d in dims]
    E = OperatorEnsemble(tuple(operators), tuple(states), NormalizationMode.PER_VECTOR)
    return list(kantorovich_ensemble_chain(E, intervals).links)


FAMILY_RUNNERS: dict[str, Callable[[np.random.Generator, TrialConfig], list[InequalityReport]]] = {
    "pompeiu": _family_pompeiu,
    "cauchy": _family_cauchy,
    "kantorovich": _family_kantorovich,
    "two_operator": _family_two_operator,
    "centered": _family_centered,
    "inverse_pair": _family_inverse_pair,
    "integral_pompeiu": _family_integral_pompeiu,
    "ensemble_pompeiu": _family_ensemble_pompeiu,
    "ensemble_centered": _family_ensemble_centered,
    "ensemble_square_bound": _family_ensemble_square_bound,
    "discrete_chebyshev": _family_discrete_chebyshev,
    "chain": _family_chain,
}


# ==============================================================================
# 4. SUITE
# ==============================================================================
def bundle_of(report: InequalityReport, trial: int | None = None) -> dict[str, Any]:
    """Reproduktionsbündel: genug, um den Bericht mit `replay` neu zu rechnen."""
    return {"theorem_id": report.theorem_id, "trial": trial, "report": report.to_record(), "inputs": report.inputs}


@dataclass
class SuiteSummary:
    config: TrialConfig
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    near_misses: dict[str, int] = field(default_factory=dict)
    worst: dict[str, dict[str, Any]] = field(default_factory=dict)
    violations: list[dict[str, Any]] = field(default_factory=list)
    mixed: dict[str, dict[str, Any]] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, trial: int, report: InequalityReport) -> None:
        tid = report.theorem_id
        bucket = self.counts.setdefault(tid, {v.value: 0 for v in Verdict})
        verdict = report.verdict
        if verdict is Verdict.VIOLATED and not report.is_violation:
            # Rundungsband zwischen -10·tol und -tol
            self.near_misses[tid] = self.near_misses.get(tid, 0) + 1
            verdict = Verdict.HOLDS
        bucket[verdict.value] += 1
        if report.is_violation:
            self.violations.append(bundle_of(report, trial))
        if report.verdict is not Verdict.HYPOTHESIS_NOT_MET:
            current = self.worst.get(tid)
            if current is None or report.gap < current["report"]["gap"]:
                self.worst[tid] = bundle_of(report, trial)

    def record_mixed(self, tid: str, gap: float | None) -> None:
        entry = self.mixed.setdefault(tid, {"explored": 0, "worst_gap": None})
        entry["explored"] += 1
        if gap is not None and (entry["worst_gap"] is None or gap < entry["worst_gap"]):
            entry["worst_gap"] = gap

    def record_skip(self, tid: str) -> None:
        bucket = self.counts.setdefault(tid, {v.value: 0 for v in Verdict})
        bucket[Verdict.HYPOTHESIS_NOT_MET.value] += 1

    def rows(self) -> list[dict[str, Any]]:
        rows = []
        for tid in self.config.theorem_ids:
            bucket = self.counts.get(tid, {v.value: 0 for v in Verdict})
            worst = self.worst.get(tid)
            mixed = self.mixed.get(tid, {"explored": 0, "worst_gap": None})
            rows.append(
                {
                    "theorem_id": tid,
                    "trials": sum(bucket.values()),
                    "holds": bucket[Verdict.HOLDS.value],
                    "violated": bucket[Verdict.VIOLATED.value],
                    "hypothesis_not_met": bucket[Verdict.HYPOTHESIS_NOT_MET.value],
                    "near_misses": self.near_misses.get(tid, 0),
                    "worst_gap": worst["report"]["gap"] if worst else None,
                    "worst_trial": worst["trial"] if worst else None,
                    "mixed_explored": mixed["explored"],
                    "mixed_worst_gap": mixed["worst_gap"],
                }
            )
        return rows

    def to_records(self) -> list[dict[str, Any]]:
        """Zeilen für summary.jsonl; wall_time bleibt draussen (Ausgabe ist pro Seed byte-identisch)."""
        head = {"kind": "config", **self.config.to_doc()}
        rows = [{"kind": "theorem", **row} for row in self.rows()]
        worst = [{"kind": "worst", **bundle} for _, bundle in sorted(self.worst.items())]
        return [head, *rows, *worst]


def run_suite(config: TrialConfig, sink: Callable[[int, InequalityReport], None] | None = None) -> SuiteSummary:
    summary = SuiteSummary(config)
    wanted = set(config.theorem_ids)
    families = config.families
    family_index = {family: k for k, family in enumerate(FAMILIES)}
    start = time.perf_counter()
    logger.info("Suite: seed=%d, trials=%d, Familien=%s", config.seed, config.trials, ",".join(families))

    for trial in range(config.trials):
        for family in families:
            rng = trial_rng(config.seed, trial, family_index[family])
            try:
                reports = FAMILY_RUNNERS[family](rng, config)
            except DomainViolation as exc:
                # Funktion ausserhalb ihres Bereichs (z. B. auf der Hülle von a und b)
                logger.debug("trial %d, %s: %s", trial, family, exc)
                for tid in FAMILIES[family]:
                    if tid in wanted:
                        summary.record_skip(tid)
                continue
            for report in reports:
                if report.theorem_id not in wanted:
                    continue
                summary.record(trial, report)
                if config.mixed_budget and _is_mixed(report):
                    explore_rng = trial_rng(config.seed, trial, family_index[family], MIXED_STREAM)
                    summary.record_mixed(report.theorem_id, explore_mixed(report, config, explore_rng))
                if sink is not None:
                    sink(trial, report)
        if (trial + 1) % LOG_INTERVAL == 0:
            logger.info("... %d/%d Durchläufe, %d Verletzungen", trial + 1, config.trials, len(summary.violations))

    summary.wall_time = time.perf_counter() - start
    logger.info("Suite fertig in %.2f s, %d Verletzungen", summary.wall_time, len(summary.violations))
    return summary


# ==============================================================================
# 5. REPLAY
# ==============================================================================
def _functions(inputs: Mapping[str, Any]) -> dict[str, ScalarFunction]:
    return {name: ScalarFunction.from_descriptor(doc) for name, doc in inputs.get("functions", {}).items()}


def _ensemble(inputs: Mapping[str, Any]) -> OperatorEnsemble:
    return OperatorEnsemble(
        tuple(codec.operator_from_doc(doc) for doc in inputs["operators"]),
        tuple(codec.state_from_doc(doc) for doc in inputs["states"]),
        NormalizationMode(inputs["normalization"]),
    )


def replay(bundle: Mapping[str, Any]) -> InequalityReport:
    """Rechnet einen Bericht aus seinem Reproduktionsbündel neu."""
    tid = bundle["theorem_id"]
    inputs = bundle["inputs"]
    check = inputs.get("check")
    fns = _functions(inputs)
    ops: list[HermitianOperator] = []
    states: list[StateVector] = []
    if "normalization" not in inputs:
        ops = [codec.operator_from_doc(doc) for doc in inputs.get("operators", [])]
        states = [codec.state_from_doc(doc) for doc in inputs.get("states", [])]
    options = {k: inputs[k] for k in ("grid_n", "gate") if k in inputs}
    direction = inputs.get("direction", "ge")

    if check == "pompeiu":
        return check_pompeiu(fns["f"], fns["g"], fns["h"], ops[0], states[0], direction, **options)
    if check == "cauchy":
        return check_cauchy(fns["f"], fns["h"], ops[0], states[0])
    if check == "kantorovich":
        declared = codec.interval_from_doc(inputs["declared_interval"])
        lower, upper = kantorovich_chain(ops[0], states[0], declared, inputs.get("gate", True))
        return lower if tid == "kantorovich_lower" else upper
    if check == "two_operator":
        return check_two_operator(fns["f"], fns["g"], fns["h"], ops[0], ops[1], states[0], states[1], direction, **options)
    if check == "centered":
        return check_centered(fns["f"], fns["g"], fns["h"], ops[0], states[0], direction, **options)
    if check == "inverse_pair":
        return check_inverse_pair(fns["f"], fns["g"], fns["h"], ops[0], states[0], direction, **options)
    if check == "integral_pompeiu":
        interval = codec.interval_from_doc(inputs["interval"])
        return check_integral_pompeiu(fns["f"], fns["g"], fns["h"], interval, direction, **options)
    if check == "ensemble_pompeiu":
        return check_ensemble_pompeiu(fns["f"], fns["g"], fns["h"], _ensemble(inputs), direction, **options)
    if check == "ensemble_centered":
        return check_ensemble_centered(fns["f"], fns["g"], fns["h"], _ensemble(inputs), direction, **options)
    if check == "ensemble_square_bound":
        return check_ensemble_square_bound(_ensemble(inputs))
    if check == "discrete_chebyshev":
        return discrete_chebyshev(inputs["a"], inputs["b"])
    if check == "kantorovich_chain":
        intervals = [codec.interval_from_doc(iv) for iv in inputs["per_op_intervals"]]
        chain = kantorovich_ensemble_chain(_ensemble(inputs), intervals)
        return {link.theorem_id: link for link in chain.links}[tid]
    raise UnknownTheorem(f"Bündel mit unbekannter Prüfung {check!r}")


# ==============================================================================
# 6. FALSIFY (Notwendigkeit der Voraussetzungen)
# ==============================================================================
SYNCHRONY_TARGETS = ("pompeiu", "two_operator", "centered", "inverse_pair", "ensemble_pompeiu", "ensemble_centered")
FALSIFY_TARGETS: dict[str | None, tuple[str, ...]] = {
    None: SYNCHRONY_TARGETS + ("cauchy", "kantorovich_lower", "kantorovich_upper", "ensemble_square_bound", "chain_lower"),
    "synchrony": SYNCHRONY_TARGETS,
    "spectral-containment": ("kantorovich_upper",),
    "normalization": ("ensemble_square_bound",),
}
DEFAULT_FALSIFY_TRIPLE: Triple = (ONE, IDENTITY, ScalarFunction.power(0.5))
DEFAULT_FALSIFY_INTERVAL = SpectralInterval(1.0, 4.0)
CONTAINMENT_WIDENING = 2.0


@dataclass(frozen=True)
class FalsifyResult:
    theorem_id: str
    dropped: str | None
    gap: float
    tolerance: float
    evaluations: int
    bundle: dict[str, Any]

    def to_record(self) -> dict[str, Any]:
        return {
            "theorem_id": self.theorem_id,
            "dropped": self.dropped,
            "gap": self.gap,
            "tolerance": self.tolerance,
            "evaluations": self.evaluations,
            "bundle": self.bundle,
        }


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * z))


class _Probe:
    """Parametrisiert 2x2-Diagonaloperatoren und reelle Zustände über einen freien Vektor."""

    def __init__(
        self,
        theorem_id: str,
        dropped: str | None,
        triple: Triple,
        interval: SpectralInterval,
        grid_n: int,
        directions: tuple[Direction, ...] | None = None,
    ):
        self.theorem_id = theorem_id
        self.dropped = dropped
        self.f, self.g, self.h = triple
        self.interval = interval
        self.grid_n = grid_n
        self.gate = dropped is None
        self.spectrum = interval
        if dropped == "spectral-containment":
            self.spectrum = SpectralInterval(interval.gamma / CONTAINMENT_WIDENING, interval.Gamma * CONTAINMENT_WIDENING)
        self.directions = directions if directions is not None else self._directions()

    def _directions(self) -> tuple[Direction, ...]:
        if self.theorem_id not in SYNCHRONY_TARGETS:
            return (Direction.GE,)
        verdict = classify_synchrony(self.f, self.g, self.h, self.interval, self.grid_n)
        supported = {
            Synchrony.SYNCHRONOUS: (Direction.GE,),
            Synchrony.ASYNCHRONOUS: (Direction.LE,),
            Synchrony.MIXED: (),
        }[verdict.classification]
        if self.dropped == "synchrony":
            return tuple(d for d in Direction if d not in supported) or tuple(Direction)
        return supported

    @property
    def size(self) -> int:
        return 8

    def _operator(self, z: np.ndarray) -> HermitianOperator:
        s = self.spectrum
        values = s.gamma + s.width * _sigmoid(z)
        return HermitianOperator.diagonal(values, s)

    @staticmethod
    def _real_state(theta: float, weight: float = 1.0) -> StateVector:
        return StateVector(np.array([np.cos(theta), np.sin(theta)]) * weight)

    def report(self, z: np.ndarray, direction: Direction) -> InequalityReport:
        tid, f, g, h = self.theorem_id, self.f, self.g, self.h
        A, B = self._operator(z[0:2]), self._operator(z[2:4])
        x, y = self._real_state(z[4]), self._real_state(z[5])
        opts = {"grid_n": self.grid_n, "gate": self.gate}
        if tid == "pompeiu":
            return check_pompeiu(f, g, h, A, x, direction, **opts)
        if tid == "two_operator":
            return check_two_operator(f, g, h, A, B, x, y, direction, **opts)
        if tid == "centered":
            return check_centered(f, g, h, A, x, direction, **opts)
        if tid == "inverse_pair":
            return check_inverse_pair(f, g, h, A, x, direction, **opts)
        if tid == "cauchy":
            return check_cauchy(f, h, A, x)
        if tid in ("kantorovich_lower", "kantorovich_upper"):
            lower, upper = kantorovich_chain(A, x, self.interval, gate=self.gate)
            return lower if tid == "kantorovich_lower" else upper

        c, s = np.cos(z[6]), np.sin(z[6])
        if tid in ("ensemble_pompeiu", "ensemble_centered"):
            E = OperatorEnsemble((A, B), (self._real_state(z[4], c), self._real_state(z[5], s)))
            check = check_ensemble_pompeiu if tid == "ensemble_pompeiu" else check_ensemble_centered
            return check(f, g, h, E, direction, **opts)
        if self.dropped == "normalization":
            E = OperatorEnsemble((A, B), (self._real_state(z[4], c), self._real_state(z[5], s)), NormalizationMode.SUM_OF_SQUARES)
        else:
            E = OperatorEnsemble((A, B), (x, y), NormalizationMode.PER_VECTOR)
        if tid == "ensemble_square_bound":
            return check_ensemble_square_bound(E)
        return kantorovich_ensemble_chain(E).lower


def falsify(
    theorem_id: str,
    drop: str | None = None,
    budget: int = 100_000,
    seed: int = DEFAULT_SEED,
    triple: Triple | None = None,
    interval: SpectralInterval | None = None,
    grid_n: int = DEFAULT_GRID,
) -> FalsifyResult | None:
    """
    Zufällige Starts plus Nelder-Mead auf der orientierten Lücke.
    Liefert das negativste Bündel, wenn es unter -10·tol liegt, sonst None.
    """
    if theorem_id not in FAMILY_OF:
        raise UnknownTheorem(f"Unbekannte theorem_id: {theorem_id!r}")
    if drop is not None and drop not in DROPPABLE:
        raise ConfigInvalid(f"drop muss eines von {DROPPABLE} sein, erhalten {drop!r}")
    if theorem_id not in FALSIFY_TARGETS[drop]:
        raise ConfigInvalid(f"Kombination {theorem_id!r} / drop={drop!r} wird nicht durchsucht")
    if budget < 1:
        raise ConfigInvalid(f"budget muss >= 1 sein, erhalten {budget}")

    probe = _Probe(
        theorem_id,
        drop,
        triple or DEFAULT_FALSIFY_TRIPLE,
        interval or DEFAULT_FALSIFY_INTERVAL,
        grid_n,
    )
    if not probe.directions:
        logger.info("falsify %s: Voraussetzung auf dem Gitter nicht erfüllt, nichts zu prüfen", theorem_id)
        return None

    best, used = _search(probe, budget, np.random.default_rng(seed))
    if best is None or not best[1].is_violation:
        logger.info("falsify %s (drop=%s): kein Gegenbeispiel nach %d Auswertungen", theorem_id, drop, used)
        return None
    gap, report = best
    logger.info("falsify %s (drop=%s): gap = %.6g nach %d Auswertungen", theorem_id, drop, gap, used)
    return FalsifyResult(theorem_id, drop, gap, report.tolerance, used, bundle_of(report))


def _search(
    probe: _Probe, budget: int, rng: np.random.Generator, restart_fev: int = RESTART_FEV
) -> tuple[tuple[float, InequalityReport] | None, int]:
    """Neustarts mit Nelder-Mead; bricht ab, sobald eine echte Verletzung gefunden ist."""
    used = 0
    best: tuple[float, InequalityReport] | None = None

    def objective(z: np.ndarray, direction: Direction) -> float:
        nonlocal used, best
        used += 1
        try:
            report = probe.report(z, direction)
        except VerificationError:
            return np.inf
        if report.verdict is Verdict.HYPOTHESIS_NOT_MET or not np.isfinite(report.gap):
            return np.inf
        if best is None or report.gap < best[0]:
            best = (report.gap, report)
        return report.gap

    while used < budget:
        for direction in probe.directions:
            remaining = budget - used
            if remaining <= 0:
                break
            z0 = rng.normal(0.0, 2.0, probe.size)
            if not np.isfinite(objective(z0, direction)):
                continue
            optimize.minimize(
                objective, z0, args=(direction,), method="Nelder-Mead",
                options={"maxfev": max(1, min(restart_fev, remaining - 1)), "xatol": 1e-10, "fatol": 1e-14},
            )
        if best is not None and best[1].is_violation:
            break
    return best, used


# ==============================================================================
# 7. GEMISCHTE TRIPEL (Erkundung statt Zählung)
# ==============================================================================
def _is_mixed(report: InequalityReport) -> bool:
    return (
        report.verdict is Verdict.HYPOTHESIS_NOT_MET
        and report.theorem_id in SYNCHRONY_TARGETS
        and (report.hypothesis or {}).get("classification") == Synchrony.MIXED.value
    )


def explore_mixed(report: InequalityReport, config: TrialConfig, rng: np.random.Generator) -> float | None:
    """
    Gemischtes Tripel: kurze Suche in beiden Richtungen mit mixed_budget Auswertungen.
    Das Ergebnis zählt nie als Verletzung; zurück kommt die kleinste gefundene Lücke.
    """
    fns = _functions(report.inputs)
    probe = _Probe(
        report.theorem_id,
        "synchrony",
        (fns["f"], fns["g"], fns["h"]),
        config.interval,
        config.grid_n,
        directions=tuple(Direction),
    )
    # zwei Neustarts je Richtung
    restart_fev = max(1, config.mixed_budget // (2 * len(probe.directions)))
    best, used = _search(probe, config.mixed_budget, rng, restart_fev)
    logger.debug("gemischt %s: %d Auswertungen, gap = %s", report.theorem_id, used, best[0] if best else None)
    return best[0] if best else None
