# ==============================================================================
# 📦 CODEC (Dokumente <-> Objekte)
# ------------------------------------------------------------------------------
# ZWECK:    Szenario-, Konfig- und Ergebnisdokumente. Zahlen werden dezimal
#           mit 17 signifikanten Stellen geschrieben, die Ausgabe ist pro
#           Eingabe byte-identisch.
# ==============================================================================
from __future__ import annotations

import hashlib
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np

from errors import DimensionMismatch, ScenarioError
from spectral_core import HermitianOperator, SpectralInterval, StateVector

# ------------------------------------------------------------------------------
# KONFIGURATION
# ------------------------------------------------------------------------------
SIGNIFICANT_DIGITS = 17


# ==============================================================================
# 1. ZAHLEN & DATENSÄTZE
# ==============================================================================
def format_number(value: float) -> str:
    value = float(value)
    if not math.isfinite(value):
        return "null"
    text = f"{value:.{SIGNIFICANT_DIGITS}g}"
    if text == "-0":
        return "0"
    return text


def dumps_record(obj: Any) -> str:
    """Kompaktes JSON mit fester Schlüsselreihenfolge (Einfügereihenfolge) und 17g-Zahlen."""
    if obj is None:
        return "null"
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, Enum):
        return json.dumps(obj.value, ensure_ascii=False)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_number(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, Mapping):
        return "{" + ",".join(f"{json.dumps(str(k), ensure_ascii=False)}:{dumps_record(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, np.ndarray):
        return dumps_record(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps_record(item) for item in obj) + "]"
    raise TypeError(f"Nicht serialisierbar: {type(obj).__name__}")


def digest(payload: Any) -> str:
    return hashlib.sha256(dumps_record(payload).encode("utf-8")).hexdigest()


def load_document(path: str | Path) -> dict[str, Any]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"{path}: nicht lesbar ({exc.strerror})") from None
    return parse_document(text, source=str(path))


def parse_document(text: str, source: str = "<text>") -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ScenarioError(f"{source}: Dokument muss ein Objekt sein")
    return doc


# ==============================================================================
# 2. KOMPLEXE ZAHLEN
# ==============================================================================
def _complex_entry(item: Any) -> complex:
    if isinstance(item, (int, float)) and not isinstance(item, bool):
        return complex(float(item), 0.0)
    if isinstance(item, (list, tuple)) and len(item) == 2:
        try:
            return complex(float(item[0]), float(item[1]))
        except (TypeError, ValueError):
            pass
    raise ScenarioError(f"Komplexe Zahl als Zahl oder [re, im] erwartet, erhalten {item!r}")


def complex_array(items: Sequence[Any]) -> np.ndarray:
    return np.array([_complex_entry(item) for item in items], dtype=complex)


def complex_pairs(values: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex).reshape(-1)]


def _matrix(raw: Sequence[Any], dim: int | None = None) -> np.ndarray:
    """Zeilenweise: flach (dim² Einträge) oder verschachtelt (dim Zeilen zu dim Einträgen)."""
    if not isinstance(raw, (list, tuple)) or not raw:
        raise ScenarioError(f"matrix als nichtleere Liste erwartet, erhalten {raw!r}")
    n = len(raw)
    if all(isinstance(row, list) and len(row) == n for row in raw):
        flat, size = [entry for row in raw for entry in row], n
    else:
        flat, size = list(raw), math.isqrt(n)
        if size * size != n:
            raise DimensionMismatch(f"matrix hat {n} Einträge, keine Quadratzahl")
    if dim is not None and dim != size:
        raise DimensionMismatch(f"matrix hat Dimension {size}, dim = {dim}")
    return complex_array(flat).reshape(size, size)


# ==============================================================================
# 3. INTERVALL, OPERATOR, ZUSTAND
# ==============================================================================
def interval_from_doc(raw: Any) -> SpectralInterval:
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise ScenarioError(f"interval als [gamma, Gamma] erwartet, erhalten {raw!r}")
    return SpectralInterval(float(raw[0]), float(raw[1]))


def operator_from_doc(doc: Mapping[str, Any], interval: SpectralInterval | None = None) -> HermitianOperator:
    if not isinstance(doc, Mapping):
        raise ScenarioError(f"Operator als Objekt erwartet, erhalten {doc!r}")
    if "interval" in doc:
        interval = interval_from_doc(doc["interval"])
    if interval is None:
        raise ScenarioError("Operator ohne 'interval'")
    if "eigenvalues" in doc:
        eigenvalues = [float(v) for v in doc["eigenvalues"]]
        eigenvectors = None
        if "eigenvectors" in doc:
            eigenvectors = _matrix(doc["eigenvectors"], len(eigenvalues))
        return HermitianOperator.from_eigen(eigenvalues, interval, eigenvectors)
    if "matrix" in doc:
        dim = int(doc["dim"]) if "dim" in doc else None
        return HermitianOperator.from_dense(_matrix(doc["matrix"], dim), interval)
    raise ScenarioError("Operator braucht 'matrix' oder 'eigenvalues'")


def operator_to_doc(op: HermitianOperator) -> dict[str, Any]:
    doc: dict[str, Any] = {"dim": op.dim, "eigenvalues": [float(v) for v in op.eigenvalues]}
    if not np.array_equal(op.eigenvectors, np.eye(op.dim)):
        doc["eigenvectors"] = complex_pairs(op.eigenvectors)
    doc["interval"] = op.interval.as_list()
    return doc


def state_from_doc(raw: Any, normalize: bool = False) -> StateVector:
    if isinstance(raw, Mapping):
        normalize = bool(raw.get("normalize", normalize))
        raw = raw.get("components")
    if not isinstance(raw, (list, tuple)) or not raw:
        raise ScenarioError(f"Zustand als Liste von Komponenten erwartet, erhalten {raw!r}")
    components = complex_array(raw)
    return StateVector.unit(components) if normalize else StateVector(components)


def state_to_doc(state: StateVector) -> list[list[float]]:
    return complex_pairs(state.components)
