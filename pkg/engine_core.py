# ==============================================================================
# 🧬 VERIFICATION ENGINE CORE
# ------------------------------------------------------------------------------
# ZWECK:    Zentrale Daten-Verwaltung für das Dashboard. Rechnet Bibliothek,
#           Regionen-Tabelle, eine kleine Suite und eine Ensemble-Kette und
#           liefert alles als einen 'pulse' (Daten-Vertrag der Module).
# ------------------------------------------------------------------------------
# HIER GILT DAS GESETZ DER TRENNUNG:
# Strang A (Bibliothek) = festgepinnte Werte, unabhängig vom Seed
# Strang B (Zufall)     = Suite & Kette, reproduzierbar über den Seed
# ==============================================================================

import streamlit as st

import harness
import scenarios
from functions import ScalarFunction, scan_tr_regions
from multi_op import NormalizationMode, OperatorEnsemble, kantorovich_ensemble_chain
from spectral_core import SpectralInterval

# ------------------------------------------------------------------------------
# KONFIGURATION
# ------------------------------------------------------------------------------
REGION_PAIRS = {
    "1 · s": ({"kind": "constant", "c": 1.0}, {"kind": "identity"}, None),
    "s · s⁻¹": ({"kind": "identity"}, {"kind": "power", "p": -1.0}, None),
    "s² · s³": ({"kind": "power", "p": 2.0}, {"kind": "power", "p": 3.0}, None),
    "exp · exp": ({"kind": "exp"}, {"kind": "exp"}, None),
    # log ist erst für s > 1 positiv, daher festes Intervall statt Sidebar
    "s⁻³ · log": ({"kind": "power", "p": -3.0}, {"kind": "log"}, (1.5, 3.0)),
}
REGION_R_VALUES = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0)
CHAIN_OPERATORS = 3
CHAIN_DIM = 3


class VerificationCore:
    """
    Der Maschinenraum. Alle Rechnungen sind gecacht, Schlüssel sind die
    Sidebar-Werte (Intervall, Seed, Trials, Gitter).
    """

    @staticmethod
    @st.cache_data
    def load_library():
        outcomes = scenarios.run_library()
        coverage = {tid: list(names) for tid, names in scenarios.check_coverage().items()}
        return [o.to_record() for o in outcomes], coverage

    @staticmethod
    @st.cache_data
    def region_table(interval: tuple[float, float], grid_n: int):
        iv = SpectralInterval(*interval)
        rows = []
        for label, (f_doc, g_doc, fixed) in REGION_PAIRS.items():
            f, g = ScalarFunction.from_descriptor(f_doc), ScalarFunction.from_descriptor(g_doc)
            pair_iv = SpectralInterval(*fixed) if fixed else iv
            row = {"Paar": label, "Intervall": f"[{pair_iv.gamma:g}, {pair_iv.Gamma:g}]"}
            for r, verdict in scan_tr_regions(f, g, REGION_R_VALUES, pair_iv, grid_n):
                row[f"r={r:g}"] = verdict.classification.value
            rows.append(row)
        return rows

    @staticmethod
    @st.cache_data
    def small_suite(interval: tuple[float, float], seed: int, trials: int, grid_n: int):
        config = harness.TrialConfig(
            seed=seed, trials=trials, dim_range=(1, 4), interval=SpectralInterval(*interval), grid_n=grid_n
        )
        summary = harness.run_suite(config)
        return summary.rows(), summary.violations, summary.wall_time

    @staticmethod
    @st.cache_data
    def ensemble_chain(interval: tuple[float, float], seed: int):
        iv = SpectralInterval(*interval)
        rng = harness.trial_rng(seed, 0, len(harness.FAMILIES))
        operators = [harness.random_operator(rng, CHAIN_DIM, iv) for _ in range(CHAIN_OPERATORS)]
        states = [harness.random_state(rng, CHAIN_DIM) for _ in range(CHAIN_OPERATORS)]
        chain = kantorovich_ensemble_chain(OperatorEnsemble(tuple(operators), tuple(states), NormalizationMode.PER_VECTOR))
        return chain.to_record()

    @staticmethod
    def get_pulse(interval: tuple[float, float], seed: int, trials: int, grid_n: int):
        """
        Erstellt das 'pulse' Objekt (Data Contract), das die ganze App versorgt.
        """
        interval = (float(interval[0]), float(interval[1]))

        # STRANG A: Bibliothek
        library, coverage = VerificationCore.load_library()
        # s^r mit r < 0 und die Inversen verlangen gamma > 0
        positive = interval[0] > 0
        regions = VerificationCore.region_table(interval, grid_n) if positive else []

        # STRANG B: Zufall
        suite_rows, violations, wall_time = VerificationCore.small_suite(interval, seed, trials, grid_n) if positive else ([], [], 0.0)
        chain = VerificationCore.ensemble_chain(interval, seed) if positive else None

        failed = [o["name"] for o in library if not o["passed"]]
        return {
            "metadata": {
                "interval": list(interval),
                "seed": seed,
                "trials": trials,
                "grid_n": grid_n,
                "library_size": len(library),
                "library_failed": failed,
                "violations": len(violations),
                "suite_wall_time": wall_time,
                "positive": positive,
            },
            "library": library,
            "coverage": coverage,
            "regions": regions,
            "suite": suite_rows,
            "violations": violations,
            "chain": chain,
        }


# ==============================================================================
# 🛠 TERMINAL-CHECK (Nur ausführbar, wenn Datei direkt gestartet wird)
# ==============================================================================
if __name__ == "__main__":
    print("\n" + "═" * 60)
    print("🔋 ENGINE CORE TEST (Boot Sequence)")
    print("═" * 60)
    p = VerificationCore.get_pulse((1.0, 2.0), seed=7, trials=5, grid_n=32)
    meta = p["metadata"]
    print(f"   -> Bibliothek: {meta['library_size']} Szenarien, rot: {meta['library_failed'] or 'keine'}")
    print(f"   -> Suite: {meta['violations']} Verletzungen")
    print(f"   -> Kette: {[link['verdict'] for link in p['chain']['links']]}")
