# ==============================================================================
# 🛸 VERIFICATION HOST SYSTEM
# ------------------------------------------------------------------------------
# ZWECK:    Container für die Dashboard-Module (modules/mod_*.py).
#           Jedes Modul bekommt denselben 'pulse' und rendert sich selbst.
# ==============================================================================

import importlib
import os
import sys
import time

import streamlit as st

from engine_core import VerificationCore
from errors import VerificationError

# 1. SYSTEM INITIALISIERUNG
st.set_page_config(
    page_title="Pompeiu-Čebyšev | Operator-Ungleichungen",
    page_icon="⚖️",
    layout="centered",
    initial_sidebar_state="expanded",
)

MODULE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "modules")


# 2. DESIGN ENGINE (CSS Injection)
def inject_advanced_css():
    # Tafel-Look
    st.markdown("""
        <style>
        .stApp { background: linear-gradient(180deg, #10151c 0%, #07090c 100%); color: #d8dee6; }
        [data-testid="stSidebar"] { background-color: #0b0e12; border-right: 1px solid #232a33; }
        [data-testid="stTable"] td { font-family: "JetBrains Mono", monospace; font-size: 0.85rem; }
        .glass-container { background: rgba(20, 26, 34, 0.9); border-radius: 10px; padding: 16px; margin-bottom: 16px; }
        .error-box { border: 1px solid #e5534b; background: rgba(60, 10, 10, 0.55); }
        </style>
    """, unsafe_allow_html=True)


# 3. INFRASTRUKTUR
def get_available_modules():
    if not os.path.isdir(MODULE_DIR):
        return []

    files = sorted(f[:-3] for f in os.listdir(MODULE_DIR) if f.startswith("mod_") and f.endswith(".py"))

    # Header & Bibliothek zuerst
    priority = ["mod_header", "mod_dashboard"]
    return [p for p in priority if p in files] + [f for f in files if f not in priority]


def run_module_safely(mod_name, pulse, debug_mode):
    try:
        start_time = time.time()
        module_path = f"modules.{mod_name}"

        if module_path in sys.modules:
            module = importlib.reload(sys.modules[module_path])
        else:
            module = importlib.import_module(module_path)

        if hasattr(module, "render"):
            module.render(pulse)
            duration = (time.time() - start_time) * 1000
            if debug_mode:
                st.caption(f"⏱️ [SYS] {mod_name}: {duration:.1f}ms")
        else:
            st.error(f"⚠️ {mod_name}: Keine render()-Funktion!")

    except Exception as e:
        st.markdown(f"<div class='glass-container error-box'><h4>💥 Crash: {mod_name}</h4><p>{e}</p></div>", unsafe_allow_html=True)


# ------------------------------------------------------------------------------
# 4. MAIN COCKPIT
# ------------------------------------------------------------------------------
def main():
    inject_advanced_css()

    with st.sidebar:
        st.header("⚖️ MISSION CONTROL")

        st.subheader("1. Spektralintervall")
        col_a, col_b = st.columns(2)
        gamma = col_a.number_input("γ", value=1.0, step=0.25, format="%.3f")
        Gamma = col_b.number_input("Γ", value=2.0, step=0.25, format="%.3f")

        st.subheader("2. Zufall")
        seed = int(st.number_input("Seed", min_value=0, value=7, step=1))
        trials = st.slider("Trials", min_value=1, max_value=200, value=20)
        grid_n = st.slider("Gitter", min_value=8, max_value=256, value=64, step=8)

        st.divider()

        st.subheader("3. Module")
        avail = get_available_modules()
        active_mods = st.multiselect("Aktivierte Systeme", options=avail, default=avail)

        st.divider()

        st.subheader("4. System-Kern")
        debug_mode = st.toggle("Ingenieur-Modus (Debug)", value=False)

        if st.button("♻️ RELOAD ALL"):
            st.cache_data.clear()
            st.rerun()

    if gamma > Gamma:
        st.error("γ muss kleiner oder gleich Γ sein.")
        st.stop()

    # --- ENGINE ---
    with st.spinner("Rechne Puls..."):
        try:
            pulse = VerificationCore.get_pulse((gamma, Gamma), seed, trials, grid_n)
        except VerificationError as e:
            st.markdown(f"<div class='glass-container error-box'><h4>💥 Engine: {type(e).__name__}</h4><p>{e}</p></div>", unsafe_allow_html=True)
            st.stop()

    # --- RENDER PIPELINE ---
    for mod_name in active_mods:
        run_module_safely(mod_name, pulse, debug_mode)

    # --- PULSE INSPECTOR ---
    if debug_mode:
        st.markdown("---")
        st.subheader("🔍 Core Pulse Inspector")
        with st.expander("JSON Datenstrom ansehen (Raw Pulse)", expanded=False):
            st.json(pulse["metadata"])


if __name__ == "__main__":
    main()
