import streamlit as st

STATUS_COLORS = {True: "#3fb950", False: "#e5534b"}


def render(pulse):
    # 1. Daten extrahieren
    meta = pulse["metadata"]
    gamma, Gamma = meta["interval"]
    passed = meta["library_size"] - len(meta["library_failed"])

    # 2. Status: grün nur bei grüner Bibliothek und ohne Verletzungen
    healthy = not meta["library_failed"] and meta["violations"] == 0
    color = STATUS_COLORS[healthy]

    st.markdown(f"""
        <div style="border-left: 6px solid {color}; background: rgba(255,255,255,0.03);
                    border-radius: 6px; padding: 8px 14px; margin-bottom: 12px;">
            <div style="font-size: 1.15rem; font-weight: 600;">𝒫(f,g,h; A,x) auf [{gamma:g}, {Gamma:g}]</div>
            <div style="font-size: 0.8rem; opacity: 0.75; letter-spacing: 0.5px;">
                SEED {meta['seed']} · {meta['trials']} TRIALS · GITTER {meta['grid_n']} ·
                BIBLIOTHEK {passed}/{meta['library_size']} · VERLETZUNGEN {meta['violations']}
            </div>
        </div>
    """, unsafe_allow_html=True)

    if not meta["positive"]:
        st.warning("γ ≤ 0: Inverse, Kantorovich-Ketten und s^r-Regionen sind abgeschaltet.")
