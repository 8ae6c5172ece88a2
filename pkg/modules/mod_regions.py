import streamlit as st

SYMBOLS = {"synchronous": "▲ sync", "asynchronous": "▼ async", "mixed": "◆ gemischt"}


def render(pulse):
    st.subheader("🗺️ Regionen h(s) = s^r")
    rows = pulse["regions"]
    if not rows:
        st.caption("Keine Regionen-Tabelle für dieses Intervall.")
        return

    st.table([{key: SYMBOLS.get(value, value) for key, value in row.items()} for row in rows])
    st.caption("Gitter-Urteil auf dem Intervall der Zeile, kein Beweis. Für s⁻³ · log kehrt der Scan die Lehrbuch-Aussage um: asynchron für -3 < r < 0.")
