import streamlit as st

import codec


def render(pulse):
    st.subheader("🎲 Eigenschafts-Suite")
    rows = pulse["suite"]
    if not rows:
        st.caption("Suite übersprungen (γ ≤ 0).")
        return

    meta = pulse["metadata"]
    col1, col2 = st.columns(2)
    col1.metric("Trials", meta["trials"])
    col2.metric("Verletzungen", meta["violations"])
    st.table(rows)

    # Reproduktionsbündel jeder echten Verletzung
    for bundle in pulse["violations"]:
        with st.expander(f"❌ {bundle['theorem_id']} · trial {bundle['trial']}"):
            st.code(codec.dumps_record(bundle), language="json")
