import streamlit as st


def render(pulse):
    st.subheader("🔗 Kantorovich-Kette eines Ensembles")
    chain = pulse["chain"]
    if chain is None:
        st.caption("Kette verlangt γ > 0.")
        return

    st.table(
        [
            {"j": j + 1, "⟨A_j x_j, x_j⟩": a, "⟨A_j⁻¹ x_j, x_j⟩": b, "K_j": k}
            for j, (a, b, k) in enumerate(zip(chain["a"], chain["b"], chain["constants"]))
        ]
    )
    st.table(
        [
            {"Glied": link["theorem_id"], "lhs": link["lhs"], "rhs": link["rhs"], "gap": link["gap"], "Urteil": link["verdict"]}
            for link in chain["links"]
        ]
    )
    for note in chain["notes"]:
        st.caption(f"📝 {note}")
