import streamlit as st

# ------------------------------------------------------------------------------
# 1. KARTEN-DESIGN
# ------------------------------------------------------------------------------
VERDICT_ICONS = {"holds": "✅", "violated": "❌", "hypothesis-not-met": "⚪"}


def _headline(outcome):
    """Erste Zeile einer Szenario-Karte: Status, Prüfung, Name."""
    mark = "🟢" if outcome["passed"] else "🔴"
    return f"{mark} {outcome['check']} · {outcome['name']}"


def _report_lines(observed):
    for record in observed:
        if "theorem_id" not in record:
            yield dict(record)
            continue
        yield {
            "theorem_id": record["theorem_id"],
            "Urteil": f"{VERDICT_ICONS.get(record['verdict'], '?')} {record['verdict']}",
            "lhs": record["lhs"],
            "rhs": record["rhs"],
            "gap": record["gap"],
            "Richtung": record["direction"],
        }


# ------------------------------------------------------------------------------
# 2. BIBLIOTHEK
# ------------------------------------------------------------------------------
def render(pulse):
    library = pulse["library"]
    meta = pulse["metadata"]

    st.subheader("📚 Festgepinnte Beispiele")
    passed = meta["library_size"] - len(meta["library_failed"])
    st.metric("Szenarien bestanden", f"{passed}/{meta['library_size']}")

    checks = sorted({o["check"] for o in library})
    chosen = st.selectbox("Prüfung", ["alle"] + checks, index=0)
    shown = [o for o in library if chosen == "alle" or o["check"] == chosen]

    for outcome in shown:
        with st.expander(_headline(outcome), expanded=not outcome["passed"]):
            if outcome["message"]:
                st.caption(outcome["message"])
            rows = list(_report_lines(outcome["observed"]))
            if rows:
                st.table(rows)
            for record in outcome["observed"]:
                for note in record.get("notes", []) or []:
                    st.caption(f"📝 {note}")

    with st.expander("🗂️ Abdeckung (theorem_id → Szenarien)"):
        st.table([{"theorem_id": tid, "Szenarien": ", ".join(names)} for tid, names in pulse["coverage"].items()])
