# ==============================================================================
# 🖥️ CLI (Terminal-Zugang zur Prüfmaschine)
# ------------------------------------------------------------------------------
# ZWECK:    check | suite | classify | falsify | paper-examples (Bibliothek)
# EXIT:     0 = alles wie erwartet
#           1 = Verletzung, wo der Satz keine vorhersagt (oder Szenario rot)
#           2 = Eingabefehler (Datei, JSON, VerificationError)
# ==============================================================================
from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import codec
import harness
import scenarios
from errors import ScenarioError, VerificationError
from functions import DEFAULT_GRID, ONE, ScalarFunction, classify_monotonicity, classify_synchrony, scan_tr_regions
from spectral_core import SpectralInterval

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2

SUMMARY_COLUMNS = (
    "theorem_id", "trials", "holds", "violated", "hypothesis_not_met", "near_misses", "worst_gap", "worst_trial",
    "mixed_explored", "mixed_worst_gap",
)


# ==============================================================================
# 1. AUSGABE
# ==============================================================================
def write_jsonl(path: Path, records: Iterable[Mapping[str, Any]]) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(codec.dumps_record(record) + "\n")


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return codec.format_number(value)
    return str(value)


def csv_table(rows: Sequence[Mapping[str, Any]], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(col)) for col in columns])
    return buffer.getvalue()


def emit(rows: Sequence[Mapping[str, Any]], columns: Sequence[str], fmt: str, out: Path | None = None) -> None:
    text = csv_table(rows, columns) if fmt == "csv" else "".join(codec.dumps_record(row) + "\n" for row in rows)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


# ==============================================================================
# 2. SUBKOMMANDOS
# ==============================================================================
def cmd_check(args: argparse.Namespace) -> int:
    doc = codec.load_document(args.scenario)
    docs = doc["scenarios"] if "scenarios" in doc else [doc]
    if not isinstance(docs, list):
        raise ScenarioError(f"{args.scenario}: 'scenarios' muss eine Liste sein")
    failed = 0
    for item in docs:
        outcome = scenarios.run_scenario(item)
        sys.stdout.write(codec.dumps_record(outcome.to_record()) + "\n")
        if not outcome.passed:
            failed += 1
            logger.error("%s: %s", outcome.name, outcome.message)
    return EXIT_VIOLATION if failed else EXIT_OK


def _suite_config(args: argparse.Namespace) -> harness.TrialConfig:
    config = harness.TrialConfig.from_doc(codec.load_document(args.config)) if args.config else harness.TrialConfig()
    lo, hi = config.dim_range
    overrides: dict[str, Any] = {
        "seed": args.seed,
        "trials": args.trials,
        "grid_n": args.grid,
        "interval": SpectralInterval(*args.interval) if args.interval else None,
        "theorem_ids": tuple(t.strip() for t in args.theorems.split(",") if t.strip()) if args.theorems else None,
    }
    if args.dim_min is not None or args.dim_max is not None:
        overrides["dim_range"] = (args.dim_min if args.dim_min is not None else lo, args.dim_max if args.dim_max is not None else hi)
    return config.with_overrides(**overrides)


def cmd_suite(args: argparse.Namespace) -> int:
    config = _suite_config(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    with (out / "reports.jsonl").open("w", encoding="utf-8", newline="\n") as fh:

        def sink(trial: int, report) -> None:
            fh.write(codec.dumps_record({"trial": trial, **report.to_record()}) + "\n")

        summary = harness.run_suite(config, sink)

    write_jsonl(out / "summary.jsonl", summary.to_records())
    (out / "summary.csv").write_text(csv_table(summary.rows(), SUMMARY_COLUMNS), encoding="utf-8")
    if summary.violations:
        write_jsonl(out / "violations.jsonl", summary.violations)
    emit(summary.rows(), SUMMARY_COLUMNS, args.format)
    logger.info("Ergebnisse in %s", out)
    return EXIT_VIOLATION if summary.violations else EXIT_OK


def classify_rows(doc: Mapping[str, Any]) -> list[dict[str, Any]]:
    """Regionen-Tabelle aus einem Funktionsdokument {interval, functions, r_values?, grid_n?, open?}."""
    interval = codec.interval_from_doc(doc.get("interval"))
    if doc.get("open"):
        interval = interval.open_shrink()
    functions = doc.get("functions")
    if not isinstance(functions, Mapping) or "f" not in functions:
        raise ScenarioError("Funktionsdokument braucht 'functions' mit mindestens 'f'")
    fns = {key: ScalarFunction.from_descriptor(value) for key, value in functions.items()}
    f, g, h = fns["f"], fns.get("g", fns["f"]), fns.get("h")
    grid_n = int(doc.get("grid_n", DEFAULT_GRID))

    rows: list[dict[str, Any]] = []
    if h is not None:
        verdict = classify_synchrony(f, g, h, interval, grid_n)
        rows.append({"scan": "synchrony", "h": h.label, "classification": verdict.classification.value,
                     "min": verdict.min_product, "max": verdict.max_product})
        mono = classify_monotonicity(f, h, interval, grid_n)
        rows.append({"scan": "monotonicity", "h": h.label, "classification": mono.classification.value,
                     "min": mono.min_defect, "max": mono.max_defect})
    plain = classify_monotonicity(f, ONE, interval, grid_n)
    rows.append({"scan": "monotonicity", "h": ONE.label, "classification": plain.classification.value,
                 "min": plain.min_defect, "max": plain.max_defect})
    for r, verdict in scan_tr_regions(f, g, doc.get("r_values", ()), interval, grid_n):
        rows.append({"scan": "region", "h": f"s^{r:g}", "r": r, "classification": verdict.classification.value,
                     "min": verdict.min_product, "max": verdict.max_product})
    return rows


def cmd_classify(args: argparse.Namespace) -> int:
    doc = codec.load_document(args.functions)
    if args.grid is not None:
        doc = {**doc, "grid_n": args.grid}
    rows = classify_rows(doc)
    emit(rows, ("scan", "h", "r", "classification", "min", "max"), args.format, Path(args.out) if args.out else None)
    return EXIT_OK


def cmd_falsify(args: argparse.Namespace) -> int:
    triple = None
    if args.triple:
        triple = harness.triple_from_doc(codec.load_document(args.triple))
    interval = SpectralInterval(*args.interval) if args.interval else None
    result = harness.falsify(
        args.theorem,
        drop=args.drop,
        budget=args.budget,
        seed=args.seed if args.seed is not None else harness.DEFAULT_SEED,
        triple=triple,
        interval=interval,
        grid_n=args.grid or DEFAULT_GRID,
    )
    record = {"theorem_id": args.theorem, "dropped": args.drop, "found": result is not None}
    if result is not None:
        record.update(result.to_record())
    sys.stdout.write(codec.dumps_record(record) + "\n")
    # mit abgeschalteter Voraussetzung sagt der Satz nichts vorher
    return EXIT_VIOLATION if result is not None and args.drop is None else EXIT_OK


def cmd_pinned_library(args: argparse.Namespace) -> int:
    scenarios.check_coverage()
    failed = 0
    for outcome in scenarios.run_library():
        mark = "ok  " if outcome.passed else "FAIL"
        sys.stdout.write(f"{mark} {outcome.check:<22} {outcome.name}\n")
        if not outcome.passed:
            failed += 1
            sys.stdout.write(f"     {outcome.message}\n")
    sys.stdout.write(f"{len(scenarios.PINNED_LIBRARY) - failed}/{len(scenarios.PINNED_LIBRARY)} Szenarien bestanden\n")
    return EXIT_VIOLATION if failed else EXIT_OK


# ==============================================================================
# 3. PARSER & EINSTIEG
# ==============================================================================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="DEBUG-Logging")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--grid", type=int, default=None, help="Gitterpunkte für Synchronie-Urteile")
    common.add_argument("--interval", type=float, nargs=2, metavar=("GAMMA", "GAMMA_MAX"), default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="pompeiu-check", description="Operator-Ungleichungen vom Pompeiu-Čebyšev-Typ prüfen")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="ein Szenario-Dokument rechnen")
    p.add_argument("scenario")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("suite", parents=[common], help="Eigenschafts-Suite")
    p.add_argument("config", nargs="?", default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--dim-min", type=int, default=None)
    p.add_argument("--dim-max", type=int, default=None)
    p.add_argument("--theorems", default=None, help="theorem_ids, kommagetrennt")
    p.add_argument("--out", default="results")
    p.set_defaults(handler=cmd_suite)

    p = sub.add_parser("classify", parents=[common], help="Synchronie-/Monotonie-Tabelle")
    p.add_argument("functions")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("falsify", parents=[common], help="Gegenbeispiel-Suche")
    p.add_argument("theorem", help="theorem_id")
    p.add_argument("--drop", choices=harness.DROPPABLE, default=None)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--triple", default=None, help="JSON-Dokument mit f, g, h")
    p.set_defaults(handler=cmd_falsify)

    p = sub.add_parser("paper-examples", parents=[common], help="gesamte Szenario-Bibliothek")
    p.set_defaults(handler=cmd_pinned_library)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format="%(levelname)s: %(message)s")
    try:
        return args.handler(args)
    except VerificationError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_INPUT
    except OSError as exc:
        logger.error("Datei: %s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
