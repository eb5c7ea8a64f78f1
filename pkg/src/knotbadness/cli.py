"""Command-line front end.

Exit codes: 0 all checks passed, 1 an internal check failed, 2 bad input,
3 the input describes a link rather than a knot.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .diagram import coerce_pd_text, mark, parse_pd
from .errors import KnotError, NotAKnot
from .kauffman import default_budget
from .pipeline import CSV_COLUMNS, AnalysisRecord, analyze
from .surgery import SumPlan, matching_bad_edges, splice
from .tangles import MontesinosSpec, build_montesinos, normalize_montesinos, reorder_tangles

log = logging.getLogger("knotbadness")

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_LINK = 0, 1, 2, 3


def _exit_code_for(exc: KnotError) -> int:
    return EXIT_LINK if isinstance(exc, NotAKnot) else EXIT_INPUT


def _emit(obj, fmt="json", out=None):
    out = out or sys.stdout
    if fmt == "json":
        json.dump(obj, out, indent=2, sort_keys=False)
        out.write("\n")
    else:
        out.write(obj)


def _records_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        if isinstance(r, AnalysisRecord):
            w.writerow(r.csv_row())
        else:
            w.writerow([r.get("name", "") if c == "name" else (r["error"] if c == "error" else "") for c in CSV_COLUMNS])
    return buf.getvalue()


def _error_json(exc: Exception, name=None) -> dict:
    out = exc.to_json() if isinstance(exc, KnotError) else {"error": type(exc).__name__, "message": str(exc)}
    if name is not None:
        out = {"name": name, **out}
    return out


def _read_pd_arg(args) -> str:
    if args.pd is not None:
        return args.pd
    return Path(args.file).read_text()


# --------------------------------------------------------------------------
# analyze


def cmd_analyze(args) -> int:
    try:
        d = parse_pd(coerce_pd_text(_read_pd_arg(args)))
        rec = analyze(d, name=args.name or "", budget=args.budget, marking=args.marking, method=args.method)
    except KnotError as exc:
        _emit(_error_json(exc))
        return _exit_code_for(exc)
    except OSError as exc:
        _emit(_error_json(exc))
        return EXIT_INPUT
    _emit(rec.to_json() if args.format == "json" else _records_csv([rec]), args.format)
    return EXIT_OK if rec.checksPassed else EXIT_CHECK


# --------------------------------------------------------------------------
# batch


def read_batch_rows(path: str) -> list[dict]:
    """Rows of ``{"name", "pd"}`` from a CSV (``name,pd`` header) or JSON list."""
    text = Path(path).read_text()
    if not text.strip():
        return []
    if path.endswith(".json") or text.lstrip().startswith("["):
        data = json.loads(text)
        return [{"name": str(r.get("name", i)), "pd": r.get("pd")} for i, r in enumerate(data)]
    reader = csv.DictReader(io.StringIO(text))
    return [{"name": r.get("name") or str(i), "pd": r.get("pd")} for i, r in enumerate(reader)]


def _analyze_row(job):
    row, budget, method = job
    try:
        if not row.get("pd"):
            raise ValueError("row has no pd column")
        d = parse_pd(coerce_pd_text(row["pd"]))
        return analyze(d, name=row["name"], budget=budget, method=method)
    except (KnotError, ValueError) as exc:
        return _error_json(exc, row["name"])


def run_batch(rows, budget=None, method="enumerate", parallel=1) -> list:
    budget = default_budget() if budget is None else budget
    jobs = [(r, budget, method) for r in rows]
    if parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            return list(pool.map(_analyze_row, jobs))
    return [_analyze_row(j) for j in jobs]


def batch_summary(results) -> dict:
    records = [r for r in results if isinstance(r, AnalysisRecord)]
    return {
        "rows": len(results),
        "certified": sum(1 for r in records if r.certified is True),
        "violated": sum(1 for r in records if r.certified is False),
        "budgetExceeded": sum(1 for r in records if r.budgetExceeded),
        "checksFailed": sum(1 for r in records if not r.checksPassed),
        "errors": len(results) - len(records),
    }


def cmd_batch(args) -> int:
    try:
        rows = read_batch_rows(args.input)
    except (OSError, ValueError) as exc:
        _emit(_error_json(exc))
        return EXIT_INPUT
    results = run_batch(rows, args.budget, args.method, args.parallel)
    summary = batch_summary(results)
    fmt = args.format or ("csv" if args.out and args.out.endswith(".csv") else "json")
    if fmt == "json":
        payload = json.dumps(
            {"records": [r.to_json() if isinstance(r, AnalysisRecord) else r for r in results], "summary": summary},
            indent=2,
        ) + "\n"
    else:
        payload = _records_csv(results)
    if args.out:
        Path(args.out).write_text(payload)
    else:
        sys.stdout.write(payload)
    print(
        "rows={rows} certified={certified} violated={violated} budget-exceeded={budgetExceeded} "
        "checks-failed={checksFailed} errors={errors}".format(**summary),
        file=sys.stderr,
    )
    return EXIT_OK if summary["violated"] == 0 and summary["checksFailed"] == 0 else EXIT_CHECK


# --------------------------------------------------------------------------
# montesinos


def cmd_montesinos(args) -> int:
    try:
        spec = MontesinosSpec.parse(args.rational)
    except ValueError as exc:
        _emit(_error_json(exc))
        return EXIT_INPUT
    try:
        spec.check_knot_condition()
        if args.reorder:
            spec = reorder_tangles(spec)
        d = normalize_montesinos(spec) if args.normalize else build_montesinos(spec)
        rec = analyze(d, name=str(spec), budget=args.budget, method=args.method)
    except KnotError as exc:
        _emit(_error_json(exc))
        return _exit_code_for(exc)
    out = {"spec": spec.to_json(), "normalized": args.normalize, "reordered": args.reorder, **rec.to_json()}
    ok = rec.checksPassed
    if args.normalize:
        normal_ok = rec.B <= 4 and rec.certified is not False and _bound_at_most_one(rec)
        out["normalFormChecks"] = normal_ok
        ok = ok and normal_ok
    _emit(out)
    return EXIT_OK if ok else EXIT_CHECK


def _bound_at_most_one(rec) -> bool:
    from fractions import Fraction

    return Fraction(rec.bound) <= 1


# --------------------------------------------------------------------------
# connect-sum


def cmd_connect_sum(args) -> int:
    try:
        d1 = parse_pd(coerce_pd_text(args.left))
        d2 = parse_pd(coerce_pd_text(args.right))
        if args.auto_bad:
            e1, e2 = matching_bad_edges(d1, d2)
        else:
            if args.left_edge is None or args.right_edge is None:
                raise ValueError("give --left-edge and --right-edge, or --auto-bad")
            e1, e2 = args.left_edge, args.right_edge
        result = splice(SumPlan(mark(d1, e1), mark(d2, e2)))
        marking = result.splice_edges[0] if args.auto_bad else None
        rec = analyze(result.diagram, name="sum", budget=args.budget, marking=marking, method=args.method)
    except KnotError as exc:
        _emit(_error_json(exc))
        return _exit_code_for(exc)
    except ValueError as exc:
        _emit(_error_json(exc))
        return EXIT_INPUT
    _emit({"leftEdge": e1, "rightEdge": e2, "spliceEdges": list(result.splice_edges), **rec.to_json()})
    return EXIT_OK if rec.checksPassed else EXIT_CHECK


# --------------------------------------------------------------------------


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knotbadness", description="Bad domains, Kauffman states and thickness bounds of knot diagrams.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--budget", type=_positive_int, default=None, help="maximum number of Kauffman states to enumerate")
        sp.add_argument("--method", choices=("enumerate", "dp"), default="enumerate")

    a = sub.add_parser("analyze", help="analyze one PD code")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--pd")
    src.add_argument("--file")
    a.add_argument("--name")
    a.add_argument("--marking", type=int)
    a.add_argument("--format", choices=("json", "csv"), default="json")
    common(a)
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("batch", help="analyze every row of a CSV/JSON table")
    b.add_argument("--input", required=True)
    b.add_argument("--out")
    b.add_argument("--format", choices=("json", "csv"))
    b.add_argument("--parallel", type=_positive_int, default=1)
    common(b)
    b.set_defaults(func=cmd_batch)

    m = sub.add_parser("montesinos", help="build and analyze a Montesinos diagram")
    m.add_argument("-r", "--rational", action="append", required=True, metavar="B/A")
    m.add_argument("--normalize", action="store_true")
    m.add_argument("--reorder", action="store_true")
    common(m)
    m.set_defaults(func=cmd_montesinos)

    c = sub.add_parser("connect-sum", help="connected sum of two PD codes")
    c.add_argument("--left", required=True)
    c.add_argument("--right", required=True)
    c.add_argument("--left-edge", type=int)
    c.add_argument("--right-edge", type=int)
    c.add_argument("--auto-bad", action="store_true")
    common(c)
    c.set_defaults(func=cmd_connect_sum)
    return p


def _glue_negative_values(argv):
    """Let ``-r -1/3`` through argparse, which would read ``-1/3`` as an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("-r", "--rational"):
            val = next(it, None)
            if val is not None and re.fullmatch(r"-\d+(/\d+)?", val):
                out.append(f"--rational={val}")
                continue
            out.append(tok)
            if val is not None:
                out.append(val)
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
