"""
Command-line front end.

Exit codes: 0 success, 1 invalid input (parse error, link instead of
knot, formula hypothesis not met), 2 when independent computations
disagree.  Output is assembled before anything is printed, so a failing
command writes only its error message.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional

from . import formulas
from .a2_engine import MethodMismatch, a2 as compute_a2
from .alexander import DEFAULT_CROSSING_CAP, OracleCapError
from .crosscheck import crosscheck, default_jobs, lkcheck, reconcile_table
from .delta import (DeltaCertificate, build_certificate_oddone, u_delta,
                    verify_certificate)
from .diagram import build_diagram, component_count
from .pretzel import classify, format_vector, parse_vector
from .table import TableError, load_table

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2

# lets argparse take "-1,3,3" as a positional rather than an unknown option
_VECTOR_LIKE = re.compile(r"^-\d[\d,;\s+-]*$")


class _Out:
    def __init__(self, args):
        self.json = args.json
        self.lines: List[str] = []

    def text(self, line: str = ""):
        self.lines.append(line)

    def payload(self, data):
        self.lines = [json.dumps(data, indent=2, sort_keys=True)]

    def flush(self):
        if self.lines:
            print("\n".join(self.lines))


class _Parser(argparse.ArgumentParser):
    """Usage errors are invalid input: exit 1, not argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def cmd_classify(args, out: _Out) -> int:
    v = parse_vector(args.vector)
    info = classify(v)
    traced = component_count(build_diagram(v))
    data = dict(info.as_dict(), vector=list(v), tracedComponents=traced)
    if out.json:
        out.payload(data)
    else:
        out.text(f"{format_vector(v)}: {info.kind.value}")
        if info.is_knot:
            out.text(f"  type: {info.knot_type.value}")
            out.text(f"  positive: {'yes' if info.positive else 'no'}")
            if info.even_index is not None:
                out.text(f"  even entry at band {info.even_index + 1}")
        else:
            out.text(f"  components: {traced}")
    if traced != info.component_count:
        out.text(f"component tracing ({traced}) disagrees with parity rule "
                 f"({info.component_count})")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_a2(args, out: _Out) -> int:
    v = parse_vector(args.vector)
    result = compute_a2(v, args.method, cap=args.oracle_cap)
    data = {"vector": list(v), "a2": result.value, "method": result.method}
    if result.by_method:
        data["byMethod"] = dict(sorted(result.by_method.items()))
    if args.trace and result.trace is not None:
        data["trace"] = result.trace_json()
        data["base"] = result.base
    if out.json:
        out.payload(data)
        return EXIT_OK
    out.text(f"a2{format_vector(v)} = {result.value}")
    if result.by_method:
        detail = ", ".join(f"{k}={val}" for k, val in sorted(result.by_method.items()))
        out.text(f"  {detail}: all methods agree")
    if args.trace and result.trace is not None:
        for step in result.trace:
            out.text(f"  {format_vector(step.vector)} band {step.band}: "
                     f"sign {step.crossing_sign:+d} * lk {step.lk} -> {step.contribution:+d}")
        out.text(f"  base {format_vector(result.base['vector'])}: "
                 f"{result.base['value']} ({result.base['rule']})")
    return EXIT_OK


def cmd_delta(args, out: _Out) -> int:
    v = parse_vector(args.vector)
    table = load_table(args.table)
    result = u_delta(v, table)
    if out.json:
        out.payload(result.as_dict())
        return EXIT_OK
    if result.is_exact:
        out.text(f"u_delta{format_vector(v)} = {result.exact}  (exact: {result.tag}, "
                 f"applied to {format_vector(result.via)})")
    else:
        lb = result.lower
        out.text(f"u_delta{format_vector(v)} >= {lb.value}, u_delta - {lb.value} even")
        if result.table_values is not None:
            vals = " or ".join(str(u) for u in sorted(result.table_values))
            out.text(f"  table {result.table_name}: u_delta = {vals}")
    out.text(f"  a2 = {result.a2}")
    return EXIT_OK


def cmd_certify(args, out: _Out) -> int:
    v = parse_vector(args.vector)
    cert = build_certificate_oddone(v)
    report = verify_certificate(cert)
    if out.json:
        out.payload({"certificate": cert.as_dict(), "verification": report.as_dict()})
    else:
        out.text(cert.to_json())
        out.text(f"verification: {'pass' if report.ok else 'FAIL'}"
                 + (", total meets the lower bound |a2|" if report.optimal else ""))
        for failure in report.failures:
            out.text(f"  {failure}")
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_verify(args, out: _Out) -> int:
    with open(args.file) as fh:
        data = json.load(fh)
    cert = DeltaCertificate.from_dict(data.get("certificate", data))
    report = verify_certificate(cert)
    if out.json:
        out.payload(report.as_dict())
    else:
        out.text("pass" if report.ok else f"FAIL: {report.first_failure}")
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_torus(args, out: _Out) -> int:
    value = formulas.u_delta_torus(args.p, args.q)
    if out.json:
        out.payload({"p": args.p, "q": args.q, "a2": value, "uDelta": value})
    else:
        out.text(f"u_delta(T({args.p},{args.q})) = a2 = {value}")
    return EXIT_OK


def cmd_crosscheck(args, out: _Out) -> int:
    report = crosscheck(args.odd_n, args.even_n, args.max, args.max_even,
                        args.oracle_cap, args.jobs)
    if out.json:
        out.payload(report.as_dict(with_results=args.full))
    else:
        s = report.summary()
        out.text(f"{s['vectors']} vectors, {s['agree']} agree, {s['disagree']} disagree "
                 f"(Alexander oracle on {s['alexanderChecked']})")
        for failure in report.failures[:20]:
            out.text(f"  MISMATCH {format_vector(failure.vector)}: {failure.values}")
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_table(args, out: _Out) -> int:
    rows = reconcile_table(load_table(args.file), args.oracle_cap)
    ok = all(r.ok for r in rows)
    if out.json:
        out.payload({"rows": [r.as_dict() for r in rows], "ok": ok})
    else:
        out.text(f"{'knot':<7} {'twists':<22} {'a2 known':>8} {'computed':>9} "
                 f"{'u known':>8}  status")
        for r in rows:
            computed = sorted(set(r.values.values()))
            comp = str(computed[0]) if len(computed) == 1 else "/".join(map(str, computed))
            status = "ok" if r.ok else ("a2 MISMATCH" if not r.a2_ok else "u NOT ADMISSIBLE")
            out.text(f"{r.name:<7} {format_vector(r.twists):<22} {r.a2_known:>8} {comp:>9} "
                     f"{'|'.join(map(str, r.u_known)):>8}  {status}")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_lkcheck(args, out: _Out) -> int:
    report = lkcheck(args.n, args.max, args.max_even)
    if out.json:
        out.payload(report.as_dict())
    else:
        out.text(f"{report.vectors} vectors, {report.steps} steps, "
                 f"{report.compared} compared with closed forms, "
                 f"{len(report.failures)} mismatches")
        for failure in report.failures[:20]:
            out.text(f"  {failure}")
    return EXIT_OK if report.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    def add_globals(p, suppress):
        p._negative_number_matcher = _VECTOR_LIKE
        default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p.add_argument("--json", action="store_true", default=default(False),
                       help="machine-readable output")
        p.add_argument("--jobs", type=int, default=default(default_jobs()),
                       help="worker processes for grid sweeps")
        p.add_argument("--oracle-cap", type=int, default=default(DEFAULT_CROSSING_CAP),
                       help="largest crossing count sent to the Alexander oracle")

    parser = _Parser(
        prog="pretzel-delta",
        description="a2 and Delta-unknotting numbers of pretzel knots")
    add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, fn, help):
        p = sub.add_parser(name, help=help)
        add_globals(p, suppress=True)
        p.set_defaults(fn=fn)
        return p

    p = command("classify", cmd_classify, "knot or link, type, positivity")
    p.add_argument("vector")
    p = command("a2", cmd_a2, "second Conway coefficient")
    p.add_argument("vector")
    p.add_argument("--method", choices=["skein", "alexander", "formula", "all"],
                   default="all")
    p.add_argument("--trace", action="store_true", help="show the crossing-change steps")
    p = command("delta", cmd_delta, "Delta-unknotting number or bounds")
    p.add_argument("vector")
    p.add_argument("--table", default=None, help="knot table CSV (default: shipped)")
    p = command("certify", cmd_certify, "move-count certificate for P(-1, odd positives)")
    p.add_argument("vector")
    p = command("verify", cmd_verify, "check a certificate JSON file")
    p.add_argument("file")
    p = command("torus", cmd_torus, "u_delta of the torus knot T(p,q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p = command("crosscheck", cmd_crosscheck, "compare a2 routes over a grid")
    p.add_argument("--odd-n", type=_int_list, default=[])
    p.add_argument("--even-n", type=_int_list, default=[])
    p.add_argument("--max", type=int, default=5, help="largest |entry| for odd entries")
    p.add_argument("--max-even", type=int, default=None,
                   help="largest |entry| for the even entry (default: --max)")
    p.add_argument("--full", action="store_true", help="include per-vector results in JSON")
    p = command("table", cmd_table, "reconcile a knot table")
    p.add_argument("--file", default=None, help="knot table CSV (default: shipped)")
    p = command("lkcheck", cmd_lkcheck, "diagram linking numbers vs closed forms")
    p.add_argument("--n", type=_int_list, default=[3])
    p.add_argument("--max", type=int, default=5)
    p.add_argument("--max-even", type=int, default=None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage error or --help
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    out = _Out(args)
    try:
        code = args.fn(args, out)
    except MethodMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, OracleCapError, TableError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
