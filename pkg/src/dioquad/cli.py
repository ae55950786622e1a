"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 verification failure,
2 usage or parse error, 3 degenerate input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .curve import Curve, format_point, j_invariant, point_order
from .diophantine import (
    LABELS,
    extension_search,
    induced_curve,
    is_diophantine_tuple,
    parse_tuple,
    read_tuple_file,
    read_tuple_lines,
)
from .errors import DegenerateError, NotDiophantineError, ParseError
from .families import FAMILIES, C_MODES, evaluate_family, z2z8_T
from .fixtures import fixture_text
from .numeric import format_rat, parse_rat
from .rank import integer_model
from .sweep import SweepConfig, parse_params, parse_point_params, rows_to_csv, run_sweep
from .torsion import good_odd_primes, torsion_group, torsion_order_bound

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


class Failure(Exception):
    """Report produced, but a verification failed (exit code 1)."""

    def __init__(self, report):
        self.report = report


def _fmt_pair_roots(roots: dict) -> dict:
    return {LABELS[i] + LABELS[j]: format_rat(r) for (i, j), r in roots.items()}


# -- subcommands -----------------------------------------------------------


def cmd_verify(args) -> dict:
    if args.tuple is not None:
        entries = [(1, parse_tuple(args.tuple, 1))]
    elif args.file is not None:
        entries = read_tuple_file(args.file)
    else:
        entries = read_tuple_lines(fixture_text().splitlines())
    results = []
    for lineno, tup in entries:
        check = is_diophantine_tuple(tup)
        row = {"line": lineno, "tuple": [format_rat(e) for e in tup], "ok": check.ok}
        if check.ok:
            row["roots"] = _fmt_pair_roots(check.roots)
        else:
            row["reason"] = check.reason
            if check.failing_pairs:
                row["failing_pairs"] = [[format_rat(tup[i]), format_rat(tup[j])] for i, j in check.failing_pairs]
        results.append(row)
    report = {"command": "verify", "all_pass": all(r["ok"] for r in results), "results": results}
    if not report["all_pass"]:
        raise Failure(report)
    return report


def _quadruple_arg(text: str):
    tup = parse_tuple(text)
    if len(tup) != 4:
        raise ParseError(f"expected 4 elements, got {len(tup)}")
    return tup


def cmd_induce(args) -> dict:
    b = induced_curve(_quadruple_arg(args.tuple))
    c = b.curve
    m = integer_model(c)
    return {
        "command": "induce",
        "quadruple": [format_rat(e) for e in b.quadruple],
        "p1": format_rat(c.p1),
        "p2": format_rat(c.p2),
        "A": format_rat(c.A),
        "B": format_rat(c.B),
        "integer_model": {"A": str(m.A), "B": str(m.B), "scale": str(m.scale)},
        "j": format_rat(j_invariant(c)),
        "P": format_point(b.P),
        "Q": format_point(b.Q),
        "square_roots": {k: format_rat(v) for k, v in b.square_roots.items()},
        "d_is_minus_inverse_a": b.d_is_minus_inverse_a,
    }


def _torsion_report(c: Curve, primes: int) -> dict:
    tc = torsion_group(c)
    bound = torsion_order_bound(c, primes)
    return {
        "p1": format_rat(c.p1),
        "p2": format_rat(c.p2),
        "torsion": tc.name,
        "k": tc.k,
        "order": tc.order,
        "witness": None if tc.witness is None else format_point(tc.witness),
        "witness_order": None if tc.witness is None else point_order(c, tc.witness),
        "mod_p_gcd": bound,
        "mod_p_primes": list(good_odd_primes(c, primes)),
        "consistent": bound % tc.order == 0,
    }


def cmd_torsion(args) -> dict:
    if args.tuple is not None:
        if args.p1 is not None or args.p2 is not None:
            raise ParseError("give either --tuple or --p1/--p2, not both")
        b = induced_curve(_quadruple_arg(args.tuple))
        report = {"command": "torsion", "quadruple": [format_rat(e) for e in b.quadruple]}
        report.update(_torsion_report(b.curve, args.primes))
    else:
        if args.p1 is None or args.p2 is None:
            raise ParseError("need --tuple or both --p1 and --p2")
        c = Curve(parse_rat(args.p1), parse_rat(args.p2))
        report = {"command": "torsion"}
        report.update(_torsion_report(c, args.primes))
    if not report["consistent"]:
        raise Failure(report)
    return report


def cmd_family(args) -> dict:
    params = parse_point_params(args.params)
    out = evaluate_family(args.name, params, args.c_mode)
    q = out.quadruple
    report = {
        "command": "family",
        "family": args.name,
        "params": {k: format_rat(v) for k, v in out.params.values},
        "c_mode": out.params.c_mode,
        "quadruple": [format_rat(e) for e in q],
        "diophantine": bool(is_diophantine_tuple(q)),
        "ad_plus_1": format_rat(q[0] * q[3] + 1),
        "advertised_torsion": out.advertised_torsion,
    }
    if args.name == "z2z8":
        report["T"] = format_rat(z2z8_T(params["u"], params["v"]))
    ok = report["diophantine"]
    if args.check_torsion:
        tor = _torsion_report(induced_curve(q).curve, args.primes)
        report["torsion"] = tor
        report["torsion_contains_advertised"] = tor["k"] % out.advertised_k == 0
        ok = ok and report["torsion_contains_advertised"] and tor["consistent"]
    if not ok:
        raise Failure(report)
    return report


def cmd_sweep(args) -> dict:
    if args.name not in FAMILIES:
        raise ParseError(f"unknown family {args.name!r}")
    if args.sieve_N < 2:
        raise ParseError("--sieve-N must be at least 2")
    grid = parse_params(args.params)
    cfg = SweepConfig(args.name, args.sieve_N, args.c_mode, args.search_bound)
    return run_sweep(cfg, grid, args.top, args.jobs)


def cmd_extend(args) -> dict:
    q = _quadruple_arg(args.tuple)
    if args.depth < 0:
        raise ParseError("--depth must be nonnegative")
    cands = extension_search(q, args.depth, args.torsion_translates)
    rows = []
    for label, cand in cands:
        rows.append({
            "source": label,
            "X": format_rat(cand.X),
            "is_extension": cand.is_extension,
            "point": format_point(cand.source),
            "squares": [None if r is None else format_rat(r) for r in cand.squares],
        })
    found = sorted({r["X"] for r in rows if r["is_extension"]}, key=parse_rat)
    return {
        "command": "extend",
        "quadruple": [format_rat(e) for e in q],
        "depth": args.depth,
        "torsion_translates": args.torsion_translates,
        "candidates": rows,
        "extensions": found,
    }


# -- output ----------------------------------------------------------------


def _human(report: dict) -> str:
    cmd = report.get("command")
    lines = []
    if cmd == "verify":
        for r in report["results"]:
            status = "PASS" if r["ok"] else "FAIL"
            detail = "" if r["ok"] else "  " + r["reason"]
            lines.append(f"{status}  line {r['line']:>3}  {{{', '.join(r['tuple'])}}}{detail}")
        lines.append("all pass" if report["all_pass"] else "some tuples failed")
    elif cmd == "sweep":
        lines.append(
            f"family {report['family']}  N={report['N']}  grid={report['grid_size']}  "
            f"evaluated={report['evaluated']}  skipped={report['skipped_degenerate']}"
        )
        header = f"{'#':>3}  {'params':<28} {'S(N)':>20} {'bound':>6} {'wit':>4}"
        lines.append(header)
        for i, r in enumerate(report["rows"], start=1):
            ps = ",".join(f"{k}={v}" for k, v in r["params"].items())
            flag = "+" if r["bound_is_lower"] else ""
            lines.append(f"{i:>3}  {ps:<28} {r['S']:>20} {str(r['trivial_bound']) + flag:>6} {r['non_torsion_witnesses']:>4}")
    elif cmd == "extend":
        lines.append(f"quadruple {{{', '.join(report['quadruple'])}}}  depth {report['depth']}")
        for r in report["candidates"]:
            mark = "EXT" if r["is_extension"] else "   "
            sq = " ".join("-" if s is None else "sq" for s in r["squares"])
            lines.append(f"{mark}  {r['source']:<14} X = {r['X']}  [{sq}]")
        lines.append("extensions: " + (", ".join(report["extensions"]) or "none"))
    else:
        width = max(len(k) for k in report)
        for k, v in report.items():
            if k == "command":
                continue
            if isinstance(v, dict):
                v = ", ".join(f"{kk}={vv}" for kk, vv in v.items())
            elif isinstance(v, list):
                v = ", ".join(str(x) for x in v)
            lines.append(f"{k:<{width}}  {v}")
    return "\n".join(lines)


def emit(report: dict, mode: str, stream=None):
    stream = stream or sys.stdout
    if mode == "json":
        stream.write(json.dumps(report, indent=2) + "\n")
    elif mode == "csv":
        stream.write(rows_to_csv(report))
    else:
        stream.write(_human(report) + "\n")


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dioquad", description="Diophantine quadruples and their induced elliptic curves")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check the Diophantine property")
    g = v.add_mutually_exclusive_group()
    g.add_argument("--tuple", help="comma-separated fractions, e.g. 1,3,8,120")
    g.add_argument("--file", help="tuple file, one tuple per line")
    g.add_argument("--fixtures", action="store_true", help="the bundled fixture tuples (default)")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("induce", help="induced curve, P, Q and square roots")
    i.add_argument("--tuple", required=True)
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_induce)

    t = sub.add_parser("torsion", help="torsion subgroup with mod-p cross-check")
    t.add_argument("--tuple")
    t.add_argument("--p1")
    t.add_argument("--p2")
    t.add_argument("--primes", type=int, default=10, help="good odd primes for the gcd check")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_torsion)

    f = sub.add_parser("family", help="evaluate a parametric family")
    f.add_argument("--name", required=True, choices=sorted(FAMILIES))
    f.add_argument("--params", required=True, help="e.g. 't=142/53,v=142/23'")
    f.add_argument("--c-mode", choices=C_MODES)
    f.add_argument("--check-torsion", action="store_true")
    f.add_argument("--primes", type=int, default=10)
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_family)

    s = sub.add_parser("sweep", help="rank sieve over a parameter grid")
    s.add_argument("--name", required=True, choices=sorted(FAMILIES))
    s.add_argument("--params", required=True, help="e.g. 't=1..4 step 1/2,v=2|3'")
    s.add_argument("--sieve-N", type=int, required=True)
    s.add_argument("--top", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--c-mode", choices=C_MODES)
    s.add_argument("--search-bound", type=int, default=4, help="naive point search height (0 disables)")
    out = s.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_sweep)

    e = sub.add_parser("extend", help="search quintuple extensions among mP+nQ")
    e.add_argument("--tuple", required=True)
    e.add_argument("--depth", type=int, required=True)
    e.add_argument("--torsion-translates", action="store_true", help="also shift each mP+nQ by the 2-torsion points")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_extend)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    mode = "json" if getattr(args, "json", False) else "csv" if getattr(args, "csv", False) else "text"
    try:
        report = args.func(args)
    except Failure as fail:
        emit(fail.report, mode)
        return EXIT_FAIL
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateError as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except NotDiophantineError as exc:
        print(f"not a Diophantine tuple: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(report, mode)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
