"""Command-line interface.

``lpstrip [--format json|text] [--quiet] <command> ...``.  JSON output is
wrapped in a stable envelope; text output is meant for people and may change.
Exit codes: 0 success, 1 domain error (or a failed ``tables --check``),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .admissibility import classify, good_roots
from .errors import DomainError
from .realforms import DB_ENV_VAR, default_database, load_database, parse_group, render, restricted_root_datum
from .rootsys import build_root_system, highest_root, length_classes, parse_type
from .strip import (
    duality_image,
    hyperbolic_status,
    rational_to_json,
    status_from_report,
    strip_report,
    to_rational,
)
from .tables import check_tables, compute_rows, render_tables

SCHEMA_VERSION = 1

PROPORTION_NOTE = (
    "proportion column: families show the l -> infinity limit of (d-2)/D; "
    "exceptional and other fixed groups show the exact value (d-2)/D"
)


class Result:
    """What a command hands back: a JSON payload, its text rendering, warnings."""

    def __init__(self, payload, text: str, warnings: Sequence[str] = (), exit_code: int = 0):
        self.payload = payload
        self.text = text
        self.warnings = list(warnings)
        self.exit_code = exit_code


def _group_warnings(g) -> list[str]:
    datum = restricted_root_datum(g)
    out = []
    if datum.note:
        out.append(datum.note)
    if not datum.verified:
        out.append(f"multiplicities for {render(g)} are not independently verified")
    return out


def _frac(x: Fraction) -> str:
    return str(x)


# --------------------------------------------------------------------------
# commands


def cmd_roots(args) -> Result:
    t = parse_type(args.type)
    rs = build_root_system(t)
    classes = length_classes(rs)
    payload = {
        "type": str(t),
        "rank": rs.rank,
        "count": len(rs.positive),
        "length_classes": {str(sq): len(roots) for sq, roots in classes.items()},
    }
    if t.reduced():
        payload["highest_root"] = list(highest_root(rs).simple_coeffs)
    if args.full:
        payload["root_system"] = rs.to_dict()
    lines = [f"{t}: {len(rs.positive)} positive roots"]
    lines += [f"  squared length {sq}: {len(r)}" for sq, r in classes.items()]
    if "highest_root" in payload:
        lines.append(f"  highest root: {tuple(payload['highest_root'])}")
    if args.full:
        lines += [f"  {r.simple_coeffs}  |a|^2={r.sq_length}" for r in rs.positive]
    return Result(payload, "\n".join(lines))


def cmd_good_roots(args) -> Result:
    report = good_roots(build_root_system(parse_type(args.type)))
    labels = ", ".join(f"alpha_{i}" for i in report.good_roots) or "none"
    return Result(report.to_dict(), f"{report.rs_type}: good roots {labels}")


def cmd_classify(args) -> Result:
    if args.max_rank < 1:
        raise DomainError("--max-rank must be at least 1")
    rows = classify(args.max_rank, args.max_q)
    adm = [r for r in rows if r.admissible]
    non = [r for r in rows if not r.admissible]
    payload = {
        "max_rank": args.max_rank,
        "admissible": [r.to_dict() for r in adm],
        "non_admissible": [r.to_dict() for r in non],
    }
    lines = [f"admissible ({len(adm)}):"]
    lines += [f"  {r.group:<16} {r.cartan_label:<6} {r.rs_type:<6} good {list(r.good_roots)}" for r in adm]
    lines.append(f"not admissible ({len(non)}):")
    lines += [f"  {r.group:<16} {r.cartan_label:<6} {r.rs_type}" for r in non]
    return Result(payload, "\n".join(lines))


def _strip_text(rep) -> str:
    lines = [
        f"{render(rep.group)}: relative root system {rep.rs_type}, good root alpha_{rep.chosen_gamma}",
        f"  |Psi| = {rep.psi_size}, d-1 = {rep.d_minus_1}, D = {rep.D}",
        f"  width = {rep.width}, (d-2)/D = {_frac(rep.proportion)}",
    ]
    for i, dm1 in rep.alternatives:
        lines.append(f"  alternative alpha_{i}: d-1 = {dm1}")
    return "\n".join(lines)


def cmd_strip(args) -> Result:
    g = parse_group(args.group)
    rep = strip_report(g, args.gamma)
    return Result(rep.to_dict(), _strip_text(rep), _group_warnings(g))


def cmd_query(args) -> Result:
    g = parse_group(args.group)
    p = to_rational(args.p)
    rep = strip_report(g)
    st = status_from_report(rep, p, args.k)
    payload = {
        "group": render(g),
        "p": rational_to_json(p),
        "k": args.k,
        "status": st.to_dict(),
        "strip": rep.to_dict(),
    }
    text = f"{render(g)}, p = {p}, k = {args.k}: {st.verdict.value} ({st.reason.value})"
    if st.ell is not None:
        text += f", ell = {st.ell}"
    return Result(payload, text, _group_warnings(g))


def cmd_hyp(args) -> Result:
    p = to_rational(args.p)
    st = hyperbolic_status(args.d, p, args.k)
    payload = {"d": args.d, "p": rational_to_json(p), "k": args.k, "status": st.to_dict()}
    if args.k <= args.d:
        dual = duality_image(args.d, p, args.k)
        payload["duality"] = {
            "hausdorff_dual": {"p": rational_to_json(dual.hausdorff_dual[0]), "k": dual.hausdorff_dual[1]},
            "reduced_dual": {"p": rational_to_json(dual.reduced_dual[0]), "k": dual.reduced_dual[1]},
        }
    text = (
        f"H^{args.k} of real hyperbolic {args.d}-space, p = {p}: "
        f"zero={st.zero} hausdorff={st.hausdorff} reduced_zero={st.reduced_zero}"
    )
    return Result(payload, text)


def cmd_scan(args) -> Result:
    g = parse_group(args.group)
    p = to_rational(args.p)
    rep = strip_report(g)
    statuses = [status_from_report(rep, p, k) for k in range(rep.D + 1)]
    payload = {
        "group": render(g),
        "p": rational_to_json(p),
        "D": rep.D,
        "statuses": [dict(k=k, **s.to_dict()) for k, s in enumerate(statuses)],
    }
    lines = [f"{render(g)}, p = {p}, D = {rep.D}"]
    for k, s in enumerate(statuses):
        extra = f", ell = {s.ell}" if s.ell is not None else ""
        lines.append(f"  k={k:<3} {s.verdict.value:<20} {s.reason.value}{extra}")
    return Result(payload, "\n".join(lines), _group_warnings(g))


def cmd_tables(args) -> Result:
    warnings = [PROPORTION_NOTE]
    if args.check:
        problems = check_tables()
        payload = {"check": not problems, "mismatches": problems}
        text = "tables match the fixture" if not problems else "\n".join(["mismatches:"] + problems)
        return Result(payload, text, warnings, exit_code=1 if problems else 0)
    text = render_tables(args.table_format)
    if args.table_format == "json":
        payload = {"format": "json", "rows": [r.to_dict() for r in compute_rows()]}
    else:
        payload = {"format": args.table_format, "content": text}
    return Result(payload, text.rstrip("\n"), warnings)


def cmd_db(args) -> Result:
    if args.load:
        db = load_database(args.load)
        payload = {"source": db.source, "entries": len(db.entries), "valid": True}
        return Result(payload, f"{db.source}: {len(db.entries)} entries, valid")
    db = default_database()
    return Result({"source": db.source, "entries": list(db.entries)}, db.dump())


# --------------------------------------------------------------------------
# parser and dispatch


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lpstrip",
        description="Root-system data and L^p-cohomology vanishing strips for real simple Lie groups.",
        epilog=f"The multiplicity database can be replaced by pointing {DB_ENV_VAR} at a JSON file.",
    )
    ap.add_argument("--format", choices=("json", "text"), default="text", dest="output")
    ap.add_argument("--quiet", action="store_true", help="suppress warnings on stderr")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=fn)
        return p

    p = add("roots", cmd_roots, "positive roots of a root system type, e.g. E7 or BC3")
    p.add_argument("type")
    p.add_argument("--full", action="store_true", help="list every positive root")

    p = add("good-roots", cmd_good_roots, "good simple roots of a root system type")
    p.add_argument("type")

    p = add("classify", cmd_classify, "admissible / non-admissible groups up to a real rank")
    p.add_argument("--max-rank", type=int, required=True)
    p.add_argument("--max-q", type=int, default=None, help="cutoff for the p,q families")

    p = add("strip", cmd_strip, "dimensions and strip width for a group")
    p.add_argument("group")
    p.add_argument("--gamma", type=int, default=None, help="index of the good root to use")

    p = add("query", cmd_query, "vanishing verdict in one degree")
    p.add_argument("group")
    p.add_argument("--p", required=True, help="exponent, e.g. 2 or 3/2")
    p.add_argument("--k", type=int, required=True)

    p = add("hyp", cmd_hyp, "L^p-cohomology of real hyperbolic space")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("scan", cmd_scan, "verdicts in every degree 0..D")
    p.add_argument("group")
    p.add_argument("--p", required=True)

    p = add("tables", cmd_tables, "reproduce the tables of admissible groups")
    p.add_argument("--format", choices=("markdown", "csv", "json"), default="markdown", dest="table_format")
    p.add_argument("--check", action="store_true", help="compare against the stored fixture")

    p = add("db", cmd_db, "dump or validate a multiplicity database")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--dump", action="store_true")
    g.add_argument("--load", metavar="FILE")
    return ap


def _envelope(command: str, result=None, warnings=(), error=None) -> dict:
    env = {
        "command": command,
        "schema_version": SCHEMA_VERSION,
        "result": result,
        "warnings": list(warnings),
    }
    if error is not None:
        env["error"] = error
    return env


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    as_json = args.output == "json"
    try:
        res = args.func(args)
    except DomainError as exc:
        name = type(exc).__name__
        print(f"{name}: {exc}", file=sys.stderr)
        if as_json:
            print(json.dumps(_envelope(args.command, error={"name": name, "message": str(exc)})))
        return 1
    if as_json:
        print(json.dumps(_envelope(args.command, res.payload, res.warnings), indent=2, ensure_ascii=False))
    else:
        print(res.text)
        if not args.quiet:
            for w in res.warnings:
                print(f"warning: {w}", file=sys.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
