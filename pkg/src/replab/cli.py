"""Command-line interface: `replab <command> ...`.

Exit codes: 0 success, 1 a computed result disagrees with its expected
value, 2 a usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import List, Optional

from . import acceptance
from . import char_ring as cr
from . import expr as ex
from . import johnson as jh
from . import mmclasses as mm
from . import symp_linalg as sl
from .rep_core import SL, Sp

SCHEMA = "replab/1"


class UsageError(Exception):
    pass


class Mismatch(Exception):
    pass


def _emit(obj: dict, as_json: bool, text: str):
    if as_json:
        print(json.dumps({"schema": SCHEMA, **obj}, sort_keys=False))
    else:
        print(text)


def _group(args):
    if args.rank is None or args.rank < 1:
        raise UsageError("--rank must be a positive integer")
    return Sp(args.rank) if args.group == "sp" else SL(args.rank)


def _parse(text: str) -> ex.Expr:
    try:
        return ex.parse(text)
    except ex.ExprSyntaxError as e:
        want = ", ".join(repr(t) for t in sorted(e.expected))
        raise UsageError(f"syntax error at byte {e.byte_offset}: expected {want}\n  {text}\n  {' ' * e.byte_offset}^")


def _decomposition(e: ex.Expr, group) -> cr.Decomposition:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        dec = cr.decompose(ex.character(e, group))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return dec


# --------------------------------------------------------------- commands


def cmd_decompose(args):
    group = _group(args)
    e = _parse(args.expr)
    dec = _decomposition(e, group)
    obj = dec.to_json_obj()
    obj["expr"] = e.text()
    lines = [dec.text(), f"dimension {dec.dimension}"]
    status = 0
    if args.check_dims:
        counted = ex.dimension(e, group)
        obj["counted_dim"] = str(counted)
        obj["dims_agree"] = counted == dec.dimension
        lines.append(f"counted dimension {counted} ({'agrees' if counted == dec.dimension else 'DISAGREES'})")
        if counted != dec.dimension:
            status = 1
    obj.pop("schema", None)
    _emit(obj, args.json, "\n".join(lines))
    return status


def cmd_dim(args):
    group = _group(args)
    e = _parse(args.expr)
    d = ex.dimension(e, group)
    _emit({"expr": e.text(), "group": args.group, "rank": args.rank, "dim": str(d)}, args.json, str(d))
    return 0


def cmd_hom(args):
    group = _group(args)
    a = _decomposition(_parse(args.expr1), group)
    b = _decomposition(_parse(args.expr2), group)
    h = cr.hom_dim(a, b)
    _emit({"group": args.group, "rank": args.rank, "hom_dim": h}, args.json, str(h))
    return 0


def cmd_branch(args):
    e = _parse(args.expr)
    if not isinstance(e, ex.Irrep):
        raise UsageError("branch takes an irreducible V[...]")
    if args.rank < 2:
        raise UsageError("branching needs --rank >= 2")
    dec = cr.branch_sp(e.partition, args.rank)
    obj = dec.to_json_obj()
    obj.pop("schema", None)
    obj["from"] = e.text()
    _emit(obj, args.json, dec.text())
    return 0


def cmd_johnson(args):
    if args.what in ("tau1-span", "tau2-span", "cup-image") and args.g is None:
        raise UsageError(f"johnson {args.what} needs --g")
    if args.what == "tau1-span":
        d = jh.tau1_image_span(args.g)
        _emit({"g": args.g, "span_dim": d}, True, "")
        return 0
    if args.what == "tau2-span":
        d = jh.tau2_image_span(args.g)
        _emit({"g": args.g, "span_dim": d}, True, "")
        return 0
    if args.what == "cup-image":
        dec = jh.cup_image_boundary(args.g) if args.case == "boundary" else jh.cup_image_closed(args.g)
        obj = dec.to_json_obj()
        obj.pop("schema", None)
        obj["case"] = args.case
        _emit(obj, args.json, dec.text())
        return 0
    vals = jh.random_johnson_values(args.seed, args.count)
    bad = [spec for spec, v in vals if not jh.check_bracket(v)]
    obj = {"seed": args.seed, "count": len(vals), "failures": len(bad), "pass": not bad}
    _emit(obj, args.json, f"{len(vals) - len(bad)}/{len(vals)} values bracket to zero")
    return 1 if bad else 0


def cmd_certify(args):
    fn = sl.certify1 if args.which == 1 else sl.certify2
    v = fn(args.g)
    obj = v.to_json_obj()
    obj.pop("schema", None)
    obj["which"] = args.which
    obj["text"] = v.text()
    _emit(obj, args.json, v.text())
    return 0


def cmd_mm_table(args):
    try:
        rows = mm.comparison_table(args.g, args.dmax)
        status = 0
    except mm.TableMismatch as e:
        print(f"mismatch: {e}", file=sys.stderr)
        rows = mm.comparison_table(args.g, args.dmax, check=False)
        status = 1
    obj = {
        "g": args.g,
        "rows": [{"d": r.d, "t_d": r.t_d, "hom": r.hom, "sum": r.total, "kawazumi": r.kawazumi} for r in rows],
        "columns_agree": status == 0,
    }
    _emit(obj, args.json, mm.table_text(rows))
    return status


def cmd_paper_suite(args):
    numbers = args.only or sorted(acceptance.CHECKS)
    if any(n not in acceptance.CHECKS for n in numbers):
        raise UsageError("criteria are numbered 1..10")
    results = acceptance.run_all(numbers)
    if args.json:
        obj = {"criteria": [r.to_json_obj() for r in results], "pass": all(r.ok for r in results)}
        print(json.dumps({"schema": SCHEMA, **obj}))
    else:
        for r in results:
            print(r.line())
        passed = sum(r.ok for r in results)
        print(f"{passed}/{len(results)} criteria passed")
    return 0 if all(r.ok for r in results) else 1


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="replab", description="Exact representation theory of Sp and SL.")
    sub = p.add_subparsers(dest="command", required=True)

    def group_opts(sp, rank_required=True):
        sp.add_argument("--group", choices=("sp", "sl"), default="sp")
        sp.add_argument("--rank", type=int, required=rank_required, help="g for Sp_2g, n for SL_n")
        sp.add_argument("--json", action="store_true")

    s = sub.add_parser("decompose", help="split an expression into irreducibles")
    group_opts(s)
    s.add_argument("--check-dims", action="store_true", help="compare with a direct dimension count")
    s.add_argument("expr")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("dim", help="dimension of an expression")
    group_opts(s)
    s.add_argument("expr")
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("hom", help="dimension of Hom between two expressions")
    group_opts(s)
    s.add_argument("expr1")
    s.add_argument("expr2")
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("branch", help="restrict V[...] from Sp_2g to Sp_2(g-1)")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.add_argument("expr")
    s.set_defaults(func=cmd_branch)

    s = sub.add_parser("johnson", help="Johnson homomorphism computations")
    s.add_argument("what", choices=("tau1-span", "tau2-span", "cup-image", "bracket-check"))
    s.add_argument("--g", type=int)
    s.add_argument("--case", choices=("boundary", "closed"), default="boundary")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_johnson)

    s = sub.add_parser("certify", help="evaluate a highest-weight certificate")
    s.add_argument("--which", type=int, choices=(1, 2), required=True)
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("mm", help="weighted partition tables")
    s.add_argument("what", choices=("table",))
    s.add_argument("--g", type=int, default=12)
    s.add_argument("--dmax", type=int, default=6)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_mm_table)

    s = sub.add_parser("paper-suite", help="run every reproduction check")
    s.add_argument("--only", type=int, nargs="+", metavar="N")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_paper_suite)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        acceptance.thread_cap()
        return args.func(args)
    except UsageError as e:
        print(f"replab: {e}", file=sys.stderr)
        return 2
    except (ex.ExprError, jh.GenusTooSmall, jh.InvalidSpec, cr.NotARepresentation, cr.GroupMismatch) as e:
        print(f"replab: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"replab: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
