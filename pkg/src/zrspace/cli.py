"""Command-line interface: ``zrspace <subcommand> [inputs] [flags]``.

Every input is a path to a JSON file, inline JSON, or ``-`` for stdin.
Output is one JSON object ``{"status", "payload", "certificate"}`` (errors
add ``"reason"``), except ``zr-tree`` which prints DOT on success.  The exit
code is 0 iff the status is ``ok``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any

from . import preorder as pre
from .errors import PreorderError
from .groups import LayeredPreorder, is_standard, layered_compose
from .preorder import MatrixPreorder, distinguishing_vector, refinement_witness
from .scalar import DEFAULT_D, parse_scalar
from .serialize import (
    element_to_json, group_from_json, lattice_to_json, open_from_json, open_to_json,
    poly_from_json, poly_to_json, preorder_from_json, preorder_to_json, value_to_json,
)
from .topology import (
    Infeasible, cantor_witnesses, enumerate_zr_q1, member, nonstandard_witness, separate, zr_tree,
)
from .valuation import in_max_ideal, in_ring, leading_form, standard_shift, valuate


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    certificate: Any = None
    reason: str | None = None
    message: str | None = None
    dot: str | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json(self) -> dict:
        out = {"status": self.status, "payload": self.payload, "certificate": self.certificate}
        if self.reason is not None:
            out["reason"] = self.reason
            out["message"] = self.message
        return out


class UsageError(Exception):
    pass


class MalformedJSON(PreorderError):
    code = "malformed-json"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_json(arg: str):
    """Parse ``arg`` as ``-`` (stdin), an existing file path, or inline JSON."""
    if arg == "-":
        text = sys.stdin.read()
    elif os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJSON(f"cannot parse {arg!r} as JSON: {exc.msg}") from exc


def _preorder(arg, args):
    return preorder_from_json(load_json(arg), args.field_d)


def _matrix(arg, args) -> MatrixPreorder:
    p = _preorder(arg, args)
    if not isinstance(p, MatrixPreorder):
        raise PreorderError("this subcommand needs a matrix preorder on Q^n")
    return p


def _element(p, arg):
    return p.group.element(load_json(arg))


def _ordering(o) -> str:
    return o.name.lower()


# --------------------------------------------------------------------------
# subcommand handlers; each returns (payload, certificate)


def cmd_canon(args):
    p = _preorder(args.preorder, args)
    payload = preorder_to_json(p)
    if isinstance(p, MatrixPreorder):
        return {"preorder": payload, "rank": p.rank, "degree": p.degree}, None
    return {"preorder": payload}, None


def cmd_cmp(args):
    p = _preorder(args.preorder, args)
    o = p.cmp(_element(p, args.u), _element(p, args.v))
    return {"ordering": _ordering(o), "sign": int(o)}, None


def cmd_compose(args):
    ps = [_preorder(a, args) for a in args.preorders]
    out = ps[0]
    for q in ps[1:]:
        if isinstance(out, LayeredPreorder) or isinstance(q, LayeredPreorder):
            out = layered_compose(out, q)
        else:
            out = pre.compose(out, q)
    return preorder_to_json(out), None


def cmd_rank(args):
    return _matrix(args.preorder, args).rank, None


def cmd_degree(args):
    return _matrix(args.preorder, args).degree, None


def cmd_meet(args):
    return preorder_to_json(pre.meet(_matrix(args.a, args), _matrix(args.b, args))), None


def cmd_refines(args):
    coarse, fine = _matrix(args.coarse, args), _matrix(args.fine, args)
    if pre.refines(coarse, fine):
        return True, None
    u = refinement_witness(coarse, fine)
    return False, {"witness": list(u)} if u is not None else None


def cmd_raf_minus(args):
    return [preorder_to_json(q) for q in pre.raf_minus(_matrix(args.preorder, args))], None


def cmd_decompose(args):
    return [preorder_to_json(q) for q in pre.decompose(_matrix(args.preorder, args))], None


def cmd_residue(args):
    return lattice_to_json(pre.residue_lattice(_matrix(args.preorder, args))), None


def cmd_pullback(args):
    p = _matrix(args.preorder, args)
    m = load_json(args.matrix)
    return preorder_to_json(pre.pullback(p, m)), None


def cmd_topo_member(args):
    p = _preorder(args.preorder, args)
    return member(p, open_from_json(load_json(args.open))), None


def cmd_separate(args):
    p, q = _preorder(args.a, args), _preorder(args.b, args)
    s = separate(p, q)
    cert = {"contains": "second" if s.swapped else "first",
            "witness": element_to_json(s.witness)}
    if isinstance(p, MatrixPreorder) and isinstance(q, MatrixPreorder):
        cert["distinguishing_vector"] = list(distinguishing_vector(p, q))
    return open_to_json(s.open), cert


def cmd_cantor_witness(args):
    group = group_from_json(load_json(args.group))
    raw = load_json(args.constraints)
    try:
        constraints = [(kind, g) for kind, g in raw]
    except (TypeError, ValueError) as exc:
        raise PreorderError("constraints must be a list of [\"U\"|\"O\", element]") from exc
    res = cantor_witnesses(group, constraints, args.m, args.seed)
    if isinstance(res, Infeasible):
        return {"feasible": False, "reason": res.reason}, res.certificate
    payload = {"feasible": True, "preorders": [preorder_to_json(p) for p in res.preorders]}
    cert = {"directions": [list(w) for w in res.directions],
            "distinguishing": [{"i": i, "j": j, "element": list(u)} for i, j, u in res.certificates]}
    return payload, cert


def cmd_standard_check(args):
    p = _preorder(args.preorder, args)
    res = is_standard(p, args.samples, args.seed)
    cert = None
    if res.counterexample is not None:
        g, h = res.counterexample
        cert = {"g": element_to_json(g), "h": element_to_json(h)}
    return {"standard": res.standard, "exact": res.exact, "checked": res.checked}, cert


def cmd_nonstandard_witness(args):
    p = _preorder(args.preorder, args)
    w = nonstandard_witness(p, args.samples, args.seed)
    payload = {"patch_open": open_to_json(w.patch_open),
               "inverse_open": open_to_json(w.inverse_open),
               "inverse_branch": w.inverse_branch}
    return payload, {"g": element_to_json(w.g), "h": element_to_json(w.h)}


def _poly_args(args):
    p = _preorder(args.p, args)
    return p, poly_from_json(load_json(args.P), p.group)


def cmd_val(args):
    p, poly = _poly_args(args)
    return value_to_json(valuate(p, poly)), None


def cmd_leading_form(args):
    p, poly = _poly_args(args)
    return poly_to_json(leading_form(p, poly)), None


def cmd_ring_member(args):
    p, poly = _poly_args(args)
    return in_ring(p, poly), None


def cmd_max_ideal_member(args):
    p, poly = _poly_args(args)
    return in_max_ideal(p, poly), None


def cmd_shift(args):
    p, poly = _poly_args(args)
    s = standard_shift(p, load_json(args.h0), poly, args.samples, args.seed)
    shifted = type(poly).monomial(poly.group, s) * poly
    return element_to_json(s), {"shifted": poly_to_json(shifted),
                                "in_max_ideal": in_max_ideal(p, shifted)}


def cmd_zr_tree(args):
    entries = [parse_scalar(e, args.field_d) for e in load_json(args.entries)]
    tree = zr_tree(args.n, entries, args.max_nodes)
    payload = {"nodes": len(tree.nodes), "edges": len(tree.edges), "depth": tree.depth}
    return payload, None, tree.to_dot()


def cmd_enumerate_q1(args):
    return [preorder_to_json(p) for p in enumerate_zr_q1()], None


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=2000)
    common.add_argument("--max-nodes", type=int, default=10000)
    common.add_argument("--field-d", type=int, default=DEFAULT_D)

    parser = _Parser(prog="zrspace", description="Exact computations with bi-invariant preorders.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, *positional, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(func=func)
        return sp

    add("canon", cmd_canon, "preorder", help="canonical form")
    add("cmp", cmd_cmp, "preorder", "u", "v", help="compare two elements")
    sp = add("compose", cmd_compose, help="compose preorders left to right")
    sp.add_argument("preorders", nargs="+")
    add("rank", cmd_rank, "preorder")
    add("degree", cmd_degree, "preorder")
    add("meet", cmd_meet, "a", "b")
    add("refines", cmd_refines, "coarse", "fine", help="does FINE refine COARSE")
    add("raf-minus", cmd_raf_minus, "preorder", help="chain of coarsenings")
    add("decompose", cmd_decompose, "preorder", help="rank-one factors")
    add("residue", cmd_residue, "preorder", help="residue lattice in HNF")
    add("pullback", cmd_pullback, "preorder", "matrix", help="pull back along a unimodular matrix")
    add("topo-member", cmd_topo_member, "preorder", "open")
    add("separate", cmd_separate, "a", "b")
    sp = add("cantor-witness", cmd_cantor_witness)
    sp.add_argument("--group", required=True)
    sp.add_argument("--constraints", required=True)
    sp.add_argument("--m", type=int, default=10)
    add("standard-check", cmd_standard_check, "preorder")
    add("nonstandard-witness", cmd_nonstandard_witness, "preorder")
    for name, func in (("val", cmd_val), ("leading-form", cmd_leading_form),
                       ("ring-member", cmd_ring_member), ("max-ideal-member", cmd_max_ideal_member),
                       ("shift", cmd_shift)):
        sp = add(name, func)
        sp.add_argument("--p", required=True, help="preorder")
        sp.add_argument("--P", required=True, help="group-algebra element")
        if name == "shift":
            sp.add_argument("--h0", required=True)
    sp = add("zr-tree", cmd_zr_tree)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--entries", default="[1,-1]")
    add("enumerate-q1", cmd_enumerate_q1)
    return parser


def run(argv) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return CommandResult("error", reason="usage", message=str(exc))
    try:
        out = args.func(args)
    except PreorderError as exc:
        return CommandResult("error", reason=exc.code, message=str(exc))
    dot = out[2] if len(out) > 2 else None
    return CommandResult("ok", out[0], out[1], dot=dot)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if argv in ([], ["-h"], ["--help"]):
        build_parser().print_help()
        return 0 if argv else 2
    res = run(argv)
    if res.ok and res.dot is not None:
        sys.stdout.write(res.dot)
    else:
        print(json.dumps(res.to_json()))
    return 0 if res.ok else 1


if __name__ == "__main__":
    sys.exit(main())
