"""JSON encodings shared by the CLI.

Matrix preorders: ``{"n": 2, "D": 2, "rows": [[["0/1","0/1"],["1/1","0/1"]]]}``
where each entry is ``[a, b]`` for ``a + b*sqrt(D)``.  Entries may also be
plain rationals (``"1/2"`` or ``3``) on input.

Layered preorders: ``{"variant": "trivial" | "pullback-ab" | "composite" |
"left-lex", "tier0": {...}, "tier1": {...}, "matrix": [[1,0],[0,1]]}``.

Groups: ``{"group": "heisenberg"}`` or ``{"group": "Zn", "n": 3}``.

Polynomials: ``{"terms": [{"coeff": "3/1", "g": [1, 0]}, ...]}``.
"""
from __future__ import annotations

from .errors import PreorderError
from .groups import HEISENBERG, Composite, LeftLex, PullbackAb, Trivial, Zn, layered
from .linalg import IntLattice
from .preorder import MatrixPreorder
from .scalar import DEFAULT_D, fraction_str, parse_scalar, scalar_to_json
from .topology import BasicOpen
from .valuation import GroupAlgebraElement, Value


def matrix_to_json(p: MatrixPreorder) -> dict:
    return {
        "n": p.n,
        "D": p.d,
        "rows": [[scalar_to_json(x) for x in row] for row in p.canonical_rows],
    }


def matrix_from_json(obj, d: int = DEFAULT_D) -> MatrixPreorder:
    if not isinstance(obj, dict) or "rows" not in obj:
        raise PreorderError("matrix preorder JSON needs a 'rows' field")
    d = int(obj.get("D", d))
    rows = [[parse_scalar(x, d) for x in row] for row in obj["rows"]]
    if "n" in obj:
        n = int(obj["n"])
    elif rows:
        n = len(rows[0])
    else:
        raise PreorderError("empty preorder JSON needs an 'n' field")
    return MatrixPreorder(n, rows, d)


def preorder_to_json(p) -> dict:
    if isinstance(p, MatrixPreorder):
        return matrix_to_json(p)
    if isinstance(p, Trivial):
        return {"variant": "trivial"}
    if isinstance(p, PullbackAb):
        return {"variant": "pullback-ab", "tier0": matrix_to_json(p.tier0)}
    if isinstance(p, Composite):
        return {"variant": "composite", "tier0": matrix_to_json(p.tier0),
                "tier1": matrix_to_json(p.tier1)}
    if isinstance(p, LeftLex):
        return {"variant": "left-lex", "matrix": [list(r) for r in p.matrix]}
    raise PreorderError(f"cannot serialize {type(p).__name__}")


def preorder_from_json(obj, d: int = DEFAULT_D):
    if not isinstance(obj, dict):
        raise PreorderError("preorder JSON must be an object")
    if "variant" not in obj:
        return matrix_from_json(obj, d)
    variant = obj["variant"]
    if variant == "trivial":
        return Trivial()
    if variant in ("pullback-ab", "composite"):
        tier0 = matrix_from_json(obj["tier0"], d) if "tier0" in obj else None
        tier1 = matrix_from_json(obj["tier1"], d) if "tier1" in obj else None
        if variant == "composite" and (tier1 is None or tier1.rank == 0):
            raise PreorderError("composite variant needs a nontrivial tier1")
        return layered(tier0, tier1)
    if variant == "left-lex":
        m = obj.get("matrix", [[1, 0], [0, 1]])
        return LeftLex(tuple(tuple(int(x) for x in row) for row in m))
    raise PreorderError(f"unknown layered variant {variant!r}")


def group_from_json(obj):
    if not isinstance(obj, dict) or "group" not in obj:
        raise PreorderError("group JSON needs a 'group' field")
    kind = str(obj["group"]).lower()
    if kind == "heisenberg":
        return HEISENBERG
    if kind == "zn":
        return Zn(int(obj["n"]))
    raise PreorderError(f"unknown group {obj['group']!r}")


def element_to_json(g) -> list:
    return [int(x) for x in g]


def poly_from_json(obj, group) -> GroupAlgebraElement:
    if not isinstance(obj, dict) or "terms" not in obj:
        raise PreorderError("polynomial JSON needs a 'terms' field")
    terms = []
    for t in obj["terms"]:
        try:
            terms.append((t["g"], parse_scalar(t["coeff"]).a))
        except (KeyError, TypeError) as exc:
            raise PreorderError(f"malformed term {t!r}") from exc
    return GroupAlgebraElement(group, terms)


def poly_to_json(poly: GroupAlgebraElement) -> dict:
    return {"terms": [{"coeff": fraction_str(a), "g": element_to_json(g)}
                      for g, a in sorted(poly.terms.items())]}


def value_to_json(v: Value):
    if v.is_infinite:
        return {"infinite": True}
    return {"infinite": False, "rep": element_to_json(v.rep)}


def lattice_to_json(lat: IntLattice) -> dict:
    return {"n": lat.n, "basis": [list(r) for r in lat.basis]}


def open_to_json(s: BasicOpen) -> dict:
    return {"U": [element_to_json(g) for g in s.strict],
            "O": [element_to_json(g) for g in s.weak],
            "topology": s.topology}


def open_from_json(obj) -> BasicOpen:
    if not isinstance(obj, dict):
        raise PreorderError("open set JSON must be an object with 'U'/'O' lists")
    return BasicOpen(tuple(tuple(int(x) for x in g) for g in obj.get("U", [])),
                     tuple(tuple(int(x) for x in g) for g in obj.get("O", [])))
