"""Basic open sets of the Zariski, Inverse and Patch topologies on preorders,
with the constructive witnesses used by the closure and Cantor-type
arguments: separating opens, non-standardness neighbourhoods, and families of
distinct standard orders inside a basic open.
"""
from __future__ import annotations

import hashlib
import itertools
from math import gcd, lcm
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceeded, GroupMismatch, PreconditionFailed, PreorderError
from .groups import Heisenberg, HElem, Zn, is_standard, layered
from .linalg import nullspace
from .preorder import (
    MatrixPreorder, Ordering, _shell, compose, distinguishing_vector, equals,
)
from .scalar import QuadExt


@dataclass(frozen=True)
class BasicOpen:
    """Finite intersection of ``U(g) = {g > 1}`` (``strict``) and
    ``O(g) = {g >= 1}`` (``weak``)."""

    strict: tuple = ()
    weak: tuple = ()

    @classmethod
    def U(cls, *elements) -> "BasicOpen":
        return cls(tuple(tuple(g) for g in elements), ())

    @classmethod
    def O(cls, *elements) -> "BasicOpen":
        return cls((), tuple(tuple(g) for g in elements))

    def __and__(self, other: "BasicOpen") -> "BasicOpen":
        return BasicOpen(self.strict + other.strict, self.weak + other.weak)

    @property
    def topology(self) -> str:
        if self.strict and self.weak:
            return "P"
        if self.weak:
            return "Z"
        return "I"


def member(p, s: BasicOpen) -> bool:
    return (all(p.positivity(g) == Ordering.GREATER for g in s.strict)
            and all(p.positivity(g) != Ordering.LESS for g in s.weak))


@dataclass(frozen=True)
class Separation:
    open: BasicOpen
    contains: object
    excludes: object
    witness: tuple
    swapped: bool


def _distinguishing_element(p, q, max_radius: int = 12):
    group = p.group
    dims = 3 if isinstance(group, Heisenberg) else group.n
    for r in range(1, max_radius + 1):
        for v in _shell(dims, r):
            g = group.element(v)
            if p.positivity(g) != q.positivity(g):
                return g
    raise CapExceeded(f"no distinguishing element within max-norm {max_radius}")


def separate(p, q) -> Separation:
    """An Inverse-topology basic open containing exactly one of ``p``, ``q``.

    ``p`` is the contained preorder whenever some ``U(g)`` contains it; else
    the roles are swapped (e.g. the trivial preorder lies in no ``U(g)``).
    """
    if p.group != q.group:
        raise GroupMismatch("preorders on different groups")
    if isinstance(p, MatrixPreorder) and isinstance(q, MatrixPreorder):
        if equals(p, q):
            raise PreorderError("cannot separate equal preorders")
        u = distinguishing_vector(p, q)
    else:
        if p == q:
            raise PreorderError("cannot separate equal preorders")
        u = _distinguishing_element(p, q)
    group = p.group
    u_inv = group.inv(u)
    sp, sq = p.positivity(u), q.positivity(u)
    if sp == Ordering.GREATER:
        return Separation(BasicOpen.U(u), p, q, tuple(u), False)
    if sp == Ordering.LESS:
        return Separation(BasicOpen.U(u_inv), p, q, tuple(u), False)
    if sq == Ordering.GREATER:
        return Separation(BasicOpen.U(u), q, p, tuple(u), True)
    return Separation(BasicOpen.U(u_inv), q, p, tuple(u), True)


# --------------------------------------------------------------------------
# non-standardness neighbourhoods


@dataclass(frozen=True)
class NonstandardWitness:
    g: tuple
    h: tuple
    patch_open: BasicOpen
    inverse_open: BasicOpen
    inverse_branch: str


def nonstandard_witness(p, samples: int = 2000, seed: int = 0) -> NonstandardWitness:
    """Open neighbourhoods of a non-standard preorder made of non-standard
    preorders.

    From ``g`` positive in ``G_k \\ G_{k+1}`` and ``h`` in ``G_{k+1}`` with
    ``gh <= 1``: the Patch open ``U(g) & O((gh)^-1)``, and the Inverse open
    ``U(g) & U((gh)^-1)`` when ``gh < 1`` strictly, else
    ``U(g) & U((g h^2)^-1)``.
    """
    check = is_standard(p, samples, seed)
    if check.standard:
        raise PreconditionFailed("preorder passed the standardness check; no witness exists")
    group = p.group
    g, h = check.counterexample
    gh = group.mul(g, h)
    assert p.positivity(g) == Ordering.GREATER and p.positivity(gh) != Ordering.GREATER
    patch = BasicOpen.U(g) & BasicOpen.O(group.inv(gh))
    if p.positivity(gh) == Ordering.LESS:
        inverse = BasicOpen.U(g) & BasicOpen.U(group.inv(gh))
        branch = "strict"
    else:
        ghh = group.mul(gh, h)
        inverse = BasicOpen.U(g) & BasicOpen.U(group.inv(ghh))
        branch = "equivalent"
    if not member(p, patch):
        raise AssertionError("witness patch open does not contain the preorder")
    if (branch == "strict" or p.bi_invariant) and not member(p, inverse):
        raise AssertionError("witness inverse open does not contain the preorder")
    return NonstandardWitness(tuple(g), tuple(h), patch, inverse, branch)


# --------------------------------------------------------------------------
# families of standard orders inside basic opens


@dataclass(frozen=True)
class Infeasible:
    reason: str
    certificate: dict | None = None

    def __bool__(self):
        return False


@dataclass(frozen=True)
class CantorWitnesses:
    preorders: tuple
    directions: tuple
    certificates: tuple  # ((i, j, u), ...) distinguishing elements

    def __bool__(self):
        return True


def positive_dependency(vectors: Sequence[Sequence[int]], n: int):
    """Nonnegative integer weights, not all zero, with ``sum w_i v_i == 0``.

    Such weights exist iff no direction is strictly positive on every
    vector; a minimal dependent subset has at most ``n + 1`` members and a
    one-dimensional null space, so subsets are scanned by size.
    """
    m = len(vectors)
    for size in range(1, min(m, n + 1) + 1):
        for idx in itertools.combinations(range(m), size):
            cols = [vectors[i] for i in idx]
            rows = [[col[j] for col in cols] for j in range(n)]
            null = nullspace(rows, size)
            if len(null) != 1:
                continue
            v = null[0]
            if all(x > 0 for x in v) or all(x < 0 for x in v):
                v = [abs(x) for x in v]
                den = lcm(*(x.denominator for x in v))
                weights = [0] * m
                for i, x in zip(idx, v):
                    weights[i] = int(x * den)
                return weights
    return None


def strict_direction(vectors: Sequence[Sequence[int]], n: int, cap: int = 64):
    """Integer ``w`` with ``w . v > 0`` for all ``v``, by growing boxes.

    Call only when no positive dependency exists; then an interior direction
    exists and the search terminates.
    """
    for r in range(1, cap + 1):
        for w in _shell(n, r):
            if all(sum(x * y for x, y in zip(w, v)) > 0 for v in vectors):
                return w
    raise CapExceeded(f"no strict direction with max-norm <= {cap}")


def _perturbed_directions(w0, vectors, n: int, m: int, seed: int):
    """``w0`` followed by ``w0 + e/N`` for N = 1, 2, ... inside the open cone,
    scaled to integers; ``e`` is a basis vector not parallel to ``w0``."""
    options = [j for j in range(n) if any(w0[i] for i in range(n) if i != j)]
    j = options[seed % len(options)]
    out = [tuple(w0)]
    big_n = 1
    while len(out) < m:
        w = [big_n * x for x in w0]
        w[j] += 1
        if all(sum(x * y for x, y in zip(w, v)) > 0 for v in vectors):
            g = _gcd_all(w)
            out.append(tuple(x // g for x in w))
        big_n += 1
        if big_n > 10 ** 6:
            raise CapExceeded("perturbation scheme did not stay in the cone")
    return out


def _gcd_all(v):
    return gcd(*v) or 1


def _complete(w, n: int) -> MatrixPreorder:
    rows = [w] + [[int(i == j) for j in range(n)] for i in range(n)]
    return MatrixPreorder(n, rows)


def _split_constraints(group, constraints):
    """Convert constraints to strict tier-0 directions (plus center signs).

    On orders ``O(g)`` coincides with ``U(g)`` unless ``g`` is the identity.
    """
    strict, center = [], []
    for kind, g in constraints:
        if kind not in ("U", "O"):
            raise PreorderError(f"constraint kind must be 'U' or 'O', got {kind!r}")
        g = group.element(g)
        if not any(g):
            if kind == "U":
                return None, None, {"kind": "identity", "element": list(g)}
            continue
        if isinstance(group, Zn):
            strict.append(tuple(g))
        elif g[0] or g[1]:
            strict.append((g[0], g[1]))
        else:
            center.append(1 if g[2] > 0 else -1)
    return strict, center, None


def cantor_witnesses(group, constraints: Iterable, m: int, seed: int = 0):
    """``m`` pairwise-distinct standard orders inside every constraint set, or
    :class:`Infeasible`.

    ``constraints`` is a list of ``("U" | "O", element)``.  Feasibility is
    decided exactly by a positive-dependency certificate; feasible sets get a
    strict integer direction by box search, perturbed to produce distinct
    orders, each completed to full rank.
    """
    if m < 1:
        raise PreorderError("m must be at least 1")
    if isinstance(group, Zn) and group.n < 2:
        raise PreorderError("Z has only two orders; use n >= 2")
    constraints = list(constraints)
    strict, center, bad = _split_constraints(group, constraints)
    if bad is not None:
        return Infeasible("identity cannot be strictly positive", bad)
    dims = group.n if isinstance(group, Zn) else 2
    if center and len(set(center)) > 1:
        return Infeasible("center constraints of opposite sign", {"kind": "center-signs"})
    dep = positive_dependency(strict, dims)
    if dep is not None:
        return Infeasible("positive combination of constraints is the identity",
                          {"kind": "positive-dependency", "weights": dep})
    w0 = strict_direction(strict, dims) if strict else (1,) + (0,) * (dims - 1)
    directions = _perturbed_directions(w0, strict, dims, m, seed)
    orders = [_complete(w, dims) for w in directions]
    if isinstance(group, Zn):
        preorders = orders
    else:
        sign_c = center[0] if center else 1
        preorders = [layered(o, MatrixPreorder(1, [[sign_c]])) for o in orders]
    certs = []
    for i, j in itertools.combinations(range(len(orders)), 2):
        u = distinguishing_vector(orders[i], orders[j])
        if u is None:
            raise AssertionError("perturbed orders coincide")
        if isinstance(group, Heisenberg):
            u = HElem(u[0], u[1], 0)
        certs.append((i, j, tuple(u)))
    for p in preorders:
        assert is_standard(p).standard
        assert all(_satisfies(p, kind, group.element(g)) for kind, g in constraints)
    return CantorWitnesses(tuple(preorders), tuple(directions), tuple(certs))


def _satisfies(p, kind, g) -> bool:
    s = p.positivity(g)
    return s == Ordering.GREATER if kind == "U" else s != Ordering.LESS


# --------------------------------------------------------------------------
# ZR(Q^n) enumeration and refinement tree


def enumerate_zr_q1() -> list[MatrixPreorder]:
    """All preorders on Q: trivial, the usual order and its reverse."""
    return [MatrixPreorder.trivial(1), MatrixPreorder(1, [[1]]), MatrixPreorder(1, [[-1]])]


def node_id(p: MatrixPreorder) -> str:
    text = repr([[(str(x.a), str(x.b), x.d if x.b else 0) for x in row] for row in p.canonical_rows])
    return "n" + hashlib.sha256(text.encode()).hexdigest()[:12]


def _label(p: MatrixPreorder) -> str:
    if p.rank == 0:
        return "trivial"
    return " ".join("(" + ",".join(str(x) for x in row) + ")" for row in p.canonical_rows)


@dataclass(frozen=True)
class ZRTree:
    nodes: tuple  # MatrixPreorder, sorted by node id
    edges: tuple  # (parent id, child id), sorted

    @property
    def depth(self) -> int:
        return max((p.rank for p in self.nodes), default=0)

    def layer(self, k: int) -> list:
        return [p for p in self.nodes if p.rank == k]

    def to_dot(self) -> str:
        lines = ["digraph ZR {"]
        for p in self.nodes:
            lines.append(f'  {node_id(p)} [label="{_label(p)}"];')
        for a, b in self.edges:
            lines.append(f"  {a} -> {b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def zr_tree(n: int, entries: Iterable, max_nodes: int = 10000) -> ZRTree:
    """Preorders with weight rows drawn from ``entries``, deduplicated, with
    an edge from each preorder to its immediate coarsening."""
    entries = sorted({QuadExt.coerce(e) for e in entries}, key=lambda x: (float(x), str(x)))
    candidates = [v for v in itertools.product(entries, repeat=n) if any(v)]
    root = MatrixPreorder.trivial(n)
    seen = {root: root}
    edges = set()
    frontier = [root]
    while frontier:
        nxt = []
        for p in frontier:
            for w in candidates:
                child = compose(p, MatrixPreorder(n, [w]))
                if child.rank != p.rank + 1:
                    continue
                if child not in seen:
                    seen[child] = child
                    nxt.append(child)
                    if len(seen) > max_nodes:
                        estimate = sum(len(candidates) ** k for k in range(n + 1))
                        raise CapExceeded(
                            f"more than {max_nodes} nodes (upper estimate {estimate})")
                edges.add((node_id(p), node_id(child)))
        frontier = nxt
    nodes = tuple(sorted(seen, key=node_id))
    return ZRTree(nodes, tuple(sorted(edges)))
