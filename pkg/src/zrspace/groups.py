"""Filtered groups and layered preorders on the integral Heisenberg group.

The Heisenberg group ``H`` is the set of integer triples ``(a, b, c)`` with

    (a, b, c) * (a', b', c') = (a + a', b + b', c + c' + a*b')

i.e. upper unitriangular 3x3 integer matrices.  Its lower central series is
``H = G_0 > G_1 = Z(H) = {(0, 0, c)} > G_2 = {1}``.  ``Z^n`` is the abelian
case with ``G_1 = {0}``.

Bi-invariant preorders on ``H`` are represented tier by tier:

* :class:`Trivial`
* :class:`PullbackAb` -- a preorder on ``Z^2`` applied to the abelianization
  ``(a, b)``;
* :class:`Composite` -- an order on ``Z^2`` for ``(a, b)``, ties (which only
  happen when ``(a, b)`` agree) broken by the sign of the center coordinate.

:class:`LeftLex` is a family of left-invariant (not right-invariant) orders
used to exercise the non-standard branches.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import GroupMismatch, PreconditionFailed, PreorderError
from .preorder import MatrixPreorder, Ordering, compose

INF = math.inf


class HElem(NamedTuple):
    a: int
    b: int
    c: int

    def __mul__(self, other):  # type: ignore[override]
        return h_mul(self, other)

    def inverse(self) -> "HElem":
        return h_inv(self)


def h_mul(g: Sequence[int], h: Sequence[int]) -> HElem:
    return HElem(g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1])


def h_inv(g: Sequence[int]) -> HElem:
    return HElem(-g[0], -g[1], g[0] * g[1] - g[2])


def h_tier(g: Sequence[int]):
    if g[0] or g[1]:
        return 0
    if g[2]:
        return 1
    return INF


def h_pow(g: HElem, k: int) -> HElem:
    base = g if k >= 0 else h_inv(g)
    out = HElem(0, 0, 0)
    for _ in range(abs(k)):
        out = h_mul(out, base)
    return out


# --------------------------------------------------------------------------
# group descriptors


@dataclass(frozen=True)
class Zn:
    """The free abelian group Z^n; every nonzero element has tier 0."""

    n: int
    kind: str = field(default="Zn", init=False)

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.n

    @property
    def tier_dims(self) -> list[int]:
        return [self.n]

    def element(self, g) -> tuple[int, ...]:
        g = tuple(int(x) for x in g)
        if len(g) != self.n:
            raise GroupMismatch(f"element of length {len(g)} in Z^{self.n}")
        return g

    def mul(self, g, h) -> tuple[int, ...]:
        return tuple(x + y for x, y in zip(g, h))

    def inv(self, g) -> tuple[int, ...]:
        return tuple(-x for x in g)

    def tier(self, g):
        return 0 if any(g) else INF

    def center_element(self, k: int):
        raise PreorderError("Z^n has trivial G_1")

    def random_element(self, rng: random.Random, bound: int = 5) -> tuple[int, ...]:
        return tuple(rng.randint(-bound, bound) for _ in range(self.n))

    def to_json(self) -> dict:
        return {"group": "Zn", "n": self.n}


@dataclass(frozen=True)
class Heisenberg:
    kind: str = field(default="heisenberg", init=False)

    @property
    def identity(self) -> HElem:
        return HElem(0, 0, 0)

    @property
    def tier_dims(self) -> list[int]:
        return [2, 1]

    def element(self, g) -> HElem:
        g = tuple(int(x) for x in g)
        if len(g) != 3:
            raise GroupMismatch(f"Heisenberg elements have 3 coordinates, got {len(g)}")
        return HElem(*g)

    def mul(self, g, h) -> HElem:
        return h_mul(g, h)

    def inv(self, g) -> HElem:
        return h_inv(g)

    def tier(self, g):
        return h_tier(g)

    def random_element(self, rng: random.Random, bound: int = 5) -> HElem:
        return HElem(rng.randint(-bound, bound), rng.randint(-bound, bound),
                     rng.randint(-bound, bound))

    def to_json(self) -> dict:
        return {"group": "heisenberg"}


HEISENBERG = Heisenberg()


def group_of(p):
    return p.group


# --------------------------------------------------------------------------
# layered preorders


class LayeredPreorder:
    """Common interface: ``positivity(x)`` compares ``x`` with the identity,
    ``cmp(g, h)`` compares ``g`` with ``h`` through ``g^-1 h``."""

    group = HEISENBERG
    bi_invariant = True

    def positivity(self, x) -> Ordering:
        raise NotImplementedError

    def cmp(self, g, h) -> Ordering:
        return -self.positivity(h_mul(h_inv(g), h))

    def normal_form(self, g) -> HElem:
        """Canonical representative of ``g`` modulo the residue subgroup."""
        raise NotImplementedError


def _ab_positivity(r: MatrixPreorder, x) -> Ordering:
    return r.positivity((x[0], x[1]))


@dataclass(frozen=True)
class Trivial(LayeredPreorder):
    def positivity(self, x) -> Ordering:
        return Ordering.EQUIV

    def normal_form(self, g) -> HElem:
        return HElem(0, 0, 0)


@dataclass(frozen=True)
class PullbackAb(LayeredPreorder):
    """Compares only the abelianization image ``(a, b)``."""

    tier0: MatrixPreorder

    def __post_init__(self):
        if self.tier0.n != 2:
            raise GroupMismatch("PullbackAb needs a preorder on Z^2")

    def positivity(self, x) -> Ordering:
        return _ab_positivity(self.tier0, x)

    def normal_form(self, g) -> HElem:
        a, b = self.tier0.normal_form((g[0], g[1]))
        return HElem(a, b, 0)


@dataclass(frozen=True)
class Composite(LayeredPreorder):
    """Order ``tier0`` on ``(a, b)``; ties broken by ``tier1`` on ``c``."""

    tier0: MatrixPreorder
    tier1: MatrixPreorder

    def __post_init__(self):
        if self.tier0.n != 2 or self.tier0.degree != 0:
            raise PreorderError("Composite needs an order (degree 0) on Z^2 for tier 0")
        if self.tier1.n != 1 or self.tier1.rank != 1:
            raise PreorderError("Composite needs a nontrivial preorder on Z for tier 1")

    def positivity(self, x) -> Ordering:
        s = _ab_positivity(self.tier0, x)
        if s:
            return s
        return self.tier1.positivity((x[2],))

    def normal_form(self, g) -> HElem:
        return HElem(*g)


def layered(tier0: MatrixPreorder | None = None, tier1: MatrixPreorder | None = None) -> LayeredPreorder:
    """Normalizing constructor: drops tiers that contribute nothing."""
    if tier0 is None or tier0.rank == 0:
        if tier1 is not None and tier1.rank:
            raise PreorderError("a center comparison needs an order on the abelianization")
        return Trivial()
    if tier1 is None or tier1.rank == 0:
        return PullbackAb(tier0)
    if tier0.degree != 0:
        raise PreorderError("a center comparison needs tier 0 of degree 0")
    return Composite(tier0, tier1)


def _automorphism_c(m, a: int, b: int) -> int:
    (p, q), (r, s) = m
    return p * r * (a * (a - 1) // 2) + q * r * a * b + q * s * (b * (b - 1) // 2)


def h_automorphism(m, g) -> HElem:
    """Automorphism of H lifting ``M`` in GL_2(Z) on the abelianization.

    The quadratic correction makes ``phi(x) phi(y) = phi(xy)``.
    """
    (p, q), (r, s) = m
    det = p * s - q * r
    a, b, c = g
    return HElem(p * a + q * b, r * a + s * b, det * c + _automorphism_c(m, a, b))


def h_automorphism_inverse(m, y) -> HElem:
    (p, q), (r, s) = m
    det = p * s - q * r
    a = det * (s * y[0] - q * y[1])
    b = det * (-r * y[0] + p * y[1])
    c = det * (y[2] - _automorphism_c(m, a, b))
    return HElem(a, b, c)


@dataclass(frozen=True)
class LeftLex(LayeredPreorder):
    """Left-invariant order: ``x > 1`` iff the key ``(a', c', b')`` of
    ``phi(x)`` is lexicographically positive, ``phi`` lifting ``matrix``.

    Left-invariant because the positive cone is closed under products; not
    right-invariant.  The identity matrix gives the basic test double.
    """

    matrix: tuple[tuple[int, int], tuple[int, int]] = ((1, 0), (0, 1))
    bi_invariant = False

    def __post_init__(self):
        (p, q), (r, s) = self.matrix
        if abs(p * s - q * r) != 1:
            raise PreorderError("LeftLex matrix must lie in GL_2(Z)")

    def positivity(self, x) -> Ordering:
        a, b, c = h_automorphism(self.matrix, x)
        for k in (a, c, b):
            if k:
                return Ordering.GREATER if k > 0 else Ordering.LESS
        return Ordering.EQUIV

    def normal_form(self, g) -> HElem:
        return HElem(*g)

    def witness_hints(self):
        """Elements ``phi^-1((0, +-1, 0))`` where the center term decides the sign."""
        return [h_automorphism_inverse(self.matrix, (0, 1, 0)),
                h_automorphism_inverse(self.matrix, (0, -1, 0))]

    def right_invariance_witness(self):
        """``(g, h, x)`` with ``g < h`` but ``g x > h x``."""
        g, h = HElem(0, 0, 0), h_automorphism_inverse(self.matrix, (0, 1, 0))
        x = h_automorphism_inverse(self.matrix, (1, 0, 0))
        return g, h, x


def layered_cmp(p: LayeredPreorder, g, h) -> Ordering:
    return p.cmp(g, h)


def layered_compose(p: LayeredPreorder, q: LayeredPreorder) -> LayeredPreorder:
    """Composition inside the layered family.

    A composite already decides every pair except equal ones, so it absorbs
    anything on the right.  Otherwise ties of ``p`` form a subgroup
    containing the center and the tier-0 parts compose as matrix preorders.
    """
    for x in (p, q):
        if not x.bi_invariant or not isinstance(x, (Trivial, PullbackAb, Composite)):
            raise PreorderError("composition is defined here for bi-invariant layered preorders only")
    if isinstance(p, Trivial):
        return q
    if isinstance(q, Trivial) or isinstance(p, Composite):
        return p
    if isinstance(q, PullbackAb):
        return layered(compose(p.tier0, q.tier0))
    return layered(compose(p.tier0, q.tier0), q.tier1)


# --------------------------------------------------------------------------
# standardness


@dataclass(frozen=True)
class StandardCheck:
    """Outcome of a standardness check.

    ``counterexample`` is ``(g, h)`` with ``g`` positive of tier ``k``,
    ``h`` in ``G_{k+1}`` and ``g h`` not positive.
    """

    standard: bool
    exact: bool
    counterexample: tuple | None = None
    checked: int = 0

    def __bool__(self):
        return self.standard


def _box(radius: int, dims: int):
    vals = [0]
    for k in range(1, radius + 1):
        vals += [k, -k]
    return itertools.product(vals, repeat=dims)


def _check_pair(p, g, h):
    gh = p.group.mul(g, h)
    return p.positivity(gh) != Ordering.GREATER


def sampled_standardness(p, samples: int = 2000, seed: int = 0, box: int = 2) -> StandardCheck:
    """Search for a standardness counterexample.

    Candidates are preorder-supplied hints, then a small box in a fixed order,
    then seeded random samples.  Every reported counterexample is verified
    against the relation itself.
    """
    group = p.group
    if isinstance(group, Zn):
        return StandardCheck(True, True)
    checked = 0
    hs = [HElem(0, 0, k) for k in itertools.chain.from_iterable((i, -i) for i in range(1, box + 2))]

    def try_g(g):
        nonlocal checked
        if h_tier(g) != 0 or p.positivity(g) != Ordering.GREATER:
            return None
        for h in hs:
            checked += 1
            if _check_pair(p, g, h):
                return (g, h)
        return None

    hints = list(getattr(p, "witness_hints", lambda: [])())
    for g in itertools.chain(hints, (HElem(*v) for v in _box(box, 3))):
        found = try_g(HElem(*g))
        if found:
            return StandardCheck(False, False, found, checked)
    rng = random.Random(seed)
    for _ in range(samples):
        g = group.random_element(rng, 20)
        if h_tier(g) != 0:
            continue
        if p.positivity(g) != Ordering.GREATER:
            g = h_inv(g)
            if p.positivity(g) != Ordering.GREATER:
                continue
        h = HElem(0, 0, rng.choice([-1, 1]) * rng.randint(1, 400))
        checked += 1
        if _check_pair(p, g, h):
            return StandardCheck(False, False, (g, h), checked)
    return StandardCheck(True, False, None, checked)


def is_standard(p, samples: int = 2000, seed: int = 0) -> StandardCheck:
    """Standardness: positivity of ``g`` in ``G_k \\ G_{k+1}`` extends to ``g G_{k+1}``.

    Exact for matrix preorders on Z^n (``G_1`` is trivial) and for the
    bi-invariant layered family, whose positivity on tier 0 only sees the
    abelianization; sampled for anything else.
    """
    if isinstance(p, MatrixPreorder):
        return StandardCheck(True, True)
    if isinstance(p, (Trivial, PullbackAb, Composite)):
        return StandardCheck(True, True)
    return sampled_standardness(p, samples, seed)


def require_standard(p, samples: int = 2000, seed: int = 0) -> None:
    check = is_standard(p, samples, seed)
    if not check.standard:
        raise PreconditionFailed(f"preorder is not standard: counterexample {check.counterexample}")
