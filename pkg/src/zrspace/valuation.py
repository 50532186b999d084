"""Group algebras over Q and the monomial valuation of a preorder.

For a bi-invariant preorder on ``G`` the valuation sends a nonzero
``P = sum a_g x^g`` to the class of a minimal exponent of its support in
``G / G_res`` (``G_res`` = elements equivalent to the identity), and ``0`` to
infinity.  Multiplicativity holds because the leading forms live in group
algebras of torsion-free bi-orderable groups, which have no zero divisors;
the test suite checks it on samples of both implemented groups.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import GroupMismatch, PreconditionFailed, PreorderError
from .groups import Zn, require_standard
from .preorder import Ordering
from .scalar import as_fraction


class GroupAlgebraElement:
    """Finite sum ``sum a_g x^g`` with nonzero rational coefficients."""

    __slots__ = ("group", "terms", "_key")

    def __init__(self, group, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for g, a in items:
            g = group.element(g)
            acc[g] = acc.get(g, Fraction(0)) + as_fraction(a)
        self.group = group
        self.terms = {g: a for g, a in acc.items() if a != 0}
        self._key = tuple(sorted(self.terms.items()))

    @classmethod
    def monomial(cls, group, g, coeff=1) -> "GroupAlgebraElement":
        return cls(group, [(g, coeff)])

    @classmethod
    def zero(cls, group) -> "GroupAlgebraElement":
        return cls(group, ())

    def _same_group(self, other: "GroupAlgebraElement") -> None:
        if self.group != other.group:
            raise GroupMismatch("group algebra elements over different groups")

    def __add__(self, other):
        self._same_group(other)
        return GroupAlgebraElement(self.group, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return GroupAlgebraElement(self.group, [(g, -a) for g, a in self.terms.items()])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroupAlgebraElement(self.group, [(g, a * other) for g, a in self.terms.items()])
        self._same_group(other)
        mul = self.group.mul
        return GroupAlgebraElement(self.group, [
            (mul(g, h), a * b) for g, a in self.terms.items() for h, b in other.terms.items()
        ])

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.group == other.group and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @property
    def support(self) -> list:
        return [g for g, _ in self._key]

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{a}*x^{tuple(g)}" for g, a in self._key)


def ga_add(p: GroupAlgebraElement, q: GroupAlgebraElement) -> GroupAlgebraElement:
    return p + q


def ga_mul(p: GroupAlgebraElement, q: GroupAlgebraElement) -> GroupAlgebraElement:
    return p * q


@dataclass(frozen=True)
class Value:
    """An element of ``G / G_res`` (``rep`` is its normal form) or infinity."""

    rep: tuple | None
    preorder: object

    @property
    def is_infinite(self) -> bool:
        return self.rep is None

    def compare(self, other: "Value") -> Ordering:
        if self.rep is None or other.rep is None:
            return Ordering((self.rep is None) - (other.rep is None))
        return self.preorder.cmp(self.rep, other.rep)

    def __lt__(self, other):
        return self.compare(other) == Ordering.LESS

    def __le__(self, other):
        return self.compare(other) != Ordering.GREATER

    def __gt__(self, other):
        return self.compare(other) == Ordering.GREATER

    def __ge__(self, other):
        return self.compare(other) != Ordering.LESS

    def __mul__(self, other: "Value") -> "Value":
        if self.rep is None or other.rep is None:
            return Value(None, self.preorder)
        group = self.preorder.group
        return make_value(self.preorder, group.mul(self.rep, other.rep))


def make_value(p, g) -> Value:
    return Value(tuple(p.normal_form(p.group.element(g))), p)


def _check(p, poly: GroupAlgebraElement) -> None:
    if not p.bi_invariant:
        raise PreconditionFailed("monomial valuations need a bi-invariant preorder")
    if p.group != poly.group:
        raise GroupMismatch("preorder and polynomial live on different groups")


def _minimal(p, poly: GroupAlgebraElement):
    best = None
    for g in poly.support:
        if best is None or p.cmp(g, best) == Ordering.LESS:
            best = g
    return best


def valuate(p, poly: GroupAlgebraElement) -> Value:
    _check(p, poly)
    if not poly:
        return Value(None, p)
    return make_value(p, _minimal(p, poly))


def leading_form(p, poly: GroupAlgebraElement) -> GroupAlgebraElement:
    """Sub-sum of the terms whose exponent is equivalent to a minimal one."""
    _check(p, poly)
    if not poly:
        raise PreorderError("the zero element has no leading form")
    g0 = _minimal(p, poly)
    return GroupAlgebraElement(poly.group, [
        (g, a) for g, a in poly.terms.items() if p.cmp(g, g0) == Ordering.EQUIV
    ])


def in_ring(p, poly: GroupAlgebraElement) -> bool:
    v = valuate(p, poly)
    return v.is_infinite or p.positivity(v.rep) != Ordering.LESS


def in_max_ideal(p, poly: GroupAlgebraElement) -> bool:
    v = valuate(p, poly)
    return v.is_infinite or p.positivity(v.rep) == Ordering.GREATER


def shift_case(p, h0, poly: GroupAlgebraElement) -> int:
    """Which branch of the shift argument applies (1-4), or 0 for ``g0 ~ 1``.

    1: ``g0`` in tier 0 and ``g0 <= h0^-1``;  2: ``g0`` in tier 0 with
    ``h0^-1 < g0 < 1``;  3: ``g0 > 1``;  4: ``g0 < 1`` in a deeper tier.
    """
    group = p.group
    g0 = valuate(p, poly).rep
    s = p.positivity(g0)
    if group.tier(g0) == 0 and p.cmp(g0, group.inv(h0)) != Ordering.GREATER:
        return 1
    if s == Ordering.GREATER:
        return 3
    if s == Ordering.EQUIV:
        return 0
    return 2 if group.tier(g0) == 0 else 4


def standard_shift(p, h0, poly: GroupAlgebraElement, samples: int = 2000, seed: int = 0):
    """Group element ``s`` with ``x^s * P`` in the maximal ideal.

    With ``g0`` the normal form of ``nu(P)``: ``s = g0^-1 h0`` when ``g0`` is
    in tier 0 and ``g0 <= h0^-1``, otherwise ``s = h0``.  The result depends
    on ``P`` only through ``nu(P)``.
    """
    _check(p, poly)
    group = p.group
    h0 = group.element(h0)
    if not poly:
        raise PreconditionFailed("P must be nonzero")
    if group.tier(h0) != 0:
        raise PreconditionFailed("h0 must lie in G_0 \\ G_1")
    if p.positivity(h0) != Ordering.GREATER:
        raise PreconditionFailed("h0 must be strictly positive")
    if not isinstance(group, Zn):
        require_standard(p, samples, seed)
    g0 = valuate(p, poly).rep
    if group.tier(g0) == 0 and p.cmp(g0, group.inv(h0)) != Ordering.GREATER:
        return group.mul(group.inv(g0), h0)
    return h0
