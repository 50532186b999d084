"""Bi-invariant preorders on Q^n (equivalently Z^n) given by weight matrices.

A preorder is a finite list of weight vectors ``w_1, ..., w_s`` with entries
in Q(sqrt(D)); ``u <= v`` iff the tuple ``(u.w_1, ..., u.w_s)`` is
lexicographically at most ``(v.w_1, ..., v.w_s)``.  The empty list is the
trivial preorder.

Every preorder is reduced at construction to a :class:`CanonicalForm`: a
strictly decreasing chain of rational kernels together with one normalized
functional per step.  Equality, rank, degree, refinement, meets and the
chain of coarsenings are all read off the canonical form.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import lcm
from typing import Callable, Iterable, Sequence

from .errors import DimensionMismatch, NotUnimodular, PreorderError
from .linalg import IntLattice, RatSubspace, determinant, integer_row, rational_kernel
from .scalar import DEFAULT_D, QuadExt, as_fraction, dot, field_of, sign


class Ordering(enum.IntEnum):
    LESS = -1
    EQUIV = 0
    GREATER = 1

    def __neg__(self):
        return Ordering(-int(self))

    @classmethod
    def from_sign(cls, s: int) -> "Ordering":
        return cls(s)


@dataclass(frozen=True)
class Level:
    """One step of the kernel chain.

    ``functional`` holds the coordinates of the level's weight restricted to
    ``kernel_before``, expressed in the RREF basis of that subspace; its first
    nonzero entry is +1 or -1.
    """

    kernel_before: RatSubspace
    functional: tuple[QuadExt, ...]

    def value(self, v: Sequence) -> QuadExt:
        """Functional evaluated at ``v``, which must lie in ``kernel_before``."""
        return dot(self.kernel_before.coords(v), self.functional)

    def lift(self) -> tuple[QuadExt, ...]:
        """An ambient weight vector restricting to this level's functional.

        RREF basis vectors are unit vectors on their pivot columns, so placing
        the coordinates on the pivots reproduces them exactly.
        """
        out = [QuadExt(0)] * self.kernel_before.n
        for p, f in zip(self.kernel_before.pivots, self.functional):
            out[p] = f
        return tuple(out)


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    levels: tuple[Level, ...]
    kernel_after: RatSubspace

    @property
    def rank(self) -> int:
        return len(self.levels)

    @property
    def degree(self) -> int:
        return self.kernel_after.dim

    def prefix(self, k: int) -> "CanonicalForm":
        if k >= len(self.levels):
            return self
        after = self.levels[k].kernel_before
        return CanonicalForm(self.n, self.levels[:k], after)


def _coerce_rows(rows: Iterable[Sequence], n: int, d: int) -> tuple[tuple[QuadExt, ...], ...]:
    out = []
    for row in rows:
        row = tuple(QuadExt.coerce(x, d) for x in row)
        if len(row) != n:
            raise DimensionMismatch(f"weight vector of length {len(row)} in dimension {n}")
        out.append(row)
    return tuple(out)


def canonicalize(rows: Sequence[Sequence[QuadExt]], n: int) -> CanonicalForm:
    """Reduce a weight list to its canonical kernel chain.

    Each row is restricted to the current kernel; rows vanishing there add
    nothing and are dropped, the rest are scaled by the absolute value of
    their first nonzero coordinate (a positive scalar, so the order is kept).
    """
    kernel = RatSubspace.full(n)
    levels = []
    for w in rows:
        if kernel.dim == 0:
            break
        f = tuple(dot(b, w) for b in kernel.basis)
        lead = next((x for x in f if x), None)
        if lead is None:
            continue
        scale = abs(lead)
        f = tuple(x / scale for x in f)
        levels.append(Level(kernel, f))
        kernel = rational_kernel([w], kernel)
    return CanonicalForm(n, tuple(levels), kernel)


class MatrixPreorder:
    """Preorder ``<=_(w_1, ..., w_s)`` on Z^n / Q^n.

    >>> p = MatrixPreorder(2, [[0, 1], [1, 0]])
    >>> p.rank, p.degree
    (2, 0)
    >>> cmp(p, (0, 0), (1, 0))
    <Ordering.LESS: -1>
    """

    def __init__(self, n: int, rows: Iterable[Sequence] = (), d: int = DEFAULT_D):
        if n < 0:
            raise PreorderError("dimension must be non-negative")
        self.n = n
        self.rows = _coerce_rows(rows, n, d)
        self.d = field_of(self.rows) or d
        self.canonical = canonicalize(self.rows, n)

    @classmethod
    def trivial(cls, n: int) -> "MatrixPreorder":
        return cls(n, ())

    @classmethod
    def from_canonical(cls, form: CanonicalForm) -> "MatrixPreorder":
        return cls(form.n, [lvl.lift() for lvl in form.levels])

    @property
    def group(self):
        from .groups import Zn

        return Zn(self.n)

    bi_invariant = True

    @property
    def rank(self) -> int:
        return self.canonical.rank

    @property
    def degree(self) -> int:
        return self.canonical.degree

    @property
    def is_order(self) -> bool:
        return self.degree == 0

    @cached_property
    def canonical_rows(self) -> tuple[tuple[QuadExt, ...], ...]:
        return tuple(lvl.lift() for lvl in self.canonical.levels)

    @cached_property
    def residue(self) -> IntLattice:
        return IntLattice.saturation_of(self.canonical.kernel_after)

    def _check(self, v: Sequence) -> None:
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} for a preorder on Q^{self.n}")

    def positivity(self, v: Sequence) -> Ordering:
        """Compare ``v`` with the identity 0."""
        self._check(v)
        v = tuple(as_fraction(x) for x in v)
        for level in self.canonical.levels:
            s = sign(level.value(v))
            if s:
                return Ordering(s)
        return Ordering.EQUIV

    def cmp(self, u: Sequence, v: Sequence) -> Ordering:
        self._check(u)
        self._check(v)
        return -self.positivity(tuple(as_fraction(b) - as_fraction(a) for a, b in zip(u, v)))

    def cmp_rows(self, u: Sequence, v: Sequence) -> Ordering:
        """Comparison using the stored rows rather than the canonical form."""
        self._check(u)
        self._check(v)
        diff = tuple(as_fraction(b) - as_fraction(a) for a, b in zip(u, v))
        for w in self.rows:
            s = sign(dot(diff, w))
            if s:
                return Ordering(-s)
        return Ordering.EQUIV

    def normal_form(self, v: Sequence[int]) -> tuple[int, ...]:
        """Representative of the class of ``v`` modulo the residue lattice."""
        return self.residue.reduce(v)

    def __eq__(self, other):
        if not isinstance(other, MatrixPreorder):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(map(str, r)) + ")" for r in self.canonical_rows)
        return f"MatrixPreorder(n={self.n}, [{rows}])"


# --------------------------------------------------------------------------
# operations


def cmp(p: MatrixPreorder, u: Sequence, v: Sequence) -> Ordering:
    return p.cmp(u, v)


def _same_dim(p: MatrixPreorder, q: MatrixPreorder) -> None:
    if p.n != q.n:
        raise DimensionMismatch(f"preorders on Q^{p.n} and Q^{q.n}")


def equals(p: MatrixPreorder, q: MatrixPreorder) -> bool:
    _same_dim(p, q)
    return p.canonical == q.canonical


def compose(p: MatrixPreorder, q: MatrixPreorder) -> MatrixPreorder:
    """``p o q``: compare by ``p``, break ``p``-ties by ``q``.

    On weight matrices this is row concatenation.
    """
    _same_dim(p, q)
    return MatrixPreorder(p.n, p.canonical_rows + q.canonical_rows)


def compose_all(preorders: Sequence[MatrixPreorder], n: int) -> MatrixPreorder:
    return reduce(compose, preorders, MatrixPreorder.trivial(n))


def rank(p: MatrixPreorder) -> int:
    return p.rank


def degree(p: MatrixPreorder) -> int:
    return p.degree


def _common_prefix(p: MatrixPreorder, q: MatrixPreorder) -> int:
    k = 0
    for a, b in zip(p.canonical.levels, q.canonical.levels):
        if a != b:
            break
        k += 1
    return k


def refines(coarse: MatrixPreorder, fine: MatrixPreorder) -> bool:
    """True iff ``fine`` refines ``coarse``."""
    _same_dim(coarse, fine)
    return _common_prefix(coarse, fine) == coarse.rank


def meet(p: MatrixPreorder, q: MatrixPreorder) -> MatrixPreorder:
    _same_dim(p, q)
    return MatrixPreorder.from_canonical(p.canonical.prefix(_common_prefix(p, q)))


def raf_minus(p: MatrixPreorder) -> list[MatrixPreorder]:
    """All coarsenings of ``p``, from the trivial preorder up to ``p``."""
    return [MatrixPreorder.from_canonical(p.canonical.prefix(k)) for k in range(p.rank + 1)]


def decompose(p: MatrixPreorder) -> list[MatrixPreorder]:
    """Rank-one factors whose composition is ``p``; empty for the trivial preorder."""
    return [MatrixPreorder(p.n, [row]) for row in p.canonical_rows]


def residue_lattice(p: MatrixPreorder) -> IntLattice:
    return p.residue


def pullback(p: MatrixPreorder, matrix: Sequence[Sequence[int]]) -> MatrixPreorder:
    """Action of the automorphism ``u -> A u``: ``u <=' v`` iff ``Au <= Av``.

    Row vectors transform as ``w -> w^T A``.
    """
    n = p.n
    a = [list(row) for row in matrix]
    if len(a) != n or any(len(row) != n for row in a):
        raise DimensionMismatch(f"automorphism must be {n}x{n}")
    if any(not isinstance(x, int) or isinstance(x, bool) for row in a for x in row):
        if any(as_fraction(x).denominator != 1 for row in a for x in row):
            raise NotUnimodular("automorphism matrix must have integer entries")
        a = [[int(as_fraction(x)) for x in row] for row in a]
    if abs(determinant(a)) != 1:
        raise NotUnimodular("automorphism matrix must have determinant +1 or -1")
    rows = []
    for w in p.rows:
        rows.append(tuple(
            sum((w[i] * a[i][j] for i in range(n) if a[i][j]), QuadExt(0)) for j in range(n)
        ))
    return MatrixPreorder(n, rows, p.d)


# --------------------------------------------------------------------------
# witness search


def _shell(k: int, radius: int):
    """Integer vectors of max-norm exactly ``radius`` in a fixed order:
    by L1 norm, then lexicographically descending."""
    if radius == 0:
        yield (0,) * k
        return
    pts = [v for v in itertools.product(range(-radius, radius + 1), repeat=k)
           if max(abs(x) for x in v) == radius]
    pts.sort(key=lambda v: (sum(abs(x) for x in v), tuple(-x for x in v)))
    yield from pts


def _scale_to_int(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = lcm(*(as_fraction(x).denominator for x in v)) if v else 1
    return tuple(int(as_fraction(x) * den) for x in v)


def _field_solve2(m11, m12, m21, m22, r1, r2):
    det = m11 * m22 - m12 * m21
    if not det:
        return None
    return (r1 * m22 - r2 * m12) / det, (m11 * r2 - m21 * r1) / det


def cone_point(pos: Sequence[QuadExt], neg: Sequence[QuadExt] | None) -> tuple[Fraction, ...]:
    """Rational ``c`` with ``pos . c > 0`` and (if given) ``neg . c < 0``.

    Requires that ``neg`` is not a positive multiple of ``pos``.  A real point
    of the open cone is built in Q(sqrt(D)) and rounded with growing
    precision until the strict inequalities hold exactly.
    """
    target = None
    if neg is not None and any(neg):
        g11 = dot_q(pos, pos)
        g12 = dot_q(pos, neg)
        g22 = dot_q(neg, neg)
        sol = _field_solve2(g11, g12, g12, g22, QuadExt(1), QuadExt(-1))
        if sol is not None:
            al, be = sol
            target = [al * x + be * y for x, y in zip(pos, neg)]
    if target is None:
        target = list(pos)
    bits = 4
    while True:
        c = tuple(x.approx(bits) for x in target)
        ok = sign(dot(c, pos)) > 0
        if ok and neg is not None and any(neg):
            ok = sign(dot(c, neg)) < 0
        if ok:
            return c
        bits *= 2
        if bits > 4096:
            raise PreorderError("no rational point found in the open cone")


def dot_q(x: Sequence[QuadExt], y: Sequence[QuadExt]) -> QuadExt:
    return sum((a * b for a, b in zip(x, y)), QuadExt(0))


def _first_difference(p: MatrixPreorder, q: MatrixPreorder) -> int:
    return _common_prefix(p, q)


def search_kernel(kernel: RatSubspace, predicate: Callable[[tuple], bool],
                  strict: Callable[[tuple], bool] | None = None,
                  budget: int = 4000) -> tuple[int, ...] | None:
    """Deterministic integer-coordinate search inside ``kernel``.

    Shells of growing max-norm are scanned; within a shell a candidate
    satisfying ``strict`` is preferred over one only satisfying ``predicate``.
    Returns an integer ambient vector or None when ``budget`` runs out.
    """
    k = kernel.dim
    if k == 0:
        return None
    seen = 0
    radius = 1
    while True:
        fallback = None
        for c in _shell(k, radius):
            seen += 1
            u = _scale_to_int(kernel.from_coords(c))
            if predicate(u):
                if strict is None or strict(u):
                    return u
                if fallback is None:
                    fallback = u
        if fallback is not None:
            return fallback
        if seen >= budget:
            return None
        radius += 1


def distinguishing_vector(p: MatrixPreorder, q: MatrixPreorder) -> tuple[int, ...] | None:
    """Integer ``u`` with ``cmp(p, u, 0) != cmp(q, u, 0)``, or None if ``p == q``.

    The search runs over the kernel at the first level where the canonical
    forms differ; candidates on which the two preorders give opposite strict
    signs are preferred.
    """
    _same_dim(p, q)
    if p.canonical == q.canonical:
        return None
    i = _first_difference(p, q)
    lp = p.canonical.levels[i] if i < p.rank else None
    lq = q.canonical.levels[i] if i < q.rank else None
    kernel = (lp or lq).kernel_before

    def differs(u):
        return p.positivity(u) != q.positivity(u)

    def opposite(u):
        return p.positivity(u) == -q.positivity(u) != Ordering.EQUIV

    u = search_kernel(kernel, differs, opposite)
    if u is None:
        if lp is not None:
            c = cone_point(lp.functional, lq.functional if lq else None)
        else:
            c = cone_point(lq.functional, None)
        u = _scale_to_int(kernel.from_coords(c))
    assert differs(u)
    return u


def refinement_witness(coarse: MatrixPreorder, fine: MatrixPreorder) -> tuple[int, ...] | None:
    """Integer ``u`` with ``u > 0`` strictly for ``coarse`` but not for ``fine``.

    Exists exactly when ``fine`` does not refine ``coarse``.
    """
    if refines(coarse, fine):
        return None
    i = _common_prefix(coarse, fine)
    lc = coarse.canonical.levels[i]
    lf = fine.canonical.levels[i] if i < fine.rank else None

    def witness(u):
        return coarse.positivity(u) == Ordering.GREATER and fine.positivity(u) != Ordering.GREATER

    def strict(u):
        return fine.positivity(u) == Ordering.LESS

    u = search_kernel(lc.kernel_before, witness, strict)
    if u is None:
        c = cone_point(lc.functional, lf.functional if lf else None)
        u = _scale_to_int(lc.kernel_before.from_coords(c))
    assert witness(u)
    return u


def integer_direction(v: Sequence) -> tuple[int, ...]:
    return integer_row([as_fraction(x) for x in v])
