"""Rational subspaces (reduced row-echelon form) and integer lattices (Hermite
normal form).

Both types store a canonical basis, so structural equality of two values is
mathematical equality of the subspaces/lattices they describe.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .scalar import QuadExt, as_fraction

Vector = tuple


def rref(rows: Iterable[Sequence], n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Nonzero rows of the reduced row-echelon form of ``rows``."""
    m = [[as_fraction(x) for x in row] for row in rows]
    for row in m:
        if len(row) != n:
            raise DimensionMismatch(f"row of length {len(row)} in ambient dimension {n}")
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r])


def nullspace(rows: Sequence[Sequence], n: int) -> tuple[tuple[Fraction, ...], ...]:
    """A basis of ``{x in Q^n : row . x = 0 for every row}``."""
    red = rref(rows, n)
    pivots = [next(j for j, x in enumerate(row) if x != 0) for row in red]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return tuple(basis)


def integer_row(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector, made primitive."""
    den = lcm(*(as_fraction(x).denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


@dataclass(frozen=True)
class RatSubspace:
    """Subspace of Q^n stored by its RREF basis."""

    n: int
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], n: int) -> "RatSubspace":
        return cls(n, rref(vectors, n))

    @classmethod
    def full(cls, n: int) -> "RatSubspace":
        return cls(n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "RatSubspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x != 0) for row in self.basis)

    def coords(self, v: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of ``v`` (assumed to lie in the subspace) in the RREF basis."""
        return tuple(as_fraction(v[p]) for p in self.pivots)

    def from_coords(self, c: Sequence) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.n
        for ci, row in zip(c, self.basis):
            if ci:
                for j, x in enumerate(row):
                    if x:
                        out[j] += ci * x
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.n}")
        return tuple(map(as_fraction, v)) == self.from_coords(self.coords(v))

    def is_subspace_of(self, other: "RatSubspace") -> bool:
        return all(other.contains(row) for row in self.basis)

    def __contains__(self, v) -> bool:
        return self.contains(v)


def rational_kernel(rows: Iterable[Sequence[QuadExt]], within: RatSubspace) -> RatSubspace:
    """``{u in within : u . w = 0 for every row w}`` for Q(sqrt(D)) rows.

    For rational ``u`` and ``w = a + sqrt(D) b`` the condition splits into
    ``u . a = 0`` and ``u . b = 0``.
    """
    constraints = []
    for w in rows:
        if len(w) != within.n:
            raise DimensionMismatch(f"row of length {len(w)} in ambient dimension {within.n}")
        w = [QuadExt.coerce(x) for x in w]
        for part in ([x.a for x in w], [x.b for x in w]):
            # restrict to within: coordinate j is basis_j . part
            c = tuple(sum((bj * pj for bj, pj in zip(bvec, part) if bj and pj), Fraction(0))
                      for bvec in within.basis)
            if any(c):
                constraints.append(c)
    if not constraints:
        return within
    null = nullspace(constraints, within.dim)
    return RatSubspace.span((within.from_coords(c) for c in null), within.n)


# --------------------------------------------------------------------------
# integer lattices


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf_with_transform(matrix: Sequence[Sequence[int]], ncols: int | None = None):
    """Row-style Hermite normal form.

    Returns ``(H, U, r)`` with ``U`` unimodular, ``U @ M == H``, the first
    ``r`` rows of ``H`` nonzero (positive pivots, entries above each pivot
    reduced into ``[0, pivot)``) and the remaining rows zero.
    """
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for col in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if a[i][col] == 0:
                continue
            p, q = a[r][col], a[i][col]
            g, x, y = xgcd(p, q)
            s, t = -q // g, p // g
            for rows in (a, u):
                ri, rr = rows[i], rows[r]
                rows[r] = [x * e + y * f for e, f in zip(rr, ri)]
                rows[i] = [s * e + t * f for e, f in zip(rr, ri)]
        piv = a[r][col]
        if piv == 0:
            continue
        if piv < 0:
            a[r] = [-e for e in a[r]]
            u[r] = [-e for e in u[r]]
            piv = -piv
        for i in range(r):
            q = a[i][col] // piv
            if q:
                a[i] = [e - q * f for e, f in zip(a[i], a[r])]
                u[i] = [e - q * f for e, f in zip(u[i], u[r])]
        r += 1
    return a, u, r


def hnf(rows: Iterable[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    rows = [tuple(int(x) for x in row) for row in rows]
    for row in rows:
        if len(row) != n:
            raise DimensionMismatch(f"row of length {len(row)} in ambient dimension {n}")
    if not rows:
        return ()
    h, _, r = hnf_with_transform(rows, n)
    return tuple(tuple(row) for row in h[:r])


def left_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Integer basis of ``{x in Z^m : x @ M == 0}``; it is always saturated."""
    if not matrix:
        return []
    _, u, r = hnf_with_transform(matrix, ncols)
    return [row for row in u[r:]]


def integer_kernel(matrix: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Integer basis of ``{x in Z^n : M @ x == 0}``."""
    if not matrix:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    transposed = [[row[j] for row in matrix] for j in range(n)]
    return left_kernel(transposed, len(matrix))


@dataclass(frozen=True)
class IntLattice:
    """Sublattice of Z^n stored by its HNF basis."""

    n: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, rows: Iterable[Sequence[int]], n: int) -> "IntLattice":
        return cls(n, hnf(rows, n))

    @classmethod
    def full(cls, n: int) -> "IntLattice":
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def saturation_of(cls, space: RatSubspace) -> "IntLattice":
        """``Z^n`` intersected with a rational subspace."""
        n = space.n
        if space.dim == n:
            return cls.full(n)
        perp = [integer_row(v) for v in nullspace(space.basis, n)]
        return cls.from_generators(integer_kernel(perp, n), n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of ``v`` modulo the lattice."""
        v = [int(x) for x in v]
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x)
            q = v[p] // row[p]
            if q:
                v = [e - q * f for e, f in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.n}")
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)


def lattice_intersect(l1: IntLattice, l2: IntLattice) -> IntLattice:
    """HNF basis of ``l1 & l2``.

    ``x @ B1 + y @ B2 == 0`` exactly when ``x @ B1`` lies in both lattices, so
    the intersection is the image of the left kernel of the stacked bases.
    """
    if l1.n != l2.n:
        raise DimensionMismatch(f"lattices in Z^{l1.n} and Z^{l2.n}")
    n = l1.n
    if not l1.basis or not l2.basis:
        return IntLattice(n, ())
    stacked = [list(r) for r in l1.basis] + [list(r) for r in l2.basis]
    k1 = len(l1.basis)
    gens = []
    for coeffs in left_kernel(stacked, n):
        x = coeffs[:k1]
        gens.append([sum(xi * row[j] for xi, row in zip(x, l1.basis)) for j in range(n)])
    return IntLattice.from_generators(gens, n)


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    m = [[as_fraction(x) for x in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for i in range(col + 1, n):
            if m[i][col]:
                f = m[i][col] / m[col][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return det
