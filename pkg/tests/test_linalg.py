import itertools
import random
from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from zrspace.linalg import (
    IntLattice, RatSubspace, hnf, lattice_intersect, rational_kernel, rref,
)
from zrspace.scalar import QuadExt

from _gen import rand_quad

small = st.integers(-4, 4)


def _sympy_member(lat: IntLattice, v) -> bool:
    """Integer membership via sympy's rational solver (independent route)."""
    if not lat.basis:
        return not any(v)
    b = sympy.Matrix(lat.basis).T
    sol, params = b.gauss_jordan_solve(sympy.Matrix(v))
    return all(x.is_integer for x in sol.subs({p: 0 for p in params}))


def _member_or_none(lat, v):
    try:
        return _sympy_member(lat, v)
    except ValueError:  # inconsistent system
        return False


def test_kernel_examples():
    q2 = RatSubspace.full(2)
    assert rational_kernel([], q2) == q2
    assert rational_kernel([(QuadExt(1), QuadExt(0, 1))], q2).dim == 0
    k = rational_kernel([(QuadExt(1), QuadExt(1))], q2)
    assert k == RatSubspace.span([(1, -1)], 2)


def test_kernel_is_sub_and_fixed_point():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 5)
        within = RatSubspace.span([[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, n))], n)
        rows = [[rand_quad(rng) for _ in range(n)] for _ in range(rng.randint(0, 3))]
        k = rational_kernel(rows, within)
        assert k.is_subspace_of(within)
        assert rational_kernel(rows, k) == k
        assert k.basis == rref(k.basis, n)
        for v in k.basis:
            for w in rows:
                assert sum((x * y for x, y in zip(w, v)), QuadExt(0)) == 0


@settings(max_examples=200)
@given(st.lists(st.lists(small, min_size=3, max_size=3), max_size=4))
def test_rref_matches_sympy(rows):
    ours = rref(rows, 3)
    theirs = sympy.Matrix(rows).rref()[0] if rows else sympy.zeros(0, 3)
    expected = tuple(tuple(Fraction(int(x.p), int(x.q)) for x in theirs.row(i))
                     for i in range(theirs.rows) if any(theirs.row(i)))
    assert ours == expected


def test_lattice_intersection_examples():
    e1 = IntLattice.from_generators([(1, 0)], 2)
    e2 = IntLattice.from_generators([(0, 1)], 2)
    assert lattice_intersect(e1, e1) == e1
    assert lattice_intersect(e1, e2).rank == 0
    a = IntLattice.from_generators([(1, 1)], 2)
    # saturated reading (residue lattices are always saturated)
    b = IntLattice.saturation_of(RatSubspace.span([(2, 2), (0, 1)], 2))
    assert lattice_intersect(a, b) == a
    # plain integer span: (1, 1) is half of (2, 2) + (0, 1), not a member
    b = IntLattice.from_generators([(2, 2), (0, 1)], 2)
    assert lattice_intersect(a, b) == IntLattice.from_generators([(2, 2)], 2)


def test_lattice_intersection_brute_force():
    rng = random.Random(4)
    for _ in range(60):
        n = rng.randint(1, 3)
        gens = [[[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(0, n))] for _ in range(2)]
        l1, l2 = (IntLattice.from_generators(g, n) for g in gens)
        inter = lattice_intersect(l1, l2)
        for v in itertools.product(range(-4, 5), repeat=n):
            expected = _member_or_none(l1, v) and _member_or_none(l2, v)
            assert inter.contains(v) == expected, (gens, v)


def test_hnf_canonical_under_unimodular_change():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(rng.randint(1, 4))]
        mixed = [list(r) for r in rows]
        for _ in range(5):
            i, j = rng.randrange(len(mixed)), rng.randrange(len(mixed))
            if i != j:
                k = rng.randint(-3, 3)
                mixed[i] = [x + k * y for x, y in zip(mixed[i], mixed[j])]
            rng.shuffle(mixed)
        assert hnf(rows, n) == hnf(mixed, n)


def test_saturation():
    rng = random.Random(6)
    for _ in range(100):
        n = rng.randint(1, 4)
        space = RatSubspace.span([[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(0, n - 1))], n)
        lat = IntLattice.saturation_of(space)
        assert lat.rank == space.dim
        for v in itertools.product(range(-2, 3), repeat=n):
            assert lat.contains(v) == space.contains(v)
            if any(v):
                m = rng.randint(2, 5)
                assert lat.contains(tuple(m * x for x in v)) == lat.contains(v)
