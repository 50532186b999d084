import random
from fractions import Fraction

import pytest

from zrspace import (
    HEISENBERG, Composite, GroupAlgebraElement as GA, LeftLex, MatrixPreorder, Ordering, Zn,
    in_max_ideal, in_ring, leading_form, shift_case, standard_shift, valuate,
)
from zrspace.errors import GroupMismatch, PreconditionFailed, PreorderError
from zrspace.valuation import ga_add, ga_mul, make_value

from _gen import rand_int_preorder, rand_layered, rand_poly, rand_preorder

Z2 = Zn(2)
LEX = MatrixPreorder(2, [(1, 0), (0, 1)])
COMP = Composite(LEX, MatrixPreorder(1, [[1]]))


def P(group, *terms):
    return GA(group, [(g, a) for a, g in terms])


def test_algebra_examples():
    x = P(Z2, (1, (1, 0)), (-1, (0, 1)))
    assert ga_add(x, -x) == GA.zero(Z2) and not ga_add(x, -x).terms
    a, b = GA.monomial(HEISENBERG, (1, 0, 0)), GA.monomial(HEISENBERG, (0, 1, 0))
    assert ga_mul(a, b) == GA.monomial(HEISENBERG, (1, 1, 1))
    assert ga_mul(b, a) == GA.monomial(HEISENBERG, (1, 1, 0))
    y = P(Z2, (1, (1, 0)), (1, (0, 1)))
    assert ga_mul(x, y) == P(Z2, (1, (2, 0)), (-1, (0, 2)))
    assert GA(Z2, {(0, 0): Fraction(0)}).terms == {}


def test_algebra_ring_axioms():
    rng = random.Random(60)
    for group in (Z2, HEISENBERG):
        for _ in range(100):
            p, q, r = (rand_poly(rng, group, 3, 2) for _ in range(3))
            assert (p * q) * r == p * (q * r)
            assert p * (q + r) == p * q + p * r
            assert (p + q) * r == p * r + q * r


def test_valuate_examples():
    assert valuate(LEX, GA.zero(Z2)).is_infinite
    p = MatrixPreorder(2, [(1, 1)])
    assert valuate(p, P(Z2, (3, (1, 0)), (5, (0, 2)))) == make_value(p, (1, 0))
    e1 = MatrixPreorder(2, [(1, 0)])
    v = valuate(e1, P(Z2, (1, (0, 1)), (-1, (0, 5)), (1, (1, 0))))
    assert v == make_value(e1, (0, 1)) == make_value(e1, (0, 0))


def test_infinity_above_everything():
    inf = valuate(LEX, GA.zero(Z2))
    rng = random.Random(61)
    for _ in range(50):
        v = valuate(LEX, rand_poly(rng, Z2))
        assert inf > v and v < inf and not inf < v
    assert inf == valuate(LEX, GA.zero(Z2))


def test_leading_form_examples():
    rng = random.Random(62)
    poly = rand_poly(rng, Z2, 6)
    lf = leading_form(LEX, poly)
    assert len(lf.terms) == 1
    e1 = MatrixPreorder(2, [(1, 0)])
    poly = P(Z2, (1, (0, 1)), (-1, (0, 5)), (1, (1, 0)))
    assert leading_form(e1, poly) == P(Z2, (1, (0, 1)), (-1, (0, 5)))
    assert leading_form(MatrixPreorder.trivial(2), poly) == poly
    with pytest.raises(PreorderError):
        leading_form(LEX, GA.zero(Z2))


def test_membership_examples():
    zero = GA.zero(Z2)
    assert in_ring(LEX, zero) and in_max_ideal(LEX, zero)
    p = MatrixPreorder(2, [(1, 1)])
    assert in_ring(p, P(Z2, (1, (1, 0)))) and in_max_ideal(p, P(Z2, (1, (1, 0))))
    q = P(Z2, (1, (-1, 0)), (1, (2, 0)))
    assert not in_ring(p, q) and not in_max_ideal(p, q)
    assert in_ring(p, P(Z2, (1, (1, -1)))) and not in_max_ideal(p, P(Z2, (1, (1, -1))))


def test_shift_examples():
    h0 = (1, 0)
    assert standard_shift(LEX, h0, P(Z2, (1, (-3, 0)), (1, (5, 5)))) == (4, 0)
    shifted = GA.monomial(Z2, (4, 0)) * P(Z2, (1, (-3, 0)), (1, (5, 5)))
    assert valuate(LEX, shifted) == make_value(LEX, (1, 0))
    assert standard_shift(LEX, h0, P(Z2, (1, (2, 3)))) == (1, 0)
    poly = P(HEISENBERG, (1, (0, 0, -7)), (1, (1, 2, 0)))
    s = standard_shift(COMP, (1, 0, 0), poly)
    assert s == (1, 0, 0)
    shifted = GA.monomial(HEISENBERG, s) * poly
    assert set(shifted.support) == {(1, 0, -7), (2, 2, 2)}
    assert valuate(COMP, shifted).rep == (1, 0, -7)
    assert in_max_ideal(COMP, shifted)


def test_shift_boundary_routes_to_first_case():
    # g0 ~ h0^-1 exactly
    poly = P(Z2, (1, (-1, 0)))
    assert shift_case(LEX, (1, 0), poly) == 1
    assert standard_shift(LEX, (1, 0), poly) == (2, 0)
    # equivalent but not equal under a preorder with residue
    e1 = MatrixPreorder(2, [(1, 0)])
    poly = P(Z2, (1, (-1, 7)))
    assert shift_case(e1, (1, 3), poly) == 1
    s = standard_shift(e1, (1, 3), poly)
    assert in_max_ideal(e1, GA.monomial(Z2, s) * poly)


def test_shift_preconditions():
    with pytest.raises(PreconditionFailed):
        standard_shift(LEX, (-1, 0), P(Z2, (1, (0, 0))))
    with pytest.raises(PreconditionFailed):
        standard_shift(LEX, (1, 0), GA.zero(Z2))
    with pytest.raises(PreconditionFailed):
        standard_shift(COMP, (0, 0, 1), P(HEISENBERG, (1, (0, 0, 0))))
    with pytest.raises(PreconditionFailed):
        standard_shift(LeftLex(), (1, 0, 0), P(HEISENBERG, (1, (0, 0, 0))))
    with pytest.raises(GroupMismatch):
        valuate(LEX, P(HEISENBERG, (1, (0, 0, 0))))


def _families(rng):
    if rng.random() < 0.5:
        n = rng.randint(1, 3)
        return rand_preorder(rng, n) if rng.random() < 0.5 else rand_int_preorder(rng, n)
    return rand_layered(rng)


def test_valuation_axioms():
    rng = random.Random(63)
    for _ in range(300):
        p = _families(rng)
        f, g = rand_poly(rng, p.group), rand_poly(rng, p.group)
        vf, vg = valuate(p, f), valuate(p, g)
        assert valuate(p, f * g) == vf * vg
        vs = valuate(p, f + g)
        low = vf if vf <= vg else vg
        assert vs >= low
        if vf.compare(vg) != Ordering.EQUIV:
            assert vs == low
        assert leading_form(p, f * g) == leading_form(p, f) * leading_form(p, g)


def test_ring_closed_under_operations():
    rng = random.Random(64)
    checked = 0
    for _ in range(400):
        p = _families(rng)
        f, g = rand_poly(rng, p.group), rand_poly(rng, p.group)
        if in_ring(p, f) and in_ring(p, g):
            checked += 1
            assert in_ring(p, f + g) and in_ring(p, f * g)
            if in_max_ideal(p, f):
                assert in_max_ideal(p, f * g) and in_max_ideal(p, g * f)
    assert checked > 30


def test_shift_cases_and_noise():
    rng = random.Random(65)
    cases = set()
    for _ in range(400):
        p = _families(rng)
        group = p.group
        h0 = group.random_element(rng, 3)
        if group.tier(h0) != 0 or p.positivity(h0) == Ordering.EQUIV:
            continue
        if p.positivity(h0) == Ordering.LESS:
            h0 = group.inv(h0)
        poly = rand_poly(rng, group)
        cases.add(shift_case(p, h0, poly))
        s = standard_shift(p, h0, poly)
        assert in_max_ideal(p, GA.monomial(group, s) * poly)
        v = valuate(p, poly)
        noise = [t for t in (group.random_element(rng, 6) for _ in range(60))
                 if make_value(p, t) > v][:10]
        noisy = poly + GA(group, [(t, 1) for t in noise])
        assert valuate(p, noisy) == v
        assert standard_shift(p, h0, noisy) == s
    assert {1, 2, 3, 4} <= cases
