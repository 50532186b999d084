import random

import pytest

from zrspace import (
    HEISENBERG, Composite, HElem, LeftLex, MatrixPreorder, Ordering, PullbackAb, Trivial,
    is_standard, layered, layered_compose,
)
from zrspace.errors import PreorderError
from zrspace.groups import (
    h_automorphism, h_automorphism_inverse, h_inv, h_mul, h_tier, layered_cmp,
    sampled_standardness,
)

from _gen import (
    composed_cmp, heisenberg_matrix, matmul, rand_gl2, rand_h, rand_int_preorder, rand_layered,
)

LEX = MatrixPreorder(2, [(1, 0), (0, 1)])
PLUS = MatrixPreorder(1, [[1]])
MINUS = MatrixPreorder(1, [[-1]])


def test_heisenberg_examples():
    assert h_mul((1, 0, 0), (0, 1, 0)) == (1, 1, 1)
    assert h_mul((0, 1, 0), (1, 0, 0)) == (1, 1, 0)
    assert h_inv((1, 2, 3)) == (-1, -2, -1)
    assert h_mul((1, 2, 3), h_inv((1, 2, 3))) == (0, 0, 0)
    assert h_tier((0, 0, 5)) == 1
    assert h_tier((1, 0, 5)) == 0
    assert h_tier((0, 0, 0)) == float("inf")


def test_heisenberg_matches_unitriangular_matrices():
    rng = random.Random(30)
    for _ in range(1000):
        g, h = rand_h(rng, 50), rand_h(rng, 50)
        assert heisenberg_matrix(h_mul(g, h)) == matmul(heisenberg_matrix(g), heisenberg_matrix(h))
        assert h_mul(h_inv(g), g) == (0, 0, 0)


def test_automorphisms_are_homomorphisms():
    rng = random.Random(31)
    for _ in range(200):
        m = rand_gl2(rng)
        for _ in range(10):
            x, y = rand_h(rng, 8), rand_h(rng, 8)
            assert h_automorphism(m, h_mul(x, y)) == h_mul(h_automorphism(m, x), h_automorphism(m, y))
            assert h_automorphism_inverse(m, h_automorphism(m, x)) == x


def test_layered_cmp_examples():
    assert layered_cmp(Trivial(), (1, 2, 3), (-4, 0, 9)) == Ordering.EQUIV
    comp = Composite(LEX, PLUS)
    assert layered_cmp(comp, (0, 1, 5), (0, 1, -2)) == Ordering.GREATER
    ab = PullbackAb(MatrixPreorder(2, [(1, 0)]))
    assert layered_cmp(ab, (0, 3, 9), (0, -5, -1)) == Ordering.EQUIV


def test_layered_compose_examples():
    rng = random.Random(32)
    for _ in range(20):
        q = rand_layered(rng)
        assert layered_compose(Trivial(), q) == q
    e1, e2 = MatrixPreorder(2, [(1, 0)]), MatrixPreorder(2, [(0, 1)])
    assert layered_compose(PullbackAb(e1), PullbackAb(e2)) == PullbackAb(MatrixPreorder(2, [(1, 0), (0, 1)]))
    order = MatrixPreorder(2, [(1, 1), (0, 1)])
    for c in (PLUS, MINUS):
        got = layered_compose(PullbackAb(order), Composite(LEX, c))
        assert got == Composite(order, c)


def test_layered_constructor_normalizes():
    assert layered() == Trivial()
    assert layered(MatrixPreorder.trivial(2)) == Trivial()
    assert isinstance(layered(MatrixPreorder(2, [(1, 0)])), PullbackAb)
    with pytest.raises(PreorderError):
        layered(MatrixPreorder(2, [(1, 0)]), PLUS)
    with pytest.raises(PreorderError):
        layered(None, PLUS)


def test_layered_compose_matches_definition():
    rng = random.Random(33)
    for _ in range(200):
        p, q = rand_layered(rng), rand_layered(rng)
        pq = layered_compose(p, q)
        for _ in range(30):
            g, h = rand_h(rng, 4), rand_h(rng, 4)
            assert pq.cmp(g, h) == composed_cmp(p, q, g, h)


def test_bi_invariance_and_transitivity():
    rng = random.Random(34)
    for _ in range(100):
        p = rand_layered(rng)
        for _ in range(30):
            g, h, x = rand_h(rng), rand_h(rng), rand_h(rng)
            o = p.cmp(g, h)
            assert o == -p.cmp(h, g)
            assert o == p.cmp(h_mul(x, g), h_mul(x, h)) == p.cmp(h_mul(g, x), h_mul(h, x))
            if o != Ordering.GREATER and p.cmp(h, x) != Ordering.GREATER:
                assert p.cmp(g, x) != Ordering.GREATER


def test_residue_is_normal_subgroup():
    rng = random.Random(35)
    for _ in range(100):
        p = rand_layered(rng)
        residues = [g for g in (rand_h(rng, 3) for _ in range(200)) if p.positivity(g) == Ordering.EQUIV]
        for r in residues[:10]:
            for _ in range(10):
                g = rand_h(rng, 6)
                assert p.positivity(h_mul(h_mul(g, r), h_inv(g))) == Ordering.EQUIV
            for s in residues[:5]:
                assert p.positivity(h_mul(r, s)) == Ordering.EQUIV
                assert p.positivity(h_inv(s)) == Ordering.EQUIV


def test_normal_form_is_class_invariant():
    rng = random.Random(36)
    for _ in range(100):
        p = rand_layered(rng)
        for _ in range(20):
            g, h = rand_h(rng, 4), rand_h(rng, 4)
            same = p.cmp(g, h) == Ordering.EQUIV
            assert (p.normal_form(g) == p.normal_form(h)) == same
            assert p.cmp(p.normal_form(g), g) == Ordering.EQUIV


def test_standardness_examples():
    rng = random.Random(37)
    for _ in range(10):
        check = is_standard(rand_int_preorder(rng, 3))
        assert check.standard and check.exact
    assert is_standard(Composite(LEX, PLUS)).standard
    # sampled confirmation of the exact verdict
    assert sampled_standardness(Composite(LEX, PLUS), samples=500).standard
    check = is_standard(LeftLex())
    assert not check.standard
    assert check.counterexample == ((0, 1, 0), (0, 0, -1))
    g, h = check.counterexample
    assert LeftLex().positivity(g) == Ordering.GREATER
    assert LeftLex().positivity(h_mul(g, h)) == Ordering.LESS


def test_layered_family_passes_sampled_standardness():
    rng = random.Random(38)
    for _ in range(30):
        p = rand_layered(rng)
        assert sampled_standardness(p, samples=200, seed=rng.randint(0, 99)).standard


def test_standard_composition():
    rng = random.Random(39)
    for _ in range(200):
        p, q = rand_layered(rng), rand_layered(rng)
        assert is_standard(layered_compose(p, q)).standard


def test_left_lex_is_left_invariant_only():
    rng = random.Random(40)
    for _ in range(30):
        p = LeftLex(rand_gl2(rng))
        for _ in range(30):
            g, h, x = rand_h(rng), rand_h(rng), rand_h(rng)
            assert p.cmp(g, h) == p.cmp(h_mul(x, g), h_mul(x, h))
        g, h, x = p.right_invariance_witness()
        assert p.cmp(g, h) == Ordering.LESS
        assert p.cmp(h_mul(g, x), h_mul(h, x)) == Ordering.GREATER
        assert not is_standard(p).standard
    with pytest.raises(PreorderError):
        layered_compose(LeftLex(), Trivial())


def test_left_lex_is_a_total_order():
    rng = random.Random(41)
    p = LeftLex(((2, 1), (1, 1)))
    for _ in range(500):
        g = rand_h(rng)
        assert (p.positivity(g) == Ordering.EQUIV) == (g == HEISENBERG.identity)
        assert p.positivity(h_inv(g)) == -p.positivity(g)
        h = rand_h(rng)
        if p.positivity(g) == p.positivity(h) == Ordering.GREATER:
            assert p.positivity(h_mul(g, h)) == Ordering.GREATER


def test_composite_validation():
    with pytest.raises(PreorderError):
        Composite(MatrixPreorder(2, [(1, 0)]), PLUS)
    with pytest.raises(PreorderError):
        Composite(LEX, MatrixPreorder.trivial(1))
    assert HElem(1, 2, 3).inverse() == h_inv((1, 2, 3))
