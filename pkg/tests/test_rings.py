from fractions import Fraction

import pytest

from sylrank import (
    Matrix,
    ParseError,
    RandomSampler,
    Z,
    Q,
    compose,
    hom_apply,
    include_rationals,
    make_hom,
    matrix_to_text,
    parse_matrix,
    reduce_mod,
    regular_rep,
    ring_make,
)
from sylrank.rings import GroupAlgebraRing, MatrixRing, PrimeFieldRing, ResidueRing


def test_ring_grammar_literals():
    assert ring_make("Z") == Z
    assert ring_make("Q") == Q
    assert ring_make("Fp(5)") == PrimeFieldRing(5)
    assert ring_make("Zmod(6)") == ResidueRing(6)
    galg = ring_make("GroupRing(Q,C3)")
    assert isinstance(galg, GroupAlgebraRing) and galg.group.order == 3
    amp = ring_make("Mat(Q,2)")
    assert isinstance(amp, MatrixRing) and amp.k == 2


def test_prime_modulus_normalizes_to_field():
    assert ring_make("Zmod(5)") == PrimeFieldRing(5)


def test_bad_ring_specs():
    for bad in ("Fp(6)", "Zmod(1)", "GroupRing(Z,C3)", "Mat(Q)", "what"):
        with pytest.raises(ParseError):
            ring_make(bad)


@pytest.mark.parametrize("spec", ["Z", "Q", "Fp(5)", "Zmod(6)", "GroupRing(Q,C3)",
                                  "GroupRing(Fp(2),S3)", "Mat(Q,2)"])
def test_ring_axioms_on_sampled_triples(spec):
    ring = ring_make(spec)
    sampler = RandomSampler(17)
    for _ in range(40):
        a, b, c = (sampler.scalar(ring) for _ in range(3))
        assert ring.add(a, ring.add(b, c)) == ring.add(ring.add(a, b), c)
        assert ring.mul(a, ring.mul(b, c)) == ring.mul(ring.mul(a, b), c)
        assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        assert ring.mul(ring.add(a, b), c) == ring.add(ring.mul(a, c), ring.mul(b, c))
        assert ring.mul(ring.one, a) == a == ring.mul(a, ring.one)
        assert ring.add(ring.zero, a) == a
        assert ring.add(a, ring.neg(a)) == ring.zero


@pytest.mark.parametrize("spec", ["Z", "Q", "Fp(7)", "Zmod(9)", "GroupRing(Q,C2)", "Mat(Z,2)"])
def test_scalar_text_roundtrip(spec):
    ring = ring_make(spec)
    sampler = RandomSampler(3)
    for _ in range(20):
        a = sampler.scalar(ring)
        assert ring.scalar_parse(ring.scalar_str(a)) == a


def test_matrix_text_roundtrip():
    ring = ring_make("GroupRing(Q,C2)")
    sampler = RandomSampler(5)
    m = sampler.matrix(ring, 2, 3)
    assert parse_matrix(ring, matrix_to_text(m)).entries == m.entries


def test_hom_apply_examples():
    # entrywise reduction mod 3
    h = reduce_mod(3)
    m = parse_matrix(Z, "4,6")
    assert hom_apply(h, m).entries == (1, 0)
    # inclusion into Q
    h = include_rationals()
    assert hom_apply(h, parse_matrix(Z, "2")).entries == (Fraction(2),)
    # augmentation sends every group element to 1
    galg = ring_make("GroupRing(Q,C2)")
    h = make_hom("aug", galg)
    m = parse_matrix(galg, "1*g0+2*g1")
    assert hom_apply(h, m).entries == (Fraction(3),)


def test_hom_composition_law():
    h1 = reduce_mod(4)
    h2 = make_hom("mod(2)", h1.target)
    combined = compose(h1, h2)
    sampler = RandomSampler(9)
    for _ in range(20):
        m = sampler.matrix(Z)
        assert hom_apply(h2, hom_apply(h1, m)).entries == hom_apply(combined, m).entries


def test_hom_unital_and_multiplicative():
    galg = ring_make("GroupRing(Q,C3)")
    sampler = RandomSampler(21)
    for rule, ring in (("aug", galg), ("regemb", galg), ("mod(6)", Z), ("incQ", Z)):
        h = make_hom(rule, ring)
        assert h.apply(ring.one) == h.target.one
        for _ in range(10):
            a, b = sampler.scalar(ring), sampler.scalar(ring)
            assert h.apply(ring.mul(a, b)) == h.target.mul(h.apply(a), h.apply(b))
            assert h.apply(ring.add(a, b)) == h.target.add(h.apply(a), h.apply(b))


def test_regular_rep_examples():
    galg = ring_make("GroupRing(Q,C2)")
    # identity scalar becomes the 2x2 identity
    ident = parse_matrix(galg, "1*g0+0*g1")
    assert regular_rep(ident).entries == (Fraction(1), Fraction(0), Fraction(0), Fraction(1))
    # e + s becomes the all-ones matrix
    es = parse_matrix(galg, "1*g0+1*g1")
    assert regular_rep(es).entries == (Fraction(1),) * 4
    # empty matrices stay empty
    empty = Matrix.zeros(galg, 0, 0)
    assert regular_rep(empty).shape == (0, 0)


def test_regular_rep_is_multiplicative():
    galg = ring_make("GroupRing(Q,S3)")
    sampler = RandomSampler(13)
    for _ in range(5):
        a = sampler.matrix(galg, 2, 2)
        b = sampler.matrix(galg, 2, 2)
        assert regular_rep(a @ b).entries == (regular_rep(a) @ regular_rep(b)).entries
    assert regular_rep(Matrix.identity(galg, 2)).entries == Matrix.identity(Q, 12).entries


def test_hom_apply_preserves_block_diagonal():
    h = reduce_mod(5)
    sampler = RandomSampler(2)
    a = sampler.matrix(Z, 2, 3)
    b = sampler.matrix(Z, 1, 2)
    lhs = hom_apply(h, Matrix.block_diag(a, b))
    rhs = Matrix.block_diag(hom_apply(h, a), hom_apply(h, b))
    assert lhs.entries == rhs.entries
