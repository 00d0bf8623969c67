from fractions import Fraction

import pytest

from sylrank import (
    FPModule,
    PreconditionError,
    Q,
    RandomSampler,
    Submodule,
    cyclic_group,
    parse_matrix,
    ring_make,
    sofic_bidim,
    sofic_vs_vn,
    symmetric_group_3,
)
from sylrank.rings import PrimeFieldRing
from sylrank.sofic import SoficApproximation, is_modular_case


@pytest.fixture(scope="module")
def c2_setup():
    ring = ring_make("GroupRing(Q,C2)")
    return ring, SoficApproximation.regular(ring.group)


def test_hand_values_over_QC2(c2_setup):
    ring, approx = c2_setup
    ambient = FPModule.free(ring, 1)
    assert sofic_bidim(approx, ambient.full_submodule()) == 1
    assert sofic_bidim(approx, ambient.zero_submodule()) == 0
    es = Submodule(ambient, parse_matrix(ring, "1*g0+1*g1"))
    assert sofic_bidim(approx, es) == Fraction(1, 2)


def test_regular_approximation_is_exact_homomorphism():
    g = symmetric_group_3()
    approx = SoficApproximation.regular(g)
    for s in range(g.order):
        for t in range(g.order):
            st = g.mul(s, t)
            for x in range(approx.size):
                assert approx.sigma[s][approx.sigma[t][x]] == approx.sigma[st][x]
    # distinct elements act freely
    for s in range(g.order):
        for t in range(g.order):
            if s != t:
                assert all(approx.sigma[s][x] != approx.sigma[t][x] for x in range(approx.size))


def test_sofic_monotone_in_generators(c2_setup):
    ring, approx = c2_setup
    sampler = RandomSampler(5)
    for _ in range(15):
        module = sampler.module(ring, max_gens=2, max_rels=1)
        sub = sampler.submodule(module, max_rows=2)
        value = sofic_bidim(approx, sub)
        extra = sampler.matrix(ring, 1, module.gens)
        bigger = Submodule(module, sub.gen_rows.vstack(extra))
        assert sofic_bidim(approx, bigger) >= value


def test_sofic_bounded_by_normalized_ambient_dimension(c2_setup):
    ring, approx = c2_setup
    sampler = RandomSampler(9)
    from sylrank.linalg import field_rank
    from sylrank.matrices import regular_rep

    for _ in range(15):
        module = sampler.module(ring, max_gens=2, max_rels=1)
        sub = sampler.submodule(module, max_rows=2)
        value = sofic_bidim(approx, sub)
        ambient_k_dim = module.gens * ring.order - field_rank(regular_rep(module.relations))
        assert 0 <= value <= Fraction(ambient_k_dim, approx.size)


@pytest.mark.parametrize("group_factory", [lambda: cyclic_group(2), lambda: cyclic_group(3),
                                           symmetric_group_3])
def test_sofic_matches_von_neumann(group_factory):
    group = group_factory()
    report = sofic_vs_vn(Q, group, RandomSampler(13), samples=15)
    assert report.passed, report.to_doc()


def test_modular_case_flagged_but_computable():
    f2 = PrimeFieldRing(2)
    g = cyclic_group(2)
    assert is_modular_case(f2, g)
    assert not is_modular_case(Q, g)
    ring = ring_make("GroupRing(Fp(2),C2)")
    approx = SoficApproximation.regular(g)
    ambient = FPModule.free(ring, 1)
    value = sofic_bidim(approx, ambient.full_submodule())
    assert value == 1  # still computed exactly
    with pytest.raises(PreconditionError):
        sofic_vs_vn(f2, g, RandomSampler(1), samples=2)
