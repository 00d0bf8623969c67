import pytest

from sylrank import (
    FPMap,
    FPModule,
    Matrix,
    Q,
    RandomSampler,
    Submodule,
    Z,
    coker_presentation,
    direct_sum,
    map_welldefined,
    parse_matrix,
    parse_module_file,
    parse_module_inline,
    quotient_by,
    ring_make,
    smith,
    submodule_equal,
    submodule_intersection,
    submodule_presentation,
    submodule_sum,
    tautological_map,
)
from sylrank.fpmod import coordinates_in_submodule, element_in_submodule, module_to_inline


def z_module(rel_rows, gens):
    return FPModule.from_relation_rows(Z, gens, rel_rows)


def test_map_welldefined_examples():
    z4 = z_module([[4]], 1)
    z2 = z_module([[2]], 1)
    times2 = FPMap(z4, z4, Matrix.from_int_rows(Z, [[2]]))
    assert map_welldefined(times2)
    bad = FPMap(z2, z4, Matrix.from_int_rows(Z, [[1]]))
    assert not map_welldefined(bad)
    free_map = FPMap(FPModule.free(Z, 2), FPModule.free(Z, 3),
                     Matrix.from_int_rows(Z, [[1, 2, 3], [4, 5, 6]]))
    assert map_welldefined(free_map)


def test_direct_sum_presentation():
    m = direct_sum(z_module([[2]], 1), z_module([[3]], 1))
    assert m.gens == 2
    assert m.relations.rows() == [[2, 0], [0, 3]]
    padded = direct_sum(m, FPModule.zero(Z))
    assert padded.gens == m.gens
    assert padded.relations.rows() == m.relations.rows()


def test_coker_presentation_examples():
    free = FPModule.free(Z, 1)
    times2 = FPMap(free, free, Matrix.from_int_rows(Z, [[2]]))
    assert coker_presentation(times2).relations.rows() == [[2]]
    m = z_module([[6]], 1)
    ident = FPMap.identity(m)
    stacked = coker_presentation(ident)
    # quotient by the full module: relations span everything
    assert smith(stacked.relations).divisors == (1,)


def test_quotient_examples():
    z4 = z_module([[4]], 1)
    q = quotient_by(z4, Submodule(z4, Matrix.from_int_rows(Z, [[2]])))
    assert smith(q.relations).divisors == (2,)  # isomorphic to Z/2
    same = quotient_by(z4, z4.zero_submodule())
    assert same.relations.rows() == [[4]]
    dead = quotient_by(z4, z4.full_submodule())
    assert smith(dead.relations).divisors == (1,)


def test_submodule_sum_and_intersection_in_Z():
    free = FPModule.free(Z, 1)
    s2 = Submodule(free, Matrix.from_int_rows(Z, [[2]]))
    s3 = Submodule(free, Matrix.from_int_rows(Z, [[3]]))
    total = submodule_sum(s2, s3)
    assert submodule_equal(total, free.full_submodule())  # gcd(2,3) = 1
    meet = submodule_intersection(s2, s3)
    assert submodule_equal(meet, Submodule(free, Matrix.from_int_rows(Z, [[6]])))


def test_intersection_of_coordinate_axes_is_zero():
    free = FPModule.free(Z, 2)
    s1 = Submodule(free, Matrix.from_int_rows(Z, [[1, 0]]))
    s2 = Submodule(free, Matrix.from_int_rows(Z, [[0, 1]]))
    meet = submodule_intersection(s1, s2)
    assert submodule_equal(meet, free.zero_submodule())


def test_intersection_with_self():
    z4 = z_module([[4]], 1)
    s = Submodule(z4, Matrix.from_int_rows(Z, [[2]]))
    assert submodule_equal(submodule_intersection(s, s), s)


@pytest.mark.parametrize("spec", ["Z", "Q", "Fp(3)", "Zmod(4)", "GroupRing(Q,C2)"])
def test_intersection_rows_lie_in_both_spans(spec):
    ring = ring_make(spec)
    sampler = RandomSampler(23)
    for _ in range(10):
        module = sampler.module(ring, max_gens=3)
        s1 = sampler.submodule(module, max_rows=2)
        s2 = sampler.submodule(module, max_rows=2)
        meet = submodule_intersection(s1, s2)
        for i in range(meet.gen_rows.nrows):
            row = meet.gen_rows.row_matrix(i)
            assert element_in_submodule(s1, row)
            assert element_in_submodule(s2, row)


def test_submodule_presentation_examples():
    z4 = z_module([[4]], 1)
    s = Submodule(z4, Matrix.from_int_rows(Z, [[2]]))
    pres = submodule_presentation(s)
    assert pres.gens == 1
    assert smith(pres.relations).divisors == (2,)  # <2> in Z/4 is Z/2
    # the tautological map is well defined
    assert map_welldefined(tautological_map(s))

    free = FPModule.free(Z, 2)
    pres_full = submodule_presentation(free.full_submodule())
    assert pres_full.gens == 2 and pres_full.relations.nrows == 0

    pres_zero = submodule_presentation(free.zero_submodule())
    assert pres_zero.gens == 0


def test_coordinates_in_submodule():
    free = FPModule.free(Z, 2)
    s = Submodule(free, Matrix.from_int_rows(Z, [[1, 0], [0, 2]]))
    coords = coordinates_in_submodule(s, parse_matrix(Z, "3,4"))
    assert coords.rows() == [[3, 2]]
    assert coordinates_in_submodule(s, parse_matrix(Z, "0,1")) is None


def test_module_inline_roundtrip():
    m = z_module([[2, 0], [1, 3]], 2)
    assert parse_module_inline(Z, module_to_inline(m)).relations.rows() == m.relations.rows()
    free = FPModule.free(Z, 3)
    assert parse_module_inline(Z, module_to_inline(free)).relations.nrows == 0


def test_module_file_format():
    text = """
ring Z
generators 2
relations
2,0
0,2
sub
1,0
sub
1,1
0,1
"""
    module, subs = parse_module_file(text)
    assert module.gens == 2
    assert module.relations.rows() == [[2, 0], [0, 2]]
    assert len(subs) == 2
    assert subs[0].gen_rows.rows() == [[1, 0]]
    assert subs[1].gen_rows.rows() == [[1, 1], [0, 1]]
