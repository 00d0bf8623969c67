"""Acceptance suite: one test per criterion, exact equality throughout.

Every criterion prints a single PASS/FAIL line (visible with ``pytest -s`` or
``-v``); tolerances are zero everywhere since all arithmetic is exact.
"""

from fractions import Fraction

from sylrank import (
    FPModule,
    Matrix,
    Q,
    RandomSampler,
    Submodule,
    Z,
    bidim,
    canonical_json,
    check_axioms,
    check_bivariant_axioms,
    check_bivariant_properties,
    check_length_criterion,
    injectivity_witness,
    limit_relative_dim,
    matrix_fn_round_trip,
    module_dim,
    ore_localization_test,
    epi_range_test,
    parse_rank_fn,
    pullback_restriction_check,
    quotient_structure,
    ring_make,
    rk_pullback,
    sofic_vs_vn,
    constant_power_system,
)
from sylrank.checks import FACETS
from sylrank.groups import cyclic_group, symmetric_group_3
from sylrank.sofic import SoficApproximation, sofic_bidim


def announce(criterion, ok, detail):
    print(f"[criterion {criterion}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


CATALOG = [
    ("pullback(incQ,rkQ)", "Z"),
    ("pullback(mod(2),rkFp(2))", "Z"),
    ("pullback(mod(3),rkFp(3))", "Z"),
    ("pullback(mod(5),rkFp(5))", "Z"),
    ("rkZmodPk(2,2)", "Zmod(4)"),
    ("rkZmodPk(3,2)", "Zmod(9)"),
    ("vN(Q,C2)", "GroupRing(Q,C2)"),
    ("vN(Q,C3)", "GroupRing(Q,C3)"),
    ("vN(Q,S3)", "GroupRing(Q,S3)"),
    ("morita(rkQ,2)", "Mat(Q,2)"),
    ("convex(1/2*pullback(incQ,rkQ)+1/2*pullback(mod(2),rkFp(2)))", "Z"),
]


def catalog_fns():
    return [(spec, parse_rank_fn(spec, ring_make(ring))) for spec, ring in CATALOG]


def test_criterion_1_axiom_suites():
    failures = []
    total = 0
    for spec, fn in catalog_fns():
        for facet in FACETS:
            report = check_axioms(facet, fn, RandomSampler(1000, max_dim=5, entry_bound=9),
                                  samples=500)
            total += 1
            if not report.passed:
                failures.append((spec, facet, report.to_doc()))
    announce(1, not failures,
             f"Defs 2.1/2.2/2.3 clauses on 500 samples x {total} (function, facet) runs; "
             f"failures: {failures if failures else 'none'}")


def test_criterion_2_round_trips_and_presentation_invariance():
    bad = []
    for spec, fn in catalog_fns():
        trip = matrix_fn_round_trip(fn)
        sampler = RandomSampler(2000)
        for _ in range(500):
            mat = sampler.matrix(fn.ring)
            if trip(mat) != fn(mat):
                bad.append((spec, mat))
                break
    inv_bad = []
    rk = parse_rank_fn("pullback(mod(4),rkZmodPk(2,2))", Z)
    sampler = RandomSampler(2001)
    for _ in range(200):
        module = sampler.module(Z)
        base = module_dim(rk, module)
        rel = module.relations
        variants = [rel.permute_cols(sampler.permutation(module.gens))]
        if rel.nrows:
            variants.append(rel.vstack(rel))
            variants.append(rel.permute_rows(sampler.permutation(rel.nrows)))
        for variant in variants:
            gens = variant.ncols
            if module_dim(rk, FPModule(Z, gens, variant)) != base:
                inv_bad.append(module)
    announce(2, not bad and not inv_bad,
             "matrix->module->map->matrix identity on 500 samples x "
             f"{len(CATALOG)} functions; presentation invariance on 200 modules; "
             f"failures: {(bad, inv_bad) if bad or inv_bad else 'none'}")


def test_criterion_3_bivariant_axioms():
    runs = [
        (parse_rank_fn("pullback(mod(4),rkZmodPk(2,2))", Z), 300, 0),
        (parse_rank_fn("pullback(incQ,rkQ)", Z), 300, 0),
        (parse_rank_fn("rkZmodPk(2,2)"), 300, 30),
        (parse_rank_fn("rkFp(2)"), 300, 20),
    ]
    finite_total = 0
    failures = []
    for fn, samples, finite in runs:
        report = check_bivariant_axioms(fn, RandomSampler(3000), samples=samples,
                                        finite_samples=finite, cap=4096)
        finite_total += finite
        if not report.passed:
            failures.append((fn.label, report.to_doc()))
    announce(3, not failures and finite_total >= 50,
             f"clauses (1)-(3),(6) on 300 pairs over Z, Z/4, F2; continuity (4),(5) by "
             f"literal sup/inf over {finite_total} enumerated finite ambients; "
             f"failures: {failures if failures else 'none'}")


def test_criterion_4_theorem_level_laws():
    combos = [
        parse_rank_fn("pullback(incQ,rkQ)", Z),
        parse_rank_fn("pullback(mod(2),rkFp(2))", Z),
        parse_rank_fn("pullback(mod(4),rkZmodPk(2,2))", Z),
        parse_rank_fn("rkQ", Q),
        parse_rank_fn("rkZmodPk(2,2)"),
        parse_rank_fn("rkFp(2)"),
    ]
    failures = []
    for fn in combos:
        report = check_bivariant_properties(fn, RandomSampler(4000, max_dim=3),
                                            samples=200)
        if not report.passed:
            failures.append((fn.label, report.to_doc()))
    announce(4, not failures,
             "additivity/submodularity/hom_monotone/stability/composition/triangular/"
             f"monotone, 200 configurations per law per function over Z, Q, Z/4, F2; "
             f"failures: {failures if failures else 'none'}")


def test_criterion_5_length_criterion_discrimination():
    passing = [
        parse_rank_fn("rkZmodPk(2,2)"),
        parse_rank_fn("rkZmodPk(3,2)"),
        parse_rank_fn("rkQ", Q),
        parse_rank_fn("rkFp(3)"),
    ]
    ok = True
    details = []
    for fn in passing:
        report = check_length_criterion(fn, RandomSampler(5000), samples=200)
        if not report.passed:
            ok = False
            details.append((fn.label, report.to_doc()))
    mixed = parse_rank_fn(
        "convex(1/2*pullback(incQ,rkQ)+1/2*pullback(mod(2),rkFp(2)))", Z
    )
    report = check_length_criterion(mixed, RandomSampler(5000), samples=200)
    clause = report.clauses[0]
    witness_ok = (
        clause.status == "fail"
        and clause.witness["dim_M2"] == Fraction(1)
        and clause.witness["dim_M1"] + clause.witness["dim_M3"] == Fraction(3, 2)
        and clause.witness["A"].nrows == 0
        and clause.witness["G"].rows() == [[2]]
    )
    if not witness_ok:
        ok = False
        details.append(("mixed witness", report.to_doc()))
    announce(5, ok,
             "length criterion passes for rkZmodPk(2,2)/(3,2), rkQ, rkFp(3); mixed "
             "(rkQ+rkF2)/2 fails on 0 -> Z -(*2)-> Z -> Z/2 -> 0 with sides 1 vs 3/2; "
             f"details: {details if details else 'as expected'}")


def test_criterion_6_epimorphism_theory():
    problems = []
    # four in-image instances
    for p in (2, 3, 5):
        res = epi_range_test(parse_rank_fn(f"pullback(mod({p}),rkFp({p}))", Z),
                             quotient_structure(p))
        if not (res.in_image and res.rk_pi == 1 and res.rk_id_s == 1):
            problems.append(("true case", p, res))
    res = epi_range_test(parse_rank_fn("pullback(mod(4),rkZmodPk(2,2))", Z),
                         quotient_structure(4))
    if not (res.in_image and res.rk_pi == 1 and res.rk_id_s == 1):
        problems.append(("true case", 4, res))
    # six mismatched combinations
    rkq = parse_rank_fn("pullback(incQ,rkQ)", Z)
    mismatches = [
        (rkq, 2), (rkq, 3), (rkq, 5),
        (parse_rank_fn("pullback(mod(3),rkFp(3))", Z), 2),
        (parse_rank_fn("pullback(mod(2),rkFp(2))", Z), 3),
        (parse_rank_fn("pullback(mod(2),rkFp(2))", Z), 5),
    ]
    for fn, n in mismatches:
        res = epi_range_test(fn, quotient_structure(n))
        if res.in_image:
            problems.append(("false case", (fn.label, n), res))
    # restriction consistency of pullbacks along the built-in epimorphisms
    instances = [
        (parse_rank_fn("rkZmodPk(2,2)"), quotient_structure(4)),
        (parse_rank_fn("rkFp(2)"), quotient_structure(2)),
        (parse_rank_fn("rkFp(3)"), quotient_structure(3)),
        (parse_rank_fn("rkFp(5)"), quotient_structure(5)),
    ]
    for rk_s, struct in instances:
        report = pullback_restriction_check(rk_s, struct, RandomSampler(6000), samples=200)
        if not report.passed:
            problems.append(("restriction", struct.label, report.to_doc()))
    # injectivity witness on Z/4 by search over entries in [-4, 4]
    rk1 = parse_rank_fn("rkZmodPk(2,2)")
    rk2 = parse_rank_fn("pullback(mod(2),rkFp(2))", ring_make("Zmod(4)"))
    witness = injectivity_witness(rk1, rk2, quotient_structure(4), bound=4)
    if witness is None:
        problems.append(("injectivity", "no witness found", None))
    else:
        struct = quotient_structure(4)
        p1, p2 = rk_pullback(struct.hom, rk1), rk_pullback(struct.hom, rk2)
        if p1(witness) == p2(witness):
            problems.append(("injectivity", "witness does not separate", witness))
    announce(6, not problems,
             "epi range: 4 in-image and 6 excluded instances; pullback restriction on "
             "200 samples x 4 instances; injectivity witness over Z/4 found by search; "
             f"problems: {problems if problems else 'none'}")


def test_criterion_7_direct_limits_and_localization():
    problems = []
    expect = [
        ("pullback(mod(3),rkFp(3))", True, Fraction(1), (Fraction(1),) * 9),
        ("pullback(incQ,rkQ)", True, Fraction(1), (Fraction(1),) * 9),
        ("pullback(mod(2),rkFp(2))", False, Fraction(0),
         (Fraction(1),) + (Fraction(0),) * 8),
    ]
    for spec, in_image, rk_pi, values in expect:
        res = ore_localization_test(parse_rank_fn(spec, Z), 2, horizon=8)
        if (res.in_image, res.rk_pi, res.values) != (in_image, rk_pi, values):
            problems.append((spec, res))
    # nonincreasing is a hard guarantee of limit_relative_dim; exercise a few systems
    sampler = RandomSampler(7000)
    for _ in range(25):
        n = sampler.rng.randint(1, 3)
        step = sampler.matrix(Z, n, n)
        system = constant_power_system(Z, step, 5)
        for spec in ("pullback(mod(2),rkFp(2))", "pullback(incQ,rkQ)"):
            result = limit_relative_dim(parse_rank_fn(spec, Z), system)
            if any(b > a for a, b in zip(result.values, result.values[1:])):
                problems.append(("nonincreasing", spec, result.values))
    announce(7, not problems,
             "ore test stage sequences exactly as expected for rk_F3/rk_Q/rk_F2 at m=2; "
             f"limit sequences nonincreasing on 50 sampled systems; "
             f"problems: {problems if problems else 'none'}")


def test_criterion_8_sofic_oracle():
    problems = []
    for group in (cyclic_group(2), cyclic_group(3), symmetric_group_3()):
        report = sofic_vs_vn(Q, group, RandomSampler(8000), samples=100)
        if not report.passed:
            problems.append((group.name, report.to_doc()))
    ring = ring_make("GroupRing(Q,C2)")
    approx = SoficApproximation.regular(ring.group)
    ambient = FPModule.free(ring, 1)
    hand = [
        (ambient.full_submodule(), Fraction(1)),
        (ambient.zero_submodule(), Fraction(0)),
        (Submodule(ambient, Matrix.from_rows(ring, [[ring.scalar_parse("1*g0+1*g1")]])),
         Fraction(1, 2)),
    ]
    for sub, expected in hand:
        got = sofic_bidim(approx, sub)
        if got != expected:
            problems.append(("hand value", expected, got))
    announce(8, not problems,
             "sofic = von Neumann bivariant dimension on 100 pairs each for C2, C3, S3; "
             f"hand values 1, 0, 1/2 over Q[C2]; problems: {problems if problems else 'none'}")


def test_criterion_9_cli_determinism(capsys):
    from sylrank.cli import main

    invocations = [
        ["rank", "--ring", "Z", "--fn", "pullback(mod(2),rkFp(2))", "--matrix", "2"],
        ["dim", "--ring", "Z", "--fn", "pullback(incQ,rkQ)", "--module", "gens 1; rels 6"],
        ["bidim", "--ring", "Z", "--fn", "pullback(mod(4),rkZmodPk(2,2))",
         "--module", "gens 1; rels 4", "--sub", "2"],
        ["maprank", "--ring", "Z", "--fn", "pullback(incQ,rkQ)",
         "--domain", "gens 1; rels", "--codomain", "gens 1; rels", "--map", "2"],
        ["check-axioms", "--facet", "matrix", "--fn", "rkZmodPk(2,2)",
         "--samples", "100", "--seed", "7"],
        ["check-properties", "--ring", "Z", "--fn", "pullback(mod(2),rkFp(2))",
         "--properties", "monotone,additivity", "--samples", "25", "--seed", "7"],
        ["check-length", "--ring", "Zmod(4)", "--fn", "rkZmodPk(2,2)",
         "--samples", "50", "--seed", "7"],
        ["pullback", "--ring", "Z", "--hom", "mod(2)", "--fn", "rkFp(2)",
         "--matrix", "2"],
        ["pushforward", "--epi", "Z->Zmod(4)", "--fn", "pullback(mod(4),rkZmodPk(2,2))",
         "--matrix", "2"],
        ["epi-range", "--epi", "Z->Zmod(2)", "--fn", "pullback(mod(2),rkFp(2))"],
        ["limit-dim", "--system", "Z;mul:2;T=8", "--fn", "pullback(mod(2),rkFp(2))"],
        ["ore-test", "--fn", "pullback(mod(3),rkFp(3))", "--m", "2", "--horizon", "8"],
        ["sofic-dim", "--field", "Q", "--group", "C2", "--module", "gens 1; rels",
         "--sub", "1*g0+1*g1"],
        ["sofic-vs-vn", "--field", "Q", "--group", "C3", "--samples", "20",
         "--seed", "7"],
    ]
    problems = []
    for argv in invocations:
        code1 = main(list(argv))
        out1 = capsys.readouterr().out
        code2 = main(list(argv))
        out2 = capsys.readouterr().out
        if code1 != code2 or out1 != out2:
            problems.append((argv, code1, code2))
        if code1 != 0:
            problems.append((argv, "nonzero exit", code1))
        if not out1.endswith("\n") or out1.count("\n") != 1:
            problems.append((argv, "not a single JSON line"))
    # a couple of spot checks against golden bytes
    golden = {
        "rank": canonical_json({"schema": "sylrank/1", "value": "0/1"}) + "\n",
        "dim": canonical_json({"schema": "sylrank/1", "value": "0/1"}) + "\n",
    }
    main(list(invocations[0]))
    if capsys.readouterr().out != golden["rank"]:
        problems.append(("rank golden mismatch",))
    main(list(invocations[1]))
    if capsys.readouterr().out != golden["dim"]:
        problems.append(("dim golden mismatch",))
    announce(9, not problems,
             f"{len(invocations)} documented invocations byte-identical across two runs "
             f"with fixed seeds; problems: {problems if problems else 'none'}")
