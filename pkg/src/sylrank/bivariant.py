"""Bivariant dimension on finitely generated pairs and the extended map rank.

For a submodule S = <G> of the finitely presented M = R^m/R^nA, the bivariant
value is

    dim(S | M) = dim(M) - dim(M/S) = rk([A; G]) - rk(A),

always finite, between 0 and the number of generator rows.  The extended rank
of a map is the bivariant value of its image in the codomain.  On finite
modules the continuity laws (sup over submodules of S, inf over intermediate
submodules) are checked literally against a complete submodule enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, RingMismatch, SylrankError, UnsupportedRing
from .fpmod import (
    FPMap,
    FPModule,
    Submodule,
    coker_presentation,
    coordinates_in_submodule,
    direct_sum,
    map_welldefined,
    quotient_by,
    submodule_intersection,
    submodule_presentation,
    submodule_sum,
)
from .linalg import kernel_capable
from .matrices import Matrix
from .ranks import MatrixRankFn, module_dim
from .report import ClauseRun, VerificationReport, skipped
from .rings import PrimeFieldRing, ResidueRing, residue_modulus
from .sampler import RandomSampler

PROPERTY_NAMES = (
    "additivity",
    "submodularity",
    "hom_monotone",
    "stability",
    "composition",
    "triangular",
    "monotone",
)


@dataclass(frozen=True)
class BivariantValue:
    value: Fraction
    rank_stack: Fraction
    rank_relations: Fraction


def bidim(rk: MatrixRankFn, sub: Submodule) -> BivariantValue:
    amb = sub.ambient
    if amb.ring != rk.ring:
        raise RingMismatch(f"ambient over {amb.ring}, rank function over {rk.ring}")
    stack = amb.relations.vstack(sub.gen_rows)
    rs = rk(stack)
    rr = rk(amb.relations)
    value = rs - rr
    if value < 0 or value > sub.num_generators:
        raise SylrankError(
            f"bivariant value {value} outside [0, {sub.num_generators}]: "
            f"{rk.label} is not a Sylvester rank function on these inputs"
        )
    return BivariantValue(value=value, rank_stack=rs, rank_relations=rr)


def ext_map_rank(rk: MatrixRankFn, alpha: FPMap) -> Fraction:
    """rk(alpha) = dim(im(alpha) | codomain)."""
    if not map_welldefined(alpha):
        raise PreconditionError("map is not well defined on the presentations")
    return bidim(rk, Submodule(alpha.codomain, alpha.matrix)).value


# ---------------------------------------------------------------------------
# complete submodule enumeration on finite modules

_FREE_COVER_CAP = 65536


def _finite_modulus(module: FPModule) -> int:
    ring = module.ring
    if isinstance(ring, PrimeFieldRing):
        return ring.p
    if isinstance(ring, ResidueRing):
        return ring.n
    raise UnsupportedRing(f"submodule enumeration needs a finite coefficient ring, got {ring}")


class _FiniteModule:
    """The element set of R^m/<rows of A> over Z/q, with canonical coset reps."""

    def __init__(self, module: FPModule, cap: int):
        q = _finite_modulus(module)
        m = module.gens
        if q**m > _FREE_COVER_CAP:
            raise PreconditionError(
                f"free cover has {q}^{m} elements; enumeration cap exceeded"
            )
        self.module = module
        self.q = q
        self.m = m
        span = {(0,) * m}
        for i in range(module.relations.nrows):
            row = tuple(int(x) % q for x in module.relations.row(i))
            shifted = set()
            for base in span:
                cur = base
                for _ in range(q):
                    shifted.add(cur)
                    cur = tuple((a + b) % q for a, b in zip(cur, row))
            span = shifted
        rep = {}
        reps = []
        for vec in itertools.product(range(q), repeat=m):
            if vec in rep:
                continue
            reps.append(vec)
            for w in span:
                rep[tuple((a + b) % q for a, b in zip(vec, w))] = vec
        self.rep = rep
        self.elements = reps  # lexicographically minimal coset representatives
        if len(reps) > cap:
            raise PreconditionError(
                f"module has {len(reps)} elements; cap {cap} exceeded"
            )

    def reduce(self, vec) -> tuple:
        return self.rep[tuple(int(x) % self.q for x in vec)]

    def add(self, a: tuple, b: tuple) -> tuple:
        return self.rep[tuple((x + y) % self.q for x, y in zip(a, b))]

    def cyclic(self, x: tuple) -> frozenset:
        out = set()
        cur = (0,) * self.m
        for _ in range(self.q):
            out.add(self.rep[cur])
            cur = tuple((a + b) % self.q for a, b in zip(cur, x))
        return frozenset(out)

    def span_of(self, rows) -> frozenset:
        current = frozenset({(0,) * self.m})
        for row in rows:
            current = self._sum_with_cyclic(current, self.reduce(row))
        return current

    def _sum_with_cyclic(self, elems: frozenset, x: tuple) -> frozenset:
        cyc = self.cyclic(x)
        return frozenset(self.add(a, b) for a in elems for b in cyc)

    def all_submodules(self, within: frozenset | None = None):
        """Every submodule (as a frozenset of reps) with a small generator list."""
        universe = within if within is not None else frozenset(self.elements)
        zero = frozenset({(0,) * self.m})
        found = {zero: []}
        queue = [zero]
        while queue:
            current = queue.pop()
            gens = found[current]
            for x in sorted(universe):
                if x in current or all(v == 0 for v in x):
                    continue
                bigger = self._sum_with_cyclic(current, x)
                if bigger not in found and bigger <= universe:
                    found[bigger] = gens + [x]
                    queue.append(bigger)
        items = sorted(found.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        return items

    def as_submodule(self, gens) -> Submodule:
        ring = self.module.ring
        if gens:
            mat = Matrix.from_rows(ring, [list(g) for g in gens])
        else:
            mat = Matrix.zeros(ring, 0, self.m)
        return Submodule(self.module, mat)


def enumerate_submodules(module: FPModule, cap: int = 4096) -> list[Submodule]:
    """The complete submodule list of a finite module, each as generator rows."""
    fm = _FiniteModule(module, cap)
    return [fm.as_submodule(gens) for _, gens in fm.all_submodules()]


# ---------------------------------------------------------------------------
# bivariant axiom suite


def _sub_text(sub: Submodule) -> dict:
    return {
        "relations": sub.ambient.relations,
        "generators": sub.gen_rows,
    }


def check_bivariant_axioms(
    rk: MatrixRankFn,
    sampler: RandomSampler,
    samples: int = 300,
    finite_samples: int = 50,
    cap: int = 4096,
) -> VerificationReport:
    """Clauses of the bivariant axiom set.

    Isomorphism invariance, normalization, direct sums and additivity run on
    sampled pairs over any catalog ring; the two continuity clauses take the
    literal sup/inf over a complete submodule enumeration, so they run only
    when the coefficient ring is finite.
    """
    ring = rk.ring
    report = VerificationReport("check-bivariant-axioms", rk.label, sampler.seed)
    c1 = ClauseRun("(1) isomorphism invariance")
    c2 = ClauseRun("(2) normalization: dim(0)=0 and dim(R)=1")
    c3 = ClauseRun("(3) direct sums add")
    c6 = ClauseRun("(6) additivity: dim(M) = dim(S|M) + dim(M/S)")
    for _ in range(samples):
        module = sampler.module(ring)
        sub = sampler.submodule(module)
        v = bidim(rk, sub).value

        # change generators by an invertible transform, shuffle and duplicate
        # relation rows: an isomorphic pair
        p = sampler.invertible(ring, module.gens)
        rel2 = module.relations @ p
        if rel2.nrows:
            perm = sampler.permutation(rel2.nrows)
            rel2 = rel2.permute_rows(perm).vstack(rel2.row_matrix(perm[0]))
        module2 = FPModule(ring, module.gens, rel2)
        sub2 = Submodule(module2, sub.gen_rows @ p)
        v2 = bidim(rk, sub2).value
        c1.record(v == v2, lambda: {**_sub_text(sub), "transform": p,
                                    "value": v, "transformed_value": v2})

        zero_pair = bidim(rk, FPModule.zero(ring).full_submodule()).value
        ring_pair = bidim(rk, FPModule.free(ring, 1).full_submodule()).value
        c2.record(zero_pair == 0 and ring_pair == 1,
                  lambda: {"dim_zero": zero_pair, "dim_R": ring_pair})

        mod_b = sampler.module(ring)
        sub_b = sampler.submodule(mod_b)
        both = Submodule(direct_sum(module, mod_b),
                         Matrix.block_diag(sub.gen_rows, sub_b.gen_rows))
        vs = bidim(rk, both).value
        vb = bidim(rk, sub_b).value
        c3.record(vs == v + vb, lambda: {"value_sum": vs, "value_left": v,
                                         "value_right": vb})

        dm = module_dim(rk, module)
        dq = module_dim(rk, quotient_by(module, sub))
        c6.record(dm == v + dq, lambda: {**_sub_text(sub), "dim_M": dm,
                                         "dim_S_in_M": v, "dim_quotient": dq})
    report.clauses = [c1.result(), c2.result(), c3.result(), c6.result()]

    if isinstance(ring, (PrimeFieldRing, ResidueRing)):
        c4 = ClauseRun("(4) continuity: sup over submodules of S")
        c5 = ClauseRun("(5) continuity: inf over intermediate submodules")
        q = residue_modulus(ring)
        max_gens = 2 if q >= 4 else 3
        for _ in range(finite_samples):
            module = sampler.module(ring, max_gens=max_gens, max_rels=2)
            fm = _FiniteModule(module, cap)
            sub = sampler.submodule(module)
            closed = bidim(rk, sub).value
            inside = fm.span_of(sub.gen_rows.rows())

            best = Fraction(0)
            for _, gens in fm.all_submodules(within=inside):
                best = max(best, bidim(rk, fm.as_submodule(gens)).value)
            c4.record(best == closed,
                      lambda: {**_sub_text(sub), "sup": best, "closed": closed})

            worst = None
            for elems, gens in fm.all_submodules():
                if not inside <= elems:
                    continue
                mid = fm.as_submodule(gens)
                pres = submodule_presentation(mid)
                coords = []
                for i in range(sub.gen_rows.nrows):
                    c = coordinates_in_submodule(mid, sub.gen_rows.row_matrix(i))
                    if c is None:
                        raise SylrankError("enumerated intermediate module misses S")
                    coords.append(list(c.row(0)))
                coord_mat = (
                    Matrix.from_rows(ring, coords)
                    if coords
                    else Matrix.zeros(ring, 0, pres.gens)
                )
                val = bidim(rk, Submodule(pres, coord_mat)).value
                worst = val if worst is None else min(worst, val)
            c5.record(worst == closed,
                      lambda: {**_sub_text(sub), "inf": worst, "closed": closed})
        report.clauses += [c4.result(), c5.result()]
    else:
        report.clauses += [
            skipped("(4) continuity: sup over submodules of S",
                    f"needs a finite coefficient ring, not {ring}"),
            skipped("(5) continuity: inf over intermediate submodules",
                    f"needs a finite coefficient ring, not {ring}"),
        ]
    return report


# ---------------------------------------------------------------------------
# theorem-level property suite


def check_bivariant_properties(
    rk: MatrixRankFn,
    sampler: RandomSampler,
    properties=PROPERTY_NAMES,
    samples: int = 200,
) -> VerificationReport:
    ring = rk.ring
    if not kernel_capable(ring):
        raise UnsupportedRing(f"property suite needs kernels over {ring}")
    report = VerificationReport("check-bivariant-properties", rk.label, sampler.seed)
    runners = {
        "additivity": _prop_additivity,
        "submodularity": _prop_submodularity,
        "hom_monotone": _prop_hom_monotone,
        "stability": _prop_stability,
        "composition": _prop_composition,
        "triangular": _prop_triangular,
        "monotone": _prop_monotone,
    }
    for name in properties:
        if name not in runners:
            raise ValueError(f"unknown property {name!r}; expected one of {PROPERTY_NAMES}")
        run = ClauseRun(name)
        for _ in range(samples):
            runners[name](rk, sampler, run)
        report.clauses.append(run.result())
    return report


def _prop_additivity(rk, sampler, run: ClauseRun):
    # dim(S2|M) = dim(S1|M) + dim(S2/S1 | M/S1) along a chain S1 <= S2 <= M
    module = sampler.module(rk.ring)
    s2 = sampler.submodule(module)
    s1, _, _ = sampler.combination_submodule(s2)
    lhs = bidim(rk, s2).value
    t1 = bidim(rk, s1).value
    quotient = quotient_by(module, s1)
    t2 = bidim(rk, Submodule(quotient, s2.gen_rows)).value
    run.record(lhs == t1 + t2,
               lambda: {"relations": module.relations, "G2": s2.gen_rows,
                        "G1": s1.gen_rows, "lhs": lhs, "term1": t1, "term2": t2})


def _prop_submodularity(rk, sampler, run: ClauseRun):
    module = sampler.module(rk.ring)
    s1 = sampler.submodule(module)
    s2 = sampler.submodule(module)
    v_sum = bidim(rk, submodule_sum(s1, s2)).value
    v_int = bidim(rk, submodule_intersection(s1, s2)).value
    v1 = bidim(rk, s1).value
    v2 = bidim(rk, s2).value
    run.record(v_sum + v_int <= v1 + v2,
               lambda: {"relations": module.relations, "G1": s1.gen_rows,
                        "G2": s2.gen_rows, "dim_sum": v_sum,
                        "dim_intersection": v_int, "dim_1": v1, "dim_2": v2})


def _prop_hom_monotone(rk, sampler, run: ClauseRun):
    # alpha: P -> N/H where P presents <F> <= N; the images of <G> <= P and of
    # P itself land in the quotient, and the pair dimension may only drop
    ring = rk.ring
    n_mod = sampler.module(ring)
    f = sampler.matrix(ring, sampler.dim(0), n_mod.gens)
    domain = submodule_presentation(Submodule(n_mod, f))
    h = sampler.matrix(ring, sampler.dim(0), n_mod.gens)
    target = quotient_by(n_mod, Submodule(n_mod, h))
    g = sampler.matrix(ring, sampler.dim(0), domain.gens)
    rhs = bidim(rk, Submodule(domain, g)).value
    image_in_target = submodule_presentation(Submodule(target, f))
    lhs = bidim(rk, Submodule(image_in_target, g)).value
    run.record(lhs <= rhs,
               lambda: {"N_relations": n_mod.relations, "F": f, "H": h, "G": g,
                        "lhs": lhs, "rhs": rhs})


def _prop_stability(rk, sampler, run: ClauseRun):
    # chain S1 <= S2 <= S3 <= M: dim(S1|S3) - dim(S1|M) <= dim(S2|S3) - dim(S2|M)
    module = sampler.module(rk.ring)
    s3 = sampler.submodule(module)
    s2, c2, _ = sampler.combination_submodule(s3)
    s1, c1, _ = sampler.combination_submodule(s2)
    p3 = submodule_presentation(s3)
    d23 = bidim(rk, Submodule(p3, c2)).value
    d13 = bidim(rk, Submodule(p3, c1 @ c2)).value
    d24 = bidim(rk, s2).value
    d14 = bidim(rk, s1).value
    run.record(d13 - d14 <= d23 - d24,
               lambda: {"relations": module.relations, "G3": s3.gen_rows,
                        "G2": s2.gen_rows, "G1": s1.gen_rows,
                        "d13": d13, "d14": d14, "d23": d23, "d24": d24})


def _prop_composition(rk, sampler, run: ClauseRun):
    # rk(beta) = rk(alpha beta) + rk(beta/alpha)
    ring = rk.ring
    m3 = sampler.module(ring)
    fb = sampler.matrix(ring, sampler.dim(0), m3.gens)
    m2 = submodule_presentation(Submodule(m3, fb))
    beta = FPMap(m2, m3, fb)
    fa = sampler.matrix(ring, sampler.dim(0), m2.gens)
    m1 = submodule_presentation(Submodule(m2, fa))
    alpha = FPMap(m1, m2, fa)
    alphabeta = FPMap(m1, m3, fa @ fb)
    induced = FPMap(coker_presentation(alpha), coker_presentation(alphabeta), fb)
    r_beta = ext_map_rank(rk, beta)
    r_ab = ext_map_rank(rk, alphabeta)
    r_ind = ext_map_rank(rk, induced)
    run.record(r_beta == r_ab + r_ind,
               lambda: {"M3_relations": m3.relations, "F_beta": fb, "F_alpha": fa,
                        "rk_beta": r_beta, "rk_alphabeta": r_ab,
                        "rk_induced": r_ind})


def _prop_triangular(rk, sampler, run: ClauseRun):
    # rk([a c; 0 b]) >= rk(a) + rk(b), with equality when c = 0
    ring = rk.ring
    m3 = sampler.module(ring)
    m4 = sampler.module(ring)
    k = sampler.dim(0)
    fa = sampler.matrix(ring, k, m3.gens)
    fg = sampler.matrix(ring, k, m4.gens)
    m1 = submodule_presentation(Submodule(direct_sum(m3, m4), fa.hstack(fg)))
    alpha = FPMap(m1, m3, fa)
    fb = sampler.matrix(ring, sampler.dim(0), m4.gens)
    m2 = submodule_presentation(Submodule(m4, fb))
    beta = FPMap(m2, m4, fb)
    cod = direct_sum(m3, m4)
    theta = FPMap(
        direct_sum(m1, m2),
        cod,
        fa.hstack(fg).vstack(Matrix.zeros(ring, m2.gens, m3.gens).hstack(fb)),
    )
    r_theta = ext_map_rank(rk, theta)
    r_a = ext_map_rank(rk, alpha)
    r_b = ext_map_rank(rk, beta)
    ok = r_theta >= r_a + r_b

    m1z = submodule_presentation(Submodule(m3, fa))
    diag = FPMap(
        direct_sum(m1z, m2),
        cod,
        Matrix.block_diag(fa, fb),
    )
    r_diag = ext_map_rank(rk, diag)
    r_az = ext_map_rank(rk, FPMap(m1z, m3, fa))
    ok = ok and r_diag == r_az + r_b
    run.record(ok,
               lambda: {"F_alpha": fa, "F_gamma": fg, "F_beta": fb,
                        "rk_theta": r_theta, "rk_alpha": r_a, "rk_beta": r_b,
                        "rk_diag": r_diag, "rk_alpha_plain": r_az})


def _prop_monotone(rk, sampler, run: ClauseRun):
    # increasing in the submodule, decreasing under ambient enlargement
    module = sampler.module(rk.ring)
    s2 = sampler.submodule(module)
    s1, c1, _ = sampler.combination_submodule(s2)
    v1 = bidim(rk, s1).value
    v2 = bidim(rk, s2).value
    ok = v1 <= v2
    p2 = submodule_presentation(s2)
    v_inner = bidim(rk, Submodule(p2, c1)).value
    ok = ok and v_inner >= v1
    run.record(ok,
               lambda: {"relations": module.relations, "G2": s2.gen_rows,
                        "G1": s1.gen_rows, "dim_S1": v1, "dim_S2": v2,
                        "dim_S1_in_S2": v_inner})
