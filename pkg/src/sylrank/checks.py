"""Axiom harness for the three facets, and the length-criterion check.

Each clause of the defining axiom sets becomes a seeded sampling loop with
exact rational comparison; a failure stores the inputs and both sides.  The
length criterion tests additivity over the short exact sequences

    0 -> <G>/A -> R^m/A -> R^m/[A;G] -> 0,

with the kernel presented via its induced presentation; one violation
certifies the rank function does not extend to a normalized length function.
"""

from __future__ import annotations

from .fpmod import (
    FPModule,
    Submodule,
    direct_sum,
    quotient_by,
    submodule_presentation,
)
from .linalg import kernel_capable
from .matrices import Matrix, matrix_to_text
from .ranks import (
    MapRankFn,
    MatrixRankFn,
    ModuleRankFn,
    map_fn_from_module,
    module_fn_from_matrix,
)
from .report import ClauseRun, VerificationReport
from .rings import Ring, Z
from .sampler import RandomSampler
from .values import fmt_value

FACETS = ("matrix", "module", "map")


def _module_text(module: FPModule) -> str:
    return f"gens {module.gens}; rels {matrix_to_text(module.relations)}"


def check_axioms(facet: str, fn, sampler: RandomSampler, samples: int = 500) -> VerificationReport:
    """Verify the defining clauses of the given facet on seeded samples.

    ``fn`` may always be a MatrixRankFn; the module and map facets convert it
    through the standard correspondences, so those runs exercise the whole
    conversion path.
    """
    if facet == "matrix":
        if not isinstance(fn, MatrixRankFn):
            raise TypeError("matrix facet needs a MatrixRankFn")
        return _check_matrix_axioms(fn, sampler, samples)
    if facet == "module":
        dim = fn if isinstance(fn, ModuleRankFn) else module_fn_from_matrix(fn)
        return _check_module_axioms(dim, sampler, samples)
    if facet == "map":
        if isinstance(fn, MapRankFn):
            mrf = fn
        else:
            mrf = map_fn_from_module(module_fn_from_matrix(fn))
        return _check_map_axioms(mrf, sampler, samples)
    raise ValueError(f"unknown facet {facet!r}; expected one of {FACETS}")


def _check_matrix_axioms(rk: MatrixRankFn, sampler: RandomSampler, samples: int) -> VerificationReport:
    ring = rk.ring
    report = VerificationReport("check-axioms:matrix", rk.label, sampler.seed)
    c1 = ClauseRun("normalization: rk(0)=0 and rk(1)=1")
    c2 = ClauseRun("product: rk(AB) <= min(rk(A), rk(B))")
    c3 = ClauseRun("block diagonal: rk(diag(A,B)) = rk(A)+rk(B)")
    c4 = ClauseRun("block triangular: rk([A C; 0 B]) >= rk(A)+rk(B)")
    one = Matrix.identity(ring, 1)
    for _ in range(samples):
        zero = Matrix.zeros(ring, sampler.dim(0), sampler.dim(0))
        vz, v1 = rk(zero), rk(one)
        c1.record(
            vz == 0 and v1 == 1,
            lambda: {"zero_shape": f"{zero.nrows}x{zero.ncols}",
                     "rk_zero": vz, "rk_one": v1},
        )

        a = sampler.matrix(ring)
        b = sampler.matrix(ring, a.ncols, sampler.dim())
        ab, ra, rb = rk(a @ b), rk(a), rk(b)
        c2.record(
            ab <= min(ra, rb),
            lambda: {"A": a, "B": b, "rk_AB": ab, "rk_A": ra, "rk_B": rb},
        )

        a = sampler.matrix(ring)
        b = sampler.matrix(ring)
        rd, ra, rb = rk(Matrix.block_diag(a, b)), rk(a), rk(b)
        c3.record(
            rd == ra + rb,
            lambda: {"A": a, "B": b, "rk_diag": rd, "rk_A": ra, "rk_B": rb},
        )

        a = sampler.matrix(ring)
        b = sampler.matrix(ring)
        c = sampler.matrix(ring, a.nrows, b.ncols)
        tri = a.hstack(c).vstack(Matrix.zeros(ring, b.nrows, a.ncols).hstack(b))
        rt, ra, rb = rk(tri), rk(a), rk(b)
        c4.record(
            rt >= ra + rb,
            lambda: {"A": a, "B": b, "C": c, "rk_tri": rt, "rk_A": ra, "rk_B": rb},
        )
    report.clauses = [c1.result(), c2.result(), c3.result(), c4.result()]
    return report


def _check_module_axioms(dim: ModuleRankFn, sampler: RandomSampler, samples: int) -> VerificationReport:
    ring = dim.ring
    report = VerificationReport("check-axioms:module", dim.label, sampler.seed)
    c1 = ClauseRun("normalization: dim(0)=0 and dim(R)=1")
    c2 = ClauseRun("direct sum: dim(M+N) = dim(M)+dim(N)")
    c3 = ClauseRun("exactness: dim(M3) <= dim(M2) <= dim(M1)+dim(M3)")
    free_one = FPModule.free(ring, 1)
    with_kernels = kernel_capable(ring)
    for _ in range(samples):
        m = sampler.dim()
        killed = FPModule(ring, m, Matrix.identity(ring, m))  # R^m / R^m = 0
        vz = dim(FPModule.zero(ring))
        vk = dim(killed)
        v1 = dim(free_one)
        c1.record(
            vz == 0 and vk == 0 and v1 == 1,
            lambda: {"dim_zero": vz, "dim_killed": vk, "dim_R": v1, "killed_gens": m},
        )

        m1 = sampler.module(ring)
        m2 = sampler.module(ring)
        vs, va, vb = dim(direct_sum(m1, m2)), dim(m1), dim(m2)
        c2.record(
            vs == va + vb,
            lambda: {"M": _module_text(m1), "N": _module_text(m2),
                     "dim_sum": vs, "dim_M": va, "dim_N": vb},
        )

        # exact sequence R^k -> M2 -> M3 -> 0 with M3 the quotient by <G>
        m2mod = sampler.module(ring)
        g = sampler.matrix(ring, sampler.dim(0), m2mod.gens)
        sub = Submodule(m2mod, g)
        m3 = quotient_by(m2mod, sub)
        d2, d3 = dim(m2mod), dim(m3)
        dk = dim(FPModule.free(ring, g.nrows))
        ok = d3 <= d2 <= dk + d3
        if ok and with_kernels:
            # same sequence with the kernel presented as a module
            m1p = submodule_presentation(sub)
            d1 = dim(m1p)
            ok = d3 <= d2 <= d1 + d3
        c3.record(
            ok,
            lambda: {"M2": _module_text(m2mod), "G": g,
                     "dim_M2": d2, "dim_M3": d3},
        )
    report.clauses = [c1.result(), c2.result(), c3.result()]
    return report


def _check_map_axioms(mrf: MapRankFn, sampler: RandomSampler, samples: int) -> VerificationReport:
    ring = mrf.ring
    report = VerificationReport("check-axioms:map", mrf.label, sampler.seed)
    c1 = ClauseRun("normalization: rk(0)=0 and rk(id_R)=1")
    c2 = ClauseRun("composition: rk(ab) <= min(rk(a), rk(b))")
    c3 = ClauseRun("block diagonal: rk(diag(a,b)) = rk(a)+rk(b)")
    c4 = ClauseRun("block triangular: rk([a c; 0 b]) >= rk(a)+rk(b)")
    one = Matrix.identity(ring, 1)
    for _ in range(samples):
        zero = Matrix.zeros(ring, sampler.dim(0), sampler.dim(0))
        vz, v1 = mrf(zero), mrf(one)
        c1.record(vz == 0 and v1 == 1,
                  lambda: {"zero_shape": f"{zero.nrows}x{zero.ncols}",
                           "rk_zero": vz, "rk_one": v1})

        a = sampler.matrix(ring)
        b = sampler.matrix(ring, a.ncols, sampler.dim())
        ab, ra, rb = mrf(a @ b), mrf(a), mrf(b)
        c2.record(ab <= min(ra, rb),
                  lambda: {"A": a, "B": b, "rk_AB": ab, "rk_A": ra, "rk_B": rb})

        a = sampler.matrix(ring)
        b = sampler.matrix(ring)
        rd, ra, rb = mrf(Matrix.block_diag(a, b)), mrf(a), mrf(b)
        c3.record(rd == ra + rb,
                  lambda: {"A": a, "B": b, "rk_diag": rd, "rk_A": ra, "rk_B": rb})

        a = sampler.matrix(ring)
        b = sampler.matrix(ring)
        c = sampler.matrix(ring, a.nrows, b.ncols)
        tri = a.hstack(c).vstack(Matrix.zeros(ring, b.nrows, a.ncols).hstack(b))
        rt, ra, rb = mrf(tri), mrf(a), mrf(b)
        c4.record(rt >= ra + rb,
                  lambda: {"A": a, "B": b, "C": c, "rk_tri": rt, "rk_A": ra, "rk_B": rb})
    report.clauses = [c1.result(), c2.result(), c3.result(), c4.result()]
    return report


# ---------------------------------------------------------------------------
# length criterion


def canonical_length_probes(ring: Ring) -> list[tuple[Matrix, Matrix]]:
    """Fixed (A, G) probes guaranteeing the standard witnesses are exercised.

    Over Z the first probe is the sequence 0 -> Z -(*2)-> Z -> Z/2 -> 0.
    """
    probes = []
    if ring == Z:
        probes.append((Matrix.zeros(Z, 0, 1), Matrix.from_int_rows(Z, [[2]])))
        probes.append((Matrix.from_int_rows(Z, [[4]]), Matrix.from_int_rows(Z, [[2]])))
    return probes


def check_length_criterion(rk: MatrixRankFn, sampler: RandomSampler,
                           samples: int = 200) -> VerificationReport:
    """Additivity over sampled short exact sequences of f.p. modules.

    Builds M2 = R^m/A, M1 = <G>/A via its induced presentation, and
    M3 = R^m/[A; G]; checks dim(M2) = dim(M1) + dim(M3) exactly.
    """
    ring = rk.ring
    if not kernel_capable(ring):
        raise ValueError(f"length criterion needs kernels over {ring}")
    dim = module_fn_from_matrix(rk)
    report = VerificationReport("check-length", rk.label, sampler.seed)
    run = ClauseRun("additivity on short exact sequences of f.p. modules")
    cases = canonical_length_probes(ring)
    while len(cases) < samples:
        module = sampler.module(ring)
        g = sampler.matrix(ring, sampler.dim(0), module.gens)
        cases.append((module.relations, g))
    for rel, g in cases[:max(samples, len(canonical_length_probes(ring)))]:
        m2 = FPModule(ring, rel.ncols, rel)
        sub = Submodule(m2, g)
        m1 = submodule_presentation(sub)
        m3 = quotient_by(m2, sub)
        d2, d1, d3 = dim(m2), dim(m1), dim(m3)
        run.record(
            d2 == d1 + d3,
            lambda: {"A": rel, "G": g,
                     "dim_M2": d2, "dim_M1": d1, "dim_M3": d3,
                     "sum": fmt_value(d1 + d3)},
        )
    report.clauses = [run.result()]
    return report
