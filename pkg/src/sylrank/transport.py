"""Moving rank functions between rings, and the epimorphism range theory.

Pullback along a ring map is entrywise; pushing forward along an epimorphism
divides the source-ring extended rank by the rank of the identity of the
target viewed as a source module.  Direct-limit dimensions are reported as a
finite-horizon infimum with a stabilization flag: the true limit is the inf
over the whole system, so the reported value is an upper bound and the flag
is a heuristic, not a proof of convergence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ParseError, PreconditionError, RingMismatch, SylrankError
from .fpmod import FPMap, FPModule, Submodule, direct_sum, map_welldefined
from .linalg import row_membership
from .matrices import Matrix
from .ranks import MatrixRankFn, module_dim
from .rings import (
    GroupAlgebraRing,
    Ring,
    Z,
    augmentation,
    reduce_mod,
    ring_make,
)
from .bivariant import bidim, ext_map_rank
from .report import ClauseRun, VerificationReport
from .sampler import RandomSampler


@dataclass(frozen=True)
class DirectedSystem:
    """Finite horizon of a direct system with a compatible source.

    ``stages`` are M_0..M_T, ``transitions[j]`` maps M_j to M_{j+1}, and
    ``source_maps[j]`` maps the fixed source into M_j.  Compatibility
    (alpha_j followed by the transition equals alpha_{j+1}, modulo relations)
    is checked on construction via row membership.
    """

    ring: Ring
    source: FPModule
    stages: tuple[FPModule, ...]
    transitions: tuple[FPMap, ...]
    source_maps: tuple[FPMap, ...]

    def __post_init__(self):
        if len(self.stages) != len(self.source_maps):
            raise PreconditionError("need one source map per stage")
        if len(self.transitions) != len(self.stages) - 1:
            raise PreconditionError("need one transition per consecutive stage pair")
        for j, beta in enumerate(self.transitions):
            if beta.domain != self.stages[j] or beta.codomain != self.stages[j + 1]:
                raise PreconditionError(f"transition {j} does not match its stages")
            if not map_welldefined(beta):
                raise PreconditionError(f"transition {j} is not well defined")
        for j, alpha in enumerate(self.source_maps):
            if alpha.domain != self.source or alpha.codomain != self.stages[j]:
                raise PreconditionError(f"source map {j} does not match")
            if not map_welldefined(alpha):
                raise PreconditionError(f"source map {j} is not well defined")
        for j, beta in enumerate(self.transitions):
            diff = (self.source_maps[j].matrix @ beta.matrix).sub(
                self.source_maps[j + 1].matrix
            )
            rel = self.stages[j + 1].relations
            for i in range(diff.nrows):
                if row_membership(rel, diff.row_matrix(i)) is None:
                    raise PreconditionError(
                        f"source maps are incompatible at stage {j} -> {j + 1}"
                    )


def constant_power_system(ring: Ring, step: Matrix, horizon: int) -> DirectedSystem:
    """Free stages R^m with one fixed transition matrix, source R^m via powers."""
    if step.nrows != step.ncols:
        raise PreconditionError("transition matrix must be square")
    if horizon < 1:
        raise PreconditionError("horizon must be >= 1")
    m = step.nrows
    free = FPModule.free(ring, m)
    stages = tuple(free for _ in range(horizon + 1))
    transitions = tuple(FPMap(free, free, step) for _ in range(horizon))
    alphas = []
    power = Matrix.identity(ring, m)
    for _ in range(horizon + 1):
        alphas.append(FPMap(free, free, power))
        power = power @ step
    return DirectedSystem(ring, free, stages, transitions, tuple(alphas))


@dataclass(frozen=True)
class LimitResult:
    values: tuple[Fraction, ...]
    inf_observed: Fraction
    stabilized: bool


def limit_relative_dim(rk: MatrixRankFn, system: DirectedSystem,
                       stable_window: int = 3) -> LimitResult:
    """Stage values dim(im(alpha_j) | M_j); the sequence must be nonincreasing.

    The reported infimum is the last value; it bounds the true limit from
    above and equals it whenever the system is eventually constant.
    """
    if rk.ring != system.ring:
        raise RingMismatch(f"system over {system.ring}, rank function over {rk.ring}")
    values = []
    for alpha in system.source_maps:
        values.append(ext_map_rank(rk, alpha))
    for a, b in zip(values, values[1:]):
        if b > a:
            raise SylrankError(
                f"stage dimensions increased ({a} -> {b}); "
                "this contradicts monotonicity under factoring maps"
            )
    stabilized = len(values) >= stable_window and len(set(values[-stable_window:])) == 1
    return LimitResult(tuple(values), values[-1], stabilized)


# ---------------------------------------------------------------------------
# R-module structure of a target ring, and the epimorphism tests


@dataclass(frozen=True)
class RModuleStructureOnS:
    """S as an R-module: presentation, position of 1_S, right multiplications.

    ``mult_tables[j]`` expresses right multiplication by the j-th module
    generator of S as a matrix on the generators; ``coords`` expands an
    S-scalar over those generators with R-coefficients.
    """

    label: str
    hom: "object"  # RingHom R -> S
    s_module: FPModule
    unit_row: Matrix
    mult_tables: tuple[Matrix, ...]
    coords: Callable

    def __post_init__(self):
        if self.unit_row.shape != (1, self.s_module.gens):
            raise PreconditionError("unit row must be 1 x generators")
        ident = self.scalar_action(self.hom.target.one)
        diff = ident.sub(Matrix.identity(self.hom.source, self.s_module.gens))
        for i in range(diff.nrows):
            if row_membership(self.s_module.relations, diff.row_matrix(i)) is None:
                raise PreconditionError(
                    "right multiplication by 1_S is not the identity modulo relations"
                )

    def scalar_action(self, s) -> Matrix:
        """The R-matrix of right multiplication by the S-scalar s."""
        cs = self.coords(s)
        g = self.s_module.gens
        acc = Matrix.zeros(self.hom.source, g, g)
        for c, table in zip(cs, self.mult_tables):
            acc = acc.add(table.scale(c))
        return acc

    def blockize(self, mat: Matrix) -> Matrix:
        """Convert an S-matrix into the R-matrix of the induced map on powers of S."""
        if mat.ring != self.hom.target:
            raise RingMismatch(f"matrix over {mat.ring}, structure targets {self.hom.target}")
        g = self.s_module.gens
        if mat.nrows == 0 or mat.ncols == 0:
            return Matrix.zeros(self.hom.source, mat.nrows * g, mat.ncols * g)
        row_blocks = []
        for i in range(mat.nrows):
            blocks = [self.scalar_action(mat.entry(i, j)) for j in range(mat.ncols)]
            row = blocks[0]
            for b in blocks[1:]:
                row = row.hstack(b)
            row_blocks.append(row)
        out = row_blocks[0]
        for r in row_blocks[1:]:
            out = out.vstack(r)
        return out

    def power_module(self, n: int) -> FPModule:
        mod = FPModule.free(self.hom.source, 0)
        for _ in range(n):
            mod = direct_sum(mod, self.s_module)
        return mod

    def induced_map(self, mat: Matrix) -> FPMap:
        return FPMap(self.power_module(mat.nrows), self.power_module(mat.ncols),
                     self.blockize(mat))


def quotient_structure(n: int) -> RModuleStructureOnS:
    """Z -> Z/n with Z/n presented as Z/(n) on one generator."""
    hom = reduce_mod(n)
    s_module = FPModule(Z, 1, Matrix.from_int_rows(Z, [[n]]))
    return RModuleStructureOnS(
        label=f"Z->Zmod({n})",
        hom=hom,
        s_module=s_module,
        unit_row=Matrix.identity(Z, 1),
        mult_tables=(Matrix.identity(Z, 1),),
        coords=lambda s: (int(s),),
    )


def augmentation_structure(galg: GroupAlgebraRing) -> RModuleStructureOnS:
    """k[G] -> k; k is cyclic over k[G] with relations g - e for g != e."""
    hom = augmentation(galg)
    g = galg.group
    rel_rows = []
    for i in range(g.order):
        if i == g.identity:
            continue
        rel_rows.append([galg.sub(galg.basis_element(i), galg.one)])
    rel = Matrix.from_rows(galg, rel_rows) if rel_rows else Matrix.zeros(galg, 0, 1)
    s_module = FPModule(galg, 1, rel)

    def coords(s):
        z = galg.base.zero
        lifted = tuple(s if i == g.identity else z for i in range(g.order))
        return (lifted,)

    return RModuleStructureOnS(
        label=f"aug:{galg.spec()}",
        hom=hom,
        s_module=s_module,
        unit_row=Matrix.identity(galg, 1),
        mult_tables=(Matrix.identity(galg, 1),),
        coords=coords,
    )


def parse_epi(text: str) -> RModuleStructureOnS:
    """Epimorphism instances by name: ``Z->Zmod(<n>)`` or ``aug:<field>[<group>]``."""
    text = text.strip()
    if text.startswith("Z->Zmod(") and text.endswith(")"):
        try:
            n = int(text[len("Z->Zmod("):-1])
        except ValueError as exc:
            raise ParseError(f"bad epimorphism spec {text!r}") from exc
        return quotient_structure(n)
    if text.startswith("aug:"):
        body = text[len("aug:"):]
        if "[" in body and body.endswith("]"):
            field_text, _, group_text = body.partition("[")
            ring = ring_make(f"GroupRing({field_text},{group_text[:-1]})")
        else:
            ring = ring_make(body)
        if not isinstance(ring, GroupAlgebraRing):
            raise ParseError(f"augmentation needs a group algebra, got {ring}")
        return augmentation_structure(ring)
    raise ParseError(f"bad epimorphism spec {text!r}; expected Z->Zmod(<n>) or aug:<k>[<G>]")


def pushforward(rk: MatrixRankFn, struct: RModuleStructureOnS) -> MatrixRankFn:
    """Induced rank on S: extended R-rank of the blockized map over rk(id_S)."""
    if rk.ring != struct.hom.source:
        raise RingMismatch(f"rank function over {rk.ring}, structure source {struct.hom.source}")
    norm = module_dim(rk, struct.s_module)
    if norm <= 0:
        raise PreconditionError(
            f"pushforward normalization rk(id_S) = {norm} must be positive and finite"
        )

    def ev(mat: Matrix) -> Fraction:
        return ext_map_rank(rk, struct.induced_map(mat)) / norm

    return MatrixRankFn(struct.hom.target, f"pushforward({rk.label},{struct.label})", ev)


@dataclass(frozen=True)
class EpiRangeResult:
    in_image: bool
    rk_pi: Fraction
    rk_id_s: Fraction


def epi_range_test(rk: MatrixRankFn, struct: RModuleStructureOnS) -> EpiRangeResult:
    """Membership of rk in the pullback image along the epimorphism.

    The criterion is rk(pi) = rk(id_S) = 1: rk(id_S) is the dimension of S as
    an R-module and rk(pi) the bivariant dimension of the image of 1 inside it.
    """
    if rk.ring != struct.hom.source:
        raise RingMismatch(f"rank function over {rk.ring}, structure source {struct.hom.source}")
    rk_id_s = module_dim(rk, struct.s_module)
    rk_pi = bidim(rk, Submodule(struct.s_module, struct.unit_row)).value
    return EpiRangeResult(in_image=(rk_pi == 1 and rk_id_s == 1), rk_pi=rk_pi, rk_id_s=rk_id_s)


def pullback_restriction_check(rk_s: MatrixRankFn, struct: RModuleStructureOnS,
                               sampler: RandomSampler, samples: int = 200) -> VerificationReport:
    """rk_S(B) equals the pi^*(rk_S)-extended rank of B viewed as an R-map."""
    if rk_s.ring != struct.hom.target:
        raise RingMismatch(f"rank function over {rk_s.ring}, structure target {struct.hom.target}")
    from .ranks import rk_pullback

    rk_r = rk_pullback(struct.hom, rk_s)
    report = VerificationReport("pullback-restriction", f"{rk_s.label}|{struct.label}",
                                sampler.seed)
    run = ClauseRun("rk_S(B) = (pi^* rk_S)(B as R-map)")
    for _ in range(samples):
        b = sampler.matrix(struct.hom.target)
        lhs = rk_s(b)
        rhs = ext_map_rank(rk_r, struct.induced_map(b))
        run.record(lhs == rhs, lambda: {"B": b, "rk_S": lhs, "extended_rk_R": rhs})
    report.clauses = [run.result()]
    return report


def injectivity_witness(rk1: MatrixRankFn, rk2: MatrixRankFn,
                        struct: RModuleStructureOnS, bound: int = 4,
                        max_size: int = 2) -> Matrix | None:
    """Search small integer matrices where the two pullbacks differ."""
    from .ranks import rk_pullback
    import itertools as it

    p1 = rk_pullback(struct.hom, rk1)
    p2 = rk_pullback(struct.hom, rk2)
    values = range(-bound, bound + 1)
    for n in range(1, max_size + 1):
        for m in range(1, max_size + 1):
            for entries in it.product(values, repeat=n * m):
                mat = Matrix(Z, n, m, entries)
                if p1(mat) != p2(mat):
                    return mat
    return None


@dataclass(frozen=True)
class OreResult:
    in_image: bool | None
    rk_pi: Fraction
    values: tuple[Fraction, ...]

    @property
    def status(self) -> str:
        if self.in_image is True:
            return "in-image"
        if self.in_image is False:
            return "excluded"
        return "inconclusive"


def ore_localization_test(rk: MatrixRankFn, m: int, horizon: int = 8) -> OreResult:
    """Membership of rk in the pullback image from Z[1/m].

    Computes the stage dimensions rk(m^j) along Z -(*m)-> Z -> ...; full rank
    on m certifies membership (and forces every stage to 1), while any stage
    below 1 at the horizon certifies exclusion.
    """
    if rk.ring != Z:
        raise RingMismatch(f"the localization test runs over Z, got {rk.ring}")
    if m < 2:
        raise PreconditionError(f"need m >= 2, got {m}")
    system = constant_power_system(Z, Matrix.from_int_rows(Z, [[m]]), horizon)
    limit = limit_relative_dim(rk, system)
    rk_m = rk(Matrix.from_int_rows(Z, [[m]]))
    if rk_m == 1:
        if limit.inf_observed != 1:
            raise SylrankError(
                f"rk({m}) = 1 but the stage sequence dropped to {limit.inf_observed}"
            )
        return OreResult(True, limit.inf_observed, limit.values)
    if limit.inf_observed < 1:
        return OreResult(False, limit.inf_observed, limit.values)
    return OreResult(None, limit.inf_observed, limit.values)


def pullback_functoriality_check(rk_target: MatrixRankFn, first, second,
                                 sampler: RandomSampler, samples: int = 200) -> VerificationReport:
    """(second . first)^* equals first^* . second^* on sampled matrices."""
    from .ranks import rk_pullback
    from .rings import compose

    step = rk_pullback(first, rk_pullback(second, rk_target))
    joint = rk_pullback(compose(first, second), rk_target)
    report = VerificationReport("pullback-functoriality",
                                f"{rk_target.label}|{first.label()},{second.label()}",
                                sampler.seed)
    run = ClauseRun("composite pullback = iterated pullback")
    for _ in range(samples):
        mat = sampler.matrix(first.source)
        a, b = step(mat), joint(mat)
        run.record(a == b, lambda: {"A": mat, "iterated": a, "composite": b})
    report.clauses = [run.result()]
    return report
