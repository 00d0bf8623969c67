"""Sofic bivariant dimension for finite-group algebras.

For a finite group the right regular action is an exact approximation by
permutations, so the variational construction collapses: take the full group
as the test set, the ambient generators as the relation seeds, and the span
formula becomes a single exact base-field rank computation.  The value is an
independent oracle for the bivariant dimension induced by the von Neumann
rank (they agree whenever the group algebra is semisimple).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bivariant import bidim
from .errors import PreconditionError, RingMismatch
from .fpmod import Submodule
from .groups import FiniteGroup
from .linalg import field_rank
from .matrices import Matrix, regular_rep
from .ranks import rk_group_vn
from .report import ClauseRun, VerificationReport
from .rings import GroupAlgebraRing, PrimeFieldRing, Ring
from .sampler import RandomSampler


@dataclass(frozen=True)
class SoficApproximation:
    """Maps from a group into permutations of a finite index set.

    ``sigma[s][x]`` is the image of the point x under the permutation assigned
    to group element s.  The regular instance takes the group itself as the
    point set with s acting by left translation, so that sigma is an exact
    homomorphism: sigma_s(sigma_t(x)) = sigma_{st}(x).  (Right translation
    would only satisfy this on abelian groups.)
    """

    group: FiniteGroup
    size: int
    sigma: tuple[tuple[int, ...], ...]

    @staticmethod
    def regular(group: FiniteGroup) -> "SoficApproximation":
        n = group.order
        sigma = tuple(
            tuple(group.mul(s, x) for x in range(n)) for s in range(n)
        )
        return SoficApproximation(group=group, size=n, sigma=sigma)


def is_modular_case(base: Ring, group: FiniteGroup) -> bool:
    """True when the base-field characteristic divides the group order."""
    return isinstance(base, PrimeFieldRing) and group.order % base.p == 0


def sofic_bidim(approx: SoficApproximation, sub: Submodule) -> Fraction:
    """The span-formula dimension of a submodule pair over a group algebra.

    Working in the coefficient space of (ambient)^X, the relation span is
    generated by the per-point copies of the ambient relations together with
    the difference vectors delta_x b - delta_{sigma_s(x)} (s b) over all
    points x, group elements s, and ambient generators b; the value is the
    rank gained by the per-point copies of the submodule generators, divided
    by the number of points.
    """
    module = sub.ambient
    ring = module.ring
    if not isinstance(ring, GroupAlgebraRing):
        raise RingMismatch(f"sofic dimension needs a group-algebra module, got {ring}")
    if ring.group is not approx.group and ring.group != approx.group:
        raise PreconditionError("approximation group differs from the module's group")
    base = ring.base
    g = ring.group
    d = g.order
    m = module.gens
    x_count = approx.size
    width = m * d  # coefficient length of one ambient vector
    zero = base.zero

    def place(vec_flat, x):
        out = [zero] * (x_count * width)
        out[x * width : (x + 1) * width] = vec_flat
        return out

    rows = []
    # per-point copies of the ambient relation span (coefficient expansion)
    rel_flat = regular_rep(module.relations)
    for x in range(x_count):
        for i in range(rel_flat.nrows):
            rows.append(place(list(rel_flat.row(i)), x))
    # difference vectors for each generator b = e_j and each group element s
    for x in range(x_count):
        for s in range(d):
            y = approx.sigma[s][x]
            for j in range(m):
                row = [zero] * (x_count * width)
                row[x * width + j * d + g.identity] = base.add(
                    row[x * width + j * d + g.identity], base.one
                )
                pos = y * width + j * d + s
                row[pos] = base.add(row[pos], base.neg(base.one))
                rows.append(row)
    relation_matrix = Matrix.from_rows(base, rows) if rows else Matrix.zeros(
        base, 0, x_count * width
    )
    r_without = field_rank(relation_matrix)

    extra = []
    for x in range(x_count):
        for i in range(sub.gen_rows.nrows):
            # one copy of each submodule generator per point; the group
            # translates are already identified by the difference vectors
            flat = []
            for j in range(module.gens):
                flat.extend(sub.gen_rows.entry(i, j))
            extra.append(place(flat, x))
    if not extra:
        return Fraction(0)
    stacked = Matrix.from_rows(base, rows + extra) if rows else Matrix.from_rows(base, extra)
    r_with = field_rank(stacked)
    return Fraction(r_with - r_without, x_count)


def sofic_vs_vn(base: Ring, group: FiniteGroup, sampler: RandomSampler,
                samples: int = 100, max_gens: int = 2) -> VerificationReport:
    """Compare the span formula against the von Neumann bivariant dimension."""
    if is_modular_case(base, group):
        raise PreconditionError(
            "comparison requires the semisimple case: characteristic must not divide |G|"
        )
    ring = GroupAlgebraRing(base, group)
    rk = rk_group_vn(base, group)
    approx = SoficApproximation.regular(group)
    report = VerificationReport("sofic-vs-vn", rk.label, sampler.seed)
    run = ClauseRun("sofic span formula = von Neumann bivariant dimension")
    for _ in range(samples):
        module = sampler.module(ring, max_gens=max_gens, max_rels=2)
        sub = sampler.submodule(module, max_rows=2)
        lhs = sofic_bidim(approx, sub)
        rhs = bidim(rk, sub).value
        run.record(lhs == rhs,
                   lambda: {"relations": module.relations, "G": sub.gen_rows,
                            "sofic": lhs, "von_neumann": rhs})
    report.clauses = [run.result()]
    return report
