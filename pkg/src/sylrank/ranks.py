"""Rank functions as first-class objects.

The catalog covers the concrete Sylvester matrix rank functions the library
ships: field rank, the length-induced rank on Z/p^k, the von Neumann rank of
a finite-group algebra, pull-backs along ring maps, convex combinations, and
the Morita transport to matrix amplifications.  The three-facet conversions
(matrix <-> finitely presented module <-> map between free modules) are the
round trips every catalog function must satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import ParseError, PreconditionError, RingMismatch
from .fpmod import FPModule
from .linalg import field_rank, lift_residue_matrix, p_valuation, smith_divisors
from .matrices import Matrix, flatten_amplification, hom_apply, regular_rep
from .rings import (
    GroupAlgebraRing,
    MatrixRing,
    PrimeFieldRing,
    Q,
    RationalField,
    Ring,
    RingHom,
    Z,
    is_prime,
    make_group,
    make_hom,
    residue_modulus,
    residue_ring,
    ring_make,
    split_top,
)
from .groups import FiniteGroup


@dataclass(frozen=True)
class MatrixRankFn:
    """A Sylvester matrix rank function: ring, evaluator, printable label."""

    ring: Ring
    label: str
    evaluator: Callable[[Matrix], Fraction] = field(compare=False)

    def __call__(self, mat: Matrix) -> Fraction:
        if mat.ring != self.ring:
            raise RingMismatch(
                f"rank function {self.label} lives over {self.ring}, matrix over {mat.ring}"
            )
        return self.evaluator(mat)


@dataclass(frozen=True)
class ModuleRankFn:
    ring: Ring
    label: str
    evaluator: Callable[[FPModule], Fraction] = field(compare=False)

    def __call__(self, module: FPModule) -> Fraction:
        if module.ring != self.ring:
            raise RingMismatch(
                f"rank function {self.label} lives over {self.ring}, module over {module.ring}"
            )
        return self.evaluator(module)


@dataclass(frozen=True)
class MapRankFn:
    """Rank on maps between finite-rank free modules, given by their matrices."""

    ring: Ring
    label: str
    evaluator: Callable[[Matrix], Fraction] = field(compare=False)

    def __call__(self, mat: Matrix) -> Fraction:
        if mat.ring != self.ring:
            raise RingMismatch(
                f"rank function {self.label} lives over {self.ring}, map over {mat.ring}"
            )
        return self.evaluator(mat)


# ---------------------------------------------------------------------------
# catalog


def rk_field(ring: Ring) -> MatrixRankFn:
    if not isinstance(ring, (RationalField, PrimeFieldRing)):
        raise PreconditionError(f"rk_field needs Q or a prime field, got {ring}")
    label = "rkQ" if isinstance(ring, RationalField) else f"rkFp({ring.p})"

    def ev(mat: Matrix) -> Fraction:
        return Fraction(field_rank(mat))

    return MatrixRankFn(ring, label, ev)


def rk_zmod_pk(p: int, k: int) -> MatrixRankFn:
    """Rank on Z/p^k induced by the normalized length L(Z/p^i) = i/k.

    rk(A) = m - dim(coker A) where the cokernel length is read off the Smith
    divisors of the canonical integer lift: a divisor d loses min(v_p(d), k)/k
    (a zero divisor loses 1), and each column with no divisor slot is a free
    summand losing 1.
    """
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if k < 1:
        raise PreconditionError(f"exponent must be >= 1, got {k}")
    ring = residue_ring(p**k)

    def ev(mat: Matrix) -> Fraction:
        divisors = smith_divisors(lift_residue_matrix(mat))
        loss = Fraction(mat.ncols - len(divisors))  # free summands of the cokernel
        for d in divisors:
            loss += Fraction(k if d == 0 else min(p_valuation(d, p), k), k)
        return Fraction(mat.ncols) - loss

    return MatrixRankFn(ring, f"rkZmodPk({p},{k})", ev)


def rk_group_vn(base: Ring, group: FiniteGroup) -> MatrixRankFn:
    """von Neumann rank of k[G]: base-field rank of the regular representation
    normalized by the group order."""
    ring = GroupAlgebraRing(base, group)
    order = group.order

    def ev(mat: Matrix) -> Fraction:
        return Fraction(field_rank(regular_rep(mat)), order)

    return MatrixRankFn(ring, f"vN({base.spec()},{group.name})", ev)


def rk_pullback(h: RingHom, rk_target: MatrixRankFn) -> MatrixRankFn:
    """pi^*(rk)(A) = rk(pi(A))."""
    if h.target != rk_target.ring:
        raise RingMismatch(
            f"hom lands in {h.target} but rank function lives over {rk_target.ring}"
        )

    def ev(mat: Matrix) -> Fraction:
        return rk_target(hom_apply(h, mat))

    return MatrixRankFn(h.source, f"pullback({h.label()},{rk_target.label})", ev)


def rk_convex(fns, weights) -> MatrixRankFn:
    """Pointwise convex combination of rank functions over one ring."""
    fns = list(fns)
    weights = [Fraction(w) for w in weights]
    if len(fns) != len(weights) or not fns:
        raise PreconditionError("need matching nonempty function and weight lists")
    if any(w <= 0 for w in weights):
        raise PreconditionError("convex weights must be positive")
    if sum(weights) != 1:
        raise PreconditionError(f"convex weights must sum to 1, got {sum(weights)}")
    ring = fns[0].ring
    if any(f.ring != ring for f in fns):
        raise RingMismatch("convex combination needs one shared ring")
    label = "convex(" + "+".join(
        f"{w.numerator}/{w.denominator}*{f.label}" for w, f in zip(weights, fns)
    ) + ")"

    def ev(mat: Matrix) -> Fraction:
        return sum((w * f(mat) for w, f in zip(weights, fns)), Fraction(0))

    return MatrixRankFn(ring, label, ev)


def rk_morita(base_rk: MatrixRankFn, k: int) -> MatrixRankFn:
    """Transport to Mat(R, k): flatten blocks and divide by k."""
    if k < 1:
        raise PreconditionError(f"amplification size must be >= 1, got {k}")
    ring = MatrixRing(base_rk.ring, k)

    def ev(mat: Matrix) -> Fraction:
        return base_rk(flatten_amplification(mat)) / k

    return MatrixRankFn(ring, f"morita({base_rk.label},{k})", ev)


# ---------------------------------------------------------------------------
# the three-facet conversions


def module_dim(rk: MatrixRankFn, module: FPModule) -> Fraction:
    """dim(R^m / R^n A) = m - rk(A); presentation invariant for Sylvester rk."""
    if module.ring != rk.ring:
        raise RingMismatch(f"module over {module.ring}, rank function over {rk.ring}")
    return Fraction(module.gens) - rk(module.relations)


def module_fn_from_matrix(rk: MatrixRankFn) -> ModuleRankFn:
    return ModuleRankFn(rk.ring, rk.label, lambda module: module_dim(rk, module))


def map_rank_from_module(dim: ModuleRankFn, mat: Matrix) -> Fraction:
    """rk(alpha_A) = dim(R^m) - dim(coker alpha_A) for A : R^n -> R^m."""
    if mat.ring != dim.ring:
        raise RingMismatch(f"map over {mat.ring}, rank function over {dim.ring}")
    free = FPModule.free(dim.ring, mat.ncols)
    coker = FPModule(dim.ring, mat.ncols, mat)
    return dim(free) - dim(coker)


def map_fn_from_module(dim: ModuleRankFn) -> MapRankFn:
    return MapRankFn(dim.ring, dim.label, lambda mat: map_rank_from_module(dim, mat))


def matrix_rank_from_map(mrf: MapRankFn, mat: Matrix) -> Fraction:
    """Evaluate a map rank function on alpha_A (x -> xA)."""
    return mrf(mat)


def matrix_fn_round_trip(rk: MatrixRankFn) -> MatrixRankFn:
    """matrix -> module -> map -> matrix; the identity on Sylvester functions."""
    mrf = map_fn_from_module(module_fn_from_matrix(rk))
    return MatrixRankFn(rk.ring, rk.label, lambda mat: matrix_rank_from_map(mrf, mat))


# ---------------------------------------------------------------------------
# rank-function grammar
#
#   rkQ | rkFp(<p>) | rkZmodPk(<p>,<k>) | vN(<field>,<group>)
#   | pullback(<hom>,<fn>) | convex(<w1>*<fn1>+...) | morita(<fn>,<k>)
#
# hom grammar: mod(<n>) | incQ | aug | regemb.  The source ring of a pullback
# cannot always be inferred from the hom alone (aug, regemb, mod on a residue
# ring), so parsing takes the ring the function is expected to live over.


def parse_rank_fn(text: str, ring: Ring | None = None) -> MatrixRankFn:
    text = text.strip()
    fn = _parse_rank_fn_inner(text, ring)
    if ring is not None and fn.ring != ring:
        raise ParseError(f"rank function {text!r} lives over {fn.ring}, expected {ring}")
    return fn


def _parse_rank_fn_inner(text: str, ring: Ring | None) -> MatrixRankFn:
    if text == "rkQ":
        return rk_field(Q)
    if not text.endswith(")"):
        raise ParseError(f"bad rank function spec {text!r}")
    head, _, rest = text.partition("(")
    body = rest[:-1]
    if head == "rkFp":
        return rk_field(PrimeFieldRing(int(body)))
    if head == "rkZmodPk":
        p_text, k_text = split_top(body, ",")
        return rk_zmod_pk(int(p_text), int(k_text))
    if head == "vN":
        field_text, group_text = split_top(body, ",")
        return rk_group_vn(ring_make(field_text), make_group(group_text))
    if head == "pullback":
        parts = split_top(body, ",")
        if len(parts) != 2:
            raise ParseError(f"pullback takes (hom, fn): {text!r}")
        hom_text, fn_text = parts
        inner = _parse_rank_fn_inner(fn_text.strip(), None)
        source = _pullback_source(hom_text.strip(), inner.ring, ring)
        hom = make_hom(hom_text.strip(), source)
        if hom.target != inner.ring:
            raise ParseError(
                f"hom {hom_text!r} lands in {hom.target}, not {inner.ring}"
            )
        return rk_pullback(hom, inner)
    if head == "convex":
        fns, weights = [], []
        for term in split_top(body, "+"):
            term = term.strip()
            w_text, _, fn_text = term.partition("*")
            try:
                weights.append(Fraction(w_text))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad convex weight in {term!r}") from exc
            fns.append(_parse_rank_fn_inner(fn_text.strip(), ring))
        return rk_convex(fns, weights)
    if head == "morita":
        parts = split_top(body, ",")
        if len(parts) != 2:
            raise ParseError(f"morita takes (fn, k): {text!r}")
        inner_ring = ring.base if isinstance(ring, MatrixRing) else None
        inner = _parse_rank_fn_inner(parts[0].strip(), inner_ring)
        return rk_morita(inner, int(parts[1]))
    raise ParseError(f"bad rank function spec {text!r}")


def _pullback_source(hom_text: str, target_ring: Ring, expected: Ring | None) -> Ring:
    """Resolve the source ring of a pullback hom spec."""
    if expected is not None:
        return expected
    if hom_text.startswith("mod(") or hom_text == "incQ":
        return Z
    if hom_text == "aug":
        raise ParseError("pullback(aug, ...) needs an explicit ring to fix the group algebra")
    if hom_text == "regemb":
        raise ParseError("pullback(regemb, ...) needs an explicit ring to fix the group algebra")
    raise ParseError(f"bad hom spec {hom_text!r}")


def catalog_over(ring: Ring) -> list[MatrixRankFn]:
    """A small representative catalog over a given ring (used by harness CLIs)."""
    if ring == Z:
        return [
            rk_pullback(make_hom("incQ", Z), rk_field(Q)),
            rk_pullback(make_hom("mod(2)", Z), rk_field(PrimeFieldRing(2))),
            rk_pullback(make_hom("mod(3)", Z), rk_field(PrimeFieldRing(3))),
            rk_pullback(make_hom("mod(4)", Z), rk_zmod_pk(2, 2)),
        ]
    if isinstance(ring, RationalField):
        return [rk_field(ring)]
    if isinstance(ring, PrimeFieldRing):
        return [rk_field(ring)]
    n = None
    try:
        n = residue_modulus(ring)
    except Exception:
        n = None
    if n is not None:
        # prime powers get the length-induced rank
        for p in range(2, n + 1):
            if is_prime(p) and n % p == 0:
                k = 0
                nn = n
                while nn % p == 0:
                    nn //= p
                    k += 1
                if p**k == n:
                    return [rk_zmod_pk(p, k)]
        return []
    if isinstance(ring, GroupAlgebraRing):
        return [rk_group_vn(ring.base, ring.group)]
    if isinstance(ring, MatrixRing):
        inner = catalog_over(ring.base)
        return [rk_morita(f, ring.k) for f in inner]
    return []
