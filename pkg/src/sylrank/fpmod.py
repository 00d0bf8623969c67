"""Finitely presented modules, maps between them, and the submodule calculus.

A module is always R^m / R^n A for an explicit relation matrix A (n x m); a
submodule of it is a set of generator rows read modulo the row space of A;
a map is a matrix on generators whose well-definedness is decided by row
membership.  Equality of submodules is mutual membership, never row-set
equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, RingMismatch
from .linalg import kernel_capable, left_kernel, row_membership
from .matrices import Matrix, matrix_to_text, parse_matrix
from .rings import Ring, ring_make


@dataclass(frozen=True)
class FPModule:
    """R^gens / (row space of relations)."""

    ring: Ring
    gens: int
    relations: Matrix

    def __post_init__(self):
        if self.relations.ring != self.ring:
            raise RingMismatch("relation matrix ring differs from module ring")
        if self.relations.ncols != self.gens:
            raise ValueError(
                f"relations have {self.relations.ncols} columns, expected {self.gens}"
            )

    @staticmethod
    def free(ring: Ring, m: int) -> "FPModule":
        return FPModule(ring, m, Matrix.zeros(ring, 0, m))

    @staticmethod
    def zero(ring: Ring) -> "FPModule":
        return FPModule(ring, 0, Matrix.zeros(ring, 0, 0))

    @staticmethod
    def from_relation_rows(ring: Ring, gens: int, rows) -> "FPModule":
        rel = Matrix.from_int_rows(ring, rows) if rows else Matrix.zeros(ring, 0, gens)
        return FPModule(ring, gens, rel)

    def full_submodule(self) -> "Submodule":
        return Submodule(self, Matrix.identity(self.ring, self.gens))

    def zero_submodule(self) -> "Submodule":
        return Submodule(self, Matrix.zeros(self.ring, 0, self.gens))

    def __repr__(self):
        return f"FPModule({self.ring}, gens={self.gens}, rels={self.relations.nrows})"


@dataclass(frozen=True)
class Submodule:
    """Finitely generated submodule of an FPModule, as generator rows."""

    ambient: FPModule
    gen_rows: Matrix

    def __post_init__(self):
        if self.gen_rows.ring != self.ambient.ring:
            raise RingMismatch("generator rows ring differs from ambient ring")
        if self.gen_rows.ncols != self.ambient.gens:
            raise ValueError(
                f"generator rows have {self.gen_rows.ncols} columns, "
                f"expected {self.ambient.gens}"
            )

    @property
    def num_generators(self) -> int:
        return self.gen_rows.nrows


@dataclass(frozen=True)
class FPMap:
    """Map between finitely presented modules, acting on the right of rows."""

    domain: FPModule
    codomain: FPModule
    matrix: Matrix

    def __post_init__(self):
        if self.domain.ring != self.codomain.ring:
            raise RingMismatch("domain/codomain rings differ")
        if self.matrix.shape != (self.domain.gens, self.codomain.gens):
            raise ValueError(
                f"map matrix is {self.matrix.shape}, expected "
                f"({self.domain.gens}, {self.codomain.gens})"
            )

    @staticmethod
    def identity(module: FPModule) -> "FPMap":
        return FPMap(module, module, Matrix.identity(module.ring, module.gens))


def map_welldefined(alpha: FPMap) -> bool:
    """True iff every row of A_dom * F lies in the row space of A_cod."""
    pushed = alpha.domain.relations @ alpha.matrix
    cod_rel = alpha.codomain.relations
    for i in range(pushed.nrows):
        if row_membership(cod_rel, pushed.row_matrix(i)) is None:
            return False
    return True


def direct_sum(m1: FPModule, m2: FPModule) -> FPModule:
    if m1.ring != m2.ring:
        raise RingMismatch("direct sum needs one ring")
    return FPModule(m1.ring, m1.gens + m2.gens, Matrix.block_diag(m1.relations, m2.relations))


def direct_sum_map(a: FPMap, b: FPMap) -> FPMap:
    return FPMap(
        direct_sum(a.domain, b.domain),
        direct_sum(a.codomain, b.codomain),
        Matrix.block_diag(a.matrix, b.matrix),
    )


def coker_presentation(alpha: FPMap) -> FPModule:
    """Cokernel: codomain generators, relations A_cod stacked over the map."""
    return FPModule(
        alpha.codomain.ring,
        alpha.codomain.gens,
        alpha.codomain.relations.vstack(alpha.matrix),
    )


def image_submodule(alpha: FPMap) -> Submodule:
    return Submodule(alpha.codomain, alpha.matrix)


def quotient_by(module: FPModule, sub: Submodule) -> FPModule:
    if sub.ambient != module:
        raise PreconditionError("submodule has a different ambient module")
    return FPModule(module.ring, module.gens, module.relations.vstack(sub.gen_rows))


def submodule_sum(s1: Submodule, s2: Submodule) -> Submodule:
    if s1.ambient != s2.ambient:
        raise PreconditionError("submodule sum needs a shared ambient")
    return Submodule(s1.ambient, s1.gen_rows.vstack(s2.gen_rows))


def submodule_intersection(s1: Submodule, s2: Submodule) -> Submodule:
    """Generators of <G1> intersect <G2> inside the ambient module.

    A class lies in both spans iff u G1 = v G2 + w A for coefficient rows
    (u, v, w), i.e. (u, v, w) is in the left kernel of [G1; -G2; -A]; the
    intersection is generated by the rows u G1 over the kernel generators.
    """
    if s1.ambient != s2.ambient:
        raise PreconditionError("submodule intersection needs a shared ambient")
    amb = s1.ambient
    stacked = s1.gen_rows.vstack(s2.gen_rows.neg()).vstack(amb.relations.neg())
    kernel = left_kernel(stacked)
    k1 = s1.gen_rows.nrows
    rows = []
    for i in range(kernel.nrows):
        u = Matrix(amb.ring, 1, k1, kernel.row(i)[:k1])
        candidate = u @ s1.gen_rows
        if not candidate.is_zero():
            rows.append(list(candidate.row(0)))
    gens = (
        Matrix.from_rows(amb.ring, rows)
        if rows
        else Matrix.zeros(amb.ring, 0, amb.gens)
    )
    return Submodule(amb, gens)


def submodule_presentation(sub: Submodule) -> FPModule:
    """Present <G> <= M on the rows of G: relations are {u : u G in rowspace(A)}.

    Computed from the left kernel of [G; -A] projected to the G block.  The
    tautological map (generators of the presentation to the rows of G) is a
    well-defined isomorphism onto the submodule.
    """
    amb = sub.ambient
    if not kernel_capable(amb.ring):
        raise PreconditionError(f"submodule presentation needs kernels over {amb.ring}")
    k = sub.gen_rows.nrows
    stacked = sub.gen_rows.vstack(amb.relations.neg())
    kernel = left_kernel(stacked)
    rows = []
    for i in range(kernel.nrows):
        u = kernel.row(i)[:k]
        if any(not amb.ring.is_zero(x) for x in u):
            rows.append(list(u))
    rel = Matrix.from_rows(amb.ring, rows) if rows else Matrix.zeros(amb.ring, 0, k)
    return FPModule(amb.ring, k, rel)


def tautological_map(sub: Submodule) -> FPMap:
    """The map submodule_presentation(S) -> ambient sending e_i to G_i."""
    return FPMap(submodule_presentation(sub), sub.ambient, sub.gen_rows)


def element_in_submodule(sub: Submodule, row: Matrix) -> bool:
    """Membership of a generator-coordinate row modulo the ambient relations."""
    system = sub.gen_rows.vstack(sub.ambient.relations)
    return row_membership(system, row) is not None


def submodule_equal(s1: Submodule, s2: Submodule) -> bool:
    """Mutual row membership modulo the relations (canonical-form-free)."""
    if s1.ambient != s2.ambient:
        return False
    return all(
        element_in_submodule(s2, s1.gen_rows.row_matrix(i)) for i in range(s1.gen_rows.nrows)
    ) and all(
        element_in_submodule(s1, s2.gen_rows.row_matrix(i)) for i in range(s2.gen_rows.nrows)
    )


def coordinates_in_submodule(sub: Submodule, row: Matrix) -> Matrix | None:
    """Coefficients of an ambient row over the submodule generators (mod A)."""
    system = sub.gen_rows.vstack(sub.ambient.relations)
    u = row_membership(system, row)
    if u is None:
        return None
    k = sub.gen_rows.nrows
    return Matrix(sub.ambient.ring, 1, k, u.row(0)[:k])


# ---------------------------------------------------------------------------
# text formats
#
# Inline: "gens <m>; rels <row>; <row>; ..."  (empty rels part = free module)
# File:   ring line, "generators <m>", "relations", rows, then optional
#         "sub" blocks of generator rows.


def module_to_inline(module: FPModule) -> str:
    rel_text = matrix_to_text(module.relations)
    if rel_text:
        return f"gens {module.gens}; rels {rel_text}"
    return f"gens {module.gens}; rels"


def parse_module_inline(ring: Ring, text: str) -> FPModule:
    parts = [p.strip() for p in text.split(";")]
    if not parts or not parts[0].startswith("gens"):
        raise PreconditionError(f"bad module text {text!r}; expected 'gens <m>; rels ...'")
    try:
        gens = int(parts[0][len("gens"):].strip())
    except ValueError as exc:
        raise PreconditionError(f"bad generator count in {text!r}") from exc
    rest = parts[1:]
    if not rest or not rest[0].startswith("rels"):
        raise PreconditionError(f"bad module text {text!r}; missing 'rels'")
    rows_text = [rest[0][len("rels"):].strip()] + rest[1:]
    rows_text = [r for r in rows_text if r]
    rel = (
        parse_matrix(ring, ";".join(rows_text), ncols=gens)
        if rows_text
        else Matrix.zeros(ring, 0, gens)
    )
    return FPModule(ring, gens, rel)


def parse_module_file(text: str) -> tuple[FPModule, list[Submodule]]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise PreconditionError("empty module file")
    ring_line = lines[0]
    if ring_line.startswith("ring "):
        ring_line = ring_line[len("ring "):]
    ring = ring_make(ring_line)
    if len(lines) < 2 or not lines[1].startswith("generators"):
        raise PreconditionError("module file needs a 'generators <m>' line")
    gens = int(lines[1].split()[1])
    idx = 2
    if idx >= len(lines) or lines[idx] != "relations":
        raise PreconditionError("module file needs a 'relations' line")
    idx += 1
    rel_rows = []
    while idx < len(lines) and lines[idx] != "sub":
        rel_rows.append(lines[idx])
        idx += 1
    rel = (
        parse_matrix(ring, ";".join(rel_rows), ncols=gens)
        if rel_rows
        else Matrix.zeros(ring, 0, gens)
    )
    module = FPModule(ring, gens, rel)
    subs = []
    while idx < len(lines):
        assert lines[idx] == "sub"
        idx += 1
        sub_rows = []
        while idx < len(lines) and lines[idx] != "sub":
            sub_rows.append(lines[idx])
            idx += 1
        gen = (
            parse_matrix(ring, ";".join(sub_rows), ncols=gens)
            if sub_rows
            else Matrix.zeros(ring, 0, gens)
        )
        subs.append(Submodule(module, gen))
    return module, subs
