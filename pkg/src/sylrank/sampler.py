"""Seeded random sources for the verification harnesses.

Defaults follow the harness configuration: matrix dimensions up to 5, integer
entries in [-9, 9], group-algebra coefficients small.  Every draw goes
through one ``random.Random`` instance, so a seed pins the whole run.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .fpmod import FPModule, Submodule
from .matrices import Matrix
from .rings import (
    GroupAlgebraRing,
    IntegerRing,
    MatrixRing,
    PrimeFieldRing,
    RationalField,
    ResidueRing,
    Ring,
)

_Q_DENOMINATORS = (1, 1, 1, 2, 3)


class RandomSampler:
    def __init__(self, seed: int = 0, max_dim: int = 5, entry_bound: int = 9,
                 coeff_bound: int = 2):
        self.seed = int(seed)
        self.rng = random.Random(self.seed)
        self.max_dim = max_dim
        self.entry_bound = entry_bound
        self.coeff_bound = coeff_bound

    def dim(self, lo: int = 1, hi: int | None = None) -> int:
        return self.rng.randint(lo, self.max_dim if hi is None else hi)

    def scalar(self, ring: Ring):
        rng = self.rng
        if isinstance(ring, IntegerRing):
            return rng.randint(-self.entry_bound, self.entry_bound)
        if isinstance(ring, RationalField):
            num = rng.randint(-self.entry_bound, self.entry_bound)
            return Fraction(num, rng.choice(_Q_DENOMINATORS))
        if isinstance(ring, PrimeFieldRing):
            return rng.randrange(ring.p)
        if isinstance(ring, ResidueRing):
            return rng.randrange(ring.n)
        if isinstance(ring, GroupAlgebraRing):
            base = ring.base
            if isinstance(base, PrimeFieldRing):
                return tuple(self.rng.randrange(base.p) for _ in range(ring.order))
            return tuple(
                Fraction(rng.randint(-self.coeff_bound, self.coeff_bound))
                for _ in range(ring.order)
            )
        if isinstance(ring, MatrixRing):
            return tuple(
                tuple(self.scalar(ring.base) for _ in range(ring.k)) for _ in range(ring.k)
            )
        raise ValueError(f"cannot sample scalars over {ring}")

    def matrix(self, ring: Ring, nrows: int | None = None, ncols: int | None = None) -> Matrix:
        n = self.dim() if nrows is None else nrows
        m = self.dim() if ncols is None else ncols
        return Matrix(ring, n, m, tuple(self.scalar(ring) for _ in range(n * m)))

    def module(self, ring: Ring, max_gens: int | None = None,
               max_rels: int | None = None) -> FPModule:
        gens = self.dim(1, max_gens or self.max_dim)
        rels = self.rng.randint(0, max_rels if max_rels is not None else gens)
        return FPModule(ring, gens, self.matrix(ring, rels, gens))

    def submodule(self, module: FPModule, max_rows: int | None = None) -> Submodule:
        rows = self.rng.randint(0, max_rows if max_rows is not None else module.gens)
        return Submodule(module, self.matrix(module.ring, rows, module.gens))

    def combination_submodule(self, sub: Submodule, max_rows: int | None = None) -> Submodule:
        """A submodule of <G> built top-down as C*G + D*A, so inclusion holds
        by construction rather than by membership filtering."""
        amb = sub.ambient
        rows = self.rng.randint(0, max_rows if max_rows is not None else max(sub.num_generators, 1))
        c = self.matrix(amb.ring, rows, sub.num_generators)
        d = self.matrix(amb.ring, rows, amb.relations.nrows)
        gen = (c @ sub.gen_rows).add(d @ amb.relations)
        return Submodule(amb, gen), c, d

    def invertible(self, ring: Ring, n: int, ops: int = 6) -> Matrix:
        """Product of elementary operations; invertible over any ring."""
        mat = Matrix.identity(ring, n)
        if n == 0:
            return mat
        rows = mat.rows()
        for _ in range(ops):
            kind = self.rng.randrange(3)
            i = self.rng.randrange(n)
            j = self.rng.randrange(n)
            if kind == 0 and i != j:
                rows[i], rows[j] = rows[j], rows[i]
            elif kind == 1 and i != j:
                c = self.scalar(ring)
                rows[i] = [ring.add(x, ring.mul(c, y)) for x, y in zip(rows[i], rows[j])]
            elif kind == 2:
                rows[i] = [ring.neg(x) for x in rows[i]]
        return Matrix.from_rows(ring, rows)

    def permutation(self, n: int) -> list[int]:
        perm = list(range(n))
        self.rng.shuffle(perm)
        return perm
