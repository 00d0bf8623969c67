"""Dense rectangular matrices over the supported rings.

Row-vector convention throughout: a matrix A with n rows and m columns is the
map R^n -> R^m sending x to xA.  Empty shapes (0 rows or 0 columns) are legal
everywhere; a 0 x m matrix presents the free module R^m and an n x 0 matrix
presents the zero module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, RingMismatch
from .rings import GroupAlgebraRing, MatrixRing, Ring, RingHom, regular_rep_scalar, split_top


@dataclass(frozen=True)
class Matrix:
    ring: Ring
    nrows: int
    ncols: int
    entries: tuple  # row-major

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError(
                f"entry count {len(self.entries)} != {self.nrows}x{self.ncols}"
            )

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_rows(ring: Ring, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != m:
                raise ValueError("ragged rows")
        return Matrix(ring, n, m, tuple(x for row in rows for x in row))

    @staticmethod
    def from_int_rows(ring: Ring, rows) -> "Matrix":
        return Matrix.from_rows(ring, [[ring.from_int(x) for x in row] for row in rows])

    @staticmethod
    def zeros(ring: Ring, n: int, m: int) -> "Matrix":
        return Matrix(ring, n, m, (ring.zero,) * (n * m))

    @staticmethod
    def identity(ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return Matrix(ring, n, n, tuple(o if i == j else z for i in range(n) for j in range(n)))

    # -- access --------------------------------------------------------------

    def entry(self, i: int, j: int):
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.ncols : (i + 1) * self.ncols]

    def rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def row_matrix(self, i: int) -> "Matrix":
        return Matrix(self.ring, 1, self.ncols, self.row(i))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        ring = self.ring
        return all(ring.is_zero(x) for x in self.entries)

    # -- arithmetic ----------------------------------------------------------

    def _check_same_ring(self, other: "Matrix"):
        if self.ring != other.ring:
            raise RingMismatch(f"matrix rings differ: {self.ring} vs {other.ring}")

    def add(self, other: "Matrix") -> "Matrix":
        self._check_same_ring(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        ring = self.ring
        return Matrix(
            self.ring, self.nrows, self.ncols,
            tuple(ring.add(a, b) for a, b in zip(self.entries, other.entries)),
        )

    def neg(self) -> "Matrix":
        ring = self.ring
        return Matrix(self.ring, self.nrows, self.ncols, tuple(ring.neg(a) for a in self.entries))

    def sub(self, other: "Matrix") -> "Matrix":
        return self.add(other.neg())

    def scale(self, c) -> "Matrix":
        ring = self.ring
        return Matrix(self.ring, self.nrows, self.ncols, tuple(ring.mul(c, a) for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same_ring(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        n, k, m = self.nrows, self.ncols, other.ncols
        out = []
        for i in range(n):
            left = self.row(i)
            for j in range(m):
                acc = ring.zero
                for t in range(k):
                    acc = ring.add(acc, ring.mul(left[t], other.entry(t, j)))
                out.append(acc)
        return Matrix(self.ring, n, m, tuple(out))

    def power(self, e: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("power needs a square matrix")
        result = Matrix.identity(self.ring, self.nrows)
        for _ in range(e):
            result = result @ self
        return result

    # -- block structure -----------------------------------------------------

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_same_ring(other)
        if self.ncols != other.ncols:
            raise ValueError(f"column mismatch {self.ncols} vs {other.ncols}")
        return Matrix(self.ring, self.nrows + other.nrows, self.ncols, self.entries + other.entries)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_same_ring(other)
        if self.nrows != other.nrows:
            raise ValueError(f"row mismatch {self.nrows} vs {other.nrows}")
        out = []
        for i in range(self.nrows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        return Matrix(self.ring, self.nrows, self.ncols + other.ncols, tuple(out))

    @staticmethod
    def block_diag(a: "Matrix", b: "Matrix") -> "Matrix":
        a._check_same_ring(b)
        top = a.hstack(Matrix.zeros(a.ring, a.nrows, b.ncols))
        bottom = Matrix.zeros(a.ring, b.nrows, a.ncols).hstack(b)
        return top.vstack(bottom)

    def transpose(self) -> "Matrix":
        out = tuple(self.entry(i, j) for j in range(self.ncols) for i in range(self.nrows))
        return Matrix(self.ring, self.ncols, self.nrows, out)

    def permute_rows(self, perm) -> "Matrix":
        rows = [self.row(i) for i in perm]
        return Matrix(self.ring, len(rows), self.ncols, tuple(x for r in rows for x in r))

    def permute_cols(self, perm) -> "Matrix":
        out = tuple(self.entry(i, j) for i in range(self.nrows) for j in perm)
        return Matrix(self.ring, self.nrows, len(list(perm)), out)

    def take_rows(self, indices) -> "Matrix":
        return self.permute_rows(list(indices))

    def map_entries(self, fn, ring: Ring) -> "Matrix":
        return Matrix(ring, self.nrows, self.ncols, tuple(fn(x) for x in self.entries))

    def __repr__(self):
        return f"Matrix({self.ring}, {self.nrows}x{self.ncols})"


# ---------------------------------------------------------------------------
# text format: rows separated by ';', entries by ','


def matrix_to_text(mat: Matrix) -> str:
    ring = mat.ring
    return ";".join(
        ",".join(ring.scalar_str(mat.entry(i, j)) for j in range(mat.ncols))
        for i in range(mat.nrows)
    )


def parse_matrix(ring: Ring, text: str, ncols: int | None = None) -> Matrix:
    """Parse the matrix text format; '' is the 0 x ncols (default 0 x 0) matrix."""
    text = text.strip()
    if not text:
        return Matrix.zeros(ring, 0, ncols if ncols is not None else 0)
    rows = []
    for i, row_text in enumerate(split_top(text, ";")):
        row = []
        for j, cell in enumerate(split_top(row_text, ",")):
            try:
                row.append(ring.scalar_parse(cell))
            except ParseError as exc:
                raise ParseError(f"bad matrix entry: {exc}", line=i + 1, col=j + 1) from exc
        rows.append(row)
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"row {i + 1} has {len(row)} entries, expected {width}", line=i + 1)
    if ncols is not None and width != ncols:
        raise ParseError(f"matrix has {width} columns, expected {ncols}")
    return Matrix.from_rows(ring, rows)


# ---------------------------------------------------------------------------
# ring-hom application and representation maps


def hom_apply(h: RingHom, mat: Matrix) -> Matrix:
    """Apply a ring homomorphism entrywise (pi(A) in the pull-back formula)."""
    if mat.ring != h.source:
        raise RingMismatch(f"matrix over {mat.ring}, hom from {h.source}")
    return mat.map_entries(h.apply, h.target)


def regular_rep(mat: Matrix) -> Matrix:
    """Replace each group-algebra entry with its regular-representation block.

    An n x m matrix over k[G] becomes n|G| x m|G| over k.  The map is a unital
    ring homomorphism on square matrices, and row x of block (i, j) holds the
    coefficients of g_x * A_ij, so the k-row-space of the result is exactly
    the coefficient expansion of the k[G]-row-module spanned by the rows of A.
    """
    ring = mat.ring
    if not isinstance(ring, GroupAlgebraRing):
        raise RingMismatch(f"regular_rep needs a group algebra matrix, got {ring}")
    d = ring.group.order
    base = ring.base
    out = [[base.zero] * (mat.ncols * d) for _ in range(mat.nrows * d)]
    for i in range(mat.nrows):
        for j in range(mat.ncols):
            block = regular_rep_scalar(ring, mat.entry(i, j))
            for x in range(d):
                row = out[i * d + x]
                brow = block[x]
                for y in range(d):
                    row[j * d + y] = brow[y]
    return Matrix.from_rows(base, out)


def flatten_amplification(mat: Matrix) -> Matrix:
    """Expand an n x m matrix over Mat(R, k) to the nk x mk matrix over R."""
    ring = mat.ring
    if not isinstance(ring, MatrixRing):
        raise RingMismatch(f"flatten needs a matrix-amplification ring, got {ring}")
    k = ring.k
    base = ring.base
    out = [[base.zero] * (mat.ncols * k) for _ in range(mat.nrows * k)]
    for i in range(mat.nrows):
        for j in range(mat.ncols):
            block = mat.entry(i, j)
            for x in range(k):
                for y in range(k):
                    out[i * k + x][j * k + y] = block[x][y]
    return Matrix.from_rows(base, out)


def amplification_embed(mat: Matrix, k: int) -> Matrix:
    """Embed an R-matrix into Mat(R, k) entrywise via r -> r * identity."""
    amp = MatrixRing(mat.ring, k)
    base = mat.ring

    def lift(a):
        z = base.zero
        return tuple(tuple(a if i == j else z for j in range(k)) for i in range(k))

    return mat.map_entries(lift, amp)
