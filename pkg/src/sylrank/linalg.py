"""Exact linear algebra kernels: field rank, integer Smith normal form,
row-space membership and left kernels over every supported ring.

All routines are exact.  The only numpy use is modular elimination on int64
residues (products stay below 2^63, so the arithmetic is exact integer
arithmetic mod p); rational ranks are certified either by hitting the maximal
possible rank mod a large prime or by a fraction-free Bareiss elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .errors import RingMismatch, UnsupportedRing
from .matrices import Matrix, regular_rep
from .rings import (
    GroupAlgebraRing,
    IntegerRing,
    PrimeFieldRing,
    RationalField,
    ResidueRing,
    Ring,
    Z,
    residue_modulus,
)

_P_CERT = 2147483647  # Mersenne prime 2^31 - 1; elimination products fit in int64


def _modp_rank(rows, p: int) -> int:
    """Rank of an integer matrix over F_p (exact modular elimination)."""
    if not rows or not rows[0]:
        return 0
    a = np.array([[x % p for x in row] for row in rows], dtype=np.int64)
    n, m = a.shape
    r = 0
    for c in range(m):
        if r == n:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1 :]
        factors = below[:, c]
        mask = factors != 0
        if mask.any():
            below[mask] = (below[mask] - np.outer(factors[mask], a[r])) % p
        r += 1
    return r


def _bareiss_rank(rows) -> int:
    """Exact rank over Q of an integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in rows if any(row)]
    if not a:
        return 0
    n, m = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = None
        for i in range(r, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pivval = pr[c]
        for i in range(r + 1, n):
            ai = a[i]
            f = ai[c]
            if f:
                for j in range(c, m):
                    ai[j] = (pivval * ai[j] - f * pr[j]) // prev
            else:
                for j in range(c, m):
                    ai[j] = (pivval * ai[j]) // prev
        prev = pivval
        r += 1
    return r


def int_rank(rows) -> int:
    """Rank over Q of an integer matrix.

    Fast path: rank mod 2^31-1 is always a lower bound, so if it reaches
    min(n, m) it is the answer; otherwise fall back to Bareiss.
    """
    rows = [row for row in rows if any(row)]
    if not rows:
        return 0
    n, m = len(rows), len(rows[0])
    r = _modp_rank(rows, _P_CERT)
    if r == min(n, m):
        return r
    return _bareiss_rank(rows)


def _rational_to_int_rows(mat: Matrix):
    """Clear denominators per row (row scaling preserves the row space)."""
    rows = []
    for i in range(mat.nrows):
        row = mat.row(i)
        dens = [f.denominator for f in row]
        if all(d == 1 for d in dens):
            rows.append([f.numerator for f in row])
        else:
            mult = lcm(*dens)
            rows.append([f.numerator * (mult // f.denominator) for f in row])
    return rows


def field_rank(mat: Matrix) -> int:
    """Row-space dimension over Q, F_p, or a group algebra via regular_rep."""
    ring = mat.ring
    if isinstance(ring, RationalField):
        return int_rank(_rational_to_int_rows(mat))
    if isinstance(ring, PrimeFieldRing):
        return _modp_rank(mat.rows(), ring.p)
    if isinstance(ring, GroupAlgebraRing):
        return field_rank(regular_rep(mat))
    raise UnsupportedRing(f"field_rank is not defined over {ring}")


# ---------------------------------------------------------------------------
# Smith normal form over Z


@dataclass(frozen=True)
class SmithDecomposition:
    """U A V = D with U, V unimodular and D diagonal with divisor chain."""

    U: Matrix
    D: Matrix
    V: Matrix
    divisors: tuple[int, ...]


def smith(mat: Matrix) -> SmithDecomposition:
    """Smith normal form by gcd pivoting with minimal-absolute-value pivots.

    Invariants: U A V = D exactly, det(U), det(V) = +-1, and the diagonal
    d_1 | d_2 | ... with d_i >= 0 (trailing zeros allowed).  Desk-scale only:
    no effort is made to control intermediate entry growth beyond the pivot
    choice.
    """
    if mat.ring != Z:
        raise RingMismatch(f"smith needs an integer matrix, got {mat.ring}")
    n, m = mat.nrows, mat.ncols
    D = [list(map(int, mat.row(i))) for i in range(n)]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    V = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        Dd, Ds = D[dst], D[src]
        for j in range(m):
            Dd[j] += q * Ds[j]
        Ud, Us = U[dst], U[src]
        for j in range(n):
            Ud[j] += q * Us[j]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]

    def min_pivot(t):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                v = abs(D[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        return best

    t = 0
    while t < min(n, m):
        found = min_pivot(t)
        if found is None:
            break
        _, pi, pj = found
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            # clear column t below the pivot
            dirty = False
            for i in range(t + 1, n):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, -q)
                    if D[i][t]:
                        swap_rows(t, i)  # remainder is strictly smaller
                        dirty = True
            if dirty:
                continue
            # clear row t right of the pivot
            for j in range(t + 1, m):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the whole remaining block for the chain
            offender = None
            piv = D[t][t]
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if D[i][j] % piv:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if D[t][t] < 0:
            negate_row(t)
        t += 1

    divisors = tuple(D[i][i] for i in range(min(n, m)))
    return SmithDecomposition(
        U=Matrix.from_rows(Z, U),
        D=Matrix.from_rows(Z, D),
        V=Matrix.from_rows(Z, V),
        divisors=divisors,
    )


def smith_divisors(mat: Matrix) -> tuple[int, ...]:
    return smith(mat).divisors


def int_det(rows) -> int:
    """Determinant of a square integer matrix (fraction-free elimination)."""
    a = [list(map(int, row)) for row in rows]
    n = len(a)
    if n == 0:
        return 1
    prev = 1
    sign = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for i in range(c + 1, n):
            f = a[i][c]
            for j in range(c, n):
                a[i][j] = (a[c][c] * a[i][j] - f * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# field elimination with transform tracking (for kernels and solving)


class _FieldOps:
    def __init__(self, ring: Ring):
        self.ring = ring
        if isinstance(ring, RationalField):
            self.add = lambda a, b: a + b
            self.sub = lambda a, b: a - b
            self.mul = lambda a, b: a * b
            self.div = lambda a, b: a / b
            self.zero = Fraction(0)
            self.one = Fraction(1)
        elif isinstance(ring, PrimeFieldRing):
            p = ring.p
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: (a * b) % p
            self.div = lambda a, b: (a * pow(b, p - 2, p)) % p
            self.zero = 0
            self.one = 1 % p
        else:
            raise UnsupportedRing(f"{ring} is not a supported field")


def _tracked_echelon(rows, ops: _FieldOps):
    """Row-reduce ``rows`` over a field while tracking T with T*orig = echelon.

    Returns (echelon rows, T rows, pivots) where pivots is a list of
    (row, col) pairs in order.
    """
    n = len(rows)
    m = len(rows[0]) if rows else 0
    E = [list(r) for r in rows]
    T = [[ops.one if i == j else ops.zero for j in range(n)] for i in range(n)]
    pivots = []
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = None
        for i in range(r, n):
            if E[i][c] != ops.zero:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            E[r], E[piv] = E[piv], E[r]
            T[r], T[piv] = T[piv], T[r]
        inv = ops.div(ops.one, E[r][c])
        E[r] = [ops.mul(inv, x) for x in E[r]]
        T[r] = [ops.mul(inv, x) for x in T[r]]
        for i in range(n):
            if i != r and E[i][c] != ops.zero:
                f = E[i][c]
                E[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(E[i], E[r])]
                T[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(T[i], T[r])]
        pivots.append((r, c))
        r += 1
    return E, T, pivots


def _field_left_kernel(rows, ops: _FieldOps):
    E, T, pivots = _tracked_echelon(rows, ops)
    rank = len(pivots)
    return [T[i] for i in range(rank, len(rows))]


def _int_tracked_kernel(rows):
    """Integer rows spanning the rational left kernel, by tracked Bareiss.

    Eliminates [A | I] fraction-free; the tracking halves of the rows whose
    A-part vanished are integer kernel generators (bordered-minor identity
    keeps every intermediate entry integral).
    """
    n = len(rows)
    if n == 0:
        return []
    m = len(rows[0])
    aug = [
        [int(x) for x in row] + [1 if j == i else 0 for j in range(n)]
        for i, row in enumerate(rows)
    ]
    width = m + n
    prev = 1
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = None
        for i in range(r, n):
            if aug[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            aug[r], aug[piv] = aug[piv], aug[r]
        pr = aug[r]
        pv = pr[c]
        for i in range(r + 1, n):
            ai = aug[i]
            f = ai[c]
            if f:
                for j in range(width):
                    ai[j] = (pv * ai[j] - f * pr[j]) // prev
            else:
                for j in range(width):
                    ai[j] = (pv * ai[j]) // prev
        prev = pv
        r += 1
    out = []
    for i in range(r, n):
        u = aug[i][m:]
        g = 0
        for x in u:
            g = gcd(g, x)
        if g > 1:
            u = [x // g for x in u]
        if any(u):
            out.append(u)
    return out


def _rational_left_kernel_rows(mat: Matrix):
    """Kernel generators over Q via the integer fraction-free path."""
    scaled = _rational_to_int_rows(mat)  # row i scaled by d_i
    dens = []
    for i in range(mat.nrows):
        row = mat.row(i)
        dens.append(lcm(*(f.denominator for f in row)) if row else 1)
    kernel_scaled = _int_tracked_kernel(scaled)
    # u'(DA) = 0 iff (u'D)A = 0, so rescale coordinates by the row multipliers
    return [[Fraction(u * d) for u, d in zip(krow, dens)] for krow in kernel_scaled]


def _field_solve_left(rows, target, ops: _FieldOps):
    """Find u with u * rows = target over a field, or None."""
    if not rows:
        return [] if all(x == ops.zero for x in target) else None
    E, T, pivots = _tracked_echelon(rows, ops)
    n = len(rows)
    work = list(target)
    coeffs = [ops.zero] * n
    for r, c in pivots:
        f = work[c]
        if f != ops.zero:
            work = [ops.sub(x, ops.mul(f, y)) for x, y in zip(work, E[r])]
            coeffs = [ops.add(x, ops.mul(f, y)) for x, y in zip(coeffs, T[r])]
    if any(x != ops.zero for x in work):
        return None
    return coeffs


# ---------------------------------------------------------------------------
# left kernels and row membership over all supported rings


def kernel_capable(ring: Ring) -> bool:
    """Rings where left_kernel / row_membership are implemented."""
    if isinstance(ring, (IntegerRing, RationalField, PrimeFieldRing, ResidueRing)):
        return True
    return isinstance(ring, GroupAlgebraRing)


def _int_left_kernel_rows(rows):
    """Basis of the left kernel lattice {u : u A = 0} of an integer matrix."""
    mat = Matrix.from_int_rows(Z, rows) if rows else Matrix.zeros(Z, 0, 0)
    n, m = mat.nrows, mat.ncols
    if n == 0:
        return []
    dec = smith(mat)
    out = []
    for i in range(n):
        if i >= min(n, m) or dec.divisors[i] == 0:
            out.append(list(map(int, dec.U.row(i))))
    return out


def _int_solve_left(rows, target):
    """Find integer u with u A = target, or None, via the Smith transforms."""
    mat = Matrix.from_int_rows(Z, rows) if rows else None
    m = len(target)
    if mat is None or mat.nrows == 0:
        return [] if all(x == 0 for x in target) else None
    n = mat.nrows
    dec = smith(mat)
    y = (Matrix.from_int_rows(Z, [list(target)]) @ dec.V).row(0)
    w = [0] * n
    for i in range(m):
        if i < min(n, m):
            d = dec.divisors[i]
            if d == 0:
                if y[i] != 0:
                    return None
            else:
                if y[i] % d:
                    return None
                w[i] = y[i] // d
        else:
            if y[i] != 0:
                return None
    u = (Matrix.from_int_rows(Z, [w]) @ dec.U).row(0)
    return list(map(int, u))


def _galg_flatten_row(ring: GroupAlgebraRing, row):
    """Coefficient expansion of a k[G]-row into a k-row of length m*|G|."""
    out = []
    for a in row:
        out.extend(a)
    return out


def _galg_reassemble(ring: GroupAlgebraRing, flat, width: int):
    d = ring.group.order
    return [tuple(flat[i * d : (i + 1) * d]) for i in range(width)]


def left_kernel(mat: Matrix) -> Matrix:
    """Generators of {u : u A = 0}.

    Over Z the rows are a basis of the kernel lattice; over Z/n they generate
    the kernel module (computed by lifting against n*I); over a group algebra
    the system is solved through the base-field regular representation and
    the base-field kernel basis is reassembled into group-algebra rows.
    """
    ring = mat.ring
    n = mat.nrows
    if isinstance(ring, IntegerRing):
        rows = _int_left_kernel_rows(mat.rows())
        return Matrix.from_int_rows(Z, rows) if rows else Matrix.zeros(Z, 0, n)
    if isinstance(ring, RationalField):
        rows = _rational_left_kernel_rows(mat)
        return Matrix.from_rows(ring, rows) if rows else Matrix.zeros(ring, 0, n)
    if isinstance(ring, PrimeFieldRing):
        ops = _FieldOps(ring)
        rows = _field_left_kernel(mat.rows(), ops)
        return Matrix.from_rows(ring, rows) if rows else Matrix.zeros(ring, 0, n)
    if isinstance(ring, ResidueRing):
        q = ring.n
        lifted = [[int(x) for x in mat.row(i)] for i in range(n)]
        lifted += [[q if j == c else 0 for j in range(mat.ncols)] for c in range(mat.ncols)]
        zrows = _int_left_kernel_rows(lifted)
        out = []
        for zr in zrows:
            u = [x % q for x in zr[:n]]
            if any(u):
                out.append(u)
        return Matrix.from_rows(ring, out) if out else Matrix.zeros(ring, 0, n)
    if isinstance(ring, GroupAlgebraRing):
        rr = regular_rep(mat)
        if isinstance(ring.base, RationalField):
            krows = _rational_left_kernel_rows(rr)
        else:
            krows = _field_left_kernel(rr.rows(), _FieldOps(ring.base))
        out = []
        for kr in krows:
            row = _galg_reassemble(ring, kr, n)
            if any(not ring.is_zero(x) for x in row):
                out.append(row)
        return Matrix.from_rows(ring, out) if out else Matrix.zeros(ring, 0, n)
    raise UnsupportedRing(f"left_kernel is not implemented over {ring}")


def row_membership(mat: Matrix, v: Matrix) -> Matrix | None:
    """Coefficient row u with u A = v if v lies in the row space, else None."""
    ring = mat.ring
    if v.ring != ring:
        raise RingMismatch(f"vector over {v.ring}, matrix over {ring}")
    if v.nrows != 1 or v.ncols != mat.ncols:
        raise ValueError(f"need a 1x{mat.ncols} row, got {v.shape}")
    n = mat.nrows
    if isinstance(ring, IntegerRing):
        u = _int_solve_left(mat.rows(), [int(x) for x in v.row(0)])
        return None if u is None else Matrix.from_int_rows(Z, [u])
    if isinstance(ring, (RationalField, PrimeFieldRing)):
        ops = _FieldOps(ring)
        u = _field_solve_left(mat.rows(), list(v.row(0)), ops)
        return None if u is None else Matrix.from_rows(ring, [u])
    if isinstance(ring, ResidueRing):
        q = ring.n
        lifted = [[int(x) for x in mat.row(i)] for i in range(n)]
        lifted += [[q if j == c else 0 for j in range(mat.ncols)] for c in range(mat.ncols)]
        u = _int_solve_left(lifted, [int(x) for x in v.row(0)])
        if u is None:
            return None
        return Matrix.from_rows(ring, [[x % q for x in u[:n]]])
    if isinstance(ring, GroupAlgebraRing):
        rr = regular_rep(mat)
        ops = _FieldOps(ring.base)
        flat_v = _galg_flatten_row(ring, v.row(0))
        if rr.nrows == 0:
            return (
                Matrix.zeros(ring, 1, 0)
                if all(x == ops.zero for x in flat_v)
                else None
            )
        u = _field_solve_left(rr.rows(), flat_v, ops)
        if u is None:
            return None
        return Matrix.from_rows(ring, [_galg_reassemble(ring, u, n)])
    raise UnsupportedRing(f"row_membership is not implemented over {ring}")


def in_row_space(mat: Matrix, v: Matrix) -> bool:
    return row_membership(mat, v) is not None


def lift_residue_matrix(mat: Matrix) -> Matrix:
    """Canonical integer lift of a matrix over Z/n (entries in [0, n))."""
    residue_modulus(mat.ring)  # raises for non-residue rings
    return mat.map_entries(int, Z)


def p_valuation(d: int, p: int) -> int:
    if d == 0:
        raise ValueError("valuation of 0 is infinite; handle separately")
    v = 0
    d = abs(d)
    while d % p == 0:
        d //= p
        v += 1
    return v
