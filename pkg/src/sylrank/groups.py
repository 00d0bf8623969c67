"""Finite groups as explicit multiplication tables.

A group is stored as a full Cayley table on element indices ``0..order-1``.
Construction validates the group laws by finite enumeration (closure,
associativity, identity, unique two-sided inverses), so a ``FiniteGroup``
value is a certificate that the table really is a group law.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ParseError


class GroupTableError(ParseError):
    """The given multiplication table is not a group law."""


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def element_name(self, i: int) -> str:
        return f"g{i}"

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def _validate_table(rows) -> tuple[int, tuple[int, ...]]:
    """Check the group axioms; return (identity index, inverse table)."""
    n = len(rows)
    if n == 0:
        raise GroupTableError("empty multiplication table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise GroupTableError(f"table row {i} has length {len(row)}, expected {n}", line=i + 2)
        for v in row:
            if not (0 <= v < n):
                raise GroupTableError(f"table entry {v} out of range in row {i}", line=i + 2)
    identity = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise GroupTableError("table has no two-sided identity")
    for i, j, k in itertools.product(range(n), repeat=3):
        if rows[rows[i][j]][k] != rows[i][rows[j][k]]:
            raise GroupTableError(f"table is not associative at ({i},{j},{k})")
    inverse = []
    for i in range(n):
        invs = [j for j in range(n) if rows[i][j] == identity and rows[j][i] == identity]
        if len(invs) != 1:
            raise GroupTableError(f"element {i} does not have a unique two-sided inverse")
        inverse.append(invs[0])
    return identity, tuple(inverse)


def group_from_table(name: str, rows) -> FiniteGroup:
    table = tuple(tuple(int(v) for v in row) for row in rows)
    identity, inverse = _validate_table(table)
    return FiniteGroup(name=name, table=table, identity=identity, inverse=inverse)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupTableError(f"cyclic group order must be >= 1, got {n}")
    rows = [[(i + j) % n for j in range(n)] for i in range(n)]
    return group_from_table(f"C{n}", rows)


def symmetric_group_3() -> FiniteGroup:
    """S3 on the lexicographically ordered permutations of (0,1,2).

    The product ``p*q`` is "apply p, then q", matching the row-vector
    convention used for matrices elsewhere.
    """
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    rows = []
    for p in perms:
        rows.append([index[tuple(q[p[x]] for x in range(3))] for q in perms])
    return group_from_table("S3", rows)


def parse_cayley_text(text: str, name: str = "cayley") -> FiniteGroup:
    """Parse the Cayley file format: first line the order, then order rows."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise GroupTableError("empty Cayley table file", line=1)
    try:
        order = int(lines[0])
    except ValueError as exc:
        raise GroupTableError(f"bad order line {lines[0]!r}", line=1) from exc
    if len(lines) != order + 1:
        raise GroupTableError(f"expected {order} table rows, found {len(lines) - 1}")
    rows = []
    for i, ln in enumerate(lines[1:]):
        parts = ln.split()
        try:
            row = [int(p) for p in parts]
        except ValueError as exc:
            raise GroupTableError(f"bad table row {ln!r}", line=i + 2) from exc
        rows.append(row)
    return group_from_table(name, rows)


def make_group(spec: str) -> FiniteGroup:
    """Group grammar: ``C<n> | S3 | cayley:<path>``."""
    spec = spec.strip()
    if spec == "S3":
        return symmetric_group_3()
    if spec.startswith("C") and spec[1:].isdigit():
        return cyclic_group(int(spec[1:]))
    if spec.startswith("cayley:"):
        path = spec[len("cayley:"):]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read Cayley file {path!r}: {exc}") from exc
        return parse_cayley_text(text, name=f"cayley:{path}")
    raise ParseError(f"bad group spec {spec!r}; expected C<n>, S3 or cayley:<path>")
