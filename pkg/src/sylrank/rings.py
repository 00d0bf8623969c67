"""Coefficient rings with exact scalar arithmetic.

Scalars are plain Python values and each ``Ring`` object supplies the
arithmetic on them, so matrices stay representation-agnostic:

* integers            -> ``int``
* rationals           -> ``fractions.Fraction``
* prime field F_p     -> ``int`` in ``[0, p)``
* residue ring Z/n    -> ``int`` in ``[0, n)`` (composite n; prime n
  normalizes to the prime field)
* group algebra k[G]  -> dense ``tuple`` of base scalars indexed by group
  element, zero-padded
* k x k amplification -> ``tuple`` of k row-``tuple``s of base scalars

All arithmetic is exact arbitrary precision; there is no floating point
anywhere in the library.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, RingMismatch
from .groups import FiniteGroup, make_group


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` at bracket depth 0 only (brackets: () and [])."""
    parts, depth, buf = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced brackets in {text!r}")
    parts.append("".join(buf))
    return parts


class Ring(ABC):
    """Abstract coefficient ring; subclasses are immutable value objects."""

    is_field = False

    @property
    @abstractmethod
    def kind(self) -> str: ...

    @property
    @abstractmethod
    def zero(self): ...

    @property
    @abstractmethod
    def one(self): ...

    @abstractmethod
    def add(self, a, b): ...

    @abstractmethod
    def neg(self, a): ...

    @abstractmethod
    def mul(self, a, b): ...

    @abstractmethod
    def from_int(self, c: int): ...

    @abstractmethod
    def scalar_str(self, a) -> str: ...

    @abstractmethod
    def scalar_parse(self, text: str): ...

    @abstractmethod
    def spec(self) -> str:
        """Canonical ring-grammar string; parseable by ``ring_make``."""

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def __str__(self):
        return self.spec()


@dataclass(frozen=True)
class IntegerRing(Ring):
    kind = "Z"
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, c):
        return int(c)

    def scalar_str(self, a):
        return str(a)

    def scalar_parse(self, text):
        try:
            return int(text.strip())
        except ValueError as exc:
            raise ParseError(f"bad integer {text!r}") from exc

    def spec(self):
        return "Z"


@dataclass(frozen=True)
class RationalField(Ring):
    kind = "Q"
    is_field = True
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, c):
        return Fraction(c)

    def scalar_str(self, a):
        return str(a)

    def scalar_parse(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {text!r}") from exc

    def spec(self):
        return "Q"


@dataclass(frozen=True)
class PrimeFieldRing(Ring):
    p: int
    is_field = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise ParseError(f"Fp modulus {self.p} is not prime")

    @property
    def kind(self):
        return "Fp"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 is not invertible in F{self.p}")
        return pow(a, self.p - 2, self.p)

    def from_int(self, c):
        return c % self.p

    def scalar_str(self, a):
        return str(a)

    def scalar_parse(self, text):
        try:
            return int(text.strip()) % self.p
        except ValueError as exc:
            raise ParseError(f"bad residue {text!r}") from exc

    def spec(self):
        return f"Fp({self.p})"


@dataclass(frozen=True)
class ResidueRing(Ring):
    """Z/n for composite n; ``residue_ring`` normalizes prime n to F_p."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ParseError(f"Zmod modulus must be >= 2, got {self.n}")
        if is_prime(self.n):
            raise ParseError(
                f"Zmod({self.n}) with prime modulus is the field Fp({self.n}); use residue_ring()"
            )

    @property
    def kind(self):
        return "Zmod"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def from_int(self, c):
        return c % self.n

    def scalar_str(self, a):
        return str(a)

    def scalar_parse(self, text):
        try:
            return int(text.strip()) % self.n
        except ValueError as exc:
            raise ParseError(f"bad residue {text!r}") from exc

    def spec(self):
        return f"Zmod({self.n})"


def residue_ring(n: int) -> Ring:
    """Canonical ring of residues mod n: F_n when n is prime, else Z/n."""
    if n < 2:
        raise ParseError(f"modulus must be >= 2, got {n}")
    return PrimeFieldRing(n) if is_prime(n) else ResidueRing(n)


def residue_modulus(ring: Ring) -> int:
    if isinstance(ring, PrimeFieldRing):
        return ring.p
    if isinstance(ring, ResidueRing):
        return ring.n
    raise RingMismatch(f"{ring} is not a residue ring")


@dataclass(frozen=True)
class GroupAlgebraRing(Ring):
    """k[G] for a field k and finite group G; scalars are dense coefficient tuples."""

    base: Ring
    group: FiniteGroup

    def __post_init__(self):
        if not isinstance(self.base, (RationalField, PrimeFieldRing)):
            raise ParseError(f"group algebra base must be a field, got {self.base}")

    @property
    def kind(self):
        return "GroupAlgebra"

    @property
    def order(self):
        return self.group.order

    @property
    def zero(self):
        return (self.base.zero,) * self.order

    @property
    def one(self):
        z = self.base.zero
        return tuple(self.base.one if i == self.group.identity else z for i in range(self.order))

    def basis_element(self, index: int):
        z = self.base.zero
        return tuple(self.base.one if i == index else z for i in range(self.order))

    def add(self, a, b):
        base = self.base
        return tuple(base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        base = self.base
        return tuple(base.neg(x) for x in a)

    def mul(self, a, b):
        base = self.base
        table = self.group.table
        out = [base.zero] * self.order
        for r, ar in enumerate(a):
            if base.is_zero(ar):
                continue
            row = table[r]
            for s, bs in enumerate(b):
                if base.is_zero(bs):
                    continue
                t = row[s]
                out[t] = base.add(out[t], base.mul(ar, bs))
        return tuple(out)

    def from_int(self, c):
        z = self.base.zero
        v = self.base.from_int(c)
        return tuple(v if i == self.group.identity else z for i in range(self.order))

    def scalar_str(self, a):
        return "+".join(
            f"{self.base.scalar_str(c)}*{self.group.element_name(i)}" for i, c in enumerate(a)
        )

    def scalar_parse(self, text):
        text = text.strip()
        coeffs = [self.base.zero] * self.order
        if text in ("0", ""):
            return tuple(coeffs)
        for term in split_top(text, "+"):
            term = term.strip()
            if not term:
                continue
            if "*" not in term:
                raise ParseError(f"bad group-algebra term {term!r}; expected c*g<i>")
            cpart, gpart = term.rsplit("*", 1)
            gpart = gpart.strip()
            if not gpart.startswith("g") or not gpart[1:].isdigit():
                raise ParseError(f"bad group element {gpart!r}")
            idx = int(gpart[1:])
            if idx >= self.order:
                raise ParseError(f"group element index {idx} out of range for {self.spec()}")
            coeffs[idx] = self.base.add(coeffs[idx], self.base.scalar_parse(cpart))
        return tuple(coeffs)

    def spec(self):
        return f"GroupRing({self.base.spec()},{self.group.name})"


@dataclass(frozen=True)
class MatrixRing(Ring):
    """k x k matrix amplification of a base ring; scalars are k x k blocks."""

    base: Ring
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ParseError(f"amplification size must be >= 1, got {self.k}")

    @property
    def kind(self):
        return "Mat"

    @property
    def zero(self):
        z = self.base.zero
        return tuple((z,) * self.k for _ in range(self.k))

    @property
    def one(self):
        z, o = self.base.zero, self.base.one
        return tuple(tuple(o if i == j else z for j in range(self.k)) for i in range(self.k))

    def unit(self, i: int, j: int):
        """Matrix unit e_{ij}."""
        z, o = self.base.zero, self.base.one
        return tuple(
            tuple(o if (r, c) == (i, j) else z for c in range(self.k)) for r in range(self.k)
        )

    def add(self, a, b):
        base = self.base
        return tuple(tuple(base.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def neg(self, a):
        base = self.base
        return tuple(tuple(base.neg(x) for x in row) for row in a)

    def mul(self, a, b):
        base = self.base
        k = self.k
        out = []
        for i in range(k):
            row = []
            for j in range(k):
                acc = base.zero
                for t in range(k):
                    acc = base.add(acc, base.mul(a[i][t], b[t][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def from_int(self, c):
        z = self.base.zero
        v = self.base.from_int(c)
        return tuple(tuple(v if i == j else z for j in range(self.k)) for i in range(self.k))

    def scalar_str(self, a):
        return "[" + ";".join(",".join(self.base.scalar_str(x) for x in row) for row in a) + "]"

    def scalar_parse(self, text):
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ParseError(f"bad amplification scalar {text!r}; expected [r;...;r]")
        body = text[1:-1]
        rows = [split_top(r, ",") for r in split_top(body, ";")]
        if len(rows) != self.k or any(len(r) != self.k for r in rows):
            raise ParseError(f"amplification scalar must be {self.k}x{self.k}: {text!r}")
        return tuple(tuple(self.base.scalar_parse(x) for x in row) for row in rows)

    def spec(self):
        return f"Mat({self.base.spec()},{self.k})"


Z = IntegerRing()
Q = RationalField()


def ring_make(spec: str) -> Ring:
    """Ring grammar: ``Z | Q | Fp(<prime>) | Zmod(<n>) | GroupRing(<field>,<group>) | Mat(<ring>,<k>)``."""
    spec = spec.strip()
    if spec == "Z":
        return Z
    if spec == "Q":
        return Q
    if spec.endswith(")"):
        head, _, rest = spec.partition("(")
        body = rest[:-1]
        if head == "Fp":
            try:
                p = int(body)
            except ValueError as exc:
                raise ParseError(f"bad prime in {spec!r}") from exc
            return PrimeFieldRing(p)
        if head == "Zmod":
            try:
                n = int(body)
            except ValueError as exc:
                raise ParseError(f"bad modulus in {spec!r}") from exc
            return residue_ring(n)
        if head == "GroupRing":
            parts = split_top(body, ",")
            if len(parts) != 2:
                raise ParseError(f"GroupRing takes (field, group): {spec!r}")
            base = ring_make(parts[0])
            group = make_group(parts[1])
            return GroupAlgebraRing(base, group)
        if head == "Mat":
            parts = split_top(body, ",")
            if len(parts) != 2:
                raise ParseError(f"Mat takes (ring, k): {spec!r}")
            base = ring_make(parts[0])
            try:
                k = int(parts[1])
            except ValueError as exc:
                raise ParseError(f"bad amplification size in {spec!r}") from exc
            return MatrixRing(base, k)
    raise ParseError(f"bad ring spec {spec!r}")


# ---------------------------------------------------------------------------
# ring homomorphisms


def regular_rep_scalar(ring: GroupAlgebraRing, a):
    """Right-regular-representation block of a in M_{|G|}(k).

    Row x holds the coefficients of g_x * a, so right multiplication of row
    vectors by the block matches right multiplication by a in k[G].
    """
    g = ring.group
    n = g.order
    return tuple(tuple(a[g.mul(g.inv(x), y)] for y in range(n)) for x in range(n))


@dataclass(frozen=True)
class RingHom:
    """A unital ring homomorphism given by one of the supported rules."""

    source: Ring
    target: Ring
    rule: str  # "mod" | "modq" | "incQ" | "aug" | "regemb" | "compose"
    data: tuple = ()

    def apply(self, a):
        if self.rule == "mod":
            return a % self.data[0]
        if self.rule == "modq":
            return a % self.data[0]
        if self.rule == "incQ":
            return Fraction(a)
        if self.rule == "aug":
            base = self.target
            acc = base.zero
            for c in a:
                acc = base.add(acc, c)
            return acc
        if self.rule == "regemb":
            return regular_rep_scalar(self.source, a)
        if self.rule == "compose":
            h1, h2 = self.data
            return h2.apply(h1.apply(a))
        raise ParseError(f"unknown hom rule {self.rule!r}")

    def label(self) -> str:
        if self.rule in ("mod", "modq"):
            return f"mod({self.data[0]})"
        if self.rule == "compose":
            h1, h2 = self.data
            return f"{h2.label()}.{h1.label()}"
        return self.rule


def reduce_mod(n: int) -> RingHom:
    """Z -> Z/n (or F_n for prime n), the quotient map."""
    return RingHom(Z, residue_ring(n), "mod", (n,))


def include_rationals() -> RingHom:
    return RingHom(Z, Q, "incQ")


def reduce_between_quotients(source: Ring, n: int) -> RingHom:
    """Z/N -> Z/n for n dividing N."""
    big = residue_modulus(source)
    if big % n != 0:
        raise ParseError(f"mod({n}) is not defined on Zmod({big}): {n} does not divide {big}")
    return RingHom(source, residue_ring(n), "modq", (n,))


def augmentation(source: GroupAlgebraRing) -> RingHom:
    """k[G] -> k, every group element to 1."""
    if not isinstance(source, GroupAlgebraRing):
        raise RingMismatch(f"augmentation needs a group algebra, got {source}")
    return RingHom(source, source.base, "aug")


def regular_embedding(source: GroupAlgebraRing) -> RingHom:
    """k[G] -> Mat(k, |G|) via right regular representation blocks."""
    if not isinstance(source, GroupAlgebraRing):
        raise RingMismatch(f"regular embedding needs a group algebra, got {source}")
    return RingHom(source, MatrixRing(source.base, source.group.order), "regemb")


def compose(first: RingHom, second: RingHom) -> RingHom:
    """The composite "apply first, then second"."""
    if first.target != second.source:
        raise RingMismatch(
            f"cannot compose {first.label()} with {second.label()}: "
            f"{first.target} != {second.source}"
        )
    return RingHom(first.source, second.target, "compose", (first, second))


def make_hom(rule: str, source: Ring, target: Ring | None = None) -> RingHom:
    """Hom grammar: ``mod(<n>) | incQ | aug | regemb``, resolved against the source ring."""
    rule = rule.strip()
    if rule.startswith("mod(") and rule.endswith(")"):
        try:
            n = int(rule[4:-1])
        except ValueError as exc:
            raise ParseError(f"bad hom spec {rule!r}") from exc
        if source == Z:
            return reduce_mod(n)
        return reduce_between_quotients(source, n)
    if rule == "incQ":
        if source != Z:
            raise ParseError(f"incQ is defined on Z, not {source}")
        return include_rationals()
    if rule == "aug":
        return augmentation(source)
    if rule == "regemb":
        return regular_embedding(source)
    raise ParseError(f"bad hom spec {rule!r}")
