"""Arithmetic in GF(p^r) with polynomial representatives.

Elements are indexed 0..p^r-1; index i encodes the polynomial whose
coefficient vector (constant term first) is the base-p digit expansion
of i.  For GF(9) this makes g_i = a*x + b with i = 3a + b.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

MAX_FIELD_SIZE = 1 << 20
TABLE_SIZE_LIMIT = 512  # full add/mul tables are kept for orders up to this


class FieldConstructionError(ValueError):
    """Invalid parameters for a prime-power field."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_trim(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    k = len(coeffs)
    while k > 0 and coeffs[k - 1] == 0:
        k -= 1
    return coeffs[:k]


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(tuple(out))


def _poly_divmod(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Quotient and remainder of a by b over Z_p; b must be monic."""
    assert b and b[-1] == 1
    rem = list(a)
    deg_b = len(b) - 1
    quot = [0] * max(len(a) - deg_b, 0)
    for i in range(len(rem) - 1, deg_b - 1, -1):
        c = rem[i] % p
        if c:
            quot[i - deg_b] = c
            for j in range(deg_b + 1):
                rem[i - deg_b + j] = (rem[i - deg_b + j] - c * b[j]) % p
    return _poly_trim(tuple(quot)), _poly_trim(tuple(rem))


def _poly_str(coeffs: tuple[int, ...]) -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append("x" if c == 1 else f"{c}x")
        else:
            terms.append(f"x^{i}" if c == 1 else f"{c}x^{i}")
    return " + ".join(terms)


def _monic_polys(degree: int, p: int):
    """All monic polynomials of the given degree over Z_p, ascending by
    coefficient tuple read from the constant term upward."""
    total = p ** degree
    for low in range(total):
        coeffs = []
        v = low
        for _ in range(degree):
            coeffs.append(v % p)
            v //= p
        yield tuple(coeffs) + (1,)


def _find_factor(modulus: tuple[int, ...], p: int) -> tuple[int, ...] | None:
    """Trial division by monic polynomials of degree 1..deg/2."""
    deg = len(modulus) - 1
    for d in range(1, deg // 2 + 1):
        for cand in _monic_polys(d, p):
            _, rem = _poly_divmod(modulus, cand, p)
            if not rem:
                return cand
    return None


@dataclass(frozen=True)
class FieldElement:
    """Element of a PrimePowerField, identified by its canonical index."""

    field: "PrimePowerField"
    index: int

    def __post_init__(self) -> None:
        if not 0 <= self.index < self.field.order:
            raise ValueError(f"index {self.index} outside field of order {self.field.order}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.index_to_coeffs(self.index)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return self.field.add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self.field.sub(self, other)

    def __neg__(self) -> "FieldElement":
        return self.field.neg(self)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return self.field.mul(self, other)

    def __pow__(self, e: int) -> "FieldElement":
        return self.field.pow(self, e)

    def __repr__(self) -> str:
        return f"g_{self.index}"


class PrimePowerField:
    """GF(p^r) as Z_p[x] modulo a monic irreducible of degree r.

    Immutable after construction; safe to share.  Use make_field() rather
    than constructing directly.
    """

    def __init__(self, p: int, r: int, modulus: tuple[int, ...]):
        self.p = p
        self.r = r
        self.order = p ** r
        self.modulus = modulus

    # -- canonical indexing --------------------------------------------------

    def index_to_coeffs(self, index: int) -> tuple[int, ...]:
        coeffs = []
        v = index
        for _ in range(self.r):
            coeffs.append(v % self.p)
            v //= self.p
        return _poly_trim(tuple(coeffs))

    def coeffs_to_index(self, coeffs: tuple[int, ...]) -> int:
        idx = 0
        for c in reversed(coeffs):
            idx = idx * self.p + (c % self.p)
        return idx

    def element(self, index: int) -> FieldElement:
        return FieldElement(self, index)

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    def elements(self) -> list[FieldElement]:
        return [self.element(i) for i in range(self.order)]

    # -- arithmetic ----------------------------------------------------------

    def _check(self, *xs: FieldElement) -> None:
        for x in xs:
            if x.field is not self:
                raise ValueError("element belongs to a different field")

    def _add_index(self, i: int, j: int) -> int:
        ca = self.index_to_coeffs(i)
        cb = self.index_to_coeffs(j)
        n = max(len(ca), len(cb))
        out = tuple(((ca[t] if t < len(ca) else 0) + (cb[t] if t < len(cb) else 0)) % self.p
                    for t in range(n))
        return self.coeffs_to_index(_poly_trim(out))

    def _mul_index(self, i: int, j: int) -> int:
        prod = _poly_mul(self.index_to_coeffs(i), self.index_to_coeffs(j), self.p)
        _, rem = _poly_divmod(prod, self.modulus, self.p)
        return self.coeffs_to_index(rem)

    @cached_property
    def _tables(self) -> Optional[tuple[list[list[int]], list[list[int]]]]:
        """Full addition and multiplication tables for small orders."""
        if self.order > TABLE_SIZE_LIMIT:
            return None
        q = self.order
        add_t = [[self._add_index(i, j) for j in range(q)] for i in range(q)]
        mul_t = [[self._mul_index(i, j) for j in range(q)] for i in range(q)]
        return add_t, mul_t

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a, b)
        tables = self._tables
        if tables is not None:
            return self.element(tables[0][a.index][b.index])
        return self.element(self._add_index(a.index, b.index))

    def neg(self, a: FieldElement) -> FieldElement:
        self._check(a)
        out = tuple((-c) % self.p for c in a.coeffs)
        return self.element(self.coeffs_to_index(_poly_trim(out)))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.add(a, self.neg(b))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a, b)
        tables = self._tables
        if tables is not None:
            return self.element(tables[1][a.index][b.index])
        return self.element(self._mul_index(a.index, b.index))

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        if e < 0:
            raise ValueError("negative exponents not supported")
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def multiplicative_order(self, a: FieldElement) -> int:
        self._check(a)
        if a.index == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.order - 1
        order = n
        for q in _prime_factors(n):
            while order % q == 0 and self.pow(a, order // q).index == 1:
                order //= q
        return order

    @cached_property
    def discrete_log(self) -> dict[int, int]:
        """Map element index -> exponent of the canonical primitive element."""
        g = primitive_element(self)
        table = {}
        acc = self.one
        for e in range(1, self.order):
            acc = self.mul(acc, g)
            table[acc.index] = e
        return table

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.r}, modulus={_poly_str(self.modulus)})"


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def make_field(p: int, r: int, modulus: tuple[int, ...] | None = None) -> PrimePowerField:
    """Construct GF(p^r), verifying irreducibility of the modulus.

    When modulus is omitted the lexicographically smallest monic irreducible
    of degree r is used (coefficients compared from the constant term up).
    """
    if not _is_prime(p):
        raise FieldConstructionError(f"{p} is not prime")
    if r < 1:
        raise FieldConstructionError(f"exponent must be positive, got {r}")
    if p ** r > MAX_FIELD_SIZE:
        raise FieldConstructionError(f"field order {p}^{r} exceeds supported size {MAX_FIELD_SIZE}")
    if modulus is not None:
        modulus = _poly_trim(tuple(c % p for c in modulus))
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise FieldConstructionError(
                f"modulus must be monic of degree {r}, got {_poly_str(modulus)}"
            )
        factor = _find_factor(modulus, p)
        if factor is not None:
            raise FieldConstructionError(
                f"modulus {_poly_str(modulus)} is reducible over Z_{p}: "
                f"divisible by {_poly_str(factor)}"
            )
        return PrimePowerField(p, r, modulus)
    for cand in _monic_polys(r, p):
        if r == 1 or _find_factor(cand, p) is None:
            return PrimePowerField(p, r, cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def primitive_element(field: PrimePowerField) -> FieldElement:
    """Element of smallest canonical index generating the multiplicative group."""
    n = field.order - 1
    for i in range(1, field.order):
        g = field.element(i)
        if field.multiplicative_order(g) == n:
            return g
    raise AssertionError("no generator found")  # unreachable for a field


def power_table(field: PrimePowerField, g: FieldElement) -> list[FieldElement]:
    """[g^1, g^2, ..., g^(q-1)]; requires g to be a generator."""
    if g.field is not field:
        raise ValueError("element belongs to a different field")
    n = field.order - 1
    if field.multiplicative_order(g) != n:
        raise ValueError(f"{g!r} has order {field.multiplicative_order(g)}, not a generator")
    out = []
    acc = field.one
    for _ in range(n):
        acc = field.mul(acc, g)
        out.append(acc)
    return out


def quadratic_residues(field: PrimePowerField) -> frozenset[FieldElement]:
    """The nonzero squares {g^2, g^4, ...}; defined for odd characteristic."""
    if field.p == 2:
        raise ValueError("quadratic residues are not meaningful in characteristic 2 "
                         "(every element is a square)")
    g = primitive_element(field)
    g2 = field.mul(g, g)
    out = set()
    acc = field.one
    for _ in range((field.order - 1) // 2):
        acc = field.mul(acc, g2)
        out.add(acc)
    return frozenset(out)
