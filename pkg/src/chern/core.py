"""Exact arithmetic foundation: prime fields, monomials, term orders, polynomials.

Monomials are plain exponent tuples.  Polynomials are immutable and keep
their terms sorted in decreasing order under the ring's term order, so two
polynomials with the same term multiset always have the same representation.
Coefficients are stored as integer residues in ``[0, p)``.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from operator import add, sub
from typing import Iterable, Mapping

from .errors import InputError

Monomial = tuple[int, ...]

DEFAULT_CHARACTERISTIC = 32003


@lru_cache(maxsize=64)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def derive_seed(seed: int, *labels) -> int:
    """A 63-bit seed for the stream named by ``labels`` under ``seed``."""
    tag = "/".join([str(seed), *map(str, labels)])
    digest = hashlib.sha256(tag.encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def seeded_rng(seed: int, *labels) -> random.Random:
    """Independent, reproducible random stream named by ``labels`` under ``seed``."""
    return random.Random(derive_seed(seed, *labels))


# -- prime field ------------------------------------------------------------


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise InputError(f"characteristic must be an odd prime, got {self.p}")

    def __call__(self, value: int) -> FieldElem:
        return FieldElem(value % self.p, self.p)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)


@dataclass(frozen=True)
class FieldElem:
    """An element of F_p; arithmetic mixes freely with Python ints."""

    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            raise InputError(f"residue {self.value} out of range for p={self.p}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.p != self.p:
                raise InputError("field mismatch")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem((self.value + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem((self.value - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem((o - self.value) % self.p, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.value * o % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(-self.value % self.p, self.p)

    def inverse(self) -> FieldElem:
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * FieldElem(o, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


# -- monomials --------------------------------------------------------------


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(add, a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(map(sub, a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(max, a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _grevlex_key(m: Monomial) -> tuple:
    return (sum(m), *[-e for e in reversed(m)])


@dataclass(frozen=True)
class TermOrder:
    """A monomial order.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"elim"``; the elimination order
    compares the first ``block`` variables by grevlex, then the rest by
    grevlex.  ``perm`` optionally reorders variables before comparing.
    ``key(m)`` is a sort key that increases with the monomial.
    """

    kind: str = "grevlex"
    block: int = 0
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise InputError(f"unknown term order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise InputError("elimination order needs block >= 1")

    @classmethod
    def elimination(cls, k: int) -> TermOrder:
        return cls("elim", block=k)

    def key(self, m: Monomial) -> tuple:
        if self.perm is not None:
            m = tuple(m[i] for i in self.perm)
        if self.kind == "grevlex":
            return _grevlex_key(m)
        if self.kind == "lex":
            return m
        k = self.block
        return _grevlex_key(m[:k]) + _grevlex_key(m[k:])

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


GREVLEX = TermOrder()
LEX = TermOrder("lex")


def compare_monomials(a: Monomial, b: Monomial, order: TermOrder = GREVLEX) -> int:
    """Return -1, 0 or 1 as a is smaller than, equal to, or larger than b."""
    if len(a) != len(b):
        raise InputError(f"monomial arity mismatch: {len(a)} vs {len(b)}")
    return order.compare(a, b)


# -- polynomial rings -------------------------------------------------------


@dataclass(frozen=True)
class PolyRing:
    """k[x_1, ..., x_n] over the prime field of the given characteristic."""

    characteristic: int
    variables: tuple[str, ...]
    order: TermOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.characteristic < 3 or not is_prime(self.characteristic):
            raise InputError(f"characteristic must be an odd prime, got {self.characteristic}")
        if not self.variables:
            raise InputError("a polynomial ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise InputError(f"duplicate variable names in {self.variables}")
        for v in self.variables:
            if not v.isidentifier():
                raise InputError(f"invalid variable name {v!r}")

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @cached_property
    def field(self) -> PrimeField:
        return PrimeField(self.characteristic)

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps: Iterable[int], coeff: int = 1) -> Polynomial:
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise InputError(f"bad exponent vector {exps}")
        return Polynomial(self, {exps: coeff})

    def gens(self) -> tuple[Polynomial, ...]:
        n = self.nvars
        return tuple(self.monomial(tuple(int(i == j) for j in range(n))) for i in range(n))

    def var(self, name: str) -> Polynomial:
        try:
            i = self.variables.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None
        return self.gens()[i]

    def poly(self, text: str) -> Polynomial:
        """Parse a polynomial written in this ring's variables."""
        from .dsl import parse_polynomial

        return parse_polynomial(text, self)

    def polys(self, *texts: str) -> list[Polynomial]:
        return [self.poly(t) for t in texts]


class Polynomial:
    """Immutable sparse polynomial; ``terms`` is sorted decreasingly."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, data: Mapping[Monomial, int] | None = None):
        p = ring.characteristic
        n = ring.nvars
        clean = {}
        for m, c in (data or {}).items():
            if len(m) != n:
                raise InputError(f"monomial {m} has wrong arity for {n} variables")
            c %= p
            if c:
                clean[m] = c
        key = ring.order.key
        self.ring = ring
        self.terms: tuple[tuple[Monomial, int], ...] = tuple(
            sorted(clean.items(), key=lambda t: key(t[0]), reverse=True)
        )
        self._hash = None

    @classmethod
    def _from_sorted(cls, ring: PolyRing, terms) -> Polynomial:
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = tuple(terms)
        obj._hash = None
        return obj

    # -- inspection --

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m, _ in self.terms}) <= 1

    def leading_term(self, order: TermOrder | None = None) -> tuple[Monomial, int]:
        if not self.terms:
            raise InputError("zero polynomial has no leading term")
        if order is None or order == self.ring.order:
            return self.terms[0]
        return max(self.terms, key=lambda t: order.key(t[0]))

    def leading_monomial(self, order: TermOrder | None = None) -> Monomial:
        return self.leading_term(order)[0]

    def coefficient(self, m: Monomial) -> int:
        return dict(self.terms).get(tuple(m), 0)

    def monic(self, order: TermOrder | None = None) -> Polynomial:
        if not self.terms:
            return self
        inv = pow(self.leading_term(order)[1], -1, self.ring.p)
        return self * inv

    # -- arithmetic --

    def _check(self, other) -> Polynomial:
        if isinstance(other, int):
            return self.ring.const(other)
        if isinstance(other, FieldElem):
            return self.ring.const(other.value)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            raise InputError("polynomials belong to different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial._from_sorted(self.ring, ((m, p - c) for m, c in self.terms))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            c = int(other) % self.ring.p
            if c == 0:
                return self.ring.zero
            p = self.ring.p
            return Polynomial._from_sorted(self.ring, ((m, a * c % p) for m, a in self.terms))
        other = self._check(other)
        if other is NotImplemented:
            return other
        d: dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("exponent must be a non-negative integer")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    # -- printing --

    def __str__(self):
        if not self.terms:
            return "0"
        p = self.ring.p
        names = self.ring.variables
        out = []
        for m, c in self.terms:
            signed = c if c <= p // 2 else c - p
            neg = signed < 0
            a = abs(signed)
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = f"{a}*" + "*".join(factors)
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Dispatch form of ring arithmetic: op is add, sub or mul."""
    if not isinstance(f, Polynomial) or not isinstance(g, Polynomial) or f.ring != g.ring:
        raise InputError("poly_arith needs two polynomials of the same ring")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise InputError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class RingDesc:
    """R = S/L for a polynomial ring S and an ideal L given by generators."""

    base: PolyRing
    relations: tuple[Polynomial, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        rels = tuple(f for f in self.relations if not f.is_zero())
        for f in rels:
            if f.ring != self.base:
                raise InputError("quotient relations must live in the base ring")
        object.__setattr__(self, "relations", rels)

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def variables(self) -> tuple[str, ...]:
        return self.base.variables

    @cached_property
    def ideal(self):
        from .groebner import IdealHandle

        return IdealHandle(self.base, self.relations)

    @cached_property
    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f in self.relations)

    @cached_property
    def maximal_ideal(self):
        from .groebner import IdealHandle

        return IdealHandle(self.base, self.base.gens())

    def quotient(self, extra: Iterable[Polynomial], name: str = "") -> RingDesc:
        return RingDesc(self.base, self.relations + tuple(extra), name=name)

    def __str__(self):
        vars_ = ",".join(self.variables)
        if not self.relations:
            return f"F_{self.characteristic}[{vars_}]"
        rels = ", ".join(map(str, self.relations))
        return f"F_{self.characteristic}[{vars_}]/({rels})"
