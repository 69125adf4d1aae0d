"""Buchberger engine and ideal calculus over a prime field.

Internally a polynomial is a term list ``[(monomial, coeff), ...]`` sorted
decreasingly under the active order; reduced bases are cached per order on
the ``IdealHandle``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

from .core import (
    GREVLEX,
    Monomial,
    Polynomial,
    PolyRing,
    TermOrder,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)
from .errors import InputError, SaturationLimitError

SATURATION_CAP = 50

Terms = list  # list[tuple[Monomial, int]], decreasing


def _sorted_terms(d: dict, order: TermOrder) -> Terms:
    key = order.key
    return sorted(d.items(), key=lambda t: key(t[0]), reverse=True)


def _make_monic(terms: Terms, p: int) -> Terms:
    c0 = terms[0][1]
    if c0 == 1:
        return terms
    inv = pow(c0, -1, p)
    return [(m, c * inv % p) for m, c in terms]


def _neg_key(order: TermOrder):
    key = order.key
    return lambda m: tuple(-k for k in key(m))


def _reduce(f: dict, basis: Sequence[Terms], order: TermOrder, p: int, full: bool = True) -> dict:
    """Remainder of f on division by monic ``basis``.  Consumes ``f``."""
    if not f:
        return {}
    nkey = _neg_key(order)
    leads = [g[0][0] for g in basis]
    heap = [(nkey(m), m) for m in f]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        for lm, g in zip(leads, basis):
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                for u, a in g[1:]:
                    w = mono_mul(q, u)
                    old = f.get(w)
                    v = ((old or 0) - c * a) % p
                    if v:
                        if old is None:
                            heapq.heappush(heap, (nkey(w), w))
                        f[w] = v
                    elif old is not None:
                        del f[w]
                break
        else:
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
    return rem


def _spoly(f: Terms, g: Terms, p: int) -> dict:
    lcm = mono_lcm(f[0][0], g[0][0])
    qf = mono_div(lcm, f[0][0])
    qg = mono_div(lcm, g[0][0])
    d: dict = {}
    for m, c in f[1:]:
        w = mono_mul(qf, m)
        d[w] = (d.get(w, 0) + c) % p
    for m, c in g[1:]:
        w = mono_mul(qg, m)
        d[w] = (d.get(w, 0) - c) % p
    return {m: c for m, c in d.items() if c}


def _update(polys, G: set, B: set, ih: int):
    """Gebauer-Moeller installation of the new basis element ``ih``."""
    mh = polys[ih][0][0]
    C = set(G)
    D = set()
    while C:
        ig = C.pop()
        mg = polys[ig][0][0]
        lcm_hg = mono_lcm(mh, mg)

        def lcm_divides(ip):
            return mono_divides(mono_lcm(mh, polys[ip][0][0]), lcm_hg)

        if mono_coprime(mh, mg) or (
            not any(lcm_divides(ipx) for ipx in C) and not any(lcm_divides(pr[1]) for pr in D)
        ):
            D.add((ih, ig))
    E = {(a, b) for a, b in D if not mono_coprime(mh, polys[b][0][0])}
    B_new = set()
    for ig1, ig2 in B:
        m1, m2 = polys[ig1][0][0], polys[ig2][0][0]
        lcm12 = mono_lcm(m1, m2)
        if (
            not mono_divides(mh, lcm12)
            or mono_lcm(m1, mh) == lcm12
            or mono_lcm(m2, mh) == lcm12
        ):
            B_new.add((ig1, ig2))
    B_new |= E
    G_new = {ig for ig in G if not mono_divides(mh, polys[ig][0][0])}
    G_new.add(ih)
    return G_new, B_new


def _buchberger(F: Iterable[dict], order: TermOrder, p: int) -> list[Terms]:
    """Reduced Groebner basis (monic, sorted by increasing leading monomial)."""
    key = order.key
    polys: list[Terms] = []
    G: set = set()
    B: set = set()
    inputs = [_sorted_terms(dict(f), order) for f in F if f]
    inputs.sort(key=lambda t: key(t[0][0]))
    for t in inputs:
        r = _reduce(dict(t), [polys[i] for i in sorted(G)], order, p)
        if not r:
            continue
        polys.append(_make_monic(_sorted_terms(r, order), p))
        G, B = _update(polys, G, B, len(polys) - 1)
        if not any(polys[-1][0][0]):
            return [polys[-1][:1]]

    while B:
        pair = min(B, key=lambda ij: (key(mono_lcm(polys[ij[0]][0][0], polys[ij[1]][0][0])), ij))
        B.discard(pair)
        s = _spoly(polys[pair[0]], polys[pair[1]], p)
        r = _reduce(s, [polys[i] for i in sorted(G)], order, p)
        if not r:
            continue
        h = _make_monic(_sorted_terms(r, order), p)
        if not any(h[0][0]):
            return [[(h[0][0], 1)]]
        polys.append(h)
        G, B = _update(polys, G, B, len(polys) - 1)

    basis = [polys[i] for i in G]
    # minimalize
    basis.sort(key=lambda t: key(t[0][0]))
    minimal: list[Terms] = []
    for g in basis:
        if not any(mono_divides(h[0][0], g[0][0]) for h in minimal):
            minimal.append(g)
    # interreduce tails
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        tail = _reduce(dict(g[1:]), others, order, p)
        reduced.append([g[0]] + _sorted_terms(tail, order))
    return reduced


def _is_unit_basis(basis: list[Terms]) -> bool:
    return len(basis) == 1 and not any(basis[0][0][0])


# -- ideals -----------------------------------------------------------------


class IdealHandle:
    """An ideal of a polynomial ring, with reduced bases cached per term order."""

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial] = ()):
        gens = []
        for f in generators:
            if not isinstance(f, Polynomial):
                raise InputError(f"ideal generator {f!r} is not a polynomial")
            if f.ring != ring:
                raise InputError("ideal generators must live in the ideal's ring")
            if not f.is_zero():
                gens.append(f)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: dict[TermOrder, list[Terms]] = {}

    @classmethod
    def from_texts(cls, ring: PolyRing, *texts: str) -> IdealHandle:
        return cls(ring, [ring.poly(t) for t in texts])

    def _terms(self, order: TermOrder = GREVLEX) -> list[Terms]:
        cached = self._gb.get(order)
        if cached is None:
            computed = _buchberger((f.as_dict() for f in self.generators), order, self.ring.p)
            # first writer wins
            cached = self._gb.setdefault(order, computed)
        return cached

    def groebner_basis(self, order: TermOrder = GREVLEX) -> tuple[Polynomial, ...]:
        return tuple(Polynomial(self.ring, dict(t)) for t in self._terms(order))

    def leading_monomials(self, order: TermOrder = GREVLEX) -> list[Monomial]:
        return [t[0][0] for t in self._terms(order)]

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return _is_unit_basis(self._terms())

    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f in self.generators)

    def reduce(self, f: Polynomial, order: TermOrder = GREVLEX) -> Polynomial:
        if f.ring != self.ring:
            raise InputError("polynomial and ideal live in different rings")
        return Polynomial(self.ring, _reduce(f.as_dict(), self._terms(order), order, self.ring.p))

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def contains_ideal(self, other: IdealHandle) -> bool:
        return all(self.contains(g) for g in other.generators)

    def key(self) -> tuple:
        """Canonical, hashable form (the reduced grevlex basis)."""
        return tuple(tuple(t) for t in self._terms())

    def __eq__(self, other):
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return self.ring == other.ring and self.key() == other.key()

    def __hash__(self):
        return hash((self.ring, self.key()))

    def __add__(self, other: IdealHandle) -> IdealHandle:
        return ideal_sum(self, other)

    def __mul__(self, other: IdealHandle) -> IdealHandle:
        return ideal_product(self, other)

    def with_generators(self, extra: Iterable[Polynomial]) -> IdealHandle:
        return IdealHandle(self.ring, self.generators + tuple(extra))

    def __str__(self):
        return "(" + ", ".join(map(str, self.generators)) + ")"

    def __repr__(self):
        return f"IdealHandle{self}"


def _same_ring(*ideals: IdealHandle) -> PolyRing:
    ring = ideals[0].ring
    for I in ideals[1:]:
        if I.ring != ring:
            raise InputError("ideals belong to different rings")
    return ring


def buchberger(I: IdealHandle, order: TermOrder = GREVLEX) -> tuple[Polynomial, ...]:
    """Reduced Groebner basis of I under ``order``."""
    return I.groebner_basis(order)


def normal_form(f: Polynomial, I: IdealHandle, order: TermOrder = GREVLEX) -> Polynomial:
    return I.reduce(f, order)


def ideal_sum(A: IdealHandle, B: IdealHandle) -> IdealHandle:
    ring = _same_ring(A, B)
    return IdealHandle(ring, A.generators + B.generators)


def ideal_product(A: IdealHandle, B: IdealHandle) -> IdealHandle:
    ring = _same_ring(A, B)
    return IdealHandle(ring, [f * g for f in A.generators for g in B.generators])


def ideal_power(A: IdealHandle, n: int) -> IdealHandle:
    """A^n by repeated products, re-reducing to a Groebner basis at each step."""
    if n < 0:
        raise InputError("ideal power must be non-negative")
    result = IdealHandle(A.ring, [A.ring.one])
    for _ in range(n):
        result = IdealHandle(A.ring, ideal_product(result, A).groebner_basis())
    return result


def intersect(A: IdealHandle, B: IdealHandle) -> IdealHandle:
    """A ∩ B as (t·A + (1 - t)·B) ∩ S, eliminating an auxiliary variable t."""
    ring = _same_ring(A, B)
    if A.is_zero() or B.is_zero():
        return IdealHandle(ring)
    p = ring.p
    F = []
    for f in A.generators:
        F.append({(1,) + m: c for m, c in f.terms})
    for g in B.generators:
        d = {(0,) + m: c for m, c in g.terms}
        for m, c in g.terms:
            d[(1,) + m] = (-c) % p
        F.append(d)
    G = _buchberger(F, TermOrder.elimination(1), p)
    keep = [{m[1:]: c for m, c in t} for t in G if all(m[0] == 0 for m, _ in t)]
    return IdealHandle(ring, [Polynomial(ring, d) for d in keep])


def _divide_exact(g: Polynomial, f: Polynomial) -> Polynomial:
    """Quotient g / f, assuming f divides g."""
    ring = g.ring
    p = ring.p
    ft = list(f.terms)
    lm, lc = ft[0]
    inv = pow(lc, -1, p)
    rest = g.as_dict()
    q: dict = {}
    key = ring.order.key
    while rest:
        m = max(rest, key=key)
        c = rest[m]
        if not mono_divides(lm, m):
            raise InputError("exact division failed")
        t = mono_div(m, lm)
        a = c * inv % p
        q[t] = a
        for u, b in ft:
            w = mono_mul(t, u)
            v = (rest.get(w, 0) - a * b) % p
            if v:
                rest[w] = v
            else:
                rest.pop(w, None)
    return Polynomial(ring, q)


def colon(I: IdealHandle, f: Polynomial | IdealHandle) -> IdealHandle:
    """(I : f) = {g : g·f ∈ I}; for an ideal J, the intersection over its generators."""
    if isinstance(f, IdealHandle):
        J = f
        _same_ring(I, J)
        if J.is_zero():
            return IdealHandle(I.ring, [I.ring.one])
        result = None
        for g in J.generators:
            part = colon(I, g)
            result = part if result is None else intersect(result, part)
        return result
    if f.ring != I.ring:
        raise InputError("polynomial and ideal live in different rings")
    if f.is_zero():
        raise InputError("colon by the zero polynomial")
    ring = I.ring
    if I.is_zero():
        return IdealHandle(ring)
    if I.contains(f):
        return IdealHandle(ring, [ring.one])
    inter = intersect(I, IdealHandle(ring, [f]))
    return IdealHandle(ring, [_divide_exact(g, f) for g in inter.groebner_basis()])


def saturate(I: IdealHandle, J: IdealHandle) -> tuple[IdealHandle, int]:
    """(I : J^∞) and the number of colon steps until it stabilized."""
    _same_ring(I, J)
    if J.is_zero():
        raise InputError("saturation by the zero ideal")
    cur = I
    for k in range(SATURATION_CAP):
        nxt = colon(cur, J)
        if nxt == cur:
            return cur, k
        cur = nxt
    raise SaturationLimitError(f"saturation did not stabilize after {SATURATION_CAP} steps")


def ideal_ops(A: IdealHandle, B: IdealHandle | None, op: str, n: int | None = None) -> IdealHandle:
    """Dispatch form: op is sum, product, power or intersection."""
    if op == "sum":
        return ideal_sum(A, B)
    if op == "product":
        return ideal_product(A, B)
    if op == "power":
        if n is None:
            raise InputError("power needs an exponent")
        return ideal_power(A, n)
    if op == "intersection":
        return intersect(A, B)
    raise InputError(f"unknown ideal operation {op!r}")


def krull_dim(I: IdealHandle) -> int:
    """dim S/I: largest set of variables independent modulo the leading-term ideal."""
    if I.is_unit():
        raise InputError("the unit ideal has no dimension")
    n = I.ring.nvars
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in I.leading_monomials()]
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            U = frozenset(U)
            if not any(s <= U for s in supports):
                return size
    return 0


def is_zero_dimensional(I: IdealHandle) -> bool:
    if I.is_unit():
        return True
    n = I.ring.nvars
    pure = set()
    for m in I.leading_monomials():
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            pure.add(nz[0])
    return len(pure) == n


def standard_monomials(I: IdealHandle, order: TermOrder = GREVLEX) -> list[Monomial]:
    """Monomials outside the leading-term ideal; requires I zero-dimensional."""
    if not is_zero_dimensional(I):
        raise InputError("not m-primary/zero-dimensional: infinitely many standard monomials")
    if I.is_unit():
        return []
    n = I.ring.nvars
    leads = I.leading_monomials(order)
    bound = [0] * n
    for m in leads:
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            i = nz[0]
            bound[i] = m[i] if not bound[i] else min(bound[i], m[i])
    out = []

    def rec(prefix: list[int]):
        i = len(prefix)
        if i == n:
            out.append(tuple(prefix))
            return
        for e in range(bound[i]):
            cand = prefix + [e]
            # prune: a partial exponent already divisible by a lead stays divisible
            partial = tuple(cand) + (0,) * (n - i - 1)
            if any(mono_divides(l, partial) for l in leads):
                break
            rec(cand)

    rec([])
    out = [m for m in out if not any(mono_divides(l, m) for l in leads)]
    return sorted(out, key=order.key, reverse=True)


def length_zero_dim(I: IdealHandle) -> int:
    """λ(S/I) = number of standard monomials."""
    return len(standard_monomials(I))


def monomial_power_ideal(ring: PolyRing, D: int) -> IdealHandle:
    """m^D for the homogeneous maximal ideal m = (x_1, ..., x_n)."""
    n = ring.nvars
    mons = []
    for combo in combinations_with_replacement(range(n), D):
        e = [0] * n
        for i in combo:
            e[i] += 1
        mons.append(ring.monomial(e))
    return IdealHandle(ring, mons)


def maximal_ideal(ring: PolyRing) -> IdealHandle:
    return IdealHandle(ring, ring.gens())


def finite_quotient_length(big: IdealHandle, small: IdealHandle, max_power: int = 60) -> int:
    """λ(big/small) for small ⊆ big with big/small of finite length supported at the origin.

    Picks D with big ∩ m^D ⊆ small; then
    λ(big/small) = λ(S/(small + m^D)) - λ(S/(big + m^D)).
    """
    ring = _same_ring(big, small)
    if not big.contains_ideal(small):
        raise InputError("finite_quotient_length needs small ⊆ big")
    if small.contains_ideal(big):
        return 0
    ann = colon(small, big)
    if not ann.is_unit() and krull_dim(ann) > 0:
        raise InputError("quotient does not have finite length")
    for D in range(1, max_power + 1):
        mD = monomial_power_ideal(ring, D)
        if small.contains_ideal(intersect(big, mD)):
            return length_zero_dim(ideal_sum(small, mD)) - length_zero_dim(ideal_sum(big, mD))
    raise InputError("finite-length quotient is not supported at the origin")


@dataclass(frozen=True)
class AnnihilatorVerdict:
    holds: bool
    witness: Polynomial | None = None


def double_annihilator_test(L0: IdealHandle, L: IdealHandle) -> AnnihilatorVerdict:
    """Check L = 0:(0:L) in S/L0, i.e. (L0 : (L0 : L)) = L."""
    ring = _same_ring(L0, L)
    if not L.contains_ideal(L0):
        raise InputError("double_annihilator_test needs L0 ⊆ L")
    if L0.is_unit() or L.is_unit():
        raise InputError("double_annihilator_test needs proper ideals")
    A = colon(L0, L)
    B = colon(L0, A)
    for g in B.groebner_basis():
        if not L.contains(g):
            return AnnihilatorVerdict(False, g)
    if not B.contains_ideal(L):
        # cannot happen (L ⊆ L0:(L0:L) always); kept as a guard
        return AnnihilatorVerdict(False, next(g for g in L.generators if not B.contains(g)))
    return AnnihilatorVerdict(True, None)


def random_linear_form(ring: PolyRing, rng) -> Polynomial:
    p = ring.p
    return Polynomial(
        ring, {tuple(int(i == j) for j in range(ring.nvars)): rng.randrange(1, p) for i in range(ring.nvars)}
    )
