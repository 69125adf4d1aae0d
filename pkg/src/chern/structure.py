"""Depth, Cohen-Macaulayness, parameters, reductions and superficial elements."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import Polynomial, PolyRing, RingDesc, seeded_rng
from .errors import GenericityError, InputError
from .graded import GradedQuotient, PowerTower, rank_mod_p
from .groebner import (
    IdealHandle,
    colon,
    finite_quotient_length,
    ideal_power,
    ideal_product,
    ideal_sum,
    intersect,
    is_zero_dimensional,
    krull_dim,
    random_linear_form,
)
from .hilbert import EVector, HSSampler, _as_ring_desc, _stable_fit, default_nmax, is_graded_pair

TRIALS = 8
C_MAX = 5
S_MAX = 10


def _ideal(R: RingDesc, I) -> IdealHandle:
    if isinstance(I, IdealHandle):
        return I
    return IdealHandle(R.base, list(I))


def _random_combination(gens: Sequence[Polynomial], rng) -> Polynomial:
    ring = gens[0].ring
    out = ring.zero
    for g in gens:
        out = out + g * rng.randrange(1, ring.p)
    return out


# -- depth and Cohen-Macaulayness -------------------------------------------


def depth(R, seed: int = 0, trials: int = TRIALS) -> int:
    """Depth at the origin: peel off generic linear nonzerodivisors until m is associated."""
    R = _as_ring_desc(R)
    if R.ideal.is_unit():
        raise InputError("depth of the zero ring is undefined")
    m = R.maximal_ideal
    cur = R.ideal
    count = 0
    while True:
        if colon(cur, m) != cur:
            return count
        for attempt in range(trials):
            ell = random_linear_form(R.base, seeded_rng(seed, "depth", count, attempt))
            if colon(cur, ell) == cur:
                cur = ideal_sum(cur, IdealHandle(R.base, [ell]))
                count += 1
                break
        else:
            raise GenericityError(
                f"genericity failure: no linear nonzerodivisor found in {trials} trials at step {count}; "
                "enlarge the field or the trial count"
            )


@dataclass(frozen=True)
class CMStatus:
    dim: int
    depth: int

    @property
    def is_cm(self) -> bool:
        return self.depth == self.dim

    def __bool__(self):
        return self.is_cm


def is_cohen_macaulay(R, seed: int = 0, trials: int = TRIALS) -> CMStatus:
    R = _as_ring_desc(R)
    return CMStatus(krull_dim(R.ideal), depth(R, seed, trials))


# -- systems of parameters --------------------------------------------------


@dataclass(frozen=True)
class SOP:
    ring: RingDesc
    elements: tuple[Polynomial, ...]
    verified: bool = True  # L + (elements) zero-dimensional
    full_sop: bool = True  # as many elements as dim of the ambient ring

    @property
    def ideal(self) -> IdealHandle:
        return IdealHandle(self.ring.base, self.elements)


def random_sop(R, seed: int = 0, trials: int = TRIALS) -> SOP:
    """d generic linear forms whose ideal is m-primary modulo L."""
    R = _as_ring_desc(R)
    d = krull_dim(R.ideal)
    if d == 0:
        return SOP(R, ())
    for attempt in range(trials):
        rng = seeded_rng(seed, "sop", attempt)
        forms = tuple(random_linear_form(R.base, rng) for _ in range(d))
        if is_zero_dimensional(ideal_sum(R.ideal, IdealHandle(R.base, forms))):
            return SOP(R, forms)
    raise GenericityError(f"genericity failure: no system of parameters in {trials} draws; retry with larger p")


def lift_sop(S_amb, p: IdealHandle, x: SOP | Sequence[Polynomial], seed: int = 0, trials: int = TRIALS) -> SOP:
    """Lift parameters of S/p to elements a_i = b_i + t c_1 + ... + t^s c_s of S.

    Each prefix (a_1..a_i) is checked to cut the dimension of S down by exactly i.
    """
    S_amb = _as_ring_desc(S_amb)
    base = S_amb.base
    if p.ring != base:
        raise InputError("p must live in the ambient polynomial ring")
    xs = tuple(x.elements if isinstance(x, SOP) else x)
    quotient = ideal_sum(S_amb.ideal, p)
    if quotient.is_unit():
        raise InputError("p is the unit ideal")
    dim_q = krull_dim(quotient)
    if len(xs) != dim_q or not is_zero_dimensional(ideal_sum(quotient, IdealHandle(base, xs))):
        raise InputError("x is not a system of parameters of S/p")
    dim_s = krull_dim(S_amb.ideal)
    cs = [c for c in p.groebner_basis()]
    lifted: list[Polynomial] = []
    cur = S_amb.ideal
    for i, b in enumerate(xs):
        for attempt in range(trials):
            rng = seeded_rng(seed, "lift", i, attempt)
            t = rng.randrange(1, base.p)
            a = b
            power = 1
            for c in cs:
                power = power * t % base.p
                a = a + c * power
            nxt = ideal_sum(cur, IdealHandle(base, [a]))
            if not nxt.is_unit() and krull_dim(nxt) == dim_s - i - 1:
                lifted.append(a)
                cur = nxt
                break
        else:
            raise GenericityError(f"genericity failure: could not lift parameter {i + 1} in {trials} draws")
    full = len(lifted) == dim_s
    return SOP(S_amb, tuple(lifted), verified=True, full_sop=full)


# -- superficial elements ---------------------------------------------------


@dataclass(frozen=True)
class SuperficialCertificate:
    h: Polynomial
    ideal: IdealHandle
    c: int
    N: int  # the defining equality was verified for c <= n <= N


class _GradedSuperficial:
    def __init__(self, R: RingDesc, I: IdealHandle, tower: PowerTower | None = None):
        self.Q = GradedQuotient(R) if tower is None else tower.Q
        self.tower = tower or PowerTower(self.Q, I)

    def holds(self, h: Polynomial, c: int, n: int) -> bool:
        """(I^{n+1} : h) ∩ I^c = I^n, compared degree by degree."""
        Q, tw, p = self.Q, self.tower, self.Q.p
        e = h.degree
        for k in range(tw.full_degree(n)):
            V = tw.piece(c, k)
            if V.shape[0] == 0:
                continue
            W = tw.piece(n + 1, k + e)
            hV = V @ Q.poly_matrix(h, k) % p
            grow = rank_mod_p(np.vstack([W, hV]), p) - W.shape[0] if W.shape[0] else rank_mod_p(hV, p)
            kernel = V.shape[0] - grow
            if kernel != tw.dim_piece(n, k):
                return False
        return True


class _GBSuperficial:
    def __init__(self, R: RingDesc, I: IdealHandle):
        self.R, self.I = R, I
        self._powers: dict[int, IdealHandle] = {}

    def power(self, j: int) -> IdealHandle:
        if j not in self._powers:
            self._powers[j] = ideal_sum(self.R.ideal, ideal_power(self.I, j))
        return self._powers[j]

    def holds(self, h: Polynomial, c: int, n: int) -> bool:
        lhs = intersect(colon(self.power(n + 1), h), self.power(c))
        return lhs == self.power(n)


def _superficial_checker(R: RingDesc, I: IdealHandle, tower=None):
    if is_graded_pair(R, I) and len({g.degree for g in I.generators}) == 1:
        return _GradedSuperficial(R, I, tower)
    return _GBSuperficial(R, I)


def verify_superficial(R, I, h: Polynomial, c: int, N: int, tower=None) -> bool:
    R = _as_ring_desc(R)
    I = _ideal(R, I)
    chk = _superficial_checker(R, I, tower)
    return all(chk.holds(h, c, n) for n in range(c, N + 1))


def find_superficial(
    R, I, seed: int = 0, N: int | None = None, c_max: int = C_MAX, trials: int = TRIALS, tower=None
) -> SuperficialCertificate:
    """Random combination h of the generators of I, certified superficial on [c, N]."""
    R = _as_ring_desc(R)
    I = _ideal(R, I)
    if not I.generators:
        raise InputError("the zero ideal has no superficial elements")
    if N is None:
        N = default_nmax(krull_dim(R.ideal))
    chk = _superficial_checker(R, I, tower)
    best = (0, None)
    for attempt in range(trials):
        h = _random_combination(I.generators, seeded_rng(seed, "superficial", attempt))
        if h.is_zero():
            continue
        for c in range(1, c_max + 1):
            ok = True
            for n in range(c, N + 1):
                if not chk.holds(h, c, n):
                    ok = False
                    if n - c > best[0]:
                        best = (n - c, (c, n))
                    break
            if ok:
                return SuperficialCertificate(h, I, c, N)
    raise GenericityError(
        f"genericity failure: no superficial element certified in {trials} draws "
        f"(best partial range {best[1]}); retry with larger p"
    )


# -- reductions --------------------------------------------------------------


@dataclass(frozen=True)
class ReductionCertificate:
    J: IdealHandle
    I: IdealHandle
    s: int | None  # None: no s <= s_max found
    s_max: int = S_MAX

    @property
    def certified(self) -> bool:
        return self.s is not None


def reduction_check(J, I, R=None, s_max: int = S_MAX, tower=None) -> ReductionCertificate:
    """Smallest s <= s_max with J·I^s = I^{s+1} modulo the relations of R."""
    if R is None:
        if not isinstance(I, IdealHandle):
            raise InputError("pass the ring when I is given by generators")
        R = RingDesc(I.ring)
    R = _as_ring_desc(R)
    J = _ideal(R, J)
    I = _ideal(R, I)
    IL = ideal_sum(R.ideal, I)
    if not all(IL.contains(g) for g in J.generators):
        raise InputError("J is not contained in I")
    if is_graded_pair(R, I) and J.is_homogeneous():
        tw = tower or PowerTower(GradedQuotient(R), I)
        Q = tw.Q
        for s in range(s_max + 1):
            F = tw.full_degree(s + 1)
            if all(_jis_dim(Q, tw, J, s, k) == tw.dim_piece(s + 1, k) for k in range(F + 1)):
                return ReductionCertificate(J, I, s, s_max)
        return ReductionCertificate(J, I, None, s_max)
    Is = IdealHandle(R.base, [R.base.one])
    for s in range(s_max + 1):
        nxt = IdealHandle(R.base, ideal_product(Is, I).groebner_basis())
        if ideal_sum(R.ideal, ideal_product(J, Is)) == ideal_sum(R.ideal, nxt):
            return ReductionCertificate(J, I, s, s_max)
        Is = nxt
    return ReductionCertificate(J, I, None, s_max)


def _jis_dim(Q: GradedQuotient, tw: PowerTower, J: IdealHandle, s: int, k: int) -> int:
    blocks = []
    for g in J.generators:
        e = g.degree
        if e > k:
            continue
        prev = tw.piece(s, k - e)
        if prev.shape[0]:
            blocks.append(prev @ Q.poly_matrix(g, k - e) % Q.p)
    if not blocks:
        return 0
    return rank_mod_p(np.vstack(blocks), Q.p)


def random_reduction(R, I, seed: int = 0, s_max: int = S_MAX, trials: int = TRIALS, tower=None) -> ReductionCertificate:
    """d generic combinations of the generators of I, certified as a reduction."""
    R = _as_ring_desc(R)
    I = _ideal(R, I)
    d = krull_dim(R.ideal)
    gens = list(I.generators)
    for attempt in range(trials):
        rng = seeded_rng(seed, "reduction", attempt)
        J = IdealHandle(R.base, [_random_combination(gens, rng) for _ in range(d)])
        if J.is_zero() and d:
            continue
        cert = reduction_check(J, I, R, s_max, tower)
        if cert.certified:
            return cert
    raise GenericityError(f"genericity failure: no reduction with s <= {s_max} in {trials} draws")


# -- coefficient descent ----------------------------------------------------


@dataclass(frozen=True)
class DescentReport:
    holds: bool
    e_ring: EVector
    e_section: EVector
    colon_length: int
    sign: int
    certificate: SuperficialCertificate
    mismatches: tuple[str, ...] = field(default=())


def colon_length(R: RingDesc, h: Polynomial) -> int:
    """λ(0 :_R h) = λ((L : h)/L)."""
    L = R.ideal
    if L.is_zero():
        return 0
    return finite_quotient_length(colon(L, h), L)


def superficial_descent_check(R, I, cert: SuperficialCertificate, N: int | None = None) -> DescentReport:
    """Compare e(I, R) with e(I, R/hR) corrected by the signed length of 0 :_R h.

    e_i(R) = e_i(R/hR) for i < d-1 and
    e_{d-1}(R) = e_{d-1}(R/hR) + (-1)^d λ(0 :_R h).
    """
    R = _as_ring_desc(R)
    I = _ideal(R, I)
    d = krull_dim(R.ideal)
    if d < 1:
        raise InputError("descent needs dim R >= 1")
    if N is None:
        N = default_nmax(d)
    h = cert.h
    e_ring = _evector_at(R, I, N)
    section = R.quotient([h], name=f"{R.name}/h" if R.name else "")
    if krull_dim(section.ideal) != d - 1:
        raise InputError("h is not a parameter: dim R/hR != dim R - 1")
    e_sec = _evector_at(section, I, N)
    lam = colon_length(R, h)
    sign = (-1) ** d
    bad = []
    for i in range(d - 1):
        if e_ring[i] != e_sec[i]:
            bad.append(f"e_{i}: {e_ring[i]} != {e_sec[i]}")
    if e_ring[d - 1] != e_sec[d - 1] + sign * lam:
        bad.append(f"e_{d - 1}: {e_ring[d - 1]} != {e_sec[d - 1]} + ({sign})*{lam}")
    return DescentReport(not bad, e_ring, e_sec, lam, sign, cert, tuple(bad))


def _evector_at(R: RingDesc, I: IdealHandle, N: int) -> EVector:
    d = krull_dim(R.ideal)
    table = HSSampler(R, I).table(N + 2)
    return _stable_fit(table.values, d, N)
