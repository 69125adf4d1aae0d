"""Hilbert-Samuel sampling and exact fitting of the Hilbert coefficients.

The polynomial is written in the signed binomial basis

    P(n) = Σ_{i=0}^{d} (-1)^i e_i binom(n + d - i, d - i)

and fitted from sampled lengths with integer/rational arithmetic only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .core import PolyRing, RingDesc
from .errors import FitConsistencyError, InputError, UnstableFitError
from .graded import (
    GradedQuotient,
    GradedSubmodule,
    PowerTower,
    graded_dim,
    partial_sum_table,
    HilbertFunctionTable,
)
from .groebner import IdealHandle, ideal_product, ideal_sum, is_zero_dimensional, krull_dim, length_zero_dim

WINDOW = 3


def default_nmax(d: int) -> int:
    return max(2 * d + 6, 12)


@dataclass(frozen=True)
class HilbertSamuelTable:
    values: tuple[int, ...]  # values[n] = λ(R/I^{n+1})
    ring: RingDesc | None = None
    ideal: IdealHandle | None = None
    engine: str = ""

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def truncated(self, N: int) -> HilbertSamuelTable:
        return HilbertSamuelTable(self.values[: N + 1], self.ring, self.ideal, self.engine)


@dataclass(frozen=True)
class EVector:
    d: int
    e: tuple[int, ...]
    n0: int
    window: int
    N: int

    def __getitem__(self, i: int) -> int:
        return self.e[i] if 0 <= i < len(self.e) else 0

    def polynomial(self, n: int) -> int:
        return hs_polynomial(self.e, n)


def hs_polynomial(e: Sequence, n: int):
    d = len(e) - 1
    return sum((-1) ** i * e[i] * comb(n + d - i, d - i) for i in range(d + 1))


def _as_ring_desc(R) -> RingDesc:
    if isinstance(R, PolyRing):
        return RingDesc(R)
    return R


def _as_ideal(R: RingDesc, I) -> IdealHandle:
    if isinstance(I, IdealHandle):
        if I.ring != R.base:
            raise InputError("ideal and ring have different polynomial rings")
        return I
    return IdealHandle(R.base, list(I))


def is_graded_pair(R: RingDesc, I: IdealHandle) -> bool:
    return R.is_homogeneous and I.is_homogeneous()


def check_m_primary(R: RingDesc, I: IdealHandle):
    total = ideal_sum(R.ideal, I)
    if total.is_unit():
        raise InputError("ideal is the unit ideal of R")
    if not is_zero_dimensional(total):
        raise InputError("ideal is not m-primary: L + I is not zero-dimensional")


class _GBSampler:
    """λ(S/(L + I^j)) from Groebner bases, powers re-reduced step by step."""

    def __init__(self, R: RingDesc, I: IdealHandle):
        self.R = R
        self.I = I
        self.powers = [IdealHandle(R.base, [R.base.one])]

    def colength(self, j: int) -> int:
        while len(self.powers) <= j:
            nxt = ideal_product(self.powers[-1], self.I)
            self.powers.append(IdealHandle(self.R.base, nxt.groebner_basis()))
        return length_zero_dim(ideal_sum(self.R.ideal, self.powers[j]))


class HSSampler:
    """Lazily sampled λ(R/I^j), keeping its engine state between requests."""

    def __init__(self, R, I, engine: str = "auto"):
        R = _as_ring_desc(R)
        I = _as_ideal(R, I)
        check_m_primary(R, I)
        if engine == "auto":
            engine = "graded" if is_graded_pair(R, I) else "gb"
        if engine == "graded":
            if not is_graded_pair(R, I):
                raise InputError("graded engine needs homogeneous relations and ideal generators")
            self._impl = PowerTower(GradedQuotient(R), I)
        elif engine == "gb":
            self._impl = _GBSampler(R, I)
        else:
            raise InputError(f"unknown engine {engine!r}")
        self.R, self.I, self.engine = R, I, engine
        self._values: list[int] = []

    def colength(self, j: int) -> int:
        """λ(R/I^j)."""
        return self._impl.colength(j)

    def table(self, N: int) -> HilbertSamuelTable:
        if N < 0:
            raise InputError("N must be non-negative")
        while len(self._values) <= N:
            n = len(self._values)
            try:
                self._values.append(self._impl.colength(n + 1))
            except InputError as exc:
                raise InputError(f"sampling failed at n = {n}: {exc}") from None
        return HilbertSamuelTable(tuple(self._values[: N + 1]), self.R, self.I, self.engine)


def hs_sample(R, I, N: int, engine: str = "auto") -> HilbertSamuelTable:
    """values[n] = λ(R/I^{n+1}) for n = 0..N."""
    return HSSampler(R, I, engine).table(N)


def _differences(values: Sequence[int], order: int) -> list[int]:
    cur = list(values)
    for _ in range(order):
        cur = [b - a for a, b in zip(cur, cur[1:])]
    return cur


def _solve_exact(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(b)
    M = [row[:] + [rhs] for row, rhs in zip(A, b)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


def fit_evector(T: HilbertSamuelTable | Sequence[int], d: int, window: int = WINDOW) -> EVector:
    """Fit e_0..e_d from sampled values with exact arithmetic.

    The d-th difference has to be constant over the last ``window + 1`` samples;
    otherwise the table has not stabilized and UnstableFitError is raised.
    """
    values = list(T.values if isinstance(T, HilbertSamuelTable) else T)
    if d < 0:
        raise InputError("dimension must be non-negative")
    N = len(values) - 1
    if len(values) < d + window + 2:
        raise UnstableFitError(
            f"unstable fit: {len(values)} samples are too few for d = {d} (need {d + window + 2}); increase N"
        )
    diffs = _differences(values, d)
    tail = diffs[-(window + 1) :]
    if len(set(tail)) != 1:
        raise UnstableFitError(f"unstable fit: {d}-th differences {tail} not constant; increase N")
    # the last d + 1 samples determine the polynomial
    pts = list(range(N - d, N + 1))
    A = [[Fraction((-1) ** i * comb(n + d - i, d - i)) for i in range(d + 1)] for n in pts]
    sol = _solve_exact(A, [Fraction(values[n]) for n in pts])
    if any(x.denominator != 1 for x in sol):
        raise FitConsistencyError(f"non-integral coefficients {sol} from an apparently stable table")
    e = tuple(int(x) for x in sol)
    if e[0] < 1:
        raise FitConsistencyError(f"leading coefficient e_0 = {e[0]} < 1 for d = {d}")
    n0 = N + 1
    while n0 > 0 and hs_polynomial(e, n0 - 1) == values[n0 - 1]:
        n0 -= 1
    if n0 > N - d - window:
        raise FitConsistencyError("fitted polynomial does not cover the stabilization window")
    return EVector(d, e, n0, window, N)


def _stable_fit(values: Sequence[int], d: int, N: int, window: int = WINDOW) -> EVector:
    """Fit at N and N + 2; the two must agree.  ``values`` needs N + 3 entries."""
    first = fit_evector(values[: N + 1], d, window)
    second = fit_evector(values[: N + 3], d, window)
    if first.e != second.e:
        raise UnstableFitError(f"fit changed from {first.e} to {second.e} when adding samples; increase N")
    return first


def evector(R, I, N: int | None = None, engine: str = "auto", sampler: HSSampler | None = None) -> EVector:
    """Hilbert coefficients of I on R, guarded by a re-fit with two extra samples."""
    R = _as_ring_desc(R)
    s = sampler or HSSampler(R, I, engine)
    d = krull_dim(R.ideal)
    if N is None:
        N = default_nmax(d)
    table = s.table(N + 2)
    return _stable_fit(table.values, d, N)


def graded_table(obj, start: int, count: int) -> HilbertSamuelTable:
    """Partial sums Σ_{k=start}^{start+n} H(k) for n < count."""
    H = HilbertFunctionTable(tuple(graded_dim(obj, k) for k in range(start + count)))
    return HilbertSamuelTable(partial_sum_table(H, start).entries, engine="graded")


def graded_evector(obj, shift: int | None = None, N: int | None = None) -> EVector:
    """Coefficients of the graded Hilbert-Samuel table of a quotient or submodule.

    ``shift=None`` is the natural convention (partial sums from degree 0);
    ``shift=a`` re-indexes so that degree a becomes index 0.
    """
    if isinstance(obj, GradedSubmodule):
        d = krull_dim(obj.ring.ideal)
    else:
        obj = _as_ring_desc(obj)
        d = krull_dim(obj.ideal)
    if N is None:
        N = default_nmax(d)
    start = 0 if shift is None else shift
    if start < 0:
        raise InputError("shift must be non-negative")
    table = graded_table(obj, start, N + 3)
    return _stable_fit(table.values, d, N)
