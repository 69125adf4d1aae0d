"""Degreewise linear algebra for graded quotients S/L and graded submodules of R^r.

Everything here requires homogeneous data.  Elements of a graded piece R_k
are row vectors in the basis of degree-k standard monomials of L, so that
each piece is a small dense matrix over F_p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

import numpy as np

from .core import GREVLEX, Monomial, Polynomial, PolyRing, RingDesc, mono_div, mono_divides, mono_mul
from .errors import InputError
from .groebner import IdealHandle, _reduce, length_zero_dim


def _dtype_for(p: int):
    # int64 is safe while p^2 times a row length stays below 2^63
    return np.int64 if p < (1 << 24) else object


def rref_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Row-reduced echelon form over F_p with zero rows dropped."""
    A = np.array(A, dtype=_dtype_for(p)) % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            A[mask] = (A[mask] - np.outer(col[mask], A[r])) % p
        r += 1
    return A[:r]


def rank_mod_p(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return rref_mod_p(A, p).shape[0]


def monomials_of_degree(n: int, k: int) -> list[Monomial]:
    """All exponent vectors of total degree k in n variables, grevlex-decreasing."""
    if k < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, key=GREVLEX.key, reverse=True)


def _as_ring_desc(obj) -> RingDesc:
    if isinstance(obj, RingDesc):
        return obj
    if isinstance(obj, PolyRing):
        return RingDesc(obj)
    raise InputError(f"expected a ring, got {type(obj).__name__}")


class GradedQuotient:
    """The graded ring R = S/L for homogeneous L, one piece at a time."""

    def __init__(self, R: RingDesc | PolyRing):
        R = _as_ring_desc(R)
        if not R.is_homogeneous:
            raise InputError(
                "graded pieces need homogeneous relations; use hilbert.hs_sample for adic lengths"
            )
        self.desc = R
        self.ring = R.base
        self.p = R.base.p
        self.dtype = _dtype_for(self.p)
        self._gb = R.ideal._terms(GREVLEX)
        self._leads = [g[0][0] for g in self._gb]
        self._basis: dict[int, list[Monomial]] = {}
        self._index: dict[int, dict[Monomial, int]] = {}
        self._mono_mats: dict[tuple[Monomial, int], np.ndarray] = {}

    @property
    def is_unit(self) -> bool:
        return len(self._gb) == 1 and not any(self._leads[0])

    def basis(self, k: int) -> list[Monomial]:
        """Standard monomials of degree k (grevlex)."""
        if k < 0 or self.is_unit:
            return []
        if k not in self._basis:
            if k == 0:
                cands = [(0,) * self.ring.nvars]
            else:
                prev = self.basis(k - 1)
                n = self.ring.nvars
                cands = set()
                for b in prev:
                    for i in range(n):
                        cands.add(b[:i] + (b[i] + 1,) + b[i + 1 :])
            std = [m for m in cands if not any(mono_divides(l, m) for l in self._leads)]
            std.sort(key=GREVLEX.key, reverse=True)
            self._basis[k] = std
            self._index[k] = {m: i for i, m in enumerate(std)}
        return self._basis[k]

    def dim(self, k: int) -> int:
        return len(self.basis(k))

    def vector(self, f: Polynomial) -> np.ndarray:
        """Coordinates of a homogeneous f (taken modulo L) in the basis of its degree."""
        if f.is_zero():
            raise InputError("the zero polynomial has no degree")
        if not f.is_homogeneous():
            raise InputError("vector() needs a homogeneous polynomial")
        k = f.degree
        self.basis(k)
        nf = _reduce(f.as_dict(), self._gb, GREVLEX, self.p)
        v = np.zeros(self.dim(k), dtype=self.dtype)
        for m, c in nf.items():
            v[self._index[k][m]] = c
        return v

    def monomial_matrix(self, u: Monomial, k: int) -> np.ndarray:
        """Matrix of multiplication by u as a map R_k -> R_{k+deg u} (row vectors)."""
        key = (u, k)
        M = self._mono_mats.get(key)
        if M is not None:
            return M
        e = sum(u)
        src = self.basis(k)
        tgt_dim = self.dim(k + e)
        if e == 0:
            M = np.eye(len(src), dtype=self.dtype)
        elif e == 1:
            M = np.zeros((len(src), tgt_dim), dtype=self.dtype)
            idx = self._index[k + 1]
            for r, b in enumerate(src):
                w = mono_mul(b, u)
                if w in idx:
                    M[r, idx[w]] = 1
                else:
                    for m, c in _reduce({w: 1}, self._gb, GREVLEX, self.p).items():
                        M[r, idx[m]] = c
        else:
            i = next(j for j, x in enumerate(u) if x)
            xi = tuple(int(j == i) for j in range(len(u)))
            rest = mono_div(u, xi)
            M = self.monomial_matrix(rest, k) @ self.monomial_matrix(xi, k + e - 1) % self.p
        self._mono_mats[key] = M
        return M

    def poly_matrix(self, f: Polynomial, k: int) -> np.ndarray:
        """Matrix of multiplication by homogeneous f from R_k to R_{k+deg f}."""
        e = f.degree
        M = np.zeros((self.dim(k), self.dim(k + e)), dtype=self.dtype)
        for u, c in f.terms:
            M = (M + c * self.monomial_matrix(u, k)) % self.p
        return M

    def ideal_piece(self, gens: Sequence[Polynomial], k: int) -> np.ndarray:
        """RREF basis of (gens)_k inside R_k."""
        blocks = []
        for g in gens:
            e = g.degree
            if e <= k and self.dim(k - e):
                blocks.append(self.poly_matrix(g, k - e))
        if not blocks:
            return np.zeros((0, self.dim(k)), dtype=self.dtype)
        return rref_mod_p(np.vstack(blocks), self.p)


def _check_homogeneous_gens(gens: Sequence[Polynomial]):
    for g in gens:
        if not g.is_homogeneous():
            raise InputError(f"generator {g} is not homogeneous")


class PowerTower:
    """Graded pieces of the powers I^j in R = S/L, memoized as RREF matrices."""

    def __init__(self, Q: GradedQuotient, I: IdealHandle | Sequence[Polynomial], max_degree: int = 400):
        gens = list(I.generators if isinstance(I, IdealHandle) else I)
        gens = [g for g in gens if not g.is_zero()]
        _check_homogeneous_gens(gens)
        if any(g.degree == 0 for g in gens):
            raise InputError("ideal is the unit ideal")
        self.Q = Q
        self.gens = gens
        self.max_degree = max_degree
        self._pieces: dict[tuple[int, int], np.ndarray] = {}
        self._full: dict[int, int] = {}
        self._mult: dict[tuple[int, int], np.ndarray] = {}

    def _gen_matrix(self, i: int, k: int) -> np.ndarray:
        key = (i, k)
        if key not in self._mult:
            self._mult[key] = self.Q.poly_matrix(self.gens[i], k)
        return self._mult[key]

    def piece(self, j: int, k: int) -> np.ndarray:
        """RREF basis of (I^j)_k."""
        key = (j, k)
        got = self._pieces.get(key)
        if got is not None:
            return got
        Q = self.Q
        if j == 0:
            out = np.eye(Q.dim(k), dtype=Q.dtype)
        elif j in self._full and k >= self._full[j]:
            out = np.eye(Q.dim(k), dtype=Q.dtype)
        else:
            blocks = []
            for i, g in enumerate(self.gens):
                e = g.degree
                if e > k:
                    continue
                prev = self.piece(j - 1, k - e)
                if prev.shape[0]:
                    blocks.append(prev @ self._gen_matrix(i, k - e) % Q.p)
            if blocks:
                out = rref_mod_p(np.vstack(blocks), Q.p)
            else:
                out = np.zeros((0, Q.dim(k)), dtype=Q.dtype)
        self._pieces[key] = out
        return out

    def full_degree(self, j: int) -> int:
        """Least k with (I^j)_k = R_k (and hence for all larger k)."""
        if j in self._full:
            return self._full[j]
        start = 0 if j == 0 else self.full_degree(j - 1)
        for k in range(start, self.max_degree + 1):
            if self.piece(j, k).shape[0] == self.Q.dim(k):
                self._full[j] = k
                return k
        raise InputError(f"power {j} of the ideal is not m-primary within degree {self.max_degree}")

    def colength(self, j: int) -> int:
        """λ(R/I^j)."""
        top = self.full_degree(j)
        return sum(self.Q.dim(k) - self.piece(j, k).shape[0] for k in range(top))

    def dim_piece(self, j: int, k: int) -> int:
        if j in self._full and k >= self._full[j]:
            return self.Q.dim(k)
        return self.piece(j, k).shape[0]


def product_piece(Q: GradedQuotient, gens: Sequence[Polynomial], basis: np.ndarray, k_src: int) -> np.ndarray:
    """RREF of the span of g·v for g in gens and rows v of ``basis`` (vectors in R_{k_src})."""
    blocks = []
    for g in gens:
        if basis.shape[0]:
            blocks.append(basis @ Q.poly_matrix(g, k_src) % Q.p)
    if not blocks:
        return np.zeros((0, 0), dtype=Q.dtype)
    return rref_mod_p(np.vstack(blocks), Q.p)


# -- Hilbert functions ------------------------------------------------------


@dataclass(frozen=True)
class HilbertFunctionTable:
    entries: tuple[int, ...]
    start: int = 0  # degree of entries[0]

    @property
    def N_max(self) -> int:
        return self.start + len(self.entries) - 1

    def __getitem__(self, n: int) -> int:
        i = n - self.start
        if i < 0:
            return 0
        return self.entries[i]

    def __len__(self):
        return len(self.entries)


def default_graded_nmax(obj) -> int:
    if isinstance(obj, GradedSubmodule):
        d = obj.ring.base.nvars
        gdeg = max((obj.degree_of(v) for v in obj.generators), default=0)
    else:
        R = _as_ring_desc(obj)
        d = R.base.nvars
        gdeg = max((f.degree for f in R.relations), default=0)
    return 2 * (d + gdeg) + 8


def _quotient_dim_gb(R: RingDesc, n: int) -> int:
    if R.ideal.is_unit():
        return 0
    leads = R.ideal.leading_monomials()
    return sum(1 for m in monomials_of_degree(R.base.nvars, n) if not any(mono_divides(l, m) for l in leads))


def _quotient_dim_linalg(R: RingDesc, n: int) -> int:
    """dim S_n - rank of the monomial multiples of the relations in degree n."""
    ring = R.base
    mons = monomials_of_degree(ring.nvars, n)
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for f in R.relations:
        e = f.degree
        if e > n:
            continue
        for u in monomials_of_degree(ring.nvars, n - e):
            row = [0] * len(mons)
            for m, c in f.terms:
                row[index[mono_mul(m, u)]] = c
            rows.append(row)
    if not rows:
        return len(mons)
    return len(mons) - rank_mod_p(np.array(rows, dtype=object), ring.p)


def graded_dim(obj, n: int, engine: str = "gb") -> int:
    """dim_k of the degree-n piece of S/L or of a graded submodule."""
    if n < 0:
        raise InputError("degree must be non-negative")
    if isinstance(obj, GradedSubmodule):
        return obj.dim(n)
    R = _as_ring_desc(obj)
    if not R.is_homogeneous:
        raise InputError(
            "graded_dim needs homogeneous relations; use hilbert.hs_sample for inhomogeneous rings"
        )
    if engine == "gb":
        return _quotient_dim_gb(R, n)
    if engine == "linalg":
        return _quotient_dim_linalg(R, n)
    if engine == "series":
        return hilbert_series(R).coefficient(n)
    raise InputError(f"unknown engine {engine!r}")


def hilbert_function(obj, N_max: int | None = None, engine: str = "gb") -> HilbertFunctionTable:
    if N_max is None:
        N_max = default_graded_nmax(obj)
    return HilbertFunctionTable(tuple(graded_dim(obj, n, engine) for n in range(N_max + 1)))


def partial_sum_table(H: HilbertFunctionTable, start: int | None = None) -> HilbertFunctionTable:
    """entry(n) = Σ_{start ≤ k ≤ start+n} H(k); ``start`` defaults to the table's first degree."""
    s = H.start if start is None else start
    out, acc = [], 0
    for n in range(s, H.N_max + 1):
        acc += H[n]
        out.append(acc)
    return HilbertFunctionTable(tuple(out), 0)


# -- Hilbert series via leading monomials -----------------------------------


@dataclass(frozen=True)
class HilbertSeries:
    """H(t) = numerator(t) / (1 - t)^nvars, numerator as a coefficient tuple."""

    numerator: tuple[int, ...]
    nvars: int

    def coefficient(self, n: int) -> int:
        # [t^n] of 1/(1-t)^v is binom(n + v - 1, v - 1)
        v = self.nvars
        total = 0
        for i, a in enumerate(self.numerator):
            if a and i <= n:
                total += a * (comb(n - i + v - 1, v - 1) if v else int(n == i))
        return total


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _monomial_numerator(gens: list[Monomial]) -> list[int]:
    """Numerator K(t) with H_{S/(gens)} = K(t)/(1-t)^n, by colon recursion."""
    # minimalize
    gens = sorted(set(gens), key=sum)
    mins: list[Monomial] = []
    for g in gens:
        if not any(mono_divides(h, g) for h in mins):
            mins.append(g)
    if not mins:
        return [1]
    if all(sum(1 for e in g if e) == 1 for g in mins):
        # pure powers: product of (1 - t^a)
        out = [1]
        for g in mins:
            a = sum(g)
            nxt = [0] * (len(out) + a)
            for i, c in enumerate(out):
                nxt[i] += c
                nxt[i + a] -= c
            out = nxt
        return out
    # K(I + (m)) = K(I) - t^deg(m) K(I : m)
    m = max(mins, key=lambda g: sum(1 for e in g if e))
    rest = [g for g in mins if g != m]
    colon_gens = [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest]
    k_rest = _monomial_numerator(rest)
    k_colon = _monomial_numerator(colon_gens)
    shifted = [0] * sum(m) + k_colon
    return _poly_sub(k_rest, shifted)


def hilbert_series(R: RingDesc | PolyRing) -> HilbertSeries:
    R = _as_ring_desc(R)
    if not R.is_homogeneous:
        raise InputError("Hilbert series needs homogeneous relations")
    n = R.base.nvars
    if R.ideal.is_unit():
        return HilbertSeries((0,), n)
    return HilbertSeries(tuple(_monomial_numerator(list(R.ideal.leading_monomials()))), n)


def divide_by_one_minus_t(num: Sequence[int], times: int) -> tuple[int, ...] | None:
    """num / (1 - t)^times as a polynomial, or None if it does not divide exactly."""
    cur = list(num)
    for _ in range(times):
        # synthetic division by (1 - t): q_i = Σ_{j ≤ i} c_j, remainder q_last
        q, acc = [], 0
        for c in cur:
            acc += c
            q.append(acc)
        if q[-1] != 0:
            return None
        cur = q[:-1] or [0]
    return tuple(cur)


# -- graded submodules of free modules --------------------------------------


@dataclass(frozen=True)
class GradedSubmodule:
    """Submodule of R^rank spanned by homogeneous generator vectors (column shifts 0)."""

    ring: RingDesc
    rank: int
    generators: tuple[tuple[Polynomial, ...], ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "ring", _as_ring_desc(self.ring))
        if self.rank < 0:
            raise InputError("rank must be non-negative")
        gens = []
        for v in self.generators:
            v = tuple(v)
            if len(v) != self.rank:
                raise InputError(f"generator has {len(v)} entries, expected {self.rank}")
            if all(c.is_zero() for c in v):
                continue
            self.degree_of(v)
            gens.append(v)
        object.__setattr__(self, "generators", tuple(gens))

    @staticmethod
    def degree_of(v: Sequence[Polynomial]) -> int:
        degs = set()
        for c in v:
            if c.is_zero():
                continue
            if not c.is_homogeneous():
                raise InputError(f"component {c} is not homogeneous")
            degs.add(c.degree)
        if len(degs) != 1:
            raise InputError("generator vector is not homogeneous")
        return degs.pop()

    @cached_property
    def quotient(self) -> GradedQuotient:
        return GradedQuotient(self.ring)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(self.degree_of(v) for v in self.generators)

    @property
    def generation_degree(self) -> int | None:
        return min(self.degrees, default=None)

    def generated_in_single_degree(self) -> bool:
        return len(set(self.degrees)) <= 1

    def _vector_block(self, v: Sequence[Polynomial], k: int) -> np.ndarray:
        """Rows: images of R_{k - deg v} under multiplication into R_k^rank."""
        Q = self.quotient
        e = self.degree_of(v)
        src = Q.dim(k - e)
        width = Q.dim(k)
        block = np.zeros((src, width * self.rank), dtype=Q.dtype)
        for i, c in enumerate(v):
            if not c.is_zero():
                block[:, i * width : (i + 1) * width] = Q.poly_matrix(c, k - e)
        return block

    def piece(self, k: int, gens=None) -> np.ndarray:
        key = ("piece", k) if gens is None else None
        if key is not None and key in self._cache:
            return self._cache[key]
        Q = self.quotient
        width = Q.dim(k) * self.rank
        blocks = [
            self._vector_block(v, k)
            for v in (self.generators if gens is None else gens)
            if self.degree_of(v) <= k and Q.dim(k - self.degree_of(v))
        ]
        out = rref_mod_p(np.vstack(blocks), Q.p) if blocks else np.zeros((0, width), dtype=Q.dtype)
        if key is not None:
            self._cache[key] = out
        return out

    def dim(self, k: int) -> int:
        if k < 0:
            return 0
        return self.piece(k).shape[0]

    def minimal_generator_counts(self, bound: int) -> dict[int, int]:
        """μ_e = dim M_e - dim (m·M)_e for e ≤ bound."""
        Q = self.quotient
        out = {}
        for e in range(bound + 1):
            full = self.dim(e)
            if e == 0 or not full:
                lower = 0
            else:
                prev = self.piece(e - 1)
                width = Q.dim(e)
                blocks = []
                for x in self.ring.base.gens():
                    M = Q.poly_matrix(x, e - 1)
                    img = np.zeros((prev.shape[0], width * self.rank), dtype=Q.dtype)
                    pw = Q.dim(e - 1)
                    for i in range(self.rank):
                        img[:, i * width : (i + 1) * width] = prev[:, i * pw : (i + 1) * pw] @ M % Q.p
                    blocks.append(img)
                lower = rank_mod_p(np.vstack(blocks), Q.p) if blocks and prev.shape[0] else 0
            if full - lower:
                out[e] = full - lower
        return out


def free_module_dim(Q: GradedQuotient, counts: dict[int, int], n: int) -> int:
    return sum(mu * Q.dim(n - e) for e, mu in counts.items())


@dataclass(frozen=True)
class FreenessVerdict:
    free_up_to_bound: bool
    bound: int
    witness_degree: int | None = None
    generator_counts: tuple[tuple[int, int], ...] = ()

    @property
    def label(self) -> str:
        return "free_up_to_bound" if self.free_up_to_bound else "not_free"


def freeness_probe(M: GradedSubmodule, bound: int | None = None) -> FreenessVerdict:
    """Compare H_M with the free module on a minimal generating set, degree by degree."""
    if bound is None:
        bound = default_graded_nmax(M)
    if not M.generators:
        return FreenessVerdict(True, bound)
    top = max(M.degrees)
    if top > bound:
        raise InputError("bound is below the generator degrees")
    counts = M.minimal_generator_counts(top)
    Q = M.quotient
    for n in range(bound + 1):
        if M.dim(n) < free_module_dim(Q, counts, n):
            return FreenessVerdict(False, bound, n, tuple(sorted(counts.items())))
    return FreenessVerdict(True, bound, None, tuple(sorted(counts.items())))


def zero_dim_length_graded(R: RingDesc) -> int:
    """Σ_n dim (S/L)_n for homogeneous zero-dimensional L."""
    Q = GradedQuotient(R)
    total, k = 0, 0
    while Q.dim(k):
        total += Q.dim(k)
        k += 1
    return total


def length_cross_check(R: RingDesc) -> tuple[int, int]:
    return zero_dim_length_graded(R), length_zero_dim(R.ideal)
