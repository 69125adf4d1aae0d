from math import comb

import pytest
from hypothesis import assume, given, strategies as st

from chern.core import PolyRing, RingDesc
from chern.errors import InputError, UnstableFitError
from chern.groebner import IdealHandle, maximal_ideal
from chern.hilbert import (
    WINDOW,
    HSSampler,
    _stable_fit,
    default_nmax,
    evector,
    fit_evector,
    graded_evector,
    hs_polynomial,
    hs_sample,
)

p = 32003


@st.composite
def synthetic(draw):
    d = draw(st.integers(0, 3))
    e = [draw(st.integers(1, 20))] + [draw(st.integers(-15, 15)) for _ in range(d)]
    n0 = draw(st.integers(0, 4))
    N = n0 + d + WINDOW + 1 + draw(st.integers(0, 4))
    vals = [hs_polynomial(e, n) for n in range(N + 1)]
    if n0 > 0:
        vals[n0 - 1] += draw(st.sampled_from([-3, -1, 1, 2]))
    return d, tuple(e), n0, vals


@given(synthetic())
def test_fit_recovers_coefficients_and_onset(case):
    d, e, n0, vals = case
    ev = fit_evector(vals, d)
    assert ev.e == e
    assert ev.n0 == n0
    assert all(ev.polynomial(n) == vals[n] for n in range(n0, len(vals)))


@given(synthetic())
def test_binomial_basis_matches_direct_formula(case):
    d, e, _, _ = case
    for n in range(6):
        assert hs_polynomial(e, n) == sum((-1) ** i * e[i] * comb(n + d - i, d - i) for i in range(d + 1))


@given(st.integers(0, 3), st.integers(1, 10))
def test_too_short_table_is_unstable(d, e0):
    vals = [e0 * comb(n + d, d) for n in range(d + WINDOW)]
    with pytest.raises(UnstableFitError):
        fit_evector(vals, d)


def test_late_jump_is_caught_by_guard():
    # a polynomial table that changes just past the first fit window
    N = 12
    vals = [hs_polynomial((2, -1, 0), n) for n in range(N + 3)]
    vals[N + 2] += 1
    with pytest.raises(UnstableFitError):
        _stable_fit(vals, 2, N)


def test_two_planes_samples(two_planes, S4):
    J = IdealHandle.from_texts(S4, "x1 + x3", "x2 + x4")
    T = hs_sample(two_planes, J, 4)
    assert T.values == (3, 8, 15, 24, 35)
    assert hs_sample(two_planes, J, 4, engine="gb").values == T.values


def test_engines_agree_on_corpus(rings):
    for e in rings.values():
        R = e.ring
        if not R.is_homogeneous:
            continue
        m = maximal_ideal(R.base)
        assert hs_sample(R, m, 4, "graded").values == hs_sample(R, m, 4, "gb").values, e.name


@pytest.mark.parametrize(
    "name, gens, expected",
    [
        ("two_planes", ("x1 - x3", "x2 - x4"), (2, -1, 0)),
        ("two_planes", None, (2, 0, -1)),
        ("poly2", ("x^2", "x*y", "y^2"), (4, 1, 0)),
        ("poly2", ("x^2", "y^2"), (4, 0, 0)),
        ("curve345", None, (3, 2)),
        ("curve345", ("x",), (3, 0)),
        ("cone", None, (2, 1, 0)),
    ],
)
def test_corpus_evectors(rings, name, gens, expected):
    R = rings[name].ring
    I = maximal_ideal(R.base) if gens is None else IdealHandle.from_texts(R.base, *gens)
    ev = evector(R, I)
    assert ev.e == expected
    assert ev.N == default_nmax(len(expected) - 1)


def test_module_coefficients(modules):
    M = modules["ideal_xy"].module
    assert graded_evector(M).e == (1, 0, -1)
    assert graded_evector(M, shift=1).e == (1, -1, 0)
    M3 = modules["ideal_m2"].module
    assert graded_evector(M3).e == (1, 0, -3)
    assert graded_evector(M3, shift=2).e == (1, -2, 0)


def test_non_primary_ideal_rejected(rings):
    R = rings["two_planes"].ring
    with pytest.raises(InputError):
        evector(R, IdealHandle.from_texts(R.base, "x1", "x2"))


def test_sampler_is_lazy_and_consistent(rings):
    R = rings["poly2"].ring
    s = HSSampler(R, maximal_ideal(R.base))
    assert s.colength(3) == 6
    assert s.table(3).values == (1, 3, 6, 10)
