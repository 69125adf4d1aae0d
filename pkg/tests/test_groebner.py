import pytest
from hypothesis import given, strategies as st

from chern.core import GREVLEX, LEX, PolyRing, Polynomial
from chern.errors import InputError
from chern.groebner import (
    IdealHandle,
    _spoly,
    colon,
    double_annihilator_test,
    finite_quotient_length,
    ideal_power,
    ideal_product,
    intersect,
    is_zero_dimensional,
    krull_dim,
    length_zero_dim,
    maximal_ideal,
    normal_form,
    saturate,
    standard_monomials,
)

p = 101
R = PolyRing(p, ("x", "y", "z"))
x, y, z = R.gens()

monos = st.tuples(*(st.integers(0, 2) for _ in range(3)))
small_polys = st.dictionaries(monos, st.integers(1, p - 1), min_size=1, max_size=3).map(
    lambda d: sum((R.monomial(m, c) for m, c in d.items()), R.zero)
)
gen_lists = st.lists(small_polys, min_size=1, max_size=3)


def _as_set(polys):
    return {tuple(sorted((m, c % p) for m, c in f.monic(GREVLEX).terms)) for f in polys}


def _sympy_gb(gens):
    sympy = pytest.importorskip("sympy")
    X = sympy.symbols("x y z")
    exprs = [sympy.sympify(str(g).replace("^", "**"), locals=dict(zip("xyz", X))) for g in gens]
    G = sympy.groebner(exprs, *X, order="grevlex", modulus=p)
    out = []
    for g in G.exprs:
        P = sympy.Poly(g, *X, modulus=p)
        out.append(sum((R.monomial(m, int(c)) for m, c in P.terms()), R.zero))
    return out


@given(gen_lists)
def test_gb_is_a_groebner_basis(gens):
    I = IdealHandle(R, gens)
    G = I.groebner_basis()
    # every generator reduces to zero and every S-pair reduces to zero
    for g in gens:
        assert normal_form(g, I).is_zero()
    terms = I._terms()
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            s = _spoly(terms[i], terms[j], p)
            assert normal_form(Polynomial(R, s), I).is_zero()
    # reduced: no leading monomial divides another term
    lms = I.leading_monomials()
    for f in G:
        for m, _ in f.terms:
            others = [l for l in lms if l != f.leading_monomial(GREVLEX)]
            assert not any(all(a <= b for a, b in zip(l, m)) for l in others)


@given(gen_lists)
def test_gb_matches_sympy(gens):
    I = IdealHandle(R, gens)
    assert _as_set(I.groebner_basis()) == _as_set(_sympy_gb(gens))


@given(gen_lists, small_polys)
def test_membership_of_combinations(gens, h):
    I = IdealHandle(R, gens)
    assert I.contains(h * gens[0])
    f = normal_form(h, I)
    assert normal_form(f, I) == f


def test_lex_basis_eliminates():
    I = IdealHandle(R, R.polys("x - y^2", "y - z^3"))
    G = I.groebner_basis(LEX)
    assert any(g.leading_monomial(LEX) == (1, 0, 0) for g in G)
    assert R.poly("y - z^3") in G or R.poly("y - z^3").monic() in G


def test_intersection_of_planes():
    S = PolyRing(p, ("x1", "x2", "x3", "x4"))
    A = IdealHandle.from_texts(S, "x1", "x2")
    B = IdealHandle.from_texts(S, "x3", "x4")
    C = intersect(A, B)
    assert C == IdealHandle.from_texts(S, "x1*x3", "x1*x4", "x2*x3", "x2*x4")
    assert krull_dim(C) == 2


def test_colon_and_saturation():
    I = IdealHandle(R, R.polys("x^2", "x*y"))
    assert colon(I, x) == IdealHandle(R, [x, y])
    # in three variables the embedded component (x, y) is not m-primary
    sat, _ = saturate(I, maximal_ideal(R))
    assert sat == I
    S = PolyRing(p, ("x", "y"))
    J = IdealHandle(S, S.polys("x^2", "x*y"))
    satJ, k = saturate(J, maximal_ideal(S))
    assert satJ == IdealHandle(S, S.polys("x"))
    assert k == 1
    assert finite_quotient_length(satJ, J) == 1


def test_powers_and_products():
    m = maximal_ideal(R)
    assert ideal_power(m, 3) == ideal_product(ideal_power(m, 2), m)
    assert length_zero_dim(ideal_power(m, 3)) == 10  # monomials of degree < 3 in 3 variables


def test_dimension_and_standard_monomials():
    S = PolyRing(p, ("x", "y"))
    I = IdealHandle(S, S.polys("x^2", "y^3"))
    assert is_zero_dimensional(I)
    assert krull_dim(I) == 0
    assert len(standard_monomials(I)) == 6 == length_zero_dim(I)
    assert krull_dim(IdealHandle(R, [x * y])) == 2
    with pytest.raises(InputError):
        krull_dim(IdealHandle(R, [R.one]))
    with pytest.raises(InputError):
        standard_monomials(IdealHandle(S, [S.poly("x")]))


def test_unit_ideal():
    assert IdealHandle(R, R.polys("x", "x + 1")).is_unit()


def test_double_annihilator_verdict():
    S = PolyRing(p, ("x", "y"))
    L0 = IdealHandle(S, S.polys("x^2", "x*y"))
    assert double_annihilator_test(L0, IdealHandle(S, S.polys("x"))).holds
    bad = double_annihilator_test(IdealHandle(S, S.polys("x*y")), IdealHandle(S, S.polys("x", "y")))
    assert not bad.holds and bad.witness is not None
