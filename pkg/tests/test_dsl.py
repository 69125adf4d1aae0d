import pytest
from hypothesis import given, strategies as st

from chern.core import PolyRing
from chern.dsl import (
    IdealDecl,
    ModuleDecl,
    QuotDecl,
    RingDecl,
    Script,
    ScriptError,
    SetDecl,
    Task,
    format_script,
    parse_script,
    script_char,
)

TWO_PLANES = """
ring S = char 32003, vars x1 x2 x3 x4;
ideal L = x1*x3, x1*x4, x2*x3, x2*x4;
quotient R = S / L [cm_expected=false, unmixed=true];
ideal J = x1 - x3, x2 - x4;
task coeffs R J nmax=12;
"""


def test_two_statement_example():
    s = parse_script("ring S = char 32003, vars x y; ideal I = x^2, y^3;")
    assert len(s.statements) == 2
    ring, ideal = s.statements
    assert ring == RingDecl("S", 32003, ("x", "y"))
    assert ideal.name == "I" and len(ideal.gens) == 2


def test_positions_recorded():
    s = parse_script(TWO_PLANES)
    assert [st.pos[0] for st in s.statements] == [2, 3, 4, 5, 6]


def test_coefficient_juxtaposition_allowed():
    s = parse_script("ring S = char 7, vars x y; ideal I = 3x^2 + 2 x*y;")
    R = PolyRing(7, ("x", "y"))
    assert s.statements[1].gens == (R.poly("3*x^2 + 2*x*y"),)


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("ring S = char 7, vars x1 x3;\nideal I = x1 x3;", 2, 14),
        ("ring S = char 7, vars x y;\nideal I = x + ;", 2, 15),
        ("ring S = char 7 vars x y;", 1, 17),
    ],
)
def test_syntax_errors_carry_location(text, line, col):
    with pytest.raises(ScriptError) as err:
        parse_script(text)
    assert (err.value.line, err.value.col) == (line, col)
    assert err.value.expected
    assert f"{line}:{col}" in str(err.value)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("ring S = char 7, vars x; task dim R;", "undeclared"),
        ("ring S = char 7, vars x; ideal I = x; task coeffs S;", "arity"),
        ("ring S = char 7, vars x; ideal I = x; task dim I;", "expected a ring"),
        ("ring S = char 7, vars x; ideal I = y;", "undeclared variable"),
        ("ring S = char 8, vars x;", "prime"),
        ("ring S = char 7, vars x; set frobnicate = 2;", "unknown config key"),
        ("ring S = char 7, vars x; ideal I = x; task coeffs S I bogus=2;", "unknown task option"),
        ("ring S = char 7, vars x; ring T = char 7, vars y; ideal I = y; task coeffs S I;", "mixes rings"),
        ("ring S = char 7, vars x; ideal I = x; ideal I = x^2;", "already declared"),
        ("ring S = char 7, vars x y; module M = rank 2 : [x, y], [x];", "arity mismatch"),
    ],
)
def test_semantic_errors(text, fragment):
    with pytest.raises(ScriptError) as err:
        parse_script(text)
    assert fragment in str(err.value)


def test_char_override():
    s = parse_script(TWO_PLANES, char=101)
    assert s.statements[0].char == 101
    assert s.statements[1].gens[0].ring.p == 101
    assert script_char("set char = 5; ring S = char 7, vars x;") == 5
    assert script_char(TWO_PLANES) is None


names = st.sampled_from(["A", "B", "C", "D", "E"])
var_sets = st.lists(st.sampled_from(["x", "y", "z", "w1", "w2"]), min_size=1, max_size=4, unique=True)


@st.composite
def scripts(draw):
    char = draw(st.sampled_from([3, 7, 101, 32003]))
    vs = tuple(draw(var_sets))
    ring = PolyRing(char, vs)
    mono = st.tuples(*(st.integers(0, 3) for _ in vs))
    poly = st.dictionaries(mono, st.integers(1, char - 1), min_size=1, max_size=3).map(
        lambda d: sum((ring.monomial(m, c) for m, c in d.items()), ring.zero)
    )
    stmts = [RingDecl("S", char, vs)]
    if draw(st.booleans()):
        stmts.append(SetDecl(draw(st.sampled_from(["seed", "nmax", "trials"])), draw(st.integers(0, 99))))
    gens = tuple(g for g in draw(st.lists(poly, min_size=1, max_size=3)) if not g.is_zero())
    stmts.append(IdealDecl("I", "S", gens))
    flags = tuple(
        (k, draw(st.booleans())) for k in ("cm_expected", "unmixed", "domain") if draw(st.booleans())
    )
    stmts.append(QuotDecl("Q", "S", "I", flags))
    rank = draw(st.integers(1, 3))
    vecs = tuple(tuple(draw(poly) for _ in range(rank)) for _ in range(draw(st.integers(1, 2))))
    stmts.append(ModuleDecl("M", "S", rank, vecs))
    opts = tuple((k, draw(st.integers(1, 30))) for k in ("nmax", "trials") if draw(st.booleans()))
    stmts.append(Task(draw(st.sampled_from(["dim", "depth", "cm", "sign"])), ("Q",), opts))
    stmts.append(Task("coeffs", ("Q", "I"), ()))
    stmts.append(Task("module", ("M",), ()))
    return Script(tuple(stmts))


@given(scripts())
def test_print_parse_round_trip(script):
    assert parse_script(format_script(script)) == script


def test_round_trip_of_example():
    s = parse_script(TWO_PLANES)
    assert parse_script(format_script(s)) == s


def test_empty_script():
    assert parse_script("") == Script(())
    assert parse_script("# only a comment\n") == Script(())
