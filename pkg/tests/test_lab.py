import pytest

from chern.corpus import flip_cm_flag
from chern.errors import InputError
from chern.groebner import IdealHandle
from chern.lab import (
    descent_check,
    components,
    goto_nishida_check,
    huckaba_marley_check,
    lift_check,
    module_check,
    northcott_check,
    ses_e1_check,
    sign_test,
    suite_plan,
    summarize,
)


def test_sign_on_cm_rings(rings):
    for name in ("poly2", "cone"):
        rep = sign_test(rings[name], trials=3, seed=5)
        ev = rep.evidence_dict
        assert rep.verdict == "pass"
        assert set(ev["e1_values"]) == {0}
        assert all(ev["length_law"])


def test_sign_on_non_cm(rings):
    rep = sign_test(rings["three_planes"], trials=3, seed=5)
    assert rep.verdict == "pass"
    assert all(e < 0 for e in rep.evidence_dict["e1_values"])


def test_sign_without_unmixed_is_unverified(rings):
    assert sign_test(rings["embedded"], trials=2, seed=1).verdict == "hypothesis_unverified"


def test_flag_mismatch_fails(rings):
    rep = sign_test(flip_cm_flag(rings["cone"]), trials=1, seed=1)
    assert rep.verdict == "fail"
    assert rep.evidence_dict["flag_mismatch"] == 1


def test_sign_truncated_is_unstable(rings):
    rep = sign_test(rings["two_planes"], trials=1, seed=1, nmax=3)
    assert rep.verdict == "unstable"
    assert "increase N" in rep.evidence_dict["error"]


def test_ses_checks(S3):
    rep = ses_e1_check(S3, S3.polys("x^3", "x*y", "x*z"), name="t")
    assert rep.verdict == "pass"
    assert rep.lam == 2
    with pytest.raises(InputError):
        ses_e1_check(S3, S3.polys("x"))  # saturated: no torsion


def test_inequalities(rings, S2):
    m2 = S2.polys("x^2", "x*y", "y^2")
    n = northcott_check(rings["poly2"], m2)
    assert (n.verdict, n.evidence_dict["slack"]) == ("pass", 0)
    g = goto_nishida_check(rings["two_planes"])
    assert (g.verdict, g.evidence_dict["lhs"], g.evidence_dict["rhs"]) == ("pass", 1, 1)
    h = huckaba_marley_check(rings["poly2"], m2, S2.polys("x^2", "y^2"))
    assert (h.verdict, h.e[1], h.lam) == ("pass", 1, 1)
    u = northcott_check(rings["embedded"])
    assert u.verdict == "hypothesis_unverified"


def test_non_reduction_is_unstable(rings, S2):
    rep = goto_nishida_check(rings["poly2"], S2.polys("x^2", "x*y", "y^2"), S2.polys("x^2"))
    assert rep.verdict == "unstable"


def test_descent_report(rings):
    rep = descent_check(rings["embedded"])
    assert rep.verdict == "pass"
    assert rep.lam == 1


def test_example_components(S4):
    rep = components([IdealHandle.from_texts(S4, *g) for g in (("x1", "x2"), ("x3", "x4"), ("x1 - x3", "x2 - x4"))], seed=3)
    assert rep.verdict == "pass"
    ev = rep.evidence_dict
    assert rep.e[0] == sum(ev["e0_components"])
    assert rep.e[1] == -rep.lam and rep.e[2] == 0
    assert rep.lam == sum(ev["lambda_L_by_degree"])
    with pytest.raises(InputError):
        components([IdealHandle.from_texts(S4, "x1", "x2"), IdealHandle.from_texts(S4, "x1", "x3")])


def test_lift(S4):
    rep = lift_check(S4, S4.polys("x1", "x2"), S4.polys("x3", "x4"), seed=9)
    assert rep.verdict == "pass"
    assert rep.evidence_dict["dims"] == (4, 3, 2)


def test_modules(modules):
    for m in modules.values():
        rep = module_check(m)
        assert rep.verdict == "pass", m.name
    ev = module_check(modules["ideal_xy"]).evidence_dict
    assert (ev["e_natural"][1], ev["bound"], ev["probe"]) == (0, 1, "not_free")


def test_suite_plans():
    paper = suite_plan("paper")
    assert len(suite_plan("all")) > len(paper)
    assert all(k == "module" for k, _, _ in suite_plan("modules"))
    cm = suite_plan("cm")
    assert all(t.cm_expected for _, t, _ in cm)
    with pytest.raises(InputError):
        suite_plan("nope")
    with pytest.raises(InputError):
        suite_plan("paper", flip=["nope"])


def test_summarize(rings):
    rs = [sign_test(rings["poly2"], trials=1), sign_test(rings["embedded"], trials=1)]
    assert summarize(rs) == {"pass": 1, "fail": 0, "hypothesis_unverified": 1, "unstable": 0}
