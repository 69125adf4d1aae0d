"""Executable claims about Hilbert coefficients, run over rings, ideals and modules.

Every check returns an ExperimentReport.  Computational shortfalls (a fit
that does not stabilize, an exhausted random search) give the verdict
``unstable``; only a violated integer identity or inequality gives ``fail``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

from .core import DEFAULT_CHARACTERISTIC, RingDesc, derive_seed, seeded_rng
from .corpus import CorpusEntry, ModuleEntry, build_modules, build_rings, flip_cm_flag
from .errors import FitConsistencyError, GenericityError, InputError, SaturationLimitError, UnstableFitError
from .graded import GradedSubmodule, divide_by_one_minus_t, freeness_probe, hilbert_series, monomials_of_degree
from .groebner import (
    IdealHandle,
    finite_quotient_length,
    ideal_product,
    ideal_sum,
    intersect,
    is_zero_dimensional,
    krull_dim,
    length_zero_dim,
    maximal_ideal,
    normal_form,
    saturate,
)
from .hilbert import HSSampler, _stable_fit, default_nmax, graded_evector
from .structure import (
    find_superficial,
    is_cohen_macaulay,
    lift_sop,
    random_reduction,
    random_sop,
    reduction_check,
    superficial_descent_check,
)

VERDICTS = ("pass", "fail", "hypothesis_unverified", "unstable")
SIGN_TRIALS = 20

_SHORTFALL = (UnstableFitError, FitConsistencyError, GenericityError, SaturationLimitError)


@dataclass(frozen=True)
class ExperimentReport:
    claim: str
    entry: str
    inputs: tuple[tuple[str, str], ...]
    e: tuple[int, ...]
    lam: int | None
    evidence: tuple[tuple[str, object], ...]
    verdict: str
    seed: int
    timing: float = field(default=0.0, compare=False)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def evidence_dict(self) -> dict:
        return dict(self.evidence)

    @property
    def inputs_dict(self) -> dict:
        return dict(self.inputs)


def _freeze(value):
    if isinstance(value, dict):
        return tuple((k, _freeze(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return tuple(_freeze(v) for v in value)
    return value


def _report(claim, entry, inputs, e, lam, evidence, verdict, seed, started) -> ExperimentReport:
    return ExperimentReport(
        claim,
        entry,
        tuple((k, str(v)) for k, v in inputs.items()),
        tuple(int(x) for x in e),
        None if lam is None else int(lam),
        tuple((k, _freeze(v)) for k, v in evidence.items()),
        verdict,
        seed,
        time.perf_counter() - started,
    )


def _guarded(claim: str, entry: str, inputs: dict, seed: int, body: Callable[[], tuple]) -> ExperimentReport:
    """Run ``body`` -> (e, lam, evidence, verdict); shortfalls become ``unstable``."""
    started = time.perf_counter()
    try:
        e, lam, evidence, verdict = body()
    except _SHORTFALL as exc:
        return _report(claim, entry, inputs, (), None, {"error": str(exc)}, "unstable", seed, started)
    return _report(claim, entry, inputs, e, lam, evidence, verdict, seed, started)


def _ideal(R: RingDesc, I) -> IdealHandle:
    if isinstance(I, IdealHandle):
        return I
    if I is None:
        return R.maximal_ideal
    return IdealHandle(R.base, list(I))


def _e_and_table(R: RingDesc, I: IdealHandle, N: int):
    d = krull_dim(R.ideal)
    table = HSSampler(R, I).table(N + 2)
    return _stable_fit(table.values, d, N), table.values


def _as_entry(R) -> CorpusEntry:
    if isinstance(R, CorpusEntry):
        return R
    return CorpusEntry(R.name or "user", R, cm_expected=None, constructed_unmixed=False, domain=False)


# -- individual claims -------------------------------------------------------


def sign_test(entry, trials: int = SIGN_TRIALS, seed: int = 0, nmax: int | None = None) -> ExperimentReport:
    """Non-CM and unmixed => e_1(J) < 0; CM => e_1(J) = 0 with the binomial length law."""
    entry = _as_entry(entry)
    R = entry.ring
    s = derive_seed(seed, entry.name, "sign")

    def body():
        d = krull_dim(R.ideal)
        if d < 1:
            raise InputError("sign test needs dim R >= 1")
        N = nmax or default_nmax(d)
        status = is_cohen_macaulay(R, seed=s)
        e1s, evecs, length_law = [], [], []
        for t in range(trials):
            sop = random_sop(R, seed=derive_seed(s, "trial", t))
            ev, values = _e_and_table(R, sop.ideal, N)
            e1s.append(ev[1])
            evecs.append(list(ev.e))
            base = values[0]
            length_law.append(all(v == base * comb(n + d, d) for n, v in enumerate(values)))
        evidence = {
            "dim": status.dim,
            "depth": status.depth,
            "is_cm": int(status.is_cm),
            "cm_expected": None if entry.cm_expected is None else int(entry.cm_expected),
            "constructed_unmixed": int(entry.constructed_unmixed),
            "trials": trials,
            "e1_values": e1s,
            "e_vectors": evecs,
            "length_law": [int(b) for b in length_law],
            "nmax": N,
        }
        if entry.cm_expected is not None and status.is_cm != entry.cm_expected:
            evidence["flag_mismatch"] = 1
            return evecs[0], None, evidence, "fail"
        if status.is_cm:
            ok = all(e == 0 for e in e1s) and all(length_law)
        else:
            if not entry.constructed_unmixed:
                return evecs[0], None, evidence, "hypothesis_unverified"
            ok = all(e < 0 for e in e1s)
        return evecs[0], None, evidence, "pass" if ok else "fail"

    return _guarded("sign", entry.name, {"ring": R}, seed, body)


def ses_e1_check(S, L0, I=None, seed: int = 0, nmax: int | None = None, name: str = "ses") -> ExperimentReport:
    """M = S/L0, T its finite-length torsion, N = M/T: e_i(M) = e_i(N) for i < d and the signed e_d law."""
    S = S if isinstance(S, RingDesc) else RingDesc(S)
    L0 = L0 if isinstance(L0, IdealHandle) else IdealHandle(S.base, list(L0))
    I = _ideal(S, I)
    M = RingDesc(S.base, L0.generators, name)
    sat, _ = saturate(L0, M.maximal_ideal)
    lam_T = finite_quotient_length(sat, L0)
    if lam_T == 0:
        raise InputError("no finite-length torsion: L0 is saturated")
    Nring = RingDesc(S.base, sat.groebner_basis(), name + "/T")
    d = krull_dim(L0)
    if d < 2:
        raise InputError("the coefficient law needs dim M >= 2")

    def body():
        N = nmax or default_nmax(d)
        eM, _ = _e_and_table(M, I, N)
        eN, _ = _e_and_table(Nring, I, N)
        sign = (-1) ** (d + 1)
        low_ok = all(eM[i] == eN[i] for i in range(d))
        top_ok = eN[d] == eM[d] + sign * lam_T
        evidence = {"d": d, "e_M": list(eM.e), "e_N": list(eN.e), "lambda_T": lam_T, "sign": sign}
        return eM.e, lam_T, evidence, "pass" if low_ok and top_ok else "fail"

    return _guarded("ses", name, {"L0": L0, "I": I}, seed, body)


def northcott_check(entry, I=None, seed: int = 0, nmax: int | None = None) -> ExperimentReport:
    """e_1(I) >= e_0(I) - λ(R/I) on a CM ring."""
    entry = _as_entry(entry)
    R = entry.ring
    I = _ideal(R, I)

    def body():
        status = is_cohen_macaulay(R, seed=derive_seed(seed, entry.name, "northcott"))
        N = nmax or default_nmax(status.dim)
        ev, values = _e_and_table(R, I, N)
        colen = values[0]
        slack = ev[1] - (ev[0] - colen)
        evidence = {"dim": status.dim, "depth": status.depth, "lambda_R_I": colen, "slack": slack}
        if not status.is_cm:
            return ev.e, colen, evidence, "hypothesis_unverified"
        return ev.e, colen, evidence, "pass" if slack >= 0 else "fail"

    return _guarded("northcott", entry.name, {"ring": R, "I": I}, seed, body)


def _reduction(R, I, J, seed, tower=None):
    if J is None:
        return random_reduction(R, I, seed=seed, tower=tower)
    cert = reduction_check(_ideal(R, J), I, R, tower=tower)
    if not cert.certified:
        raise GenericityError(f"J is not a reduction of I with s <= {cert.s_max}")
    return cert


def goto_nishida_check(entry, I=None, J=None, seed: int = 0, nmax: int | None = None) -> ExperimentReport:
    """e_1(I) - e_1(J) >= e_0(I) - λ(R/I) for a reduction J of I."""
    entry = _as_entry(entry)
    R = entry.ring
    I = _ideal(R, I)
    s = derive_seed(seed, entry.name, "gotonishida")

    def body():
        d = krull_dim(R.ideal)
        N = nmax or default_nmax(d)
        cert = _reduction(R, I, J, s)
        eI, values = _e_and_table(R, I, N)
        eJ, _ = _e_and_table(R, cert.J, N)
        colen = values[0]
        lhs, rhs = eI[1] - eJ[1], eI[0] - colen
        evidence = {
            "J": [str(g) for g in cert.J.generators],
            "reduction_number": cert.s,
            "e_I": list(eI.e),
            "e_J": list(eJ.e),
            "lambda_R_I": colen,
            "lhs": lhs,
            "rhs": rhs,
            "slack": lhs - rhs,
        }
        ok = lhs >= rhs and eI[0] == eJ[0]
        return eI.e, colen, evidence, "pass" if ok else "fail"

    return _guarded("gotonishida", entry.name, {"ring": R, "I": I}, seed, body)


def huckaba_marley_check(entry, I=None, J=None, seed: int = 0, nmax: int | None = None) -> ExperimentReport:
    """e_1(I) <= Σ_{n>=1} λ(I^n / J I^{n-1}) on a CM ring, J a reduction of I."""
    entry = _as_entry(entry)
    R = entry.ring
    I = _ideal(R, I)
    s = derive_seed(seed, entry.name, "huckabamarley")

    def body():
        status = is_cohen_macaulay(R, seed=s)
        N = nmax or default_nmax(status.dim)
        cert = _reduction(R, I, J, s)
        ev, _ = _e_and_table(R, I, N)
        L = R.ideal
        terms = []
        power = IdealHandle(R.base, [R.base.one])  # I^{n-1}
        for n in range(1, cert.s + 2):
            nxt = IdealHandle(R.base, ideal_product(power, I).groebner_basis())
            big = length_zero_dim(ideal_sum(L, ideal_product(cert.J, power)))
            small = length_zero_dim(ideal_sum(L, nxt))
            terms.append(big - small)
            power = nxt
        total = sum(terms)
        evidence = {
            "J": [str(g) for g in cert.J.generators],
            "reduction_number": cert.s,
            "terms": terms,
            "bound": total,
            "slack": total - ev[1],
            "dim": status.dim,
            "depth": status.depth,
        }
        if not status.is_cm:
            return ev.e, total, evidence, "hypothesis_unverified"
        return ev.e, total, evidence, "pass" if ev[1] <= total else "fail"

    return _guarded("huckabamarley", entry.name, {"ring": R, "I": I}, seed, body)


def descent_check(entry, I=None, seed: int = 0, nmax: int | None = None) -> ExperimentReport:
    """Coefficient descent along a certified superficial element."""
    entry = _as_entry(entry)
    R = entry.ring
    I = _ideal(R, I)

    def body():
        d = krull_dim(R.ideal)
        N = nmax or default_nmax(d)
        cert = find_superficial(R, I, seed=derive_seed(seed, entry.name, "descent"), N=N)
        rep = superficial_descent_check(R, I, cert, N)
        evidence = {
            "h": str(cert.h),
            "c": cert.c,
            "verified_range": [cert.c, cert.N],
            "e_R": list(rep.e_ring.e),
            "e_R_mod_h": list(rep.e_section.e),
            "lambda_0_h": rep.colon_length,
            "sign": rep.sign,
            "mismatches": list(rep.mismatches),
        }
        return rep.e_ring.e, rep.colon_length, evidence, "pass" if rep.holds else "fail"

    return _guarded("descent", entry.name, {"ring": R, "I": I}, seed, body)


def lift_check(S, p, x, seed: int = 0, name: str = "lift") -> ExperimentReport:
    """Lifted parameters reduce to the given ones mod p and cut the dimension one at a time."""
    S = S if isinstance(S, RingDesc) else RingDesc(S)
    p = p if isinstance(p, IdealHandle) else IdealHandle(S.base, list(p))
    xs = tuple(x)

    def body():
        sop = lift_sop(S, p, xs, seed=derive_seed(seed, name, "lift"))
        reduces = all(normal_form(a - b, ideal_sum(S.ideal, p)).is_zero() for a, b in zip(sop.elements, xs))
        dims = [krull_dim(S.ideal)]
        cur = S.ideal
        for a in sop.elements:
            cur = ideal_sum(cur, IdealHandle(S.base, [a]))
            dims.append(krull_dim(cur))
        drops = all(dims[i] - dims[i + 1] == 1 for i in range(len(dims) - 1))
        evidence = {
            "lifted": [str(a) for a in sop.elements],
            "dims": dims,
            "reduces_mod_p": int(reduces),
            "full_sop": int(sop.full_sop),
        }
        return (), None, evidence, "pass" if reduces and drops else "fail"

    return _guarded("lift", name, {"p": p, "x": ", ".join(map(str, xs))}, seed, body)


def _ann_condition_parts(primes: Sequence[IdealHandle]) -> list[IdealHandle]:
    """P_i + ∩_{j≠i} P_j for each i.

    a·(⊕ S/P_i) lies in the image of R exactly when a is in every part, since
    a·e_i is the image of some g with g ≡ a mod P_i and g ∈ P_j for j ≠ i.
    """
    ring = primes[0].ring
    parts = []
    for i, P in enumerate(primes):
        others = [Q for j, Q in enumerate(primes) if j != i]
        if not others:
            parts.append(IdealHandle(ring, [ring.one]))
            continue
        inter = others[0]
        for Q in others[1:]:
            inter = intersect(inter, Q)
        parts.append(ideal_sum(P, inter))
    return parts


def _random_element_of_degree(A: IdealHandle, delta: int, rng):
    ring = A.ring
    out = ring.zero
    for g in A.groebner_basis():
        e = delta - g.degree
        if e < 0:
            continue
        form = ring.zero
        for u in monomials_of_degree(ring.nvars, e):
            form = form + ring.monomial(u, rng.randrange(1, ring.p))
        out = out + g * form
    return out


def components(primes: Sequence, seed: int = 0, nmax: int | None = None, name: str = "components", max_degree: int = 4):
    """R = S/∩P_i with J inside the annihilator of L = (⊕ S/P_i)/R.

    Checks e_0(J) = Σ e_0(J, S/P_i), e_1(J) = -λ(L) and e_2(J) = 0, with λ(L)
    measured from Hilbert series of the components and of R.
    """
    if not primes:
        raise InputError("components needs at least one ideal")
    ring = primes[0].ring if isinstance(primes[0], IdealHandle) else None
    if ring is None:
        raise InputError("components takes IdealHandle arguments")
    primes = list(primes)
    if ring.nvars != 4:
        raise InputError("components needs an ambient ring of dimension 4")
    for P in primes:
        if P.ring != ring:
            raise InputError("all ideals must live in the same ring")
        if P.is_unit() or krull_dim(P) != 2:
            raise InputError(f"{P} does not have codimension 2")
        if not is_cohen_macaulay(RingDesc(ring, P.generators), seed=seed).is_cm:
            raise InputError(f"S/{P} is not Cohen-Macaulay")
        if not P.is_homogeneous():
            raise InputError(f"{P} is not homogeneous")
    for i in range(len(primes)):
        for j in range(i + 1, len(primes)):
            if not is_zero_dimensional(ideal_sum(primes[i], primes[j])):
                raise InputError(f"components {i + 1} and {j + 1} meet outside the origin")
    L_ideal = primes[0]
    for P in primes[1:]:
        L_ideal = intersect(L_ideal, P)
    R = RingDesc(ring, L_ideal.groebner_basis(), name)
    s = derive_seed(seed, name, "components")

    def body():
        N = nmax or default_nmax(2)
        # λ(L) from Σ_i HS(S/P_i) - HS(R), which must be a polynomial in t
        num = [0]
        for P in primes:
            hs = hilbert_series(RingDesc(ring, P.generators))
            num = _add(num, list(hs.numerator))
        num = _add(num, [-c for c in hilbert_series(R).numerator])
        quotient = divide_by_one_minus_t(num, 4)
        if quotient is None or any(c < 0 for c in quotient):
            raise InputError("cokernel of R -> ⊕ S/P_i does not have finite length")
        lam_L = sum(quotient)
        # search J = (a, b) with a·L = b·L = 0
        parts = _ann_condition_parts(primes)
        A = parts[0]
        for part in parts[1:]:
            A = intersect(A, part)
        J = None
        for delta in range(1, max_degree + 1):
            for attempt in range(8):
                rng = seeded_rng(s, "J", delta, attempt)
                a = _random_element_of_degree(A, delta, rng)
                b = _random_element_of_degree(A, delta, rng)
                if a.is_zero() or b.is_zero():
                    continue
                # independent of how A was built: check a·e_i, b·e_i land in R
                if not all(part.contains(a) and part.contains(b) for part in parts):
                    continue
                cand = IdealHandle(ring, [a, b])
                if is_zero_dimensional(ideal_sum(R.ideal, cand)):
                    J = cand
                    break
            if J is not None:
                break
        if J is None:
            raise GenericityError("no parameter ideal inside the annihilator of L was found")
        eR, _ = _e_and_table(R, J, N)
        comp = []
        for P in primes:
            eP, _ = _e_and_table(RingDesc(ring, P.generators), J, N)
            comp.append(eP[0])
        evidence = {
            "components": len(primes),
            "J_degree": J.generators[0].degree,
            "J": [str(g) for g in J.generators],
            "e0_components": comp,
            "lambda_L": lam_L,
            "lambda_L_by_degree": list(quotient),
        }
        ok = eR[0] == sum(comp) and eR[1] == -lam_L and eR[2] == 0
        return eR.e, lam_L, evidence, "pass" if ok else "fail"

    return _guarded("components", name, {"ideals": "; ".join(str(P) for P in primes)}, seed, body)


def _add(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def module_check(M, seed: int = 0, nmax: int | None = None, name: str | None = None) -> ExperimentReport:
    """Shift law, e_1(M) <= a·e_0(M), and equality exactly for free modules."""
    if isinstance(M, ModuleEntry):
        name, M = M.name, M.module
    name = name or "module"
    if not isinstance(M, GradedSubmodule):
        raise InputError("module_check needs a graded submodule")
    if not M.generators:
        raise InputError("module has no generators")
    if not M.generated_in_single_degree():
        raise InputError("module is not generated in a single degree")
    d = krull_dim(M.ring.ideal)
    if d < 2:
        raise InputError("module checks need ambient dimension >= 2")
    a = M.generation_degree

    def body():
        N = nmax or default_nmax(d)
        nat = graded_evector(M, None, N)
        sh = graded_evector(M, a, N)
        probe = freeness_probe(M, max(N, a + 2))
        shift_ok = sh[1] == nat[1] - a * nat[0]
        ineq_ok = nat[1] <= a * nat[0]
        equality = nat[1] == a * nat[0]
        free_ok = equality == probe.free_up_to_bound
        evidence = {
            "a": a,
            "e_natural": list(nat.e),
            "e_shifted": list(sh.e),
            "shift_law": int(shift_ok),
            "bound": a * nat[0],
            "equality": int(equality),
            "probe": probe.label,
            "witness_degree": probe.witness_degree,
            "generator_counts": [list(t) for t in probe.generator_counts],
        }
        ok = shift_ok and ineq_ok and free_ok
        return nat.e, None, evidence, "pass" if ok else "fail"

    return _guarded("module", name, {"ring": M.ring, "rank": M.rank, "generators": len(M.generators)}, seed, body)


# -- corpus runs ---------------------------------------------------------------

SUITES = ("paper", "cm", "noncm", "modules", "all")


def _core_plan(rings: dict, modules: list):
    two, three = rings["two_planes"], rings["three_planes"]
    poly2, poly3, curve, cone = rings["poly2"], rings["poly3"], rings["curve345"], rings["cone"]
    S2, S3, S4 = poly2.ring.base, poly3.ring.base, two.ring.base
    m2sq = S2.polys("x^2", "x*y", "y^2")
    plan = [
        ("sign", two, {}),
        ("sign", three, {}),
        ("sign", poly2, {}),
        ("sign", poly3, {}),
        ("sign", curve, {}),
        ("sign", cone, {}),
        ("sign", rings["embedded"], {}),
        ("ses", None, {"S": poly3.ring, "L0": S3.polys("x^2", "x*y", "x*z"), "name": "ses_lambda1"}),
        ("ses", None, {"S": poly3.ring, "L0": S3.polys("x^3", "x*y", "x*z"), "name": "ses_lambda2"}),
        ("descent", poly2, {}),
        ("descent", poly3, {}),
        ("descent", two, {"I": S4.polys("x1 + x3", "x2 + x4")}),
        ("descent", two, {}),
        ("descent", cone, {}),
        ("descent", curve, {"I": S3.polys("x")}),
        ("descent", rings["embedded"], {}),
        ("northcott", poly2, {"I": m2sq}),
        ("northcott", poly2, {}),
        ("northcott", curve, {}),
        ("gotonishida", two, {}),
        ("gotonishida", poly2, {"I": m2sq}),
        ("gotonishida", curve, {"J": S3.polys("x")}),
        ("huckabamarley", poly2, {"I": m2sq, "J": S2.polys("x^2", "y^2")}),
        ("huckabamarley", curve, {"J": S3.polys("x")}),
        ("components", None, {"primes": [IdealHandle.from_texts(S4, *g) for g in (("x1", "x2"), ("x3", "x4"))], "name": "two_planes"}),
        (
            "components",
            None,
            {
                "primes": [IdealHandle.from_texts(S4, *g) for g in (("x1", "x2"), ("x3", "x4"), ("x1 - x3", "x2 - x4"))],
                "name": "three_planes",
            },
        ),
        ("components", None, {"primes": [IdealHandle.from_texts(S4, "x1", "x2")], "name": "one_plane"}),
        ("lift", None, {"S": two.ring.base, "p": S4.polys("x1", "x2"), "x": S4.polys("x3", "x4"), "name": "plane_lift"}),
    ]
    plan += [("module", m, {}) for m in modules]
    return plan


def _run_item(kind, target, kwargs, seed, trials, nmax):
    if kind == "sign":
        return sign_test(target, trials=trials, seed=seed, nmax=nmax)
    if kind == "ses":
        return ses_e1_check(kwargs["S"], kwargs["L0"], seed=seed, nmax=nmax, name=kwargs["name"])
    if kind == "descent":
        return descent_check(target, kwargs.get("I"), seed=seed, nmax=nmax)
    if kind == "northcott":
        return northcott_check(target, kwargs.get("I"), seed=seed, nmax=nmax)
    if kind == "gotonishida":
        return goto_nishida_check(target, kwargs.get("I"), kwargs.get("J"), seed=seed, nmax=nmax)
    if kind == "huckabamarley":
        return huckaba_marley_check(target, kwargs.get("I"), kwargs.get("J"), seed=seed, nmax=nmax)
    if kind == "components":
        return components(kwargs["primes"], seed=seed, nmax=nmax, name=kwargs["name"])
    if kind == "lift":
        return lift_check(kwargs["S"], kwargs["p"], kwargs["x"], seed=seed, name=kwargs["name"])
    if kind == "module":
        return module_check(target, seed=seed, nmax=nmax)
    raise InputError(f"unknown check {kind!r}")


def _extra_plan(rings: dict):
    three, cone, curve = rings["three_planes"], rings["cone"], rings["curve345"]
    S3 = cone.ring.base
    return [
        ("descent", three, {}),
        ("northcott", cone, {}),
        ("northcott", curve, {"I": S3.polys("x")}),
        ("gotonishida", three, {}),
        ("gotonishida", cone, {}),
        ("huckabamarley", cone, {}),
        ("huckabamarley", rings["poly3"], {}),
    ]


def suite_plan(suite: str, p: int | None = None, flip: Sequence[str] = ()):
    """The (check, target, arguments) triples a suite runs, in corpus order."""
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    p = p or DEFAULT_CHARACTERISTIC
    ring_list = build_rings(p)
    cm_names = {e.name for e in ring_list if e.cm_expected}
    names = {e.name for e in ring_list}
    for f in flip:
        if f not in names:
            raise InputError(f"cannot flip unknown corpus entry {f!r}")
    rings = {e.name: (flip_cm_flag(e) if e.name in flip else e) for e in ring_list}
    core = _core_plan(rings, build_modules(p))
    if suite == "paper":
        return core
    full = core + _extra_plan(rings)
    if suite == "all":
        return full
    if suite == "modules":
        return [item for item in full if item[0] == "module"]
    on_ring = [item for item in full if isinstance(item[1], CorpusEntry)]
    if suite == "cm":
        return [item for item in on_ring if item[1].name in cm_names]
    return [item for item in on_ring if item[1].name not in cm_names] + [
        item for item in full if item[0] == "components"
    ]


def run_corpus(
    suite: str = "paper",
    seed: int = 0,
    trials: int = SIGN_TRIALS,
    nmax: int | None = None,
    p: int | None = None,
    flip: Sequence[str] = (),
) -> list[ExperimentReport]:
    """Run every check of ``suite`` in corpus order."""
    return [_run_item(kind, target, kwargs, seed, trials, nmax) for kind, target, kwargs in suite_plan(suite, p, flip)]


def summarize(reports: Sequence[ExperimentReport]) -> dict[str, int]:
    counts = {v: 0 for v in VERDICTS}
    for r in reports:
        counts[r.verdict] += 1
    return counts
