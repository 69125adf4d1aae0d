"""Execution of parsed scripts: declarations build objects, tasks produce reports."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import PolyRing, RingDesc, derive_seed
from .corpus import CorpusEntry
from .dsl import IdealDecl, ModuleDecl, QuotDecl, RingDecl, Script, SetDecl, Task, parse_script, script_char
from .errors import InputError
from .graded import GradedSubmodule
from .groebner import IdealHandle, krull_dim, length_zero_dim
from .hilbert import evector
from .lab import (
    _guarded,
    descent_check,
    components,
    goto_nishida_check,
    huckaba_marley_check,
    lift_check,
    module_check,
    northcott_check,
    ses_e1_check,
    sign_test,
)
from .structure import find_superficial, is_cohen_macaulay, reduction_check

DEFAULTS = {"seed": 0, "nmax": None, "trials": 20, "char": None}


@dataclass
class Config:
    seed: int = 0
    nmax: int | None = None
    trials: int = 20
    char: int | None = None
    pinned: frozenset = frozenset()  # keys fixed on the command line

    def as_dict(self) -> dict:
        return {"seed": self.seed, "nmax": self.nmax, "trials": self.trials, "char": self.char}


def resolve_config(cli: dict, script: dict) -> Config:
    """CLI flag > script directive > built-in default."""
    merged = dict(DEFAULTS)
    for source in (script, cli):
        for k, v in source.items():
            if v is not None:
                merged[k] = v
    pinned = frozenset(k for k, v in cli.items() if v is not None)
    return Config(**merged, pinned=pinned)


@dataclass
class Environment:
    rings: dict = field(default_factory=dict)  # name -> RingDesc (plain rings and quotients)
    entries: dict = field(default_factory=dict)  # quotient name -> CorpusEntry
    ideals: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)


def _ring_arg(env: Environment, name: str):
    if name in env.entries:
        return env.entries[name]
    return env.rings[name]


def _ring_desc(env: Environment, name: str) -> RingDesc:
    target = _ring_arg(env, name)
    return target.ring if isinstance(target, CorpusEntry) else target


def _info(kind: str, entry: str, inputs: dict, seed: int, compute):
    def body():
        e, lam, evidence = compute()
        return e, lam, evidence, "pass"

    return _guarded(kind, entry, inputs, seed, body)


def run_task(task: Task, env: Environment, cfg: Config):
    opts = dict(task.options)
    # precedence: CLI flag > task option > set directive > default
    nmax = cfg.nmax if "nmax" in cfg.pinned else opts.get("nmax", cfg.nmax)
    trials = cfg.trials if "trials" in cfg.pinned else opts.get("trials", cfg.trials)
    seed = cfg.seed if "seed" in cfg.pinned else opts.get("seed", cfg.seed)
    smax = opts.get("smax")
    a = task.args
    k = task.kind
    if k == "gb":
        I = env.ideals[a[0]]
        return _info(k, a[0], {"ideal": I}, seed, lambda: ((), None, {"basis": [str(g) for g in I.groebner_basis()]}))
    if k in ("dim", "depth", "cm"):
        R = _ring_desc(env, a[0])

        def compute():
            if k == "dim":
                return (), None, {"dim": krull_dim(R.ideal)}
            st = is_cohen_macaulay(R, seed=derive_seed(seed, a[0], k))
            if k == "depth":
                return (), None, {"depth": st.depth, "dim": st.dim}
            return (), None, {"dim": st.dim, "depth": st.depth, "is_cm": int(st.is_cm)}

        return _info(k, a[0], {"ring": R}, seed, compute)
    if k == "length":
        R, I = _ring_desc(env, a[0]), env.ideals[a[1]]
        return _info(k, a[0], {"ring": R, "I": I}, seed, lambda: ((), length_zero_dim(R.ideal + I), {}))
    if k == "coeffs":
        R, I = _ring_desc(env, a[0]), env.ideals[a[1]]

        def compute():
            ev = evector(R, I, nmax)
            return ev.e, None, {"d": ev.d, "n0": ev.n0, "nmax": ev.N}

        return _info(k, a[0], {"ring": R, "I": I}, seed, compute)
    if k == "sign":
        return sign_test(_ring_arg(env, a[0]), trials=trials, seed=seed, nmax=nmax)
    if k == "northcott":
        return northcott_check(_ring_arg(env, a[0]), env.ideals[a[1]], seed=seed, nmax=nmax)
    if k == "gotonishida":
        J = env.ideals[a[2]] if len(a) > 2 else None
        return goto_nishida_check(_ring_arg(env, a[0]), env.ideals[a[1]], J, seed=seed, nmax=nmax)
    if k == "huckabamarley":
        J = env.ideals[a[2]] if len(a) > 2 else None
        return huckaba_marley_check(_ring_arg(env, a[0]), env.ideals[a[1]], J, seed=seed, nmax=nmax)
    if k == "ses":
        R = _ring_desc(env, a[0])
        return ses_e1_check(RingDesc(R.base), R.ideal, seed=seed, nmax=nmax, name=a[0])
    if k == "descent":
        return descent_check(_ring_arg(env, a[0]), env.ideals[a[1]], seed=seed, nmax=nmax)
    if k == "superficial":
        R, I = _ring_desc(env, a[0]), env.ideals[a[1]]

        def compute():
            cert = find_superficial(R, I, seed=derive_seed(seed, a[0], k), N=nmax, c_max=opts.get("cmax", 5))
            return (), None, {"h": str(cert.h), "c": cert.c, "verified_range": [cert.c, cert.N]}

        return _info(k, a[0], {"ring": R, "I": I}, seed, compute)
    if k == "reduction":
        R, J, I = _ring_desc(env, a[0]), env.ideals[a[1]], env.ideals[a[2]]

        def compute():
            cert = reduction_check(J, I, R, s_max=smax or 10)
            return (), None, {"reduction_number": cert.s, "s_max": cert.s_max, "certified": int(cert.certified)}

        return _info(k, a[0], {"ring": R, "J": J, "I": I}, seed, compute)
    if k == "lift":
        R, p, x = _ring_desc(env, a[0]), env.ideals[a[1]], env.ideals[a[2]]
        return lift_check(R, p, x.generators, seed=seed, name=a[0])
    if k == "components":
        return components([env.ideals[n] for n in a], seed=seed, nmax=nmax, name="_".join(a))
    if k == "module":
        return module_check(env.modules[a[0]], seed=seed, nmax=nmax, name=a[0])
    raise InputError(f"unknown task {k!r}")


def execute(script: Script, cli: dict | None = None) -> tuple[list, Config]:
    """Run every task of ``script``; returns the reports and the effective config."""
    cli = cli or {}
    directives = {st.key: st.value for st in script.statements if isinstance(st, SetDecl)}
    cfg = resolve_config(cli, directives)
    env = Environment()
    reports = []
    for st in script.statements:
        if isinstance(st, RingDecl):
            ring = PolyRing(st.char, st.vars)
            env.rings[st.name] = RingDesc(ring, (), st.name)
        elif isinstance(st, IdealDecl):
            env.ideals[st.name] = IdealHandle(env.rings[st.ring].base, st.gens)
        elif isinstance(st, QuotDecl):
            base = env.rings[st.base]
            R = RingDesc(base.base, env.ideals[st.ideal].generators, st.name)
            env.rings[st.name] = R
            flags = dict(st.flags)
            env.entries[st.name] = CorpusEntry(
                st.name,
                R,
                flags.get("cm_expected"),
                flags.get("unmixed", False),
                flags.get("domain", False),
            )
        elif isinstance(st, ModuleDecl):
            env.modules[st.name] = GradedSubmodule(env.rings[st.ring], st.rank, st.gens)
        elif isinstance(st, Task):
            reports.append(run_task(st, env, cfg))
    return reports, cfg


def run_text(text: str, cli: dict | None = None):
    cli = cli or {}
    char = cli.get("char") or script_char(text)
    return execute(parse_script(text, char), cli)
