"""Built-in example rings and modules."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .core import DEFAULT_CHARACTERISTIC, PolyRing, RingDesc
from .errors import InputError
from .graded import GradedSubmodule
from .groebner import IdealHandle, intersect


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    ring: RingDesc
    cm_expected: bool | None  # None: no expectation recorded
    constructed_unmixed: bool
    domain: bool
    note: str = ""


@dataclass(frozen=True)
class ModuleEntry:
    name: str
    module: GradedSubmodule
    note: str = ""


def _intersection(ring: PolyRing, *primes: tuple[str, ...]) -> IdealHandle:
    ideals = [IdealHandle.from_texts(ring, *gens) for gens in primes]
    out = ideals[0]
    for P in ideals[1:]:
        out = intersect(out, P)
    return out


PLANES_2 = (("x1", "x2"), ("x3", "x4"))
PLANES_3 = PLANES_2 + (("x1 - x3", "x2 - x4"),)


def build_rings(p: int = DEFAULT_CHARACTERISTIC) -> list[CorpusEntry]:
    S2 = PolyRing(p, ("x", "y"))
    S3 = PolyRing(p, ("x", "y", "z"))
    S4 = PolyRing(p, ("x1", "x2", "x3", "x4"))
    two = _intersection(S4, *PLANES_2)
    three = _intersection(S4, *PLANES_3)
    return [
        CorpusEntry("poly2", RingDesc(S2, (), "poly2"), True, True, True, "polynomial ring in 2 variables"),
        CorpusEntry("poly3", RingDesc(S3, (), "poly3"), True, True, True, "polynomial ring in 3 variables"),
        CorpusEntry(
            "two_planes",
            RingDesc(S4, two.groebner_basis(), "two_planes"),
            False,
            True,
            False,
            "two coordinate 2-planes in 4-space meeting at the origin",
        ),
        CorpusEntry(
            "three_planes",
            RingDesc(S4, three.groebner_basis(), "three_planes"),
            False,
            True,
            False,
            "three 2-planes in 4-space pairwise meeting only at the origin",
        ),
        CorpusEntry(
            "curve345",
            RingDesc(S3, tuple(S3.polys("y^2 - x*z", "x^3 - y*z", "x^2*y - z^2")), "curve345"),
            True,
            True,
            True,
            "monomial curve (t^3, t^4, t^5)",
        ),
        CorpusEntry("cone", RingDesc(S3, (S3.poly("x*z - y^2"),), "cone"), True, True, True, "quadric cone hypersurface"),
        CorpusEntry(
            "embedded",
            RingDesc(S2, tuple(S2.polys("x^2", "x*y")), "embedded"),
            False,
            False,
            False,
            "line with an embedded point at the origin; depth 0",
        ),
    ]


def build_modules(p: int = DEFAULT_CHARACTERISTIC) -> list[ModuleEntry]:
    S2 = PolyRing(p, ("x", "y"))
    S3 = PolyRing(p, ("x", "y", "z"))
    R2, R3 = RingDesc(S2), RingDesc(S3)
    x, y = S2.gens()
    zero, one = S2.zero, S2.one
    return [
        ModuleEntry("ideal_xy", GradedSubmodule(R2, 1, ((x,), (y,))), "maximal ideal of k[x,y]"),
        ModuleEntry("ideal_m2", GradedSubmodule(R2, 1, ((x * x,), (x * y,), (y * y,))), "square of the maximal ideal"),
        ModuleEntry("free_s2", GradedSubmodule(R2, 2, ((one, zero), (zero, one))), "free module of rank 2"),
        ModuleEntry("free_shifted", GradedSubmodule(R2, 2, ((x, zero), (zero, y))), "free, generated in degree 1"),
        ModuleEntry("ideal_xyz", GradedSubmodule(R3, 1, tuple((v,) for v in S3.gens())), "maximal ideal of k[x,y,z]"),
    ]


def ring_entry(name: str, p: int = DEFAULT_CHARACTERISTIC) -> CorpusEntry:
    for e in build_rings(p):
        if e.name == name:
            return e
    raise InputError(f"unknown corpus ring {name!r}")


def flip_cm_flag(entry: CorpusEntry) -> CorpusEntry:
    if entry.cm_expected is None:
        raise InputError(f"entry {entry.name!r} has no cm_expected flag to flip")
    return replace(entry, cm_expected=not entry.cm_expected)
