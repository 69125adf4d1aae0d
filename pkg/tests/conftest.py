import sys

import pytest
from hypothesis import settings

from chern.core import PolyRing, RingDesc
from chern.corpus import build_modules, build_rings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

P = 32003


@pytest.fixture(scope="session")
def rings():
    return {e.name: e for e in build_rings(P)}


@pytest.fixture(scope="session")
def modules():
    return {m.name: m for m in build_modules(P)}


@pytest.fixture(scope="session")
def S4():
    return PolyRing(P, ("x1", "x2", "x3", "x4"))


@pytest.fixture(scope="session")
def S2():
    return PolyRing(P, ("x", "y"))


@pytest.fixture(scope="session")
def S3():
    return PolyRing(P, ("x", "y", "z"))


@pytest.fixture(scope="session")
def two_planes(rings) -> RingDesc:
    return rings["two_planes"].ring


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
