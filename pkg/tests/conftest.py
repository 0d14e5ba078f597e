from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from taufan import PairCatalog, build_categories, catalog  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def running():
    return catalog.running_example()


@pytest.fixture(scope="session")
def a2():
    return catalog.linear_a(2)


@pytest.fixture(scope="session")
def a3():
    return catalog.linear_a(3)


@pytest.fixture(scope="session")
def point():
    return catalog.single_vertex()


@pytest.fixture(scope="session")
def kron():
    return catalog.kronecker()


@pytest.fixture(scope="session")
def running_catalog(running):
    return PairCatalog(running, checked=True, cross_check=True)


@pytest.fixture(scope="session")
def running_bundle(running_catalog):
    return build_categories(running_catalog, checked=True)


@pytest.fixture(scope="session")
def small_bundles(running_bundle, a2, a3, point):
    """Category bundles for the running example, A2, A3 and the base field."""
    out = {"running": running_bundle}
    for name, A in (("A2", a2), ("A3", a3), ("point", point)):
        out[name] = build_categories(PairCatalog(A, checked=True, cross_check=True), checked=True)
    return out


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
