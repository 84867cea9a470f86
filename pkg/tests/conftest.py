import os

import pytest
from hypothesis import HealthCheck, settings

from calgebra import FiniteCAlgebra, enumerate_subalgebras, vec

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=50, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def alg(width, *lits):
    return FiniteCAlgebra.from_elements(width, [vec(s) for s in lits])


@pytest.fixture(scope="session")
def subs2():
    return enumerate_subalgebras(2)


@pytest.fixture(scope="session")
def subs3():
    return enumerate_subalgebras(3)


@pytest.fixture(scope="session")
def m3():
    """3^2 without TF and FT."""
    return alg(2, "TT", "TU", "FF", "FU", "UT", "UF", "UU")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
