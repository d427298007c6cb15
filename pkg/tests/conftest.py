from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from dyndeg.algebra.field import SplitCubicField
from dyndeg.matrix import A1, A0
from dyndeg.recur.coeffs import EigenData

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_q = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@pytest.fixture(scope="session")
def K1() -> SplitCubicField:
    return SplitCubicField(A1.charpoly())


@pytest.fixture(scope="session")
def K0() -> SplitCubicField:
    return SplitCubicField(A0.charpoly())


@pytest.fixture(scope="session")
def eig1(K1) -> EigenData:
    return EigenData(A1, K1)


def kelems(F: SplitCubicField):
    return st.lists(small_q, min_size=6, max_size=6).map(F.elem)


def eps(k: int) -> Fraction:
    return Fraction(1, 10**k)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance as acc

    if not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.line(*r))
