from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qcong.laurent import LaurentPoly

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("QCONG_HYPOTHESIS_EXAMPLES", "120")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

coefficient = st.integers(min_value=-40, max_value=40)
big_coefficient = st.one_of(coefficient, st.integers(min_value=-(2**80), max_value=2**80))


@st.composite
def laurent(draw, max_len=12, coeffs=coefficient, min_exp=(-6, 6)):
    cs = draw(st.lists(coeffs, max_size=max_len))
    lo = draw(st.integers(*min_exp))
    return LaurentPoly(cs, lo)


@st.composite
def nonzero_laurent(draw, max_len=8, coeffs=coefficient):
    p = draw(laurent(max_len=max_len, coeffs=coeffs))
    if not p:
        p = LaurentPoly([draw(st.integers(1, 9))], draw(st.integers(-3, 3)))
    return p


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running sweeps")


@pytest.fixture(scope="session")
def sympy_q():
    sympy = pytest.importorskip("sympy")
    return sympy, sympy.Symbol("q")


# Acceptance criteria append (number, status, detail); printed after the run.
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, status, detail in sorted(ACCEPTANCE, key=lambda x: (int(x[0].rstrip("c")), x[0])):
        terminalreporter.write_line(f"criterion {num:>3}: {status}  {detail}")
