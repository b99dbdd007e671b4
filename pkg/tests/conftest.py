import numpy as np
import pytest
from hypothesis import assume, settings
from hypothesis import strategies as st

from mediabargain.model import ModelParams, is_viable

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

unit = st.floats(0.0, 1.0, allow_nan=False)
positive_unit = st.floats(0.01, 1.0, allow_nan=False)


@st.composite
def viable_params(draw, r=None, lam=None, min_content=0.0):
    t = draw(st.floats(0.3, 3.0))
    alpha = draw(st.floats(min_content, 2.9 * t))
    beta = draw(st.floats(min_content, 2.9 * t))
    p = ModelParams(
        v=draw(st.floats(1.0, 12.0)),
        alpha=alpha,
        beta=beta,
        t=t,
        r=draw(st.floats(0.0, 3.0)) if r is None else r,
        lam=draw(unit) if lam is None else lam,
    )
    assume(is_viable(p))
    return p


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = (ok, detail)
    print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
