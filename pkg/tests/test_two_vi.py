import numpy as np
import pytest
from hypothesis import given

from mediabargain import two_vi
from mediabargain.model import ModelParams

from conftest import viable_params


def test_threshold_example():
    assert two_vi.exclusivity_threshold(ModelParams(beta=1, t=1, r=1)) == pytest.approx(5 / 14, abs=1e-12)


def test_supplying_firm_payoff():
    pay = two_vi.two_vi_payoffs(ModelParams(alpha=1, beta=1, t=1, r=1, lam=0.5))
    assert pay.pi_N_of_NE == pytest.approx(1.0 + 0.5 * (1 / 9 + 1 / 6 + 0.5))


def test_regimes():
    low = two_vi.classify_two_vi(ModelParams(beta=1, t=1, r=1, lam=0.2))
    high = two_vi.classify_two_vi(ModelParams(beta=1, t=1, r=1, lam=0.8))
    assert low.label == "N_E_or_E_N" and high.label == "N_N" and high.n_dominant


def test_zero_weight_adds_mutual_exclusion():
    res = two_vi.classify_two_vi(ModelParams(beta=1, t=1, r=1, lam=0.0))
    assert res.label == "Boundary" and res.lambda_zero_extra


@given(viable_params())
def test_rebuild(p):
    g, f = two_vi.two_vi_game(p), two_vi.first_principles_game(p)
    assert np.allclose(g.row_payoffs, f.row_payoffs, atol=1e-9)
    assert np.allclose(g.col_payoffs, f.col_payoffs, atol=1e-9)


@given(viable_params())
def test_alpha_does_not_matter(p):
    q = p.with_(alpha=0.0)
    assert np.array_equal(two_vi.two_vi_game(p).row_payoffs, two_vi.two_vi_game(q).row_payoffs)


@given(viable_params())
def test_symmetric(p):
    g = two_vi.two_vi_game(p)
    assert np.allclose(g.row_payoffs, g.col_payoffs.T)
