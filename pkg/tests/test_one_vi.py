import numpy as np
import pytest
from hypothesis import given

from mediabargain import contracting, one_vi
from mediabargain.errors import LambdaZeroExcluded
from mediabargain.model import ModelParams

from conftest import viable_params


def test_equal_content_profiles():
    res = one_vi.classify_one_vi_r0(ModelParams(alpha=0.8, beta=0.8, t=1, r=0, lam=0.4))
    assert res.report.equilibrium_set() == {("N", "E2"), ("E", "EA1")}


def test_substitutes_make_sale_to_a1_stable():
    res = one_vi.classify_one_vi_r0(ModelParams(alpha=1, beta=0.2, t=1, r=0, lam=0.5))
    assert res.report.equilibrium_set() == {("N", "E2"), ("N", "EA1")}


def test_zero_weight_without_ads_is_excluded():
    with pytest.raises(LambdaZeroExcluded):
        one_vi.one_vi_game(ModelParams(r=0, lam=0))


@given(viable_params(r=0.0))
def test_reduces_to_compact_matrix(p):
    if p.lam == 0:
        return
    g, h = one_vi.one_vi_game(p), one_vi.printed_r0_matrix(p)
    assert np.allclose(g.row_payoffs, h.row_payoffs, atol=1e-12)
    assert np.allclose(g.col_payoffs, h.col_payoffs, atol=1e-12)


@given(viable_params())
def test_rebuild_and_accounting(p):
    if p.r == 0 and p.lam == 0:
        return
    g, f = one_vi.one_vi_game(p), one_vi.first_principles_game(p)
    assert np.allclose(g.row_payoffs, f.row_payoffs, atol=1e-9)
    assert np.allclose(g.col_payoffs, f.col_payoffs, atol=1e-9)
    for profile, cell in one_vi.one_vi_cells(p).items():
        out = one_vi.reconstruct_cell(p, *profile)
        assert cell.pi_2 == pytest.approx(out.payoff("2"), abs=1e-9)
        total = contracting.industry_surplus(p, one_vi.profile_allocation(*profile))
        assert cell.pi_A1 + cell.pi_B + cell.pi_2 == pytest.approx(total, abs=1e-9)


def test_tiny_content_is_boundary():
    p = ModelParams(v=6.0, alpha=3.983, beta=4.7e-6, t=1.849, r=0, lam=0.948)
    res = one_vi.classify_one_vi_r0(p)
    assert res.label == "Boundary" and "beta = 0" in res.notes
