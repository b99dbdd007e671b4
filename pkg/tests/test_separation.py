import numpy as np
import pytest
from hypothesis import given

from mediabargain import separation as sep
from mediabargain.model import ModelParams

from conftest import viable_params


def test_lambda_tilde_example():
    th = sep.thresholds(ModelParams(alpha=1, beta=1, t=1, r=1, lam=0.5))
    assert th.lambda_tilde == pytest.approx(0.3)
    assert th.lambda_bar == pytest.approx(0.6)
    assert th.lambda_hat == 1.0


def test_no_advertising_gives_matching_exclusives():
    res = sep.classify_region(ModelParams(alpha=1, beta=1, t=1, r=0, lam=0.5))
    assert res.region is sep.RegionLabel.ES_ES


def test_weak_bargainer_with_ads_splits_platforms():
    res = sep.classify_region(ModelParams(alpha=1, beta=1, t=1, r=1, lam=0.1))
    assert res.region is sep.RegionLabel.EO_EO


def test_threshold_point_is_boundary():
    res = sep.classify_region(ModelParams(alpha=1, beta=1, t=1, r=1, lam=0.3))
    assert res.region is sep.RegionLabel.BOUNDARY
    assert res.tie_break_region is sep.RegionLabel.ES_ES


def test_key_difference_of_preliminary_matrix():
    p = ModelParams(alpha=1, beta=1, t=1)
    g = sep.preliminary_matrix(p)
    diff = g.payoff("E1", "E1")[0] - g.payoff("N", "E1")[0]
    assert diff == pytest.approx(1 / 3, abs=1e-12)


@given(viable_params())
def test_closed_forms_match_rebuild(p):
    closed, rebuilt = sep.separation_payoffs(p), sep.reconstruct_payoffs(p)
    assert np.allclose(closed.as_tuple(), rebuilt.as_tuple(), atol=1e-9)


@given(viable_params())
def test_game_symmetric_between_providers(p):
    g = sep.assemble_general_game(p)
    assert np.allclose(g.row_payoffs, g.col_payoffs.T)


@given(viable_params())
def test_platform_relabelling(p):
    g = sep.assemble_general_game(p)
    swap = [1, 0, 2]
    assert np.allclose(g.row_payoffs, g.row_payoffs[np.ix_(swap, swap)])


@given(viable_params(r=0.0))
def test_no_ads_makes_matching_weakly_dominant(p):
    assert sep.es_weakly_dominant(p, tol=1e-12)


@given(viable_params())
def test_classifier_never_mismatches(p):
    res = sep.classify_region(p)
    assert res.region in sep.RegionLabel


@given(viable_params())
def test_lambda_tilde_falls_with_content(p):
    if p.r > 0:
        more = p.with_(alpha=p.alpha * 0.5)
        assert sep.thresholds(more).lambda_tilde >= sep.thresholds(p).lambda_tilde


def test_region_sequence_drops_boundaries():
    R = sep.RegionLabel
    assert sep.region_sequence([R.EO_EO, R.BOUNDARY, R.ES_ES, R.ES_ES]) == [R.EO_EO, R.ES_ES]


def test_gate_without_ordering_opens_asymmetric_band():
    p = ModelParams(alpha=0.33, beta=1.58, t=0.886, r=1.22, lam=0.95)
    th = sep.thresholds(p)
    assert th.gate_holds and not th.ordering_holds
    assert th.lambda_hat < th.lambda_bar == 1.0
    assert sep.classify_region(p).region is sep.RegionLabel.ASYM_E_N
