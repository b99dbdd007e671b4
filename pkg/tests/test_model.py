import math

import pytest
from hypothesis import given

from mediabargain.errors import NoLossViolated, RangeViolated, ViabilityViolated
from mediabargain.model import (
    ModelParams,
    VerticalStructure,
    is_viable,
    satisfies_no_loss,
    validate,
)

from conftest import viable_params


def test_defaults_validate():
    assert validate(ModelParams()) == ModelParams()


def test_round_trip_uses_lambda_key():
    p = ModelParams(v=3, alpha=0.2, beta=0.4, t=1.5, r=0.1, lam=0.7)
    d = p.to_dict()
    assert list(d) == ["v", "alpha", "beta", "t", "r", "lambda"]
    assert ModelParams.from_dict(d) == p


def test_unknown_key_rejected():
    with pytest.raises(RangeViolated):
        ModelParams.from_dict({"gamma": 1})


@pytest.mark.parametrize(
    "changes, code",
    [({"t": 0}, "t_positive"), ({"lam": 1.2}, "lambda_in_unit_interval"), ({"alpha": -1}, "alpha_nonnegative")],
)
def test_range_violations_named(changes, code):
    with pytest.raises(RangeViolated) as exc:
        validate(ModelParams().with_(**changes))
    assert code in exc.value.violations


def test_nan_is_a_range_violation():
    with pytest.raises(RangeViolated):
        validate(ModelParams(alpha=math.nan))


def test_viability_boundary_is_excluded():
    with pytest.raises(ViabilityViolated):
        validate(ModelParams(alpha=1.5, beta=1.5, t=1))


def test_no_loss_only_when_strict():
    p = ModelParams(alpha=1, beta=1, t=1)
    assert not satisfies_no_loss(p)
    validate(p)
    with pytest.raises(NoLossViolated):
        validate(p, strict_no_loss=True)


def test_with_accepts_lambda_alias():
    assert ModelParams().with_(**{"lambda": 0.25}).lam == 0.25


@given(viable_params())
def test_sampled_params_are_viable(p):
    assert is_viable(p)
    validate(p)


def test_structure_parse():
    assert VerticalStructure.parse("two_vi") is VerticalStructure.TWO_VI
    with pytest.raises(ValueError):
        VerticalStructure.parse("three-vi")
