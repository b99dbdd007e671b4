"""Primitive parameters and the strategy enumerations shared across the package."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace
from enum import Enum

from .errors import NoLossViolated, RangeViolated, ViabilityViolated

PARAM_FIELDS = ("v", "alpha", "beta", "t", "r", "lambda")


@dataclass(frozen=True)
class ModelParams:
    """Primitive parameters of the media-market model.

    Attributes:
        v: Gross utility of a platform's basic content.
        alpha: Utility increment from the first premium package.
        beta: Utility increment from the second premium package.
        t: Hotelling transport cost.
        r: Upstream advertising revenue per subscriber reached.
        lam: Bargaining weight of the upstream party (serialized as ``lambda``).
    """

    v: float = 10.0
    alpha: float = 1.0
    beta: float = 1.0
    t: float = 1.0
    r: float = 0.0
    lam: float = 0.5

    def to_dict(self) -> dict[str, float]:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return {k: d[k] for k in PARAM_FIELDS}

    @classmethod
    def from_dict(cls, data: dict) -> "ModelParams":
        data = dict(data)
        if "lambda" in data:
            data["lam"] = data.pop("lambda")
        unknown = set(data) - {"v", "alpha", "beta", "t", "r", "lam"}
        if unknown:
            raise RangeViolated(f"unknown parameter keys: {sorted(unknown)}", sorted(unknown))
        return cls(**{k: float(val) for k, val in data.items()})

    def with_(self, **changes) -> "ModelParams":
        """Copy with fields replaced; accepts ``lambda`` as an alias for ``lam``."""
        if "lambda" in changes:
            changes["lam"] = changes.pop("lambda")
        return replace(self, **changes)

    def get(self, name: str) -> float:
        return self.lam if name == "lambda" else getattr(self, name)

    @property
    def premium_total(self) -> float:
        return self.alpha + self.beta


def range_violations(p: ModelParams) -> list[str]:
    bad = [name for name in PARAM_FIELDS if not math.isfinite(p.get(name))]
    if bad:
        return [f"{name}_finite" for name in bad]
    checks = [
        ("alpha_nonnegative", p.alpha >= 0),
        ("beta_nonnegative", p.beta >= 0),
        ("t_positive", p.t > 0),
        ("r_nonnegative", p.r >= 0),
        ("lambda_in_unit_interval", 0 <= p.lam <= 1),
    ]
    return [name for name, ok in checks if not ok]


def is_viable(p: ModelParams) -> bool:
    return p.alpha + p.beta < 3 * p.t


def satisfies_no_loss(p: ModelParams) -> bool:
    # platform holding both exclusives keeps a nonnegative net profit at lambda=1
    return 3 * p.t >= (1 + math.sqrt(2)) * (p.alpha + p.beta)


def validate(params: ModelParams, strict_no_loss: bool = False) -> ModelParams:
    """Check every invariant of ``params`` and return it unchanged.

    Raises:
        RangeViolated: a field lies outside its domain.
        ViabilityViolated: alpha + beta >= 3t.
        NoLossViolated: only with ``strict_no_loss``; 3t < (1 + sqrt 2)(alpha + beta).
    """
    violations = range_violations(params)
    if violations:
        raise RangeViolated(f"parameters out of range: {', '.join(violations)}", violations)
    if not is_viable(params):
        violations.append("viability")
    if strict_no_loss and not satisfies_no_loss(params):
        violations.append("no_loss")
    if "viability" in violations:
        raise ViabilityViolated(
            f"alpha + beta = {params.alpha + params.beta:g} must be below 3t = {3 * params.t:g}",
            violations,
        )
    if violations:
        raise NoLossViolated(
            "3t < (1 + sqrt 2)(alpha + beta): the platform with both exclusives makes a loss",
            violations,
        )
    return params


class Strategy3(str, Enum):
    """Independent content provider under vertical separation."""

    E1 = "E1"
    E2 = "E2"
    N = "N"


class Strategy2(str, Enum):
    """Integrated firm: keep own content exclusive, or supply the rival platform."""

    E = "E"
    N = "N"


class StrategyB3(str, Enum):
    """Independent content provider facing one integrated rival."""

    E2 = "E2"
    EA1 = "EA1"
    N = "N"


class VerticalStructure(str, Enum):
    SEPARATION = "separation"
    ONE_VI = "one-vi"
    TWO_VI = "two-vi"

    @classmethod
    def parse(cls, text: str) -> "VerticalStructure":
        key = text.strip().lower().replace("_", "-")
        aliases = {
            "separation": cls.SEPARATION,
            "one-vi": cls.ONE_VI,
            "one-integration": cls.ONE_VI,
            "oneintegration": cls.ONE_VI,
            "two-vi": cls.TWO_VI,
            "two-integrations": cls.TWO_VI,
            "twointegrations": cls.TWO_VI,
        }
        if key not in aliases:
            raise ValueError(f"unknown vertical structure {text!r}")
        return aliases[key]
