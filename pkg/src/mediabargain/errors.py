"""Exception types. Every error carries a stable ``code`` used by the CLI."""

from __future__ import annotations


class ModelError(Exception):
    code = "ModelError"

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.context = context

    def to_dict(self) -> dict:
        out = {"code": self.code, "message": str(self)}
        if self.context:
            out["context"] = self.context
        return out


class ValidationError(ModelError):
    """Raised by parameter validation; ``violations`` names every failed constraint."""

    code = "ValidationError"

    def __init__(self, message: str, violations: list[str] | None = None, **context):
        super().__init__(message, violations=list(violations or []), **context)
        self.violations = list(violations or [])


class RangeViolated(ValidationError):
    code = "RangeViolated"


class ViabilityViolated(ValidationError):
    code = "ViabilityViolated"


class NoLossViolated(ValidationError):
    code = "NoLossViolated"


class LambdaZeroExcluded(ValidationError):
    code = "LambdaZeroExcluded"


class HypothesisViolated(ValidationError):
    code = "HypothesisViolated"


class NoConvergence(ModelError):
    code = "NoConvergence"


class NoSurplus(ModelError):
    code = "NoSurplus"


class Degenerate(ModelError):
    code = "Degenerate"


class DegenerateDenominator(ModelError):
    code = "DegenerateDenominator"


class ClassificationMismatch(ModelError):
    code = "ClassificationMismatch"


class UnknownLabel(ModelError):
    code = "UnknownLabel"


class LabelNotEquilibrium(ModelError):
    code = "LabelNotEquilibrium"


class ConfigError(ModelError):
    code = "ConfigError"
