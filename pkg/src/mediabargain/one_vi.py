"""One vertically integrated firm A1 facing independent provider B and platform 2.

Row player is A1 with strategies ``E`` (keep content in-house) and ``N``
(also supply platform 2). Column player is B with ``E2`` (exclusive to
platform 2), ``EA1`` (exclusive to A1's platform) and ``N`` (both platforms).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import contracting
from .errors import ClassificationMismatch, LambdaZeroExcluded
from .games import EquilibriumReport, NormalFormGame, pure_nash
from .hotelling import ContentAllocation
from .model import ModelParams, Strategy2, StrategyB3, validate

A1_STRATEGIES = tuple(s.value for s in Strategy2)
B_STRATEGIES = tuple(s.value for s in StrategyB3)
PROFILES = tuple((x, y) for x in A1_STRATEGIES for y in B_STRATEGIES)
PAYOFF_TOL = 1e-12


@dataclass(frozen=True)
class OneViCell:
    profile: tuple[str, str]
    pi_A1: float
    pi_B: float
    pi_2: float
    fees: tuple  # (payer, payee, amount)
    gross_profit1: float
    gross_profit2: float

    def to_dict(self) -> dict:
        return {
            "profile": list(self.profile),
            "pi_A1": self.pi_A1,
            "pi_B": self.pi_B,
            "pi_2": self.pi_2,
            "fees": [{"payer": p, "payee": q, "amount": x} for p, q, x in self.fees],
            "gross_profit1": self.gross_profit1,
            "gross_profit2": self.gross_profit2,
        }


def profile_allocation(a1: str, b: str) -> ContentAllocation:
    carriers_a = {"E": {1}, "N": {1, 2}}[a1]
    carriers_b = {"E2": {2}, "EA1": {1}, "N": {1, 2}}[b]
    return ContentAllocation.of(carriers_a, carriers_b)


def _check(params: ModelParams) -> None:
    validate(params)
    if params.r == 0 and params.lam == 0:
        raise LambdaZeroExcluded(
            "lambda = 0 with r = 0 leaves provider B with zero payoff everywhere",
            ["lambda_positive"],
        )


def _cells(a, b, t, r, lam) -> dict:
    s = a + b
    sq = lambda x: x * x / (2 * t)  # noqa: E731  platform profit at price x
    cells = {}

    fee_b2 = lam * s * (6 * t - 3 * r - s) / (18 * t) + s * r / (6 * t)
    cells[("E", "E2")] = dict(
        pi_A1=t / 2 + r / 2,
        pi_B=lam * s * (6 * t - 3 * r - s) / (18 * t) + (1 / 2 + s / (6 * t)) * r,
        fees=[("2", "B", fee_b2)],
        pi1=t / 2,
        pi2=t / 2,
    )

    fee_ba1 = lam * (s / 3 + s * s / (18 * t) + s * r / (6 * t)) - (1 - lam) * s * r / (6 * t)
    cells[("E", "EA1")] = dict(
        pi_A1=sq(t + s / 3) + (1 / 2 + s / (3 * t)) * r - lam * s * (6 * t + 6 * r + s) / (18 * t),
        pi_B=lam * s * (6 * t + 6 * r + s) / (18 * t) + r / 2,
        fees=[("A1", "B", fee_ba1)],
        pi1=sq(t + s / 3),
        pi2=sq(t - s / 3),
    )

    fee_ba1 = lam * (b / 3 + b * b / (18 * t) + b * r / (6 * t)) - (1 - lam) * r / 2
    fee_b2 = lam * (a / 3 - (a * a + 2 * a * b) / (18 * t)) - (1 - lam) * (1 / 2 - s / (6 * t)) * r
    cells[("E", "N")] = dict(
        pi_A1=sq(t + b / 3) + (1 + b / (6 * t)) * r - lam * (b / 3 + b * b / (18 * t) + (1 / 2 + b / (6 * t)) * r),
        pi_B=s * r / (6 * t) + lam * (s / 3 + (b * b - a * a - 2 * a * b) / (18 * t) + (1 - a / (6 * t)) * r),
        fees=[("A1", "B", fee_ba1), ("2", "B", fee_b2)],
        pi1=sq(t + b / 3),
        pi2=sq(t - b / 3),
    )

    fee_a2 = lam * (b / 3 + b * b / (18 * t)) - (1 - lam) * (-b / 3 + b * b / (18 * t) + r / 2)
    cells[("N", "E2")] = dict(
        pi_A1=t / 2 + r / 2 + lam * (b * b / (9 * t) + r / 2),
        pi_B=lam * 2 * b / 3 + (1 / 2 + b / (6 * t)) * r,
        fees=[("2", "A1", fee_a2), ("2", "B", lam * 2 * b / 3)],
        pi1=sq(t - b / 3),
        pi2=sq(t + b / 3),
    )

    fee_a2 = lam * (a / 3 - (a * a + 2 * a * b) / (18 * t)) - (1 - lam) * (
        -a / 3 - (a * a + 2 * a * b) / (18 * t) + (1 / 2 - s / (6 * t)) * r
    )
    cells[("N", "EA1")] = dict(
        pi_A1=sq(t + s / 3)
        + (1 / 2 + s / (6 * t)) * r
        - lam * (a * (a + 2 * b) / (9 * t) + 2 * b / 3 - (1 / 2 - s / (6 * t)) * r),
        pi_B=lam * 2 * b / 3 + (1 / 2 + b / (6 * t)) * r,
        fees=[("2", "A1", fee_a2), ("A1", "B", lam * 2 * b / 3)],
        pi1=sq(t + b / 3),
        pi2=sq(t - b / 3),
    )

    fee_a2 = lam * (b / 3 - b * b / (18 * t)) - (1 - lam) * (-b / 3 - b * b / (18 * t) + (1 / 2 - b / (6 * t)) * r)
    fee_b = lam * (b / 3 - b * b / (18 * t)) - (1 - lam) * (1 / 2 - b / (6 * t)) * r
    cells[("N", "N")] = dict(
        pi_A1=sq(t + b / 3) + r - lam * (b / 3 + b * b / (18 * t)),
        pi_B=r + 2 * (lam * (b / 3 - b * b / (18 * t) + (1 / 2 - b / (6 * t)) * r) - (1 / 2 - b / (6 * t)) * r),
        fees=[("2", "A1", fee_a2), ("A1", "B", fee_b), ("2", "B", fee_b)],
        pi1=t / 2,
        pi2=t / 2,
    )
    return cells


def one_vi_cells(params: ModelParams) -> dict:
    """Closed-form payoffs, fees and platform 2's net profit for all six profiles."""
    _check(params)
    p = params
    out = {}
    for profile, c in _cells(p.alpha, p.beta, p.t, p.r, p.lam).items():
        paid_by_2 = sum(x for payer, _, x in c["fees"] if payer == "2")
        out[profile] = OneViCell(
            profile=profile,
            pi_A1=c["pi_A1"],
            pi_B=c["pi_B"],
            pi_2=c["pi2"] - paid_by_2,
            fees=tuple(c["fees"]),
            gross_profit1=c["pi1"],
            gross_profit2=c["pi2"],
        )
    return out


def one_vi_game(params: ModelParams) -> NormalFormGame:
    cells = one_vi_cells(params)
    return NormalFormGame.from_cells(
        A1_STRATEGIES, B_STRATEGIES, {k: (c.pi_A1, c.pi_B) for k, c in cells.items()}
    )


def printed_r0_matrix(params: ModelParams) -> NormalFormGame:
    """The no-advertising matrix in its compact printed form (r is ignored)."""
    validate(params)
    a, b, t, lam = params.alpha, params.beta, params.t, params.lam
    s = a + b
    top = (t + s / 3) ** 2 / (2 * t)
    mid = (t + b / 3) ** 2 / (2 * t)
    cells = {
        ("E", "E2"): (t / 2, lam * s * (6 * t - s) / (18 * t)),
        ("E", "EA1"): (top - lam * s * (6 * t + s) / (18 * t), lam * s * (6 * t + s) / (18 * t)),
        ("E", "N"): (mid - lam * (b / 3 + b * b / (18 * t)), lam * (s / 3 + (b * b - a * a - 2 * a * b) / (18 * t))),
        ("N", "E2"): (t / 2 + lam * b * b / (9 * t), lam * 2 * b / 3),
        ("N", "EA1"): (top - lam * (a * (a + 2 * b) / (9 * t) + 2 * b / 3), lam * 2 * b / 3),
        ("N", "N"): (mid - lam * (b / 3 + b * b / (18 * t)), 2 * lam * (b / 3 - b * b / (18 * t))),
    }
    return NormalFormGame.from_cells(A1_STRATEGIES, B_STRATEGIES, cells)


def reconstruct_cell(params: ModelParams, a1: str, b: str) -> contracting.MarketOutcome:
    return contracting.market_outcome(params, profile_allocation(a1, b), contracting.ONE_VI_OWNERS)


def first_principles_game(params: ModelParams) -> NormalFormGame:
    _check(params)
    cells = {}
    for a1, b in PROFILES:
        out = reconstruct_cell(params, a1, b)
        cells[(a1, b)] = (out.payoff("A1"), out.payoff("B"))
    return NormalFormGame.from_cells(A1_STRATEGIES, B_STRATEGIES, cells)


def keep_in_house_condition(params: ModelParams) -> float:
    """Positive when A1 prefers keeping its content against B's offer to A1 (r = 0)."""
    a, b, t = params.alpha, params.beta, params.t
    return a * a + 2 * a * b - b * b - 6 * t * (a - b)


POSITIVE = frozenset({("N", "E2"), ("E", "EA1")})
NEGATIVE = frozenset({("N", "E2"), ("N", "EA1")})


@dataclass
class OneViResult:
    params: ModelParams
    report: EquilibriumReport
    label: str | None = None
    condition: float | None = None
    cells: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "label": self.label,
            "condition": self.condition,
            "equilibria": [list(c) for c in self.report.pure_equilibria],
            "ties": [list(c) for c in self.report.ties],
            "cells": [c.to_dict() for c in self.cells.values()],
            "notes": list(self.notes),
        }


def _scale(game: NormalFormGame) -> float:
    return max(1.0, float(abs(game.row_payoffs).max()), float(abs(game.col_payoffs).max()))


def classify_one_vi_general(params: ModelParams, tol: float | None = None) -> OneViResult:
    """Pure equilibria of the six-cell game by enumeration; no region label."""
    game = one_vi_game(params)
    report = pure_nash(game, tol=PAYOFF_TOL * _scale(game) if tol is None else tol)
    return OneViResult(params=params, report=report, cells=one_vi_cells(params))


def classify_one_vi_r0(params: ModelParams, tol: float = 1e-9) -> OneViResult:
    """Equilibria without advertising, checked against the sign of the condition.

    Degenerate inputs (alpha = 0, beta = 0 or a vanishing condition) return the
    label ``Boundary`` with every weakly best cell. Payoff gaps are quadratic in
    the content values and scale with lambda, so "zero" is judged on that scale.
    """
    if params.r != 0:
        raise ValueError("classify_one_vi_r0 needs r = 0")
    if params.lam <= 0:
        raise LambdaZeroExcluded("lambda must be positive when r = 0", ["lambda_positive"])
    result = classify_one_vi_general(params)
    cond = keep_in_house_condition(params)
    result.condition = cond
    scale = max(1.0, params.alpha ** 2 + params.beta ** 2 + 6 * params.t * (params.alpha + params.beta))
    notes = []
    if abs(cond) <= tol * scale:
        notes.append("condition vanishes")
    if params.lam * params.alpha ** 2 <= tol * scale:
        notes.append("alpha = 0")
    if params.lam * params.beta ** 2 <= tol * scale:
        notes.append("beta = 0")
    if notes:
        result.label = "Boundary"
        result.notes = notes
        weak = classify_one_vi_general(params, tol=tol * _scale(one_vi_game(params)))
        result.report = weak.report
        if not (POSITIVE & NEGATIVE) <= result.report.equilibrium_set():
            raise ClassificationMismatch(
                f"(N, E2) missing from weak equilibria {sorted(result.report.pure_equilibria)}",
                params=params.to_dict(),
            )
        return result
    expected = POSITIVE if cond > 0 else NEGATIVE
    result.label = "N_E2+E_EA1" if cond > 0 else "N_E2+N_EA1"
    if result.report.equilibrium_set() != expected:
        raise ClassificationMismatch(
            f"condition {cond:g} predicts {sorted(expected)}, enumeration found "
            f"{sorted(result.report.pure_equilibria)}",
            params=params.to_dict(),
        )
    return result


def distinct_arrangements(results) -> set:
    """Distinct equilibrium profiles seen across a collection of r = 0 results."""
    seen = set()
    for res in results:
        seen |= set(res.report.pure_equilibria)
    return seen
