"""Two vertically integrated firms, A1 and B2, each deciding whether to supply the rival.

Row player is A1, column player is B2. ``E`` keeps the own premium package
exclusive; ``N`` sells it to the rival platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import contracting
from .errors import ClassificationMismatch
from .games import EquilibriumReport, NormalFormGame, pure_nash
from .hotelling import ContentAllocation
from .model import ModelParams, Strategy2, validate

STRATEGIES = tuple(s.value for s in Strategy2)
LAMBDA_TOL = 1e-9
PAYOFF_TOL = 1e-12


@dataclass(frozen=True)
class TwoViPayoffs:
    pi_EE: float
    pi_N_of_NE: float  # the firm that supplies its content
    pi_E_of_NE: float  # the firm that keeps its content and buys the rival's
    pi_NN: float


def _transfer_term(b, t, r):
    return b * b / (9 * t) + b * r / (6 * t) + r / 2


def two_vi_payoffs(params: ModelParams) -> TwoViPayoffs:
    validate(params)
    b, t, r, lam = params.beta, params.t, params.r, params.lam
    k = _transfer_term(b, t, r)
    return TwoViPayoffs(
        pi_EE=t / 2 + r / 2,
        pi_N_of_NE=t / 2 + r / 2 + lam * k,
        pi_E_of_NE=t / 2 + b * b / (9 * t) + (1 + b / (6 * t)) * r - lam * k,
        pi_NN=t / 2 + r,
    )


def _assemble(pay: TwoViPayoffs) -> NormalFormGame:
    cells = {
        ("E", "E"): (pay.pi_EE, pay.pi_EE),
        ("E", "N"): (pay.pi_E_of_NE, pay.pi_N_of_NE),
        ("N", "E"): (pay.pi_N_of_NE, pay.pi_E_of_NE),
        ("N", "N"): (pay.pi_NN, pay.pi_NN),
    }
    return NormalFormGame.from_cells(STRATEGIES, STRATEGIES, cells)


def two_vi_game(params: ModelParams) -> NormalFormGame:
    return _assemble(two_vi_payoffs(params))


def profile_allocation(a1: str, b2: str) -> ContentAllocation:
    return ContentAllocation(
        frozenset({1, 2}) if a1 == "N" else frozenset({1}),
        frozenset({1, 2}) if b2 == "N" else frozenset({2}),
    )


def reconstruct_cell(params: ModelParams, a1: str, b2: str) -> contracting.MarketOutcome:
    return contracting.market_outcome(params, profile_allocation(a1, b2), contracting.TWO_VI_OWNERS)


def first_principles_game(params: ModelParams) -> NormalFormGame:
    validate(params)
    cells = {}
    for a1 in STRATEGIES:
        for b2 in STRATEGIES:
            out = reconstruct_cell(params, a1, b2)
            cells[(a1, b2)] = (out.payoff("A1"), out.payoff("B2"))
    return NormalFormGame.from_cells(STRATEGIES, STRATEGIES, cells)


def exclusivity_threshold(params: ModelParams) -> float:
    """Bargaining weight below which one firm keeps its content exclusive.

    Taken as 1 when beta = r = 0, where content trade changes nothing.
    """
    b, t, r = params.beta, params.t, params.r
    num = 2 * b * b + 3 * b * r
    den = num + 9 * r * t
    return 1.0 if den == 0 else num / den


@dataclass
class TwoViResult:
    params: ModelParams
    threshold: float
    label: str
    report: EquilibriumReport
    n_dominant: bool
    lambda_zero_extra: bool = False
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "threshold": self.threshold,
            "label": self.label,
            "equilibria": [list(c) for c in self.report.pure_equilibria],
            "n_dominant": self.n_dominant,
            "lambda_zero_extra_equilibrium": self.lambda_zero_extra,
            "alpha_independent": True,
            "notes": list(self.notes),
        }


BELOW = frozenset({("N", "E"), ("E", "N")})
ABOVE = frozenset({("N", "N")})


def classify_two_vi(params: ModelParams) -> TwoViResult:
    """Equilibria of the two-integration game, checked against the threshold.

    Below the threshold exactly one firm supplies the other; above it N is
    dominant. At lambda = 0 the profile (E, E) is an equilibrium as well and is
    reported with a flag.
    """
    game = two_vi_game(params)
    thr = exclusivity_threshold(params)
    scale = max(1.0, float(abs(game.row_payoffs).max()))
    lam = params.lam
    notes = []
    if abs(lam - thr) <= LAMBDA_TOL:
        notes.append("lambda at threshold")
    if lam <= LAMBDA_TOL:
        notes.append("lambda = 0: supplying earns no fee")
    k = _transfer_term(params.beta, params.t, params.r)
    if k * 18 * params.t <= PAYOFF_TOL * scale:
        notes.append("beta = r = 0: content trade is payoff-irrelevant")

    if notes:
        report = pure_nash(game, tol=LAMBDA_TOL * max(k, 1.0) + 2 * PAYOFF_TOL * scale)
        label = "Boundary"
        expected = BELOW if lam < thr else ABOVE
        if lam <= LAMBDA_TOL:
            expected = BELOW | {("E", "E")}
        if not expected <= report.equilibrium_set() and not abs(lam - thr) <= LAMBDA_TOL:
            raise ClassificationMismatch(
                f"expected {sorted(expected)} among {sorted(report.pure_equilibria)}",
                params=params.to_dict(),
            )
    else:
        report = pure_nash(game, tol=PAYOFF_TOL * scale)
        expected = BELOW if lam < thr else ABOVE
        label = "N_E_or_E_N" if lam < thr else "N_N"
        if report.equilibrium_set() != expected:
            raise ClassificationMismatch(
                f"threshold {thr:g} predicts {sorted(expected)}, enumeration found "
                f"{sorted(report.pure_equilibria)}",
                params=params.to_dict(),
            )
    n_dom = report.dominant_row == "N" and report.dominant_col == "N" and lam > thr
    return TwoViResult(
        params=params,
        threshold=thr,
        label=label,
        report=report,
        n_dominant=n_dom,
        lambda_zero_extra=("E", "E") in report.equilibrium_set() and lam <= LAMBDA_TOL,
        notes=notes,
    )
