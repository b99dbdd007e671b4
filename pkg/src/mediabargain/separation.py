"""Content provision game between two independent providers and two platforms.

Each provider offers its premium package exclusively to platform 1 (``E1``),
exclusively to platform 2 (``E2``), or to both (``N``). Because the providers
are symmetric, a provider's payoff depends only on whether it matches the
rival's exclusive platform, which gives five distinct payoffs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import contracting
from .errors import ClassificationMismatch, DegenerateDenominator
from .games import EquilibriumReport, NormalFormGame, mixed_2x2_symmetric, pure_nash
from .hotelling import ContentAllocation
from .model import ModelParams, Strategy3, validate

STRATEGIES = tuple(s.value for s in Strategy3)
LAMBDA_TOL = 1e-9
PAYOFF_TOL = 1e-12


class RegionLabel(str, Enum):
    EO_EO = "Eo_Eo"
    ES_ES = "Es_Es"
    ES_ES_OR_N_N = "Es_Es_or_N_N"
    N_N = "N_N"
    ASYM_E_N = "Asym_E_N"
    BOUNDARY = "Boundary"


EXPECTED_EQUILIBRIA = {
    RegionLabel.EO_EO: frozenset({("E1", "E2"), ("E2", "E1")}),
    RegionLabel.ES_ES: frozenset({("E1", "E1"), ("E2", "E2")}),
    RegionLabel.ES_ES_OR_N_N: frozenset({("E1", "E1"), ("E2", "E2"), ("N", "N")}),
    RegionLabel.N_N: frozenset({("N", "N")}),
    RegionLabel.ASYM_E_N: frozenset({("E1", "N"), ("E2", "N"), ("N", "E1"), ("N", "E2")}),
}


@dataclass(frozen=True)
class SeparationPayoffs:
    """Provider payoffs by profile; the rival's strategy is named second."""

    pi_E_same: float  # both exclusive to the same platform
    pi_E_other: float  # exclusive to the platform the rival avoids
    pi_N_vs_E: float
    pi_E_vs_N: float
    pi_N_vs_N: float

    def as_tuple(self) -> tuple[float, ...]:
        return (self.pi_E_same, self.pi_E_other, self.pi_N_vs_E, self.pi_E_vs_N, self.pi_N_vs_N)


def preliminary_matrix(params: ModelParams) -> NormalFormGame:
    """Take-it-or-leave-it offers without advertising (r and lambda ignored)."""
    validate(params)
    a, b, t = params.alpha, params.beta, params.t
    s = a + b
    same = s * (6 * t + s) / (18 * t)
    other = s * (6 * t - s) / (18 * t)
    n_vs_e = (6 * s * t + b * b - a * a - 2 * a * b) / (18 * t)
    e_vs_n = 2 * b / 3
    n_vs_n = 2 * b / 3 - b * b / (9 * t)
    return _assemble(SeparationPayoffs(same, other, n_vs_e, e_vs_n, n_vs_n))


def _closed_payoffs(a, b, t, r, lam) -> SeparationPayoffs:
    s = a + b
    eq1 = lam * s * (6 * t + 3 * r + s) / (18 * t) + r / 2
    eq2 = lam * s * (6 * t - 3 * r - s) / (18 * t) + (1 / 2 + s / (6 * t)) * r
    eq3 = lam * (6 * s * t + b * b - a * a - 2 * a * b + 3 * (6 * t - s) * r) / (18 * t) + s * r / (6 * t)
    eq4 = lam * 2 * b / 3 + (1 / 2 + b / (6 * t)) * r
    eq5 = lam * (2 * b / 3 - b * b / (9 * t) + (1 - b / (3 * t)) * r) + b * r / (3 * t)
    return SeparationPayoffs(eq1, eq2, eq3, eq4, eq5)


def separation_payoffs(params: ModelParams) -> SeparationPayoffs:
    validate(params)
    p = params
    return _closed_payoffs(p.alpha, p.beta, p.t, p.r, p.lam)


# allocation realizing each payoff, with provider A as the focal firm
FOCAL_ALLOCATIONS = {
    "pi_E_same": ContentAllocation.of(a={1}, b={1}),
    "pi_E_other": ContentAllocation.of(a={2}, b={1}),
    "pi_N_vs_E": ContentAllocation.of(a={1, 2}, b={1}),
    "pi_E_vs_N": ContentAllocation.of(a={1}, b={1, 2}),
    "pi_N_vs_N": ContentAllocation.of(a={1, 2}, b={1, 2}),
}


def reconstruct_payoffs(params: ModelParams) -> SeparationPayoffs:
    """The five payoffs rebuilt from downstream outcomes and bargained fees."""
    owners = contracting.SEPARATION_OWNERS
    values = {
        name: contracting.market_outcome(params, alloc, owners).payoff("A")
        for name, alloc in FOCAL_ALLOCATIONS.items()
    }
    return SeparationPayoffs(**values)


def strategy_carriers(s: str) -> frozenset:
    return {"E1": frozenset({1}), "E2": frozenset({2}), "N": frozenset({1, 2})}[s]


def profile_allocation(row: str, col: str) -> ContentAllocation:
    return ContentAllocation(strategy_carriers(row), strategy_carriers(col))


def _assemble(pay: SeparationPayoffs) -> NormalFormGame:
    def own(mine: str, theirs: str) -> float:
        if mine == "N":
            return pay.pi_N_vs_N if theirs == "N" else pay.pi_N_vs_E
        if theirs == "N":
            return pay.pi_E_vs_N
        return pay.pi_E_same if mine == theirs else pay.pi_E_other

    cells = {(r, c): (own(r, c), own(c, r)) for r in STRATEGIES for c in STRATEGIES}
    return NormalFormGame.from_cells(STRATEGIES, STRATEGIES, cells)


def assemble_general_game(params: ModelParams) -> NormalFormGame:
    """3x3 game over (E1, E2, N) filled from the five closed-form payoffs."""
    return _assemble(separation_payoffs(params))


def first_principles_game(params: ModelParams) -> NormalFormGame:
    """3x3 game with every cell rebuilt from primitives, provider A on rows."""
    validate(params)
    owners = contracting.SEPARATION_OWNERS
    cells = {}
    for r in STRATEGIES:
        for c in STRATEGIES:
            out = contracting.market_outcome(params, profile_allocation(r, c), owners)
            cells[(r, c)] = (out.payoff("A"), out.payoff("B"))
    return NormalFormGame.from_cells(STRATEGIES, STRATEGIES, cells)


@dataclass(frozen=True)
class Thresholds:
    lambda_tilde: float
    lambda_hat: float
    lambda_bar: float
    hat_condition: float
    bar_condition: float

    @property
    def hat_interior(self) -> bool:
        return self.hat_condition < 0

    @property
    def bar_interior(self) -> bool:
        return self.bar_condition < 0

    @property
    def gate_holds(self) -> bool:
        """Maintained ordering assumption: bar_condition >= 0 implies hat_condition >= 0."""
        return not (self.bar_condition >= 0 and self.hat_condition < 0)

    @property
    def ordering_holds(self) -> bool:
        """Cutoffs ordered as lambda_tilde < lambda_bar <= lambda_hat.

        The gate alone does not guarantee this: with both conditions negative the
        uncapped lambda_bar can exceed 1 while lambda_hat stays below it, which
        opens an asymmetric (E,N) band above lambda_hat.
        """
        return self.gate_holds and self.lambda_tilde < self.lambda_bar <= self.lambda_hat

    def to_dict(self) -> dict:
        return {
            "lambda_tilde": self.lambda_tilde,
            "lambda_hat": self.lambda_hat,
            "lambda_bar": self.lambda_bar,
            "hat_condition": self.hat_condition,
            "bar_condition": self.bar_condition,
        }


def thresholds(params: ModelParams) -> Thresholds:
    """Bargaining-power cutoffs separating the equilibrium regions.

    ``lambda_hat`` and ``lambda_bar`` take the value 1 whenever their sign
    condition is nonnegative; the sign test runs before the formula. Values
    above 1 are capped there, since the switch then never happens.
    """
    validate(params)
    a, b, t, r = params.alpha, params.beta, params.t, params.r
    denom_tilde = 2 * a + 2 * b + 6 * r
    lam_tilde = 0.0 if denom_tilde == 0 else 3 * r / denom_tilde
    hat_cond = a * (a + 2 * b) - 3 * r * (3 * t - a - b)
    bar_cond = b * b - 3 * r * (3 * t - b)

    def cutoff(cond, num):
        if cond >= 0:
            return 1.0
        denom = 2 * num - 2 * (cond + num)  # = -2 * cond > 0
        if denom == 0:
            raise DegenerateDenominator("threshold denominator vanished with a negative sign condition")
        return min(1.0, num / denom)

    lam_hat = cutoff(hat_cond, 3 * r * (3 * t - a - b))
    lam_bar = cutoff(bar_cond, 3 * r * (3 * t - b))
    return Thresholds(lam_tilde, lam_hat, lam_bar, hat_cond, bar_cond)


def collapsed_game(params: ModelParams, exclusive: str = "same") -> NormalFormGame:
    """Symmetric 2x2 game over (E, N) with E read as E(s) or E(o)."""
    pay = separation_payoffs(params)
    e_vs_e = pay.pi_E_same if exclusive == "same" else pay.pi_E_other
    cells = {
        ("E", "E"): (e_vs_e, e_vs_e),
        ("E", "N"): (pay.pi_E_vs_N, pay.pi_N_vs_E),
        ("N", "E"): (pay.pi_N_vs_E, pay.pi_E_vs_N),
        ("N", "N"): (pay.pi_N_vs_N, pay.pi_N_vs_N),
    }
    return NormalFormGame.from_cells(("E", "N"), ("E", "N"), cells)


def mixed_probability_closed_form(params: ModelParams) -> float:
    """Weight on E in the symmetric mixed equilibrium between (E(s), E(s)) and (N, N)."""
    a, b, t, r, lam = params.alpha, params.beta, params.t, params.r, params.lam
    num = 2 * (b * b - 3 * r * (3 * t - b)) * lam + 3 * r * (3 * t - b)
    den = (2 * b * b - 2 * a * a - 4 * a * b - 6 * r * a) * lam + 3 * r * a
    return num / den


def _scale(pay: SeparationPayoffs) -> float:
    return max(1.0, max(abs(x) for x in pay.as_tuple()))


def best_reply_sets(params: ModelParams, tol: float | None = None) -> tuple[set, set]:
    """Best collapsed replies of a provider to a rival playing E, and to N.

    Replies are drawn from {"Es", "Eo", "N"} against E and {"E", "N"} against N,
    computed from payoff differences with ties up to ``tol``.
    """
    pay = separation_payoffs(params)
    tol = PAYOFF_TOL * _scale(pay) if tol is None else tol
    vs_e = {"Es": pay.pi_E_same, "Eo": pay.pi_E_other, "N": pay.pi_N_vs_E}
    vs_n = {"E": pay.pi_E_vs_N, "N": pay.pi_N_vs_N}
    top_e, top_n = max(vs_e.values()), max(vs_n.values())
    return (
        {k for k, x in vs_e.items() if x >= top_e - tol},
        {k for k, x in vs_n.items() if x >= top_n - tol},
    )


def es_weakly_dominant(params: ModelParams, tol: float | None = None) -> bool:
    """True when matching the rival's exclusive platform is always a best reply."""
    vs_e, vs_n = best_reply_sets(params, tol)
    return "Es" in vs_e and "E" in vs_n


def es_strictly_dominant(params: ModelParams, tol: float | None = None) -> bool:
    vs_e, vs_n = best_reply_sets(params, tol)
    return vs_e == {"Es"} and vs_n == {"E"}


def analytic_replies(params: ModelParams, th: Thresholds | None = None) -> tuple[str, str]:
    """Best replies to E and to N read off the thresholds alone.

    Indifference resolves toward the exclusive offer, and toward the same
    platform between the two exclusive offers.
    """
    th = th or thresholds(params)
    lam = params.lam
    if lam < th.lambda_tilde:
        vs_e = "Eo"
    elif th.hat_condition >= 0 or lam <= th.lambda_hat:
        vs_e = "Es"
    else:
        vs_e = "N"
    vs_n = "E" if th.bar_condition >= 0 or lam <= th.lambda_bar else "N"
    return vs_e, vs_n


_LABELS = {
    ("Eo", "E"): RegionLabel.EO_EO,
    ("Es", "E"): RegionLabel.ES_ES,
    ("Es", "N"): RegionLabel.ES_ES_OR_N_N,
    ("N", "N"): RegionLabel.N_N,
    ("N", "E"): RegionLabel.ASYM_E_N,
}


@dataclass
class RegionResult:
    params: ModelParams
    thresholds: Thresholds
    region: RegionLabel
    report: EquilibriumReport
    tie_break_region: RegionLabel | None = None
    mixed_probability: float | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "thresholds": self.thresholds.to_dict(),
            "region": self.region.value,
            "tie_break_region": None if self.tie_break_region is None else self.tie_break_region.value,
            "pure_equilibria": [list(c) for c in self.report.pure_equilibria],
            "ties": [list(c) for c in self.report.ties],
            "mixed": None if self.mixed_probability is None else {"prob_E": self.mixed_probability},
            "notes": list(self.notes),
        }


def _near_ties(params: ModelParams, th: Thresholds, replies: tuple[str, str], pay: SeparationPayoffs) -> list[str]:
    lam = params.lam
    notes = []
    if abs(lam - th.lambda_tilde) <= LAMBDA_TOL:
        notes.append("lambda at lambda_tilde")
    if th.hat_interior and th.lambda_hat < 1 and abs(lam - th.lambda_hat) <= LAMBDA_TOL:
        notes.append("lambda at lambda_hat")
    if th.bar_interior and th.lambda_bar < 1 and abs(lam - th.lambda_bar) <= LAMBDA_TOL:
        notes.append("lambda at lambda_bar")
    tol = 2 * PAYOFF_TOL * _scale(pay)
    vs_e = {"Es": pay.pi_E_same, "Eo": pay.pi_E_other, "N": pay.pi_N_vs_E}
    vs_n = {"E": pay.pi_E_vs_N, "N": pay.pi_N_vs_N}
    best_e, best_n = replies
    for k, x in vs_e.items():
        if k != best_e and abs(vs_e[best_e] - x) <= tol:
            notes.append(f"payoff tie {best_e}~{k} against E")
    for k, x in vs_n.items():
        if k != best_n and abs(vs_n[best_n] - x) <= tol:
            notes.append(f"payoff tie {best_n}~{k} against N")
    return notes


def classify_region(params: ModelParams) -> RegionResult:
    """Region label from the thresholds, checked against enumerated equilibria.

    Raises:
        ClassificationMismatch: the label and the equilibria of the 3x3 game
            disagree; this signals a bug and is never swallowed.
    """
    th = thresholds(params)
    pay = separation_payoffs(params)
    game = _assemble(pay)
    replies = analytic_replies(params, th)
    label = _LABELS.get(replies)
    if label is None:
        raise ClassificationMismatch(f"replies {replies} match no region", params=params.to_dict())
    notes = _near_ties(params, th, replies, pay)
    scale = _scale(pay)
    if notes:
        # report every weakly best cell at a tie; payoff gaps move with lambda at these slopes
        slope = max(
            (params.alpha + params.beta) * (6 * params.r + 2 * params.alpha + 2 * params.beta),
            2 * abs(th.hat_condition),
            2 * abs(th.bar_condition),
        ) / (18 * params.t)
        report = pure_nash(game, tol=LAMBDA_TOL * slope + 2 * PAYOFF_TOL * scale)
        expected = EXPECTED_EQUILIBRIA[label]
        if not expected <= report.equilibrium_set():
            raise ClassificationMismatch(
                f"tie-break region {label.value} not among weak equilibria {sorted(report.pure_equilibria)}",
                params=params.to_dict(),
            )
        result = RegionResult(params, th, RegionLabel.BOUNDARY, report, tie_break_region=label, notes=notes)
    else:
        report = pure_nash(game, tol=PAYOFF_TOL * scale)
        if report.equilibrium_set() != EXPECTED_EQUILIBRIA[label]:
            raise ClassificationMismatch(
                f"region {label.value} expects {sorted(EXPECTED_EQUILIBRIA[label])}, "
                f"enumeration found {sorted(report.pure_equilibria)}",
                params=params.to_dict(),
            )
        result = RegionResult(params, th, label, report, tie_break_region=label)
    if label is RegionLabel.ES_ES_OR_N_N and not notes:
        mixed = mixed_2x2_symmetric(collapsed_game(params, "same"), tol=1e-9 * scale)
        if mixed is not None:
            result.mixed_probability = mixed[0][0]
    return result


def region_sequence(labels) -> list:
    """Distinct consecutive labels, ignoring boundary points."""
    seq = []
    for label in labels:
        if label is RegionLabel.BOUNDARY:
            continue
        if not seq or seq[-1] is not label:
            seq.append(label)
    return seq
