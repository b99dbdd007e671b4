"""Cross-structure comparisons: welfare, merger incentives and parameter sweeps.

Everything here assumes no advertising revenue (r = 0) unless stated. Merger
comparisons are profit arithmetic on equilibria computed by the structure
modules; no conclusion is hard-coded.
"""

from __future__ import annotations

import csv
import functools
import io
import itertools
import json
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect
from scipy.stats import qmc

from . import contracting, one_vi, separation, two_vi
from .games import pure_nash
from .errors import HypothesisViolated, LabelNotEquilibrium, ModelError, UnknownLabel
from .hotelling import ContentAllocation, downstream_equilibrium
from .model import PARAM_FIELDS, ModelParams, VerticalStructure, is_viable, validate

PAYOFF_TOL = 1e-12

# platform 1 carries both packages; the baseline for every merger story
SEPARATION_BASELINE = ContentAllocation.of({1}, {1})
TWO_VI_LABELS = (("N", "E"), ("E", "N"))

# B merged with platform 2 is the mirror image of A merged with platform 1
MIRROR_B_STRATEGY = {"E1": "E2", "EB2": "EA1", "N": "N"}


def _require_r0(params: ModelParams) -> None:
    validate(params)
    if params.r != 0:
        raise HypothesisViolated("this comparison assumes no advertising revenue (r = 0)", ["r_zero"])


def parse_profile(label) -> tuple[str, str]:
    """Normalise labels such as ``"(N,E_2)"``, ``"N_E2"`` or ``("N", "E2")``."""
    if isinstance(label, (tuple, list)):
        parts = [str(x) for x in label]
    else:
        s = str(label).strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        parts = s.split(",") if "," in s else s.split("_", 1)
    if len(parts) != 2:
        raise UnknownLabel(f"cannot read profile label {label!r}")
    return tuple(p.strip().replace("_", "").replace("(s)", "s").replace("(o)", "o") for p in parts)


def _fmt(profile) -> str:
    return f"({profile[0]},{profile[1]})"


# ---------------------------------------------------------------- welfare

# which closed form applies to which equilibrium
_WELFARE_FORMS = {
    VerticalStructure.SEPARATION: {("Es", "Es"): "Es_Es"},
    VerticalStructure.ONE_VI: {("E", "EA1"): "Es_Es", ("N", "E2"): "N_E2", ("N", "EA1"): "N_E2"},
    VerticalStructure.TWO_VI: {("N", "E"): "N_E2", ("E", "N"): "N_E2"},
}
_FORM_ALLOCATION = {
    "Es_Es": ContentAllocation.of({1}, {1}),
    "N_E2": ContentAllocation.of({1, 2}, {2}),
}


@dataclass
class WelfareReport:
    consumer_surplus: float
    social_welfare: float
    structure: VerticalStructure
    equilibrium_label: str
    formula: str
    gross_profits: tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "structure": self.structure.value,
            "equilibrium_label": self.equilibrium_label,
            "formula": self.formula,
            "consumer_surplus": self.consumer_surplus,
            "social_welfare": self.social_welfare,
            "gross_profits": list(self.gross_profits),
        }


def cs_exclusive_same(params: ModelParams) -> float:
    v, t, s = params.v, params.t, params.alpha + params.beta
    return (s * s + 18 * s * t + 9 * t * (4 * v - 5 * t)) / (36 * t)


def sw_exclusive_same(params: ModelParams) -> float:
    v, t, s = params.v, params.t, params.alpha + params.beta
    return (5 * s * s + 18 * s * t + 9 * t * (4 * v - t)) / (36 * t)


def cs_one_supplied(params: ModelParams) -> float:
    v, a, b, t = params.v, params.alpha, params.beta, params.t
    return (b * b + 18 * (2 * a + b) * t + 9 * t * (4 * v - 5 * t)) / (36 * t)


def sw_one_supplied(params: ModelParams) -> float:
    v, a, b, t = params.v, params.alpha, params.beta, params.t
    return (5 * b * b + 18 * (2 * a + b) * t + 9 * t * (4 * v - t)) / (36 * t)


def cs_difference(params: ModelParams) -> float:
    a, b, t = params.alpha, params.beta, params.t
    return a * (18 * t - a - 2 * b) / (36 * t)


def sw_difference(params: ModelParams) -> float:
    a, b, t = params.alpha, params.beta, params.t
    return a * (18 * t - 5 * a - 10 * b) / (36 * t)


def consumer_surplus_numeric(params: ModelParams, alloc: ContentAllocation, points: int = 100_001) -> float:
    """Trapezoid integral of net utility, split at the indifferent consumer."""
    out = downstream_equilibrium(params, alloc)
    t, q = params.t, out.q1
    x1 = np.linspace(0.0, q, points)
    x2 = np.linspace(q, 1.0, points)
    left = np.trapezoid(out.v1 - t * x1 - out.p1, x1)
    right = np.trapezoid(out.v2 - t * (1 - x2) - out.p2, x2)
    return float(left + right)


def welfare(params: ModelParams, structure, equilibrium_label) -> WelfareReport:
    """Consumer surplus and social welfare at a named equilibrium (r = 0).

    Raises:
        UnknownLabel: the label is not an equilibrium covered by the closed forms.
    """
    _require_r0(params)
    structure = VerticalStructure.parse(structure)
    profile = parse_profile(equilibrium_label)
    form = _WELFARE_FORMS[structure].get(profile)
    if form is None:
        raise UnknownLabel(
            f"no welfare formula for {_fmt(profile)} under {structure.value}",
            known=[_fmt(k) for k in _WELFARE_FORMS[structure]],
        )
    if form == "Es_Es":
        cs, sw = cs_exclusive_same(params), sw_exclusive_same(params)
    else:
        cs, sw = cs_one_supplied(params), sw_one_supplied(params)
    out = downstream_equilibrium(params, _FORM_ALLOCATION[form])
    return WelfareReport(
        consumer_surplus=cs,
        social_welfare=sw,
        structure=structure,
        equilibrium_label=_fmt(profile),
        formula=form,
        gross_profits=(out.gross_profit1, out.gross_profit2),
    )


# ---------------------------------------------------------------- mergers


@dataclass
class MergerReport:
    merging: str
    pre_profits: dict
    post_profit_merged: float
    difference: float
    incentive: bool
    tie: bool
    threshold: float | None = None
    labels: dict = field(default_factory=dict)
    outcome: str | None = None
    preferred_outcome: str | None = None
    paths: list = field(default_factory=list)
    experimental: bool = False

    def to_dict(self) -> dict:
        return {
            "merging": self.merging,
            "pre_profits": dict(self.pre_profits),
            "pre_sum": sum(self.pre_profits.values()),
            "post_profit_merged": self.post_profit_merged,
            "difference": self.difference,
            "incentive": self.incentive,
            "tie": self.tie,
            "threshold": self.threshold,
            "labels": dict(self.labels),
            "outcome": self.outcome,
            "preferred_outcome": self.preferred_outcome,
            "paths": list(self.paths),
            "experimental": self.experimental,
        }


def _compare(pre: dict, post: float) -> tuple[float, bool, bool]:
    diff = post - sum(pre.values())
    tol = PAYOFF_TOL * max(1.0, abs(post), *(abs(x) for x in pre.values()))
    return diff, diff > tol, abs(diff) <= tol


@functools.lru_cache(maxsize=4096)
def separation_baseline(params: ModelParams) -> contracting.MarketOutcome:
    """Both providers exclusive to platform 1, the separated equilibrium without ads."""
    return contracting.market_outcome(params, SEPARATION_BASELINE, contracting.SEPARATION_OWNERS)


def _weak_equilibria(game) -> frozenset:
    scale = max(1.0, float(np.abs(game.row_payoffs).max()), float(np.abs(game.col_payoffs).max()))
    return pure_nash(game, tol=1e-9 * scale).equilibrium_set()


@functools.lru_cache(maxsize=4096)
def _one_vi_cells(params: ModelParams) -> dict:
    return one_vi.one_vi_cells(params)


@functools.lru_cache(maxsize=4096)
def one_vi_equilibria(params: ModelParams) -> frozenset:
    return _weak_equilibria(one_vi.one_vi_game(params))


@functools.lru_cache(maxsize=4096)
def two_vi_equilibria(params: ModelParams) -> frozenset:
    """Two-integration equilibria; (N, N) at lambda = 1 is dropped as fragile."""
    eq = _weak_equilibria(two_vi.two_vi_game(params))
    if params.lam >= 1:
        eq = eq - {("N", "N")}
    return eq


def merger_threshold(params: ModelParams) -> float:
    """Closed-form bargaining weight above which A and 1 gain from merging."""
    s, b, t = params.alpha + params.beta, params.beta, params.t
    return s * (6 * t + s) / (s * (6 * t + s) + 2 * b * b)


def merger_A1(params: ModelParams, expected_one_vi_label="N,E2") -> MergerReport:
    """Merger of A with platform 1, starting from both exclusives at platform 1.

    Raises:
        LabelNotEquilibrium: the named one-integration profile is not an
            equilibrium at these parameters.
    """
    _require_r0(params)
    profile = parse_profile(expected_one_vi_label)
    if profile not in {("N", "E2"), ("N", "EA1")}:
        raise UnknownLabel(f"merger_A1 expects (N,E2) or (N,EA1), got {_fmt(profile)}")
    if profile not in one_vi_equilibria(params):
        raise LabelNotEquilibrium(
            f"{_fmt(profile)} is not a one-integration equilibrium", params=params.to_dict()
        )
    base = separation_baseline(params)
    pre = {"A": base.payoff("A"), "1": base.payoff("1")}
    post = _one_vi_cells(params)[profile].pi_A1
    diff, inc, tie = _compare(pre, post)
    return MergerReport(
        merging="A+1",
        pre_profits=pre,
        post_profit_merged=post,
        difference=diff,
        incentive=inc,
        tie=tie,
        threshold=merger_threshold(params) if profile == ("N", "E2") else None,
        labels={"one_vi": _fmt(profile)},
    )


def merger_A1_gap(params: ModelParams, expected_one_vi_label="N,E2") -> float:
    return merger_A1(params, expected_one_vi_label).difference


def bisect_merger_threshold(params: ModelParams, xtol: float = 1e-13) -> float:
    """Locate the merger boundary in lambda from the profit comparison alone."""
    f = lambda lam: merger_A1_gap(params.with_(lam=lam))  # noqa: E731
    return float(bisect(f, 1e-9, 1.0, xtol=xtol, rtol=4 * np.finfo(float).eps))


def _one_vi_profile(params: ModelParams, label) -> tuple[str, str]:
    profile = parse_profile(label)
    if profile not in one_vi_equilibria(params):
        raise LabelNotEquilibrium(
            f"{_fmt(profile)} is not a one-integration equilibrium", params=params.to_dict()
        )
    return profile


def _two_vi_profile(params: ModelParams, label) -> tuple[str, str]:
    profile = parse_profile(label)
    if profile not in TWO_VI_LABELS:
        raise UnknownLabel(f"two-integration label must be (N,E) or (E,N), got {_fmt(profile)}")
    if profile not in two_vi_equilibria(params):
        raise LabelNotEquilibrium(
            f"{_fmt(profile)} is not a two-integration equilibrium", params=params.to_dict()
        )
    return profile


def counter_merger_B2(params: ModelParams, expected_two_vi_label, one_vi_label="N,E2") -> MergerReport:
    """Merger of B with platform 2 once A and 1 are already integrated.

    In a two-integration label the first entry is A1's strategy and the second
    is B2's, so under (E, N) the merged B2 supplies its content to A1.
    """
    _require_r0(params)
    ov = _one_vi_profile(params, one_vi_label)
    tv = _two_vi_profile(params, expected_two_vi_label)
    cell = _one_vi_cells(params)[ov]
    pre = {"B": cell.pi_B, "2": cell.pi_2}
    post = two_vi.two_vi_game(params).payoff(*tv)[1]
    diff, inc, tie = _compare(pre, post)
    return MergerReport(
        merging="B+2",
        pre_profits=pre,
        post_profit_merged=post,
        difference=diff,
        incentive=inc,
        tie=tie,
        labels={"one_vi": _fmt(ov), "two_vi": _fmt(tv)},
    )


def _final_A1_first(params: ModelParams, ov, tv) -> dict:
    base = separation_baseline(params)
    pre = {"A": base.payoff("A"), "1": base.payoff("1")}
    counter = counter_merger_B2(params, tv, ov)
    if counter.incentive:
        final, structure = two_vi.two_vi_game(params).payoff(*tv)[0], "two-vi"
    else:
        final, structure = _one_vi_cells(params)[ov].pi_A1, "one-vi"
    diff, inc, tie = _compare(pre, final)
    return {
        "one_vi": _fmt(ov),
        "two_vi": _fmt(tv),
        "counter_merger": counter.incentive,
        "pre_sum": sum(pre.values()),
        "final_profit": final,
        "difference": diff,
        "incentive": inc,
        "tie": tie,
        "outcome": structure if inc else "no-merger",
    }


def anticipated_merger_A1(params: ModelParams, one_vi_label, expected_two_vi_label) -> MergerReport:
    """A and 1 decide whether to merge while foreseeing B and 2's reply."""
    _require_r0(params)
    ov = _one_vi_profile(params, one_vi_label)
    tv = _two_vi_profile(params, expected_two_vi_label)
    path = _final_A1_first(params, ov, tv)
    base = separation_baseline(params)
    return MergerReport(
        merging="A+1",
        pre_profits={"A": base.payoff("A"), "1": base.payoff("1")},
        post_profit_merged=path["final_profit"],
        difference=path["difference"],
        incentive=path["incentive"],
        tie=path["tie"],
        labels={"one_vi": path["one_vi"], "two_vi": path["two_vi"]},
        outcome=path["outcome"],
        paths=[path],
    )


def _pareto_select(cells: dict, candidates) -> list:
    """Keep the payoff-dominant equilibrium if one exists, else all of them."""
    cands = sorted(candidates)
    for c in cands:
        if all(
            cells[c][0] >= cells[d][0] and cells[c][1] >= cells[d][1] and cells[c] != cells[d]
            for d in cands
            if d != c
        ):
            return [c]
    return cands


def hypothesis_margin(params: ModelParams) -> float:
    """Positive when A1 prefers in-house content against an exclusive offer to it."""
    return one_vi.keep_in_house_condition(params)


def _summarise(paths: list) -> str:
    outcomes = {p["outcome"] for p in paths}
    return outcomes.pop() if len(outcomes) == 1 else "ambiguous"


def eventual_structure_A1_first(params: ModelParams, one_vi_label=None, two_vi_label=None) -> MergerReport:
    """Merger of A and 1 followed by a possible counter-merger of B and 2.

    Unnamed labels are resolved by keeping a payoff-dominant one-integration
    equilibrium when it exists and otherwise trying every equilibrium; the
    outcome is ``ambiguous`` when the tried paths disagree. The path the
    merging pair likes best is reported as ``preferred_outcome``.
    """
    _require_r0(params)
    cells = {k: (c.pi_A1, c.pi_B) for k, c in _one_vi_cells(params).items()}
    eq = one_vi_equilibria(params)
    ovs = [_one_vi_profile(params, one_vi_label)] if one_vi_label is not None else _pareto_select(cells, eq)
    tv_eq = two_vi_equilibria(params)
    tvs = [_two_vi_profile(params, two_vi_label)] if two_vi_label is not None else [x for x in TWO_VI_LABELS if x in tv_eq]
    paths = [_final_A1_first(params, ov, tv) for ov in ovs for tv in tvs]
    base = separation_baseline(params)
    best = max(paths, key=lambda p: p["difference"])
    return MergerReport(
        merging="A+1",
        pre_profits={"A": base.payoff("A"), "1": base.payoff("1")},
        post_profit_merged=best["final_profit"],
        difference=best["difference"],
        incentive=any(p["incentive"] for p in paths),
        tie=all(p["tie"] for p in paths),
        labels={"one_vi": [p["one_vi"] for p in paths], "two_vi": [p["two_vi"] for p in paths]},
        outcome=_summarise(paths),
        preferred_outcome=best["outcome"],
        paths=paths,
    )


def mirrored_one_vi_cells(params: ModelParams) -> dict:
    """One integration with B owning platform 2: (B2 strategy, A strategy) -> (B2, A, platform 1)."""
    cells = _one_vi_cells(params)
    return {
        (x, y): (cells[(x, orig)].pi_A1, cells[(x, orig)].pi_B, cells[(x, orig)].pi_2)
        for x in one_vi.A1_STRATEGIES
        for y, orig in MIRROR_B_STRATEGY.items()
    }


def _mirror_equilibria(params: ModelParams) -> list:
    back = {v: k for k, v in MIRROR_B_STRATEGY.items()}
    return sorted((x, back[y]) for x, y in one_vi_equilibria(params))


def _final_B2_first(params: ModelParams, mv, tv) -> dict:
    base = separation_baseline(params)
    pre_b2 = {"B": base.payoff("B"), "2": base.payoff("2")}
    b2_one, a_one, p1_one = mirrored_one_vi_cells(params)[mv]
    pre_a1 = {"A": a_one, "1": p1_one}
    a1_two, b2_two = two_vi.two_vi_game(params).payoff(*tv)
    _, counter, _ = _compare(pre_a1, a1_two)
    final = b2_two if counter else b2_one
    diff, inc, tie = _compare(pre_b2, final)
    return {
        "one_vi": _fmt(mv),
        "two_vi": _fmt(tv),
        "counter_merger": counter,
        "pre_sum": sum(pre_b2.values()),
        "final_profit": final,
        "difference": diff,
        "incentive": inc,
        "tie": tie,
        "outcome": ("two-vi" if counter else "one-vi") if inc else "no-merger",
    }


def merger_B2_first(params: ModelParams, one_vi_label=None, two_vi_label=None) -> MergerReport:
    """Merger of B with platform 2 (no premium content) and A's counter-merger.

    One-integration labels here are (B2 strategy, A strategy) with A choosing
    ``E1`` (exclusive to independent platform 1), ``EB2`` or ``N``. Unnamed
    labels are resolved as in :func:`eventual_structure_A1_first`.

    Raises:
        HypothesisViolated: the keep-in-house condition is not strictly positive.
    """
    _require_r0(params)
    if hypothesis_margin(params) <= 0:
        raise HypothesisViolated(
            "requires alpha^2 + 2 alpha beta - beta^2 > 6t(alpha - beta)",
            ["keep_in_house_condition"],
            margin=hypothesis_margin(params),
        )
    mcells = mirrored_one_vi_cells(params)
    eq = _mirror_equilibria(params)
    if one_vi_label is not None:
        mv = parse_profile(one_vi_label)
        if mv not in eq:
            raise LabelNotEquilibrium(f"{_fmt(mv)} is not an equilibrium with B and 2 merged")
        mvs = [mv]
    else:
        mvs = _pareto_select({k: v[:2] for k, v in mcells.items()}, eq)
    tv_eq = two_vi_equilibria(params)
    tvs = [_two_vi_profile(params, two_vi_label)] if two_vi_label is not None else [x for x in TWO_VI_LABELS if x in tv_eq]
    paths = [_final_B2_first(params, mv, tv) for mv in mvs for tv in tvs]
    base = separation_baseline(params)
    best = max(paths, key=lambda p: p["difference"])
    return MergerReport(
        merging="B+2",
        pre_profits={"B": base.payoff("B"), "2": base.payoff("2")},
        post_profit_merged=best["final_profit"],
        difference=best["difference"],
        incentive=any(p["incentive"] for p in paths),
        tie=all(p["tie"] for p in paths),
        labels={"one_vi": [p["one_vi"] for p in paths], "two_vi": [p["two_vi"] for p in paths]},
        outcome=_summarise(paths),
        preferred_outcome=best["outcome"],
        paths=paths,
    )


# ---------------------------------------------------------------- sweeps

QUANTITIES = ("region", "threshold", "welfare", "merger")


def grid_values(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid, rounded so that decimal steps land exactly."""
    if step <= 0:
        raise ValueError("step must be positive")
    n = int(round((stop - start) / step)) + 1
    return [round(start + i * step, 12) for i in range(n)]


def _region_columns(p: ModelParams, structure: VerticalStructure) -> dict:
    if structure is VerticalStructure.SEPARATION:
        res = separation.classify_region(p)
        th = res.thresholds
        return {
            "region": res.region.value,
            "tie_break_region": None if res.tie_break_region is None else res.tie_break_region.value,
            "equilibria": " ".join(_fmt(c) for c in sorted(res.report.pure_equilibria)),
            "lambda_tilde": th.lambda_tilde,
            "lambda_hat": th.lambda_hat,
            "lambda_bar": th.lambda_bar,
        }
    if structure is VerticalStructure.TWO_VI:
        res = two_vi.classify_two_vi(p)
        return {
            "region": res.label,
            "equilibria": " ".join(_fmt(c) for c in sorted(res.report.pure_equilibria)),
            "two_vi_threshold": res.threshold,
        }
    res = one_vi.classify_one_vi_r0(p) if p.r == 0 else one_vi.classify_one_vi_general(p)
    return {
        "region": res.label,
        "equilibria": " ".join(_fmt(c) for c in sorted(res.report.pure_equilibria)),
        "condition": one_vi.keep_in_house_condition(p),
    }


def _threshold_columns(p: ModelParams) -> dict:
    validate(p)
    th = separation.thresholds(p)
    return {
        "lambda_tilde": th.lambda_tilde,
        "lambda_hat": th.lambda_hat,
        "lambda_bar": th.lambda_bar,
        "two_vi_threshold": two_vi.exclusivity_threshold(p),
        "merger_threshold": merger_threshold(p) if p.alpha + p.beta > 0 else None,
    }


def _welfare_columns(p: ModelParams) -> dict:
    _require_r0(p)
    return {
        "cs_es_es": cs_exclusive_same(p),
        "sw_es_es": sw_exclusive_same(p),
        "cs_n_e2": cs_one_supplied(p),
        "sw_n_e2": sw_one_supplied(p),
        "cs_difference": cs_difference(p),
        "sw_difference": sw_difference(p),
    }


def _merger_columns(p: ModelParams) -> dict:
    _require_r0(p)
    row = {
        "merger_threshold": merger_threshold(p),
        "merger_A1_N_E2": merger_A1(p, "N,E2").incentive,
        "merger_A1_N_EA1": merger_A1(p, "N,EA1").incentive if ("N", "EA1") in one_vi_equilibria(p) else None,
        "eventual_A1_first": eventual_structure_A1_first(p).outcome,
    }
    row["eventual_B2_first"] = merger_B2_first(p).outcome if hypothesis_margin(p) > 0 else None
    return row


def _row(p: ModelParams, quantity: str, structure: VerticalStructure) -> dict:
    if quantity == "region":
        return _region_columns(p, structure)
    if quantity == "threshold":
        return _threshold_columns(p)
    if quantity == "welfare":
        return _welfare_columns(p)
    return _merger_columns(p)


def sweep(base: ModelParams, axes, quantity: str = "region", structure=VerticalStructure.SEPARATION) -> list[dict]:
    """Evaluate ``quantity`` on the product grid of ``axes``.

    Args:
        base: parameters for fields not varied.
        axes: sequence of ``(field, values)``; one or two axes in practice, the
            first varying slowest.
        quantity: one of ``region``, ``threshold``, ``welfare``, ``merger``.
        structure: vertical structure used by ``region``.

    Returns:
        One dict per grid point in grid order. A point that fails carries its
        error code and message in ``error``/``message`` and the sweep goes on.
    """
    if quantity not in QUANTITIES:
        raise UnknownLabel(f"unknown sweep quantity {quantity!r}", known=list(QUANTITIES))
    structure = VerticalStructure.parse(structure)
    axes = [(name, list(values)) for name, values in axes]
    rows = []
    for combo in itertools.product(*(values for _, values in axes)):
        p = base.with_(**{name: x for (name, _), x in zip(axes, combo)})
        row = p.to_dict()
        try:
            row.update(_row(p, quantity, structure))
            row["error"] = None
        except ModelError as exc:
            row["error"] = exc.code
            row["message"] = str(exc)
        rows.append(row)
    return rows


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _columns(rows: list[dict]) -> list[str]:
    cols = list(PARAM_FIELDS)
    for row in rows:
        for k in row:
            if k not in cols:
                cols.append(k)
    return cols


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    cols = _columns(rows)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in cols])
    return buf.getvalue()


def rows_to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2)


# ---------------------------------------------------------------- default grid

DEFAULT_BOUNDS = {"lambda": (0.0, 1.0), "alpha": (0.0, 2.0), "beta": (0.0, 2.0), "t": (0.25, 2.0)}


def default_grid(draws: int = 10_000, seed: int = 0) -> list[ModelParams]:
    """Latin-hypercube draws over lambda, alpha, beta and t with r = 0, viable only.

    Lambda is mapped to (0, 1] so the merger comparisons are defined.
    """
    sampler = qmc.LatinHypercube(d=4, seed=seed)
    lo = np.array([b[0] for b in DEFAULT_BOUNDS.values()])
    hi = np.array([b[1] for b in DEFAULT_BOUNDS.values()])
    pts = qmc.scale(sampler.random(draws), lo, hi)
    out = []
    for lam, a, b, t in pts:
        p = ModelParams(v=10.0, alpha=float(a), beta=float(b), t=float(t), r=0.0, lam=float(1.0 - lam))
        if is_viable(p) and p.alpha > 0 and p.beta > 0 and p.lam > 0:
            out.append(p)
    return out


def merger_statistics(grid: list[ModelParams], low: float = 0.1, high: float = 0.9) -> dict:
    """Observed fractions behind the qualitative merger claims.

    Counter-merger claims are evaluated where the first merger actually happens
    and are split by the one-integration equilibrium in place. Multi-path
    outcomes are scored both strictly (all paths agree) and by the path the
    merging pair prefers.
    """
    keys = ["half_no_merger"]
    for ov in ("N_E2", "N_EA1"):
        keys += [
            f"counter_merger_E_N|{ov}",
            f"no_counter_merger_N_E|{ov}",
            f"no_anticipated_merger_E_N|{ov}",
            f"anticipated_merger_N_E|{ov}",
        ]
    for mode in ("strict", "preferred"):
        keys += [f"high_lambda_no_merger_B2_first|{mode}", f"low_lambda_two_vi_B2_first|{mode}"]
    counts = {k: [0, 0] for k in keys}

    def tally(key, ok):
        counts[key][0] += bool(ok)
        counts[key][1] += 1

    for p in grid:
        tv_eq = two_vi_equilibria(p)
        for ov in (("N", "E2"), ("N", "EA1")):
            if ov not in one_vi_equilibria(p) or not merger_A1(p, ov).incentive:
                continue
            tag = "_".join(ov)
            if ("E", "N") in tv_eq:
                tally(f"counter_merger_E_N|{tag}", counter_merger_B2(p, ("E", "N"), ov).incentive)
                tally(f"no_anticipated_merger_E_N|{tag}", not anticipated_merger_A1(p, ov, ("E", "N")).incentive)
            if ("N", "E") in tv_eq:
                tally(f"no_counter_merger_N_E|{tag}", not counter_merger_B2(p, ("N", "E"), ov).incentive)
                tally(f"anticipated_merger_N_E|{tag}", anticipated_merger_A1(p, ov, ("N", "E")).incentive)
        if hypothesis_margin(p) > 0:
            tally("half_no_merger", eventual_structure_A1_first(p.with_(lam=0.5)).outcome == "no-merger")
            if p.lam >= high or p.lam <= low:
                rep = merger_B2_first(p)
                want, key = ("no-merger", "high_lambda_no_merger_B2_first") if p.lam >= high else ("two-vi", "low_lambda_two_vi_B2_first")
                tally(f"{key}|strict", rep.outcome == want)
                tally(f"{key}|preferred", rep.preferred_outcome == want)
    return {
        k: {"hits": h, "total": n, "fraction": (h / n if n else None), "review": bool(n) and h / n < 0.9}
        for k, (h, n) in counts.items()
    }
