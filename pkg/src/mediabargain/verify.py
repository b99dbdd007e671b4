"""Seeded oracle suite: every closed form checked against an independent computation.

The report depends only on the seed and the number of draws, so two runs with
the same arguments serialise to identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import analysis, contracting, one_vi, separation, two_vi
from .bargaining import BargainInputs, nash_fee, oracle_nash_fee
from .errors import ModelError
from .hotelling import all_allocations, downstream_equilibrium, oracle_price_equilibrium
from .model import ModelParams, is_viable


def sample_params(rng: np.random.Generator, r: float | None = None, lam_positive: bool = False) -> ModelParams:
    """One viable parameter draw; ``r`` fixes advertising revenue when given."""
    while True:
        t = rng.uniform(0.5, 2.0)
        a, b = rng.uniform(0.0, 3 * t, size=2)
        lam = rng.uniform(0.0, 1.0)
        if lam_positive and lam == 0.0:
            continue
        p = ModelParams(
            v=float(rng.uniform(2.0, 10.0)),
            alpha=float(a),
            beta=float(b),
            t=float(t),
            r=float(rng.uniform(0.0, 2.0)) if r is None else float(r),
            lam=float(lam),
        )
        if is_viable(p):
            return p


def sample_bargain(rng: np.random.Generator) -> BargainInputs:
    """Bargaining instance with positive joint surplus and lambda strictly inside (0, 1)."""
    while True:
        gu, gd = rng.uniform(-2.0, 4.0, size=2)
        lam = rng.uniform(0.01, 0.99)
        if gu + gd > 0.05:
            return BargainInputs.from_gains(float(gu), float(gd), float(lam))


@dataclass
class Check:
    name: str
    tolerance: float
    passed: int = 0
    failed: int = 0
    max_error: float = 0.0
    failures: list = field(default_factory=list)

    def record(self, error: float, context=None) -> None:
        self.max_error = max(self.max_error, float(error))
        if error <= self.tolerance:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append({"error": float(error), "context": context})

    def flag(self, ok: bool, context=None) -> None:
        self.record(0.0 if ok else float("inf"), context)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "failed": self.failed,
            "max_error": self.max_error,
            "failures": self.failures,
        }


def _max_diff(g1, g2) -> float:
    return float(max(np.abs(g1.row_payoffs - g2.row_payoffs).max(), np.abs(g1.col_payoffs - g2.col_payoffs).max()))


def hotelling_check(rng, draws: int) -> Check:
    chk = Check("hotelling_oracle", 2e-4)
    for _ in range(draws):
        p = sample_params(rng)
        for alloc in all_allocations():
            c, o = downstream_equilibrium(p, alloc), oracle_price_equilibrium(p, alloc)
            err = max(
                abs(c.p1 - o.p1), abs(c.p2 - o.p2), abs(c.q1 - o.q1),
                abs(c.gross_profit1 - o.gross_profit1), abs(c.gross_profit2 - o.gross_profit2),
            )
            chk.record(err, {"params": p.to_dict(), "allocation": str(alloc)})
    return chk


def nash_check(rng, draws: int) -> Check:
    chk = Check("nash_fee_oracle", 2e-5)
    for _ in range(draws):
        inp = sample_bargain(rng)
        chk.record(abs(nash_fee(inp) - oracle_nash_fee(inp)), {"gains": [inp.upstream_gain, inp.downstream_gain], "lambda": inp.lam})
    return chk


def reconstruction_checks(rng, draws: int) -> list[Check]:
    sep = Check("separation_reconstruction", 1e-9)
    two = Check("two_vi_reconstruction", 1e-9)
    one = Check("one_vi_reconstruction", 1e-9)
    acc = Check("one_vi_accounting_identity", 1e-9)
    for _ in range(draws):
        p = sample_params(rng, lam_positive=True)
        ctx = p.to_dict()
        sep.record(_max_diff(separation.assemble_general_game(p), separation.first_principles_game(p)), ctx)
        two.record(_max_diff(two_vi.two_vi_game(p), two_vi.first_principles_game(p)), ctx)
        one.record(_max_diff(one_vi.one_vi_game(p), one_vi.first_principles_game(p)), ctx)
        for profile, cell in one_vi.one_vi_cells(p).items():
            total = cell.pi_A1 + cell.pi_B + cell.pi_2
            surplus = contracting.industry_surplus(p, one_vi.profile_allocation(*profile))
            acc.record(abs(total - surplus), ctx)
    return [sep, two, one, acc]


def classification_checks(rng, draws: int) -> list[Check]:
    sep = Check("separation_classification", 0.0)
    two = Check("two_vi_classification", 0.0)
    one = Check("one_vi_classification", 0.0)
    for _ in range(draws):
        p = sample_params(rng)
        for chk, fn, q in (
            (sep, separation.classify_region, p),
            (two, two_vi.classify_two_vi, p),
            (one, one_vi.classify_one_vi_r0, sample_params(rng, r=0.0, lam_positive=True)),
        ):
            try:
                fn(q)
                chk.flag(True)
            except ModelError as exc:
                chk.flag(False, exc.to_dict())
    return [sep, two, one]


def welfare_check(rng, draws: int) -> Check:
    chk = Check("welfare_integration", 1e-7)
    for _ in range(draws):
        p = sample_params(rng, r=0.0)
        for label, alloc in (("E(s),E(s)", "Es_Es"), ("N,E2", "N_E2")):
            structure = "separation" if alloc == "Es_Es" else "one-vi"
            rep = analysis.welfare(p, structure, label)
            num = analysis.consumer_surplus_numeric(p, analysis._FORM_ALLOCATION[alloc])
            chk.record(abs(rep.consumer_surplus - num), p.to_dict())
    return chk


def run_verify(seed: int = 42, draws: int = 1000) -> dict:
    """Run every oracle check; the slow price oracle uses a tenth of the draws."""
    rng = np.random.default_rng(seed)
    checks = [hotelling_check(rng, max(1, draws // 10)), nash_check(rng, draws)]
    checks += reconstruction_checks(rng, draws)
    checks += classification_checks(rng, draws)
    checks.append(welfare_check(rng, max(1, draws // 10)))
    passed = sum(c.passed for c in checks)
    failed = sum(c.failed for c in checks)
    return {
        "seed": seed,
        "draws": draws,
        "passed": passed,
        "failed": failed,
        "ok": failed == 0,
        "checks": [c.to_dict() for c in checks],
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)
