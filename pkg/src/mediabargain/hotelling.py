"""Downstream subscription competition on the Hotelling line.

Platform 1 sits at 0, platform 2 at 1, consumers of mass one are uniform on
[0, 1] and all subscribe. Prices follow the closed-form Bertrand-Hotelling
equilibrium; :func:`oracle_price_equilibrium` recomputes them by iterated best
response on a price lattice for validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import NoConvergence, ViabilityViolated
from .model import ModelParams

PLATFORMS = (1, 2)
FIRMS = ("A", "B")


@dataclass(frozen=True)
class ContentAllocation:
    """Which platforms carry each content provider's premium package."""

    carriers_a: frozenset = frozenset()
    carriers_b: frozenset = frozenset()

    def __post_init__(self):
        for name in ("carriers_a", "carriers_b"):
            carriers = frozenset(getattr(self, name))
            if not carriers <= set(PLATFORMS):
                raise ValueError(f"{name} must be a subset of {{1, 2}}, got {sorted(carriers)}")
            object.__setattr__(self, name, carriers)

    @classmethod
    def of(cls, a: Iterable[int] = (), b: Iterable[int] = ()) -> "ContentAllocation":
        return cls(frozenset(a), frozenset(b))

    @classmethod
    def from_counts(cls, platform1_premia: int, platform2_premia: int) -> "ContentAllocation":
        """Some allocation with the given premium counts (A fills first)."""
        counts = {1: platform1_premia, 2: platform2_premia}
        if any(n not in (0, 1, 2) for n in counts.values()):
            raise ValueError(f"premia counts must be in {{0, 1, 2}}, got {counts}")
        return cls(
            frozenset(d for d, n in counts.items() if n >= 1),
            frozenset(d for d, n in counts.items() if n == 2),
        )

    def carriers(self, firm: str) -> frozenset:
        return {"A": self.carriers_a, "B": self.carriers_b}[firm]

    def with_carriers(self, firm: str, carriers: Iterable[int]) -> "ContentAllocation":
        if firm == "A":
            return ContentAllocation(frozenset(carriers), self.carriers_b)
        return ContentAllocation(self.carriers_a, frozenset(carriers))

    def premia(self, platform: int) -> int:
        return int(platform in self.carriers_a) + int(platform in self.carriers_b)

    @property
    def platform1_premia(self) -> int:
        return self.premia(1)

    @property
    def platform2_premia(self) -> int:
        return self.premia(2)

    def swapped(self) -> "ContentAllocation":
        """Mirror image with the two platforms exchanged."""
        flip = {1: 2, 2: 1}
        return ContentAllocation(
            frozenset(flip[d] for d in self.carriers_a),
            frozenset(flip[d] for d in self.carriers_b),
        )

    def __str__(self) -> str:
        def fmt(s):
            return "{" + ",".join(str(d) for d in sorted(s)) + "}"

        return f"A->{fmt(self.carriers_a)} B->{fmt(self.carriers_b)}"


@dataclass(frozen=True)
class DownstreamOutcome:
    v1: float
    v2: float
    p1: float
    p2: float
    q1: float
    q2: float
    gross_profit1: float
    gross_profit2: float

    def price(self, d: int) -> float:
        return self.p1 if d == 1 else self.p2

    def share(self, d: int) -> float:
        return self.q1 if d == 1 else self.q2

    def profit(self, d: int) -> float:
        return self.gross_profit1 if d == 1 else self.gross_profit2


def gross_utility(params: ModelParams, premia_count: int) -> float:
    if premia_count == 0:
        return params.v
    if premia_count == 1:
        return params.v + params.alpha
    if premia_count == 2:
        return params.v + params.alpha + params.beta
    raise ValueError(f"premia count must be 0, 1 or 2, got {premia_count}")


def _closed_form(t, v1, v2):
    # plain arithmetic only, so symbolic inputs go through unchanged
    dv = v1 - v2
    p1 = t + dv / 3
    p2 = t - dv / 3
    q1 = 1 / 2 + dv / (6 * t)
    q2 = 1 - q1
    return DownstreamOutcome(v1, v2, p1, p2, q1, q2, p1 * p1 / (2 * t), p2 * p2 / (2 * t))


def downstream_equilibrium(params: ModelParams, alloc: ContentAllocation) -> DownstreamOutcome:
    v1 = gross_utility(params, alloc.platform1_premia)
    v2 = gross_utility(params, alloc.platform2_premia)
    if abs(v1 - v2) >= 3 * params.t:
        raise ViabilityViolated(
            f"utility gap {abs(v1 - v2):g} >= 3t drives a platform out of the market",
            ["viability"],
        )
    return _closed_form(params.t, v1, v2)


def ad_reach(alloc: ContentAllocation, outcome: DownstreamOutcome, firm: str) -> float:
    """Mass of subscribers who see ``firm``'s premium content."""
    carriers = alloc.carriers(firm)
    if carriers == set(PLATFORMS):
        return 1.0
    return sum(outcome.share(d) for d in carriers)


def marginal_consumer(v1, v2, p1, p2, t):
    x = 0.5 + (v1 - v2 - p1 + p2) / (2 * t)
    return np.clip(x, 0.0, 1.0)


def _lattice_best_response(own_v, rival_v, rival_p, t, step, k_max):
    """Index k maximizing k*step * share on the lattice 0..k_max (coarse to fine)."""
    base = 0.5 + (own_v - rival_v + rival_p) / (2 * t)
    slope = step / (2 * t)
    lo, hi = 0, k_max
    stride = max(1, k_max // 128)
    while True:
        ks = np.arange(lo, hi + 1, stride)
        share = np.minimum(np.maximum(base - slope * ks, 0.0), 1.0)
        best = int(ks[int(np.argmax(ks * share))])
        if stride == 1:
            return best
        lo, hi = max(0, best - stride), min(k_max, best + stride)
        stride = max(1, stride // 32)


def oracle_price_equilibrium(
    params: ModelParams,
    alloc: ContentAllocation,
    grid_step: float = 1e-4,
    max_iters: int = 10_000,
    damping: float = 0.5,
) -> DownstreamOutcome:
    """Price equilibrium by damped best-response iteration on a price lattice.

    Prices live on multiples of ``grid_step`` in [0, max(v + alpha + beta,
    2t + alpha + beta)]. Each round both platforms move a ``damping`` fraction
    of the way (at least one lattice step) toward their grid best response.
    Iteration stops at an exact lattice fixed point; revisiting a state or
    exhausting ``max_iters`` raises :class:`NoConvergence`.
    """
    if grid_step <= 0:
        raise ValueError("grid_step must be positive")
    t = params.t
    v1 = gross_utility(params, alloc.platform1_premia)
    v2 = gross_utility(params, alloc.platform2_premia)
    p_max = max(params.v + params.alpha + params.beta, 2 * t + params.alpha + params.beta)
    k_max = int(np.ceil(p_max / grid_step))

    def toward(k, target):
        if k == target:
            return k
        move = int(round(damping * (target - k)))
        if move == 0:
            move = 1 if target > k else -1
        return k + move

    k1 = k2 = 0
    seen = set()
    for _ in range(max_iters):
        br1 = _lattice_best_response(v1, v2, k2 * grid_step, t, grid_step, k_max)
        br2 = _lattice_best_response(v2, v1, k1 * grid_step, t, grid_step, k_max)
        if br1 == k1 and br2 == k2:
            break
        if (k1, k2) in seen:
            raise NoConvergence(f"best-response iteration cycled at prices {(k1 * grid_step, k2 * grid_step)}")
        seen.add((k1, k2))
        k1, k2 = toward(k1, br1), toward(k2, br2)
    else:
        raise NoConvergence(f"no lattice fixed point within {max_iters} iterations")

    p1, p2 = k1 * grid_step, k2 * grid_step
    q1 = float(marginal_consumer(v1, v2, p1, p2, t))
    q2 = 1.0 - q1
    return DownstreamOutcome(v1, v2, p1, p2, q1, q2, p1 * q1, p2 * q2)


def all_allocations() -> list[ContentAllocation]:
    """Every assignment of carrier sets to the two content providers (16 in total)."""
    subsets = [frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})]
    return [ContentAllocation(a, b) for a in subsets for b in subsets]
