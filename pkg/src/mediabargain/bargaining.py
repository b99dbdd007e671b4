"""Generalized Nash bargaining over a lump-sum content fee."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoSurplus


@dataclass(frozen=True)
class BargainInputs:
    """Agreement and disagreement payoffs of one upstream/downstream pair.

    Payoffs exclude the fee ``l`` being negotiated, which the downstream side
    pays to the upstream side.
    """

    b_u: float
    b_d: float
    n_u: float
    n_d: float
    lam: float

    @classmethod
    def from_gains(cls, upstream_gain: float, downstream_gain: float, lam: float) -> "BargainInputs":
        return cls(b_u=upstream_gain, b_d=downstream_gain, n_u=0.0, n_d=0.0, lam=lam)

    @property
    def upstream_gain(self) -> float:
        return self.b_u - self.n_u

    @property
    def downstream_gain(self) -> float:
        return self.b_d - self.n_d

    @property
    def joint_surplus(self) -> float:
        return self.upstream_gain + self.downstream_gain

    @property
    def gains_exist(self) -> bool:
        return self.joint_surplus >= 0


def fee_from_gains(upstream_gain, downstream_gain, lam):
    # upstream takes lam of the downstream gain and gives back (1 - lam) of its own
    return lam * downstream_gain - (1 - lam) * upstream_gain


def nash_fee(inp: BargainInputs) -> float:
    """Lump-sum fee maximizing (b_U + l - n_U)^lam (b_D - l - n_D)^(1 - lam).

    Defined for any inputs, including negative gains, since the payoff
    derivations apply it wherever a pair trades.
    """
    if not 0 <= inp.lam <= 1:
        raise ValueError(f"bargaining weight must lie in [0, 1], got {inp.lam}")
    return fee_from_gains(inp.upstream_gain, inp.downstream_gain, inp.lam)


def _log_nash_product(fees, gu, gd, lam):
    up = gu + fees
    down = gd - fees
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.zeros_like(fees)
        if lam > 0:
            val = val + lam * np.log(np.maximum(up, 0.0))
        if lam < 1:
            val = val + (1 - lam) * np.log(np.maximum(down, 0.0))
    return np.where(np.isnan(val), -np.inf, val)


def oracle_nash_fee(inp: BargainInputs, grid_step: float = 1e-5) -> float:
    """Grid maximizer of the Nash product over l in [-(b_U - n_U), b_D - n_D].

    The log Nash product is concave, so a coarse-to-fine search over the
    lattice ``-(b_U - n_U) + k * grid_step`` returns the lattice maximizer.
    """
    gu, gd, lam = inp.upstream_gain, inp.downstream_gain, inp.lam
    if not gu + gd > 0:
        raise NoSurplus(f"joint surplus {gu + gd:g} is not positive")
    lo_fee = -gu
    k_max = int(np.floor((gu + gd) / grid_step))
    lo, hi = 0, k_max
    stride = max(1, k_max // 64)
    while True:
        ks = np.arange(lo, hi + 1, stride)
        vals = _log_nash_product(lo_fee + ks * grid_step, gu, gd, lam)
        if np.all(np.isneginf(vals)):
            # every interior point is -inf only for a boundary optimum
            best = hi if lam == 1 else lo
        else:
            best = int(ks[int(np.argmax(vals))])
        if stride == 1:
            break
        lo, hi = max(0, best - stride), min(k_max, best + stride)
        stride = max(1, stride // 16)
    fee = lo_fee + best * grid_step
    # the right end of the interval may fall between lattice points
    if lam == 1 and gd - fee < grid_step:
        fee = gd
    return float(fee)
