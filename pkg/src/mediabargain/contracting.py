"""Payoffs rebuilt from primitives: downstream outcome, ad reach and bargained fees.

A market is described by who owns each unit (content providers ``"A"``/``"B"``
and platforms ``1``/``2``) and by where each premium package is carried. Every
package carried by a platform under different ownership is traded through one
bilateral Nash bargain. While a pair bargains, all other trades are taken as
concluded, and the disagreement point follows the threat of replacement:

==========================  =============================================
content carried by          disagreement outcome for the pair (u, d)
==========================  =============================================
d only (exclusive)          u's package goes exclusively to the other platform
both platforms              u's package stays only on the other platform
==========================  =============================================

Gains are measured on gross payoffs (platform subscription profit plus
advertising revenue of owned content); fees are lump sums and do not enter
them. This module is independent of the closed-form payoff tables, which are
checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bargaining import fee_from_gains
from .hotelling import ContentAllocation, _closed_form, gross_utility
from .model import ModelParams

SEPARATION_OWNERS = {"A": "A", "B": "B", 1: "1", 2: "2"}
TWO_VI_OWNERS = {"A": "A1", 1: "A1", "B": "B2", 2: "B2"}
ONE_VI_OWNERS = {"A": "A1", 1: "A1", "B": "B", 2: "2"}
# mirror image of ONE_VI_OWNERS: B merged with the platform lacking content
ONE_VI_B2_OWNERS = {"A": "A", 1: "1", "B": "B2", 2: "B2"}

DISAGREEMENT_RULES = {
    "exclusive": "switch the package exclusively to the other platform",
    "non-exclusive": "withdraw the package from the bargaining partner only",
}


@dataclass(frozen=True)
class Fee:
    payer: str
    payee: str
    amount: float
    content: str
    platform: int

    def to_dict(self) -> dict:
        return {
            "payer": self.payer,
            "payee": self.payee,
            "amount": self.amount,
            "content": self.content,
            "platform": self.platform,
        }


@dataclass(frozen=True)
class MarketOutcome:
    alloc: ContentAllocation
    payoffs: dict
    fees: tuple
    gross: dict

    def payoff(self, player: str) -> float:
        return self.payoffs[player]


def _outcome(params: ModelParams, alloc: ContentAllocation):
    return _closed_form(
        params.t,
        gross_utility(params, alloc.platform1_premia),
        gross_utility(params, alloc.platform2_premia),
    )


def _reach(alloc, outcome, firm):
    carriers = alloc.carriers(firm)
    if len(carriers) == 2:
        return 1
    return sum(outcome.share(d) for d in carriers)


def gross_values(params: ModelParams, alloc: ContentAllocation, owners: dict) -> dict:
    """Fee-free payoff of every player: own platforms' profits plus ad revenue."""
    out = _outcome(params, alloc)
    values = {player: 0 for player in set(owners.values())}
    for d in (1, 2):
        values[owners[d]] = values[owners[d]] + out.profit(d)
    for firm in ("A", "B"):
        values[owners[firm]] = values[owners[firm]] + params.r * _reach(alloc, out, firm)
    return values


def disagreement(alloc: ContentAllocation, firm: str, platform: int) -> ContentAllocation:
    carriers = alloc.carriers(firm)
    other = 3 - platform
    if carriers == {platform}:
        return alloc.with_carriers(firm, {other})
    return alloc.with_carriers(firm, carriers - {platform})


def bargained_fee(params: ModelParams, alloc: ContentAllocation, owners: dict, firm: str, platform: int) -> Fee:
    upstream, downstream = owners[firm], owners[platform]
    agree = gross_values(params, alloc, owners)
    threat = gross_values(params, disagreement(alloc, firm, platform), owners)
    amount = fee_from_gains(
        agree[upstream] - threat[upstream],
        agree[downstream] - threat[downstream],
        params.lam,
    )
    return Fee(payer=downstream, payee=upstream, amount=amount, content=firm, platform=platform)


def market_outcome(params: ModelParams, alloc: ContentAllocation, owners: dict) -> MarketOutcome:
    """Net payoffs of every player once all cross-owner trades are bargained."""
    gross = gross_values(params, alloc, owners)
    fees = []
    for firm in ("A", "B"):
        for d in sorted(alloc.carriers(firm)):
            if owners[firm] != owners[d]:
                fees.append(bargained_fee(params, alloc, owners, firm, d))
    payoffs = dict(gross)
    for fee in fees:
        payoffs[fee.payee] = payoffs[fee.payee] + fee.amount
        payoffs[fee.payer] = payoffs[fee.payer] - fee.amount
    return MarketOutcome(alloc=alloc, payoffs=payoffs, fees=tuple(fees), gross=gross)


def industry_surplus(params: ModelParams, alloc: ContentAllocation):
    """Subscription revenue plus advertising revenue of both packages."""
    out = _outcome(params, alloc)
    return (
        out.gross_profit1
        + out.gross_profit2
        + params.r * (_reach(alloc, out, "A") + _reach(alloc, out, "B"))
    )
