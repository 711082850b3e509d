"""Core non-emptiness and the user's stay / partial-switch decision.

The core here is the per-capita test: no non-empty proper coalition ``S`` may
earn more per service than the grand coalition, ``v(S)/|S| <= v(N)/n``.
Ties count as non-violations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .cournot import grand_coalition_worth
from .errors import InvalidOffer, InvalidParameter
from .game_model import (
    ABS_TOL,
    REL_TOL,
    CharacteristicFunction,
    Coalition,
    CompetitorOffer,
    CournotGame,
    _check_enumerable,
    coalition_sizes,
    exceeds,
)


@dataclass(frozen=True)
class CoreViolation:
    coalition: Coalition
    per_member_worth: float
    per_member_baseline: float
    surplus: float


@dataclass(frozen=True)
class Stay:
    def __str__(self) -> str:
        return "stay"


@dataclass(frozen=True)
class PartialSwitch:
    coalition: Coalition

    def __str__(self) -> str:
        return f"partial_switch {self.coalition}"


Recommendation = Union[Stay, PartialSwitch]


@dataclass(frozen=True)
class LoyaltyReport:
    core_nonempty: bool
    baseline: float
    violations: tuple[CoreViolation, ...]
    recommendation: Recommendation


def _ranking_key(v: CoreViolation):
    return (-v.surplus, v.coalition.size, v.coalition.members)


def _violation_mask(per_member: np.ndarray, baseline: float) -> np.ndarray:
    # vectorized form of game_model.exceeds
    scale = np.maximum(np.abs(per_member), abs(baseline))
    return per_member - baseline > np.maximum(REL_TOL * scale, ABS_TOL)


def core_nonempty(cf: CharacteristicFunction) -> bool:
    _check_enumerable(cf.n)
    n = cf.n
    if n == 1:
        return True
    baseline = cf.grand_worth / n
    if cf.symmetric:
        return not any(exceeds(cf.by_size[s - 1] / s, baseline) for s in range(1, n))
    sizes = coalition_sizes(n)[:-1]
    per_member = cf.worth_array()[:-1] / sizes
    return not bool(_violation_mask(per_member, baseline).any())


def find_violations(cf: CharacteristicFunction) -> list[CoreViolation]:
    """Proper coalitions earning strictly more per member than the grand coalition.

    Sorted by descending surplus, then smaller coalition, then bitmask.
    """
    _check_enumerable(cf.n)
    n = cf.n
    if n == 1:
        return []
    baseline = cf.grand_worth / n
    sizes = coalition_sizes(n)[:-1]
    worths = cf.worth_array()[:-1]
    per_member = worths / sizes
    hits = np.flatnonzero(_violation_mask(per_member, baseline))
    found = [
        CoreViolation(
            Coalition(int(i) + 1),
            float(per_member[i]),
            baseline,
            float(per_member[i]) - baseline,
        )
        for i in hits
    ]
    found.sort(key=_ranking_key)
    return found


def _check_offers(offers: Iterable[CompetitorOffer], n: int) -> list[CompetitorOffer]:
    offers = list(offers)
    for offer in offers:
        if offer.coalition.max_index >= n:
            raise InvalidOffer(
                f"offer on {offer.coalition} references a service outside 0..{n - 1}"
            )
    return offers


def loyalty_decision(
    resource_worth: Union[CharacteristicFunction, CournotGame],
    offers: Sequence[CompetitorOffer] = (),
) -> LoyaltyReport:
    """Compare what the user earns per service now against the alternatives.

    With a :class:`CournotGame` the baseline is the cooperative grand-coalition
    worth divided by ``n`` and only the competitor offers are candidates. With
    a characteristic function the baseline is ``v(N)/n`` and the candidates are
    the function's own proper coalitions together with the offers; an offer
    and a table entry for the same coalition count once, at the larger worth.
    """
    if isinstance(resource_worth, CournotGame):
        n = resource_worth.n
        baseline = grand_coalition_worth(resource_worth) / n
        candidates: dict[Coalition, float] = {}
    elif isinstance(resource_worth, CharacteristicFunction):
        n = resource_worth.n
        baseline = resource_worth.grand_worth / n
        candidates = {v.coalition: v.per_member_worth for v in find_violations(resource_worth)}
    else:
        raise InvalidParameter("resource_worth must be a CharacteristicFunction or CournotGame")

    for offer in _check_offers(offers, n):
        pm = offer.per_member
        if exceeds(pm, baseline) and pm > candidates.get(offer.coalition, -np.inf):
            candidates[offer.coalition] = pm

    violations = sorted(
        (CoreViolation(s, pm, baseline, pm - baseline) for s, pm in candidates.items()),
        key=_ranking_key,
    )
    recommendation = PartialSwitch(violations[0].coalition) if violations else Stay()
    return LoyaltyReport(not violations, baseline, tuple(violations), recommendation)


def deviation_threshold(game: CournotGame, s: int) -> float:
    """Smallest worth an offer on ``s`` services must strictly beat, ``s (a-c)**2 / (4n)``."""
    if game.gamma is not None:
        raise InvalidParameter("deviation_threshold covers the homogeneous game only")
    if isinstance(s, bool) or int(s) != s or not 1 <= s <= game.n:
        raise InvalidParameter(f"s must lie in 1..{game.n}, got {s}")
    return s * game.margin**2 / (4.0 * game.n)
