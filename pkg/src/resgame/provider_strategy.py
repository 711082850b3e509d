"""Provider remediation levers against known competitor offers.

The provider keeps users loyal while the average satisfaction
``(a - c)**2 / (4 n)`` is at least the best per-service offer ``m``. Each
lever (cut the cost ``c``, grow the environment ``a``, drop services) is
solved on its own in closed form. Infeasible levers are reported as ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .cournot import cooperative_worth
from .errors import DimensionMismatch, InvalidParameter
from .game_model import (
    CharacteristicFunction,
    Coalition,
    CompetitorOffer,
    CournotGame,
    exceeds,
    iter_coalitions,
)


@dataclass(frozen=True)
class RemediationPlan:
    target_per_member: float
    current_ratio: float
    cost_ceiling: float
    market_floor: float
    service_cap: Optional[Union[int, float]]
    delta_c: Optional[float]
    delta_a: float

    @property
    def cost_feasible(self) -> bool:
        return self.delta_c is not None

    @property
    def market_feasible(self) -> bool:
        return True

    @property
    def service_feasible(self) -> bool:
        return self.service_cap is not None

    @property
    def already_safe(self) -> bool:
        return not exceeds(self.target_per_member, self.current_ratio)


@dataclass(frozen=True)
class EstimationGapReport:
    max_abs_gap: float
    worst_coalition: Coalition
    per_coalition_gaps: dict


def average_satisfaction(game: CournotGame) -> float:
    """``v(N) / n = (a - c)**2 / (4 n)``."""
    return cooperative_worth(game) / game.n


def _target(offers: Sequence[CompetitorOffer]) -> float:
    if not offers:
        raise InvalidParameter("at least one competitor offer is required")
    return max(o.per_member for o in offers)


def _ratio(margin: float, n: int) -> float:
    return margin**2 / (4.0 * n)


def min_cost_reduction(game: CournotGame, offers: Sequence[CompetitorOffer]) -> Optional[float]:
    """Smallest cut ``dc >= 0`` in the unit cost restoring the core, or ``None``.

    ``None`` means the cost would have to go below zero.
    """
    if exceeds(_target(offers), average_satisfaction(game)):
        ceiling = game.a - 2.0 * math.sqrt(game.n * _target(offers))
        if ceiling < 0:
            return None
        return max(0.0, game.c - ceiling)
    return 0.0


def min_market_increase(game: CournotGame, offers: Sequence[CompetitorOffer]) -> float:
    """Smallest growth ``da >= 0`` of the environment size restoring the core."""
    if exceeds(_target(offers), average_satisfaction(game)):
        floor = game.c + 2.0 * math.sqrt(game.n * _target(offers))
        return max(0.0, floor - game.a)
    return 0.0


def max_service_count(
    a: float, c: float, offers: Sequence[CompetitorOffer]
) -> Optional[Union[int, float]]:
    """Largest number of services that keeps the core non-empty.

    Returns ``None`` when even a single service loses to the offers, and
    ``math.inf`` when no number of services would (every offer is worth zero,
    up to the comparison tolerance).
    """
    if not a > c:
        raise InvalidParameter(f"a must exceed c (a={a}, c={c})")
    m = _target(offers)
    margin = a - c
    if not exceeds(m, 0.0):
        return math.inf
    if exceeds(m, _ratio(margin, 1)):
        return None
    # the tie rule can move the boundary by many integers when the cap is
    # large, so bracket it and bisect: ratio(lo) passes, ratio(hi) fails
    lo = max(1, math.floor(margin**2 / (4.0 * m) * (1 - 1e-8)))
    if exceeds(m, _ratio(margin, lo)):
        lo = 1
    hi = lo + 1
    while not exceeds(m, _ratio(margin, hi)):
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if exceeds(m, _ratio(margin, mid)):
            hi = mid
        else:
            lo = mid
    return lo


def remediation_plan(game: CournotGame, offers: Sequence[CompetitorOffer]) -> RemediationPlan:
    m = _target(offers)
    root = 2.0 * math.sqrt(game.n * m)
    return RemediationPlan(
        target_per_member=m,
        current_ratio=average_satisfaction(game),
        cost_ceiling=game.a - root,
        market_floor=game.c + root,
        service_cap=max_service_count(game.a, game.c, offers),
        delta_c=min_cost_reduction(game, offers),
        delta_a=min_market_increase(game, offers),
    )


def estimation_gap(
    v_provider: CharacteristicFunction, v_user: CharacteristicFunction
) -> EstimationGapReport:
    """Signed gap ``v_provider(S) - v_user(S)`` over every coalition."""
    if v_provider.n != v_user.n:
        raise DimensionMismatch(
            f"provider estimates cover {v_provider.n} services, user worths {v_user.n}"
        )
    gaps = {}
    worst, worst_gap = None, -1.0
    for coalition in iter_coalitions(v_user.n):
        gap = v_provider.worth(coalition) - v_user.worth(coalition)
        gaps[coalition] = gap
        if abs(gap) > worst_gap:
            worst, worst_gap = coalition, abs(gap)
    return EstimationGapReport(worst_gap, worst, gaps)
