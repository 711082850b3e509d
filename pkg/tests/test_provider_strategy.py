import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import zoogle_table
from oracles import bisect, max_single_play_worth
from resgame import (
    Coalition,
    CompetitorOffer,
    CournotGame,
    DimensionMismatch,
    InvalidParameter,
    Stay,
    average_satisfaction,
    estimation_gap,
    loyalty_decision,
    max_service_count,
    min_cost_reduction,
    min_market_increase,
    remediation_plan,
    worth_by_size,
)
from resgame.game_model import exceeds

PAIR = Coalition.of(0, 1)


def offer(worth, coalition=PAIR):
    return CompetitorOffer(coalition, worth)


def per_member_offer(m):
    return [CompetitorOffer(Coalition.of(0), m)]


@pytest.mark.parametrize("n, expected", [(3, 16 / 3), (1, 16.0), (4, 4.0)])
def test_average_satisfaction(n, expected):
    game = CournotGame(n, 10, 2)
    assert average_satisfaction(game) == pytest.approx(expected, rel=1e-15)
    assert max_single_play_worth(10, 2) / n == pytest.approx(expected, rel=1e-9)


def test_min_cost_reduction_examples():
    game = CournotGame(3, 10, 5)
    dc = min_cost_reduction(game, [offer(8)])
    assert dc == pytest.approx(5 - (10 - math.sqrt(48)), rel=1e-12)
    assert dc == pytest.approx(1.9282, abs=1e-4)
    oracle = bisect(lambda d: average_satisfaction(game.replace(c=5 - d)) >= 4, 0.0, 5.0)
    assert dc == pytest.approx(oracle, abs=1e-9)

    assert min_cost_reduction(CournotGame(3, 10, 2), [offer(8)]) == 0.0
    assert min_cost_reduction(CournotGame(3, 10, 1), [offer(100, Coalition.of(0))]) is None


def test_min_market_increase_examples():
    game = CournotGame(3, 10, 2)
    da = min_market_increase(game, [offer(12)])
    assert da == pytest.approx(2 + math.sqrt(72) - 10, rel=1e-12)
    assert da == pytest.approx(0.4853, abs=1e-4)
    oracle = bisect(lambda d: average_satisfaction(game.replace(a=10 + d)) >= 6, 0.0, 10.0)
    assert da == pytest.approx(oracle, abs=1e-9)

    assert min_market_increase(game, [offer(8)]) == 0.0
    for c in (0.0, 3.7, 100.0):
        assert min_market_increase(CournotGame(1, c + 2, c), [offer(1, Coalition.of(0))]) == 0.0


@pytest.mark.parametrize("m, expected", [(4, 4), (16, 1), (17, None)])
def test_max_service_count(m, expected):
    assert max_service_count(10, 2, per_member_offer(m)) == expected
    feasible = [n for n in range(1, 100) if 64 / (4 * n) >= m]
    assert (max(feasible) if feasible else None) == expected


def test_max_service_count_edges():
    assert max_service_count(10, 2, [offer(0.0)]) == math.inf
    with pytest.raises(InvalidParameter):
        max_service_count(2, 2, [offer(1.0)])
    with pytest.raises(InvalidParameter):
        max_service_count(10, 2, [])


def test_estimation_gap(zoogle, zoogle_loyal):
    same = estimation_gap(zoogle, zoogle_table())
    assert same.max_abs_gap == 0
    assert same.worst_coalition == Coalition.of(0)

    report = estimation_gap(zoogle_loyal, zoogle)
    assert report.max_abs_gap == 0.5
    assert report.worst_coalition == Coalition.grand(3)
    assert len(report.per_coalition_gaps) == 7
    assert [g for c, g in report.per_coalition_gaps.items() if c != Coalition.grand(3)] == [0.0] * 6

    with pytest.raises(DimensionMismatch):
        estimation_gap(worth_by_size(2, [0, 1]), zoogle)


def test_estimation_gap_sign_and_ties():
    user = worth_by_size(2, [1.0, 3.0])
    provider = worth_by_size(2, [0.0, 4.0])
    report = estimation_gap(provider, user)
    assert report.per_coalition_gaps[Coalition.of(0)] == -1.0
    assert report.per_coalition_gaps[Coalition.of(0, 1)] == 1.0
    assert report.worst_coalition == Coalition.of(0)


def test_remediation_plan_examples():
    plan = remediation_plan(CournotGame(3, 10, 5), [offer(8)])
    assert plan.target_per_member == 4.0
    assert plan.delta_c == pytest.approx(1.9282, abs=1e-4)
    assert plan.delta_a == pytest.approx(plan.delta_c, rel=1e-12)
    assert plan.service_cap == 1
    assert plan.cost_ceiling < 10 and plan.market_floor > 5

    safe = remediation_plan(CournotGame(3, 10, 2), [offer(8)])
    assert safe.already_safe
    assert (safe.delta_c, safe.delta_a) == (0.0, 0.0)
    assert safe.service_cap >= 3

    mixed = remediation_plan(CournotGame(3, 10, 1), [offer(100, Coalition.of(0))])
    assert not mixed.cost_feasible
    assert mixed.market_feasible and mixed.delta_a > 0
    assert mixed.market_floor == pytest.approx(1 + math.sqrt(1200))


instances = st.builds(
    lambda n, c, margin, pairs: (CournotGame(n, c + margin, c), pairs),
    st.integers(1, 10),
    st.floats(0, 50),
    st.floats(0.1, 100),
    st.lists(st.tuples(st.integers(1, 10), st.floats(0.0, 3.0)), min_size=1, max_size=4),
)


def _offers(game, pairs):
    """Offers whose per-member worth is a multiple of the current ratio."""
    ratio = average_satisfaction(game)
    offers = []
    for size, scale in pairs:
        s = min(size, game.n)
        offers.append(CompetitorOffer(Coalition.first(s), s * scale * ratio))
    return offers


def _resized(offers, n):
    # keep each offer's per-member worth on a coalition that fits n services
    return [
        CompetitorOffer(Coalition.first(min(o.coalition.size, n)), o.per_member * min(o.coalition.size, n))
        for o in offers
    ]


@settings(max_examples=200, deadline=None)
@given(instances)
def test_levers_restore_and_are_minimal(instance):
    game, pairs = instance
    offers = _offers(game, pairs)
    dc = min_cost_reduction(game, offers)
    da = min_market_increase(game, offers)
    if dc is not None:
        fixed = game.replace(c=game.c - dc)
        assert loyalty_decision(fixed, offers).recommendation == Stay()
        if dc > 0:
            worse = game.replace(c=game.c - (dc - 1e-6 * (1 + dc)))
            assert loyalty_decision(worse, offers).violations
            assert da == pytest.approx(dc, rel=1e-9, abs=1e-9)
    fixed = game.replace(a=game.a + da)
    assert loyalty_decision(fixed, offers).recommendation == Stay()
    if da > 0:
        worse = game.replace(a=game.a + da - 1e-6 * (1 + da))
        assert loyalty_decision(worse, offers).violations


@settings(max_examples=200, deadline=None)
@given(instances)
def test_service_cap_brackets(instance):
    game, pairs = instance
    offers = _offers(game, pairs)
    cap = max_service_count(game.a, game.c, offers)
    m = max(o.per_member for o in offers)
    if cap is None:
        assert exceeds(m, average_satisfaction(game.replace(n=1)))
    elif cap == math.inf:
        assert not exceeds(m, 0.0)
    else:
        assert not exceeds(m, average_satisfaction(game.replace(n=cap)))
        assert exceeds(m, average_satisfaction(game.replace(n=cap + 1)))
        pruned = game.replace(n=cap)
        assert loyalty_decision(pruned, _resized(offers, cap)).recommendation == Stay()


@settings(max_examples=200, deadline=None)
@given(instances)
def test_closed_forms_match_bisection(instance):
    game, pairs = instance
    offers = _offers(game, pairs)
    m = max(o.per_member for o in offers)
    da = min_market_increase(game, offers)
    oracle_a = bisect(
        lambda d: average_satisfaction(game.replace(a=game.a + d)) >= m, 0.0, 10 * game.margin + 10
    ) if average_satisfaction(game) < m else 0.0
    assert da == pytest.approx(oracle_a, rel=1e-9, abs=1e-9)
    dc = min_cost_reduction(game, offers)
    if dc is not None and dc > 0:
        oracle_c = bisect(lambda d: average_satisfaction(game.replace(c=game.c - d)) >= m, 0.0, game.c)
        assert dc == pytest.approx(oracle_c, rel=1e-9, abs=1e-9)
