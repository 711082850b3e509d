"""Resource usage modeled as a cooperative Cournot game.

A user's interactions with the ``n`` services of one resource are treated as
Cournot players. The package computes their equilibria and coalition worths,
tests the per-capita core condition to decide whether the user should
partially leave, and solves the provider's remediation problems.
"""

from importlib import resources

from .core_analysis import (
    CoreViolation,
    LoyaltyReport,
    PartialSwitch,
    Stay,
    core_nonempty,
    deviation_threshold,
    find_violations,
    loyalty_decision,
)
from .cournot import (
    EquilibriumProfile,
    Method,
    best_response,
    coalition_worth,
    cooperative_worth,
    differentiated_cooperative_worth,
    differentiated_equilibrium,
    induced_characteristic_function,
    iterate_best_response,
    noncooperative_equilibrium,
)
from .errors import (
    DimensionMismatch,
    DuplicateCoalition,
    InvalidOffer,
    InvalidParameter,
    MissingCoalition,
    NoConvergence,
    ParseError,
    ResourceGameError,
    TooManyServices,
    ValidationError,
)
from .game_model import (
    CharacteristicFunction,
    Coalition,
    CompetitorOffer,
    CournotGame,
    Mode,
    build_symmetric_game,
    enumerate_coalitions,
    worth_by_size,
    worth_from_table,
)
from .provider_strategy import (
    EstimationGapReport,
    RemediationPlan,
    average_satisfaction,
    estimation_gap,
    max_service_count,
    min_cost_reduction,
    min_market_increase,
    remediation_plan,
)
from .report import AnalysisOptions, Report, extract_scenario, render_report, run_analysis
from .scenario import Scenario, dump_scenario, load_scenario, parse_scenario

__version__ = "0.1.0"


def fixture_text(name: str) -> str:
    """Text of a bundled scenario, e.g. ``fixture_text("zoogle_plus")``."""
    return resources.files(__name__).joinpath("data", f"{name}.scn").read_text()


def load_fixture(name: str) -> Scenario:
    return parse_scenario(fixture_text(name))
