"""Run the analyses a scenario asks for and render the result as text.

Two renderings are produced. ``table`` is for people. ``machine`` is one
``key = value`` pair per line with fixed key names, numbers at 12
significant digits, and the canonical scenario echoed at the end as
``scenario[i]`` lines so a report can be re-run from its own output.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

from . import cournot
from .core_analysis import LoyaltyReport, PartialSwitch, deviation_threshold, loyalty_decision
from .cournot import EquilibriumProfile
from .errors import ValidationError
from .game_model import CharacteristicFunction
from .provider_strategy import (
    EstimationGapReport,
    RemediationPlan,
    estimation_gap,
    remediation_plan,
)
from .scenario import Scenario, dump_scenario, parse_scenario

FORMAT_TAG = "resgame-report/1"


@dataclass(frozen=True)
class AnalysisOptions:
    equilibrium: bool = True
    core: bool = True
    remediation: bool = True
    estimation_gap: bool = True

    @classmethod
    def for_command(cls, command: str) -> "AnalysisOptions":
        if command == "analyze":
            return cls()
        if command == "equilibrium":
            return cls(core=False, remediation=False, estimation_gap=False)
        if command == "core-check":
            return cls(equilibrium=False, remediation=False, estimation_gap=False)
        if command == "advise":
            return cls(equilibrium=False, core=False, estimation_gap=False)
        raise ValueError(f"unknown command {command!r}")


@dataclass(frozen=True)
class Report:
    scenario: Scenario
    grand_worth: float
    baseline: float
    equilibrium: Optional[EquilibriumProfile] = None
    thresholds: Optional[tuple[float, ...]] = None
    loyalty: Optional[LoyaltyReport] = None
    remediation: Optional[RemediationPlan] = None
    gap: Optional[EstimationGapReport] = None

    @property
    def infeasible(self) -> bool:
        """Some remediation lever has no solution."""
        r = self.remediation
        return r is not None and not (r.cost_feasible and r.service_feasible)


def _user_worths(scenario: Scenario) -> CharacteristicFunction:
    if scenario.worth_table is not None:
        return scenario.worth_table
    return cournot.induced_characteristic_function(scenario.game)


def run_analysis(scenario: Scenario, options: AnalysisOptions = AnalysisOptions()) -> Report:
    game = scenario.game
    if game is not None:
        grand = cournot.grand_coalition_worth(game)
    else:
        grand = scenario.worth_table.grand_worth
    baseline = grand / scenario.n

    equilibrium = thresholds = loyalty = plan = gap = None
    if options.equilibrium and game is not None:
        equilibrium = cournot.equilibrium(game)
    if options.core:
        loyalty = loyalty_decision(game if game is not None else scenario.worth_table, scenario.offers)
        if game is not None and game.homogeneous:
            thresholds = tuple(deviation_threshold(game, s) for s in range(1, game.n + 1))
    if options.remediation and scenario.offers and game is not None and game.homogeneous:
        plan = remediation_plan(game, scenario.offers)
    if options.estimation_gap and scenario.provider_estimates is not None:
        gap = estimation_gap(scenario.provider_estimates, _user_worths(scenario))
    return Report(scenario, grand, baseline, equilibrium, thresholds, loyalty, plan, gap)


def require_applicable(scenario: Scenario, command: str) -> None:
    """Reject commands that need a game block when the scenario has none."""
    if command in ("equilibrium", "advise") and scenario.game is None:
        raise ValidationError(f"'{command}' needs a scenario with a game block")
    if command == "advise" and not scenario.game.homogeneous:
        raise ValidationError("'advise' covers games without gamma only")


def fmt(x) -> str:
    if x is None:
        return "infeasible"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float) and math.isinf(x):
        return "unbounded" if x > 0 else "-unbounded"
    if isinstance(x, int):
        return str(x)
    text = f"{x:.12g}"
    return "0" if text == "-0" else text


def _mode(scenario: Scenario) -> str:
    if scenario.game is not None:
        return "cournot" if scenario.game.homogeneous else "cournot_differentiated"
    return scenario.worth_table.mode.value


def machine_pairs(report: Report) -> list[tuple[str, str]]:
    s = report.scenario
    out = [("format", FORMAT_TAG), ("name", s.name), ("mode", _mode(s)), ("n", fmt(s.n))]
    if s.game is not None:
        g = s.game
        out += [("game.a", fmt(g.a)), ("game.c", fmt(g.c))]
        if g.gamma is not None:
            out.append(("game.gamma", fmt(g.gamma)))
    eq = report.equilibrium
    if eq is not None:
        out.append(("equilibrium.method", eq.method.value))
        out += [(f"equilibrium.q[{i}]", fmt(q)) for i, q in enumerate(eq.quantities)]
        out += [(f"equilibrium.pi[{i}]", fmt(p)) for i, p in enumerate(eq.profits)]
        out.append(("equilibrium.total_profit", fmt(eq.total_profit)))
    out.append(("cooperative_worth", fmt(report.grand_worth)))
    out.append(("baseline_per_member", fmt(report.baseline)))
    if report.thresholds is not None:
        out += [(f"threshold[{s}]", fmt(t)) for s, t in enumerate(report.thresholds, start=1)]
    loyalty = report.loyalty
    if loyalty is not None:
        out.append(("core_nonempty", fmt(loyalty.core_nonempty)))
        out.append(("violations.count", fmt(len(loyalty.violations))))
        for i, v in enumerate(loyalty.violations):
            out += [
                (f"violations[{i}].coalition", str(v.coalition)),
                (f"violations[{i}].per_member_worth", fmt(v.per_member_worth)),
                (f"violations[{i}].surplus", fmt(v.surplus)),
            ]
        out.append(("recommendation", str(loyalty.recommendation)))
    plan = report.remediation
    if plan is not None:
        out += [
            ("remediation.target_per_member", fmt(plan.target_per_member)),
            ("remediation.current_ratio", fmt(plan.current_ratio)),
            ("remediation.delta_c", fmt(plan.delta_c)),
            ("remediation.cost_ceiling", fmt(plan.cost_ceiling)),
            ("remediation.delta_a", fmt(plan.delta_a)),
            ("remediation.market_floor", fmt(plan.market_floor)),
            ("remediation.n_max", fmt(plan.service_cap)),
        ]
    gap = report.gap
    if gap is not None:
        out.append(("estimation_gap.max_abs", fmt(gap.max_abs_gap)))
        out.append(("estimation_gap.worst_coalition", str(gap.worst_coalition)))
        out += [(f"estimation_gap[{c}]", fmt(v)) for c, v in gap.per_coalition_gaps.items()]
    echo = dump_scenario(s).splitlines()
    out += [(f"scenario[{i}]", line) for i, line in enumerate(echo)]
    return out


def _render_machine(report: Report) -> str:
    return "".join(f"{k} = {v}\n" for k, v in machine_pairs(report))


def _rows(rows: list[tuple[str, str]], indent: str = "  ") -> list[str]:
    width = max(len(k) for k, _ in rows)
    return [f"{indent}{k.ljust(width)}  {v}" for k, v in rows]


def _render_table(report: Report) -> str:
    s = report.scenario
    lines = [f"Scenario {s.name}: {s.n} services, {_mode(s).replace('_', ' ')}"]
    if s.game is not None:
        params = f"a = {fmt(s.game.a)}, c = {fmt(s.game.c)}"
        if s.game.gamma is not None:
            params += f", gamma = {fmt(s.game.gamma)}"
        lines.append(f"  {params}")

    eq = report.equilibrium
    if eq is not None:
        lines += ["", f"Equilibrium ({eq.method.value.replace('_', ' ')})"]
        body = [("play", "quantity", "profit")] + [
            (str(i), fmt(q), fmt(p)) for i, (q, p) in enumerate(zip(eq.quantities, eq.profits))
        ]
        body.append(("total", "", fmt(eq.total_profit)))
        widths = [max(len(r[j]) for r in body) for j in range(3)]
        lines += ["  " + "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in body]

    lines += ["", "Worth"]
    rows = [
        ("grand coalition worth", fmt(report.grand_worth)),
        ("baseline per member", fmt(report.baseline)),
    ]
    if report.thresholds is not None:
        rows += [(f"switch threshold, s = {k}", fmt(t)) for k, t in enumerate(report.thresholds, 1)]
    lines += _rows(rows)

    loyalty = report.loyalty
    if loyalty is not None:
        lines += ["", "Loyalty"]
        lines += _rows([("core non-empty", "yes" if loyalty.core_nonempty else "no")])
        if loyalty.violations:
            body = [("coalition", "per member", "surplus")] + [
                (str(v.coalition), fmt(v.per_member_worth), fmt(v.surplus)) for v in loyalty.violations
            ]
            widths = [max(len(r[j]) for r in body) for j in range(3)]
            lines += ["    " + "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in body]
        rec = loyalty.recommendation
        verdict = f"partial switch of {rec.coalition}" if isinstance(rec, PartialSwitch) else "stay"
        lines += _rows([("recommendation", verdict)])

    plan = report.remediation
    if plan is not None:
        lines += ["", "Remediation"]
        lines += _rows([
            ("best offer per member", fmt(plan.target_per_member)),
            ("current average satisfaction", fmt(plan.current_ratio)),
            ("cost reduction", fmt(plan.delta_c)),
            ("market increase", fmt(plan.delta_a)),
            ("max services", fmt(plan.service_cap)),
        ])

    gap = report.gap
    if gap is not None:
        lines += ["", "Estimation gap (provider - user)"]
        lines += _rows([
            ("max abs gap", fmt(gap.max_abs_gap)),
            ("worst coalition", str(gap.worst_coalition)),
        ])
        lines += _rows([(str(c), fmt(v)) for c, v in gap.per_coalition_gaps.items()], indent="    ")
    return "\n".join(lines) + "\n"


def render_report(report: Report, format: str = "table") -> str:
    if format == "machine":
        return _render_machine(report)
    if format == "table":
        return _render_table(report)
    raise ValueError(f"unknown format {format!r}")


_ECHO = re.compile(r"^scenario\[(\d+)\] = (.*)$")


def extract_scenario(machine_text: str) -> Scenario:
    """Recover the scenario echoed at the end of a machine-format report."""
    lines = []
    for line in machine_text.splitlines():
        match = _ECHO.match(line)
        if match:
            lines.append(match.group(2))
    return parse_scenario("\n".join(lines) + "\n")
