"""Feasibility of an outage-exponent vector against the resource budget.

A scenario admits a valid allocation iff the total required load
``sum(theta_i / mu_i)`` is strictly below the budget: each sensor needs at
least ``theta_i / mu_i`` of the resource before its service rate exceeds
its exponent, and strictly more to leave the tail constraint satisfiable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .model import Scenario


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of the load-versus-budget test, with slack and ranking."""

    feasible: bool
    load: float
    slack: float
    binding_sensors: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "load": self.load,
            "slack": self.slack,
            "binding_sensors": list(self.binding_sensors),
        }


class InfeasibleScenarioError(ValueError):
    """The requested outage exponents exceed what the budget can support."""

    def __init__(self, report: FeasibilityReport):
        self.report = report
        super().__init__(
            f"infeasible scenario: required load {report.load:.6g} is not strictly "
            f"below budget {report.load + report.slack:.6g}"
        )


def check_feasibility(scenario: Scenario) -> FeasibilityReport:
    """Decide feasibility and report load, slack, and per-sensor contributions.

    The boundary ``load == budget`` is infeasible: equality leaves no room
    for the strict service-rate dominance every sensor needs.
    ``binding_sensors`` lists all sensor indices by descending
    ``theta_i / mu_i`` contribution (ties broken by index).
    """
    contributions = [s.theta / s.mu for s in scenario.sensors]
    load = math.fsum(contributions)
    slack = scenario.budget - load
    order = sorted(range(scenario.n), key=lambda i: (-contributions[i], i))
    return FeasibilityReport(
        feasible=load < scenario.budget,
        load=load,
        slack=slack,
        binding_sensors=tuple(order),
    )
