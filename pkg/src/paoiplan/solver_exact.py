"""Exact joint planner: multiplier root-find plus closed-form recovery.

Minimizing the cost-weighted sum of sampling delays over resource shares is
convex, so the optimum is characterized by a single Lagrange multiplier on
the budget constraint.  The per-sensor share at a given multiplier is the
positive root of a quadratic; the multiplier itself solves a strictly
monotone scalar equation (shares sum to the budget), found here by an
expanding-bracket bisection polished with Newton steps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .feasibility import InfeasibleScenarioError, check_feasibility
from .model import AllocationPlan, Scenario, SolveMethod, optimal_sampling_delay

_BRACKET_LO = 1e-9
_BRACKET_HI = 1.0
_NEWTON_POLISH_STEPS = 3


class ConvergenceError(RuntimeError):
    """Root finding failed to converge within the iteration budget."""


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and iteration caps for the multiplier root-find."""

    lambda_rel_tol: float = 1e-12
    max_iters: int = 200
    bracket_growth: float = 2.0

    def __post_init__(self) -> None:
        if not (0.0 < self.lambda_rel_tol <= 1e-3):
            raise ValueError(f"lambda_rel_tol must lie in (0, 1e-3], got {self.lambda_rel_tol!r}")
        if self.max_iters < 10:
            raise ValueError(f"max_iters must be at least 10, got {self.max_iters!r}")
        if not self.bracket_growth > 1.0:
            raise ValueError(f"bracket_growth must exceed 1, got {self.bracket_growth!r}")


def allocation_at_lambda(scenario: Scenario, lam: float) -> np.ndarray:
    """Per-sensor shares at multiplier ``lam``: the positive quadratic root.

    The stationarity condition ``mu*lam*r**2 - theta*lam*r - cost = 0`` has
    one positive root, which always exceeds ``theta/mu`` so the service rate
    strictly dominates the exponent.
    """
    if not (isinstance(lam, (int, float)) and math.isfinite(lam) and lam > 0.0):
        raise ValueError(f"lambda must be a finite positive number, got {lam!r}")
    mu, cost, theta = scenario.mu, scenario.cost, scenario.theta
    # Root written as (theta/mu) * (1 + expm1(log1p(q/lam)/2) / 2) with
    # q = 4*cost*mu/theta**2: algebraically the usual (1 + sqrt(1 + q/lam))/2
    # form, but it keeps the share-minus-theta/mu margin accurate when
    # q/lam underflows the sqrt's precision at very large multipliers.
    q = 4.0 * cost * mu / theta**2
    sqrt_minus_one = np.expm1(0.5 * np.log1p(q / lam))
    return theta / mu * (1.0 + 0.5 * sqrt_minus_one)


def residual(scenario: Scenario, lam: float) -> float:
    """Budget residual ``sum(r_i(lam)) - budget``; strictly decreasing in ``lam``."""
    return float(math.fsum(allocation_at_lambda(scenario, lam)) - scenario.budget)


def _residual_derivative(scenario: Scenario, lam: float) -> float:
    mu, cost, theta = scenario.mu, scenario.cost, scenario.theta
    sqrt_term = np.sqrt(1.0 + 4.0 * cost * mu / (theta**2 * lam))
    return float(np.sum(-cost / (theta * lam**2 * sqrt_term)))


def _find_multiplier(scenario: Scenario, config: SolverConfig) -> float:
    lo, hi = _BRACKET_LO, _BRACKET_HI
    for _ in range(config.max_iters):
        if residual(scenario, hi) <= 0.0:
            break
        lo, hi = hi, hi * config.bracket_growth
    else:
        raise ConvergenceError(f"no sign change up to lambda={hi:.3g}")
    for _ in range(config.max_iters):
        if residual(scenario, lo) >= 0.0:
            break
        lo, hi = lo / config.bracket_growth, lo
    else:
        raise ConvergenceError(f"no sign change down to lambda={lo:.3g}")

    # Geometric bisection: the root can sit anywhere across many decades.
    for _ in range(config.max_iters):
        if hi - lo <= config.lambda_rel_tol * hi:
            break
        mid = math.sqrt(lo * hi)
        if residual(scenario, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    else:
        raise ConvergenceError(
            f"bisection stalled at [{lo:.16g}, {hi:.16g}] after {config.max_iters} iterations"
        )

    # Newton polish drives the budget residual to machine precision; steps
    # are clamped to the bracket, whose endpoints straddle the root.
    lam = math.sqrt(lo * hi)
    for _ in range(_NEWTON_POLISH_STEPS):
        value = residual(scenario, lam)
        if value == 0.0:
            break
        candidate = lam - value / _residual_derivative(scenario, lam)
        candidate = min(max(candidate, lo), hi)
        if candidate == lam:
            break
        lam = candidate
    return lam


def solve_exact(scenario: Scenario, config: SolverConfig | None = None) -> AllocationPlan:
    """Solve the joint delay/allocation problem to optimality.

    Returns a plan whose shares sum to the budget (within the multiplier
    tolerance), with each sampling delay at the tight point of its tail
    constraint.  Raises InfeasibleScenarioError when no allocation can
    dominate every exponent, ConvergenceError on root-finding failure.
    """
    config = config if config is not None else SolverConfig()
    report = check_feasibility(scenario)
    if not report.feasible:
        raise InfeasibleScenarioError(report)
    lam = _find_multiplier(scenario, config)
    shares = allocation_at_lambda(scenario, lam)
    delays = tuple(
        optimal_sampling_delay(sensor.mu * r_i, sensor.theta)
        for sensor, r_i in zip(scenario.sensors, shares)
    )
    total = math.fsum(s.cost * b_i for s, b_i in zip(scenario.sensors, delays))
    return AllocationPlan(
        r=tuple(float(x) for x in shares),
        b=delays,
        method=SolveMethod.EXACT,
        total_cost=total,
        lam=lam,
    )
