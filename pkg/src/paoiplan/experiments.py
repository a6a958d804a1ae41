"""Scenario generators and sweep drivers for the built-in studies.

Two desk-scale studies ship with the package: a two-sensor trade-off sweep
of the first sensor's sampling delay against its required exponent (``fig2``
surface), and a cost-gap study comparing the exact and closed-form planners
over randomized systems of growing size (``fig3`` surface).  Both emit
plot-ready CSV.
"""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass

import numpy as np

from .feasibility import check_feasibility
from .model import Scenario
from .solver_approx import solve_approx
from .solver_exact import SolverConfig, solve_exact

logger = logging.getLogger(__name__)

FIG2_C1_VALUES = (1.0, 5.0, 10.0)
FIG2_THETA1_GRID = tuple(round(0.05 * k, 2) for k in range(1, 14)) + (0.68, 0.69, 0.695)
FIG2_THETA2 = 0.3
FIG2_C2 = 1.0
FIG3_DEFAULT_N_VALUES = (4, 8, 16)


@dataclass(frozen=True)
class TradeoffRow:
    """One point of the delay-versus-exponent sweep for the first sensor."""

    c1: float
    theta1: float
    exact_b1: float
    approx_b1: float


@dataclass(frozen=True)
class CostGapRow:
    """Averaged exact/approximate costs and relative gap at one system size."""

    n: int
    c_max: float
    mean_exact_cost: float
    mean_approx_cost: float
    mean_gap: float
    stderr_gap: float


def fig2_sweep(
    c1_values=FIG2_C1_VALUES,
    theta1_grid=FIG2_THETA1_GRID,
    config: SolverConfig | None = None,
) -> list[TradeoffRow]:
    """Solve the two-sensor system over a grid of (cost, exponent) for sensor 1.

    The second sensor is fixed (theta 0.3, unit cost and rate).  Grid points
    that make the scenario infeasible are skipped with a logged notice.
    Rows are ordered by cost value, then ascending exponent.
    """
    rows = []
    for c1 in c1_values:
        for theta1 in sorted(theta1_grid):
            scenario = Scenario.from_arrays(
                mu=(1.0, 1.0), cost=(c1, FIG2_C2), theta=(theta1, FIG2_THETA2)
            )
            report = check_feasibility(scenario)
            if not report.feasible:
                logger.warning(
                    "skipping infeasible grid point theta1=%g (load %.6g, budget %g)",
                    theta1, report.load, scenario.budget,
                )
                continue
            exact = solve_exact(scenario, config)
            approx = solve_approx(scenario)
            rows.append(
                TradeoffRow(c1=float(c1), theta1=float(theta1),
                            exact_b1=exact.b[0], approx_b1=approx.b[0])
            )
    return rows


def fig3_scenario(n: int, c_max: float, seed: int) -> Scenario:
    """Randomized unit-rate scenario of size ``n`` for the cost-gap study.

    Exponents ramp in steps of 0.01 around a center value of ``0.5/n`` at
    sensor ``n/2``; costs are drawn uniformly from [1, c_max].  Raises
    ValueError when ``n`` is not a positive even integer, when the ramp
    drives an exponent to or below zero (which happens once
    ``0.5/n <= 0.01*(n/2 - 1)``), or when the result is infeasible.
    """
    if not (isinstance(n, (int, np.integer)) and n > 0 and n % 2 == 0):
        raise ValueError(f"n must be a positive even integer, got {n!r}")
    if not c_max >= 1.0:
        raise ValueError(f"c_max must be at least 1, got {c_max!r}")
    half = n // 2
    center = 0.5 / n
    theta = [center + 0.01 * (i - half) for i in range(1, n + 1)]
    if theta[0] <= 0.0:
        raise ValueError(
            f"n={n} drives the smallest exponent to {theta[0]:.6g} <= 0; "
            f"the ramp requires 0.5/n > 0.01*(n/2 - 1)"
        )
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    cost = rng.uniform(1.0, c_max, size=n)
    scenario = Scenario.from_arrays(mu=np.ones(n), cost=cost, theta=theta)
    report = check_feasibility(scenario)
    if not report.feasible:
        raise ValueError(
            f"generated scenario is infeasible: load {report.load:.6g} "
            f">= budget {scenario.budget:.6g}"
        )
    return scenario


def _replication_seed(seed: int, n: int, rep: int) -> int:
    return int(np.random.SeedSequence((int(seed), int(n), int(rep))).generate_state(1, np.uint64)[0])


def fig3_sweep(
    n_values,
    c_max: float,
    replications: int,
    seed: int,
    config: SolverConfig | None = None,
) -> list[CostGapRow]:
    """Average the exact/approximate cost gap over randomized cost draws.

    Each (size, replication) pair gets an independent substream derived
    from ``seed``, so results are deterministic and independent of the
    order of ``n_values``.
    """
    if replications < 1:
        raise ValueError(f"replications must be at least 1, got {replications!r}")
    rows = []
    for n in n_values:
        exact_costs, approx_costs, gaps = [], [], []
        for rep in range(replications):
            scenario = fig3_scenario(n, c_max, _replication_seed(seed, n, rep))
            exact = solve_exact(scenario, config)
            approx = solve_approx(scenario)
            exact_costs.append(exact.total_cost)
            approx_costs.append(approx.total_cost)
            gaps.append((approx.total_cost - exact.total_cost) / exact.total_cost)
        mean_gap = float(np.mean(gaps))
        stderr_gap = (
            float(np.std(gaps, ddof=1) / math.sqrt(replications)) if replications > 1 else 0.0
        )
        rows.append(
            CostGapRow(
                n=int(n),
                c_max=float(c_max),
                mean_exact_cost=float(np.mean(exact_costs)),
                mean_approx_cost=float(np.mean(approx_costs)),
                mean_gap=mean_gap,
                stderr_gap=stderr_gap,
            )
        )
    return rows


def write_fig2_csv(rows: list[TradeoffRow], path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["c1", "theta1", "exact_b1", "approx_b1"])
        for row in rows:
            writer.writerow([repr(row.c1), repr(row.theta1), repr(row.exact_b1), repr(row.approx_b1)])


def write_fig3_csv(rows: list[CostGapRow], path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["n", "c_max", "mean_exact_cost", "mean_approx_cost", "mean_gap", "stderr_gap"]
        )
        for row in rows:
            writer.writerow([
                row.n, repr(row.c_max), repr(row.mean_exact_cost),
                repr(row.mean_approx_cost), repr(row.mean_gap), repr(row.stderr_gap),
            ])
