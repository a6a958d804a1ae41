"""Domain types and exponential-service tail primitives.

Each sensor's packet transmission time is exponential with rate ``mu * r``:
the service rate scales linearly with the resource share ``r``.  The log
moment generating function (LMGF) of that service time, its Legendre
transform (the large-deviations rate function), and the minimal sampling
delay meeting a tail-exponent target are the primitives every planner and
analysis routine here builds on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class InfeasibleRateError(ValueError):
    """The effective service rate is too low for the requested outage exponent."""


@dataclass(frozen=True)
class SensorSpec:
    """One sensor: rate per resource share, delay unit cost, required tail exponent.

    ``mu`` is the mean transmission rate per unit of resource (packets/time
    per share), ``cost`` the price of delaying sampling by one time unit,
    and ``theta`` the required exponential decay rate of the peak-age tail.
    """

    mu: float
    cost: float
    theta: float

    def __post_init__(self) -> None:
        for name in ("mu", "cost", "theta"):
            value = float(getattr(self, name))
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(
                    f"SensorSpec.{name} must be a finite positive number, got {getattr(self, name)!r}"
                )
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class Scenario:
    """A set of sensors sharing one divisible resource budget."""

    sensors: tuple[SensorSpec, ...]
    budget: float = 1.0

    def __post_init__(self) -> None:
        sensors = tuple(self.sensors)
        if not sensors:
            raise ValueError("Scenario requires at least one sensor")
        if not all(isinstance(s, SensorSpec) for s in sensors):
            raise ValueError("Scenario.sensors must contain SensorSpec entries")
        budget = float(self.budget)
        if not (math.isfinite(budget) and budget > 0.0):
            raise ValueError(f"Scenario.budget must be a finite positive number, got {self.budget!r}")
        object.__setattr__(self, "sensors", sensors)
        object.__setattr__(self, "budget", budget)

    @classmethod
    def from_arrays(cls, mu, cost, theta, budget: float = 1.0) -> "Scenario":
        mu, cost, theta = list(mu), list(cost), list(theta)
        if not (len(mu) == len(cost) == len(theta)):
            raise ValueError(
                f"mu, cost, theta must have equal lengths, got {len(mu)}, {len(cost)}, {len(theta)}"
            )
        return cls(
            sensors=tuple(SensorSpec(mu=m, cost=c, theta=t) for m, c, t in zip(mu, cost, theta)),
            budget=budget,
        )

    @property
    def n(self) -> int:
        return len(self.sensors)

    @property
    def mu(self) -> np.ndarray:
        return np.array([s.mu for s in self.sensors])

    @property
    def cost(self) -> np.ndarray:
        return np.array([s.cost for s in self.sensors])

    @property
    def theta(self) -> np.ndarray:
        return np.array([s.theta for s in self.sensors])


class SolveMethod(str, Enum):
    EXACT = "exact"
    APPROX = "approx"


@dataclass(frozen=True)
class AllocationPlan:
    """Per-sensor resource shares and sampling delays, plus solve provenance.

    ``lam`` is the Lagrange multiplier of the budget constraint; it is None
    for approximate plans, where the multiplier is eliminated in closed form.
    """

    r: tuple[float, ...]
    b: tuple[float, ...]
    method: SolveMethod
    total_cost: float
    lam: float | None = None

    def __post_init__(self) -> None:
        r = tuple(float(x) for x in self.r)
        b = tuple(float(x) for x in self.b)
        if len(r) != len(b):
            raise ValueError(f"r and b must have equal lengths, got {len(r)} and {len(b)}")
        if not r:
            raise ValueError("AllocationPlan requires at least one sensor")
        for name, values in (("r", r), ("b", b)):
            if not all(math.isfinite(v) and v > 0.0 for v in values):
                raise ValueError(f"AllocationPlan.{name} entries must be finite and positive")
        total = float(self.total_cost)
        if not math.isfinite(total):
            raise ValueError("AllocationPlan.total_cost must be finite")
        if self.lam is not None:
            lam = float(self.lam)
            if not (math.isfinite(lam) and lam > 0.0):
                raise ValueError(f"AllocationPlan.lam must be finite and positive, got {self.lam!r}")
            object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "total_cost", total)
        object.__setattr__(self, "method", SolveMethod(self.method))

    @property
    def n(self) -> int:
        return len(self.r)

    def validate_for(self, scenario: Scenario, tol: float = 1e-9) -> None:
        """Raise ValueError unless the plan is consistent with ``scenario``.

        Checks the share/delay vector lengths, strict service-rate dominance
        (``mu_i * r_i > theta_i``), the budget cap up to ``tol``, and that
        ``total_cost`` matches the recomputed cost-weighted delay sum.
        """
        if self.n != scenario.n:
            raise ValueError(f"plan covers {self.n} sensors, scenario has {scenario.n}")
        for i, (sensor, r_i) in enumerate(zip(scenario.sensors, self.r)):
            if sensor.mu * r_i <= sensor.theta:
                raise ValueError(
                    f"sensor {i}: service rate {sensor.mu * r_i:.6g} does not exceed "
                    f"outage exponent {sensor.theta:.6g}"
                )
        total_share = math.fsum(self.r)
        if total_share > scenario.budget + tol:
            raise ValueError(f"shares sum to {total_share:.12g}, above budget {scenario.budget:.12g}")
        recomputed = math.fsum(s.cost * b_i for s, b_i in zip(scenario.sensors, self.b))
        if recomputed != self.total_cost:
            raise ValueError(
                f"total_cost {self.total_cost!r} does not match recomputed value {recomputed!r}"
            )


def lmgf_exponential(nu: float, gamma: float) -> float:
    """LMGF of an exponential service time with rate ``nu``.

    Equals ``ln(nu / (nu - gamma))`` for ``gamma < nu`` and diverges at the
    pole; the divergent branch returns ``+inf`` so 1-D searches can probe
    freely.  Evaluated via ``log1p`` to stay accurate for small ``gamma``.
    """
    if not nu > 0.0:
        raise ValueError(f"service rate must be positive, got {nu!r}")
    if gamma >= nu:
        return math.inf
    return -math.log1p(-gamma / nu)


def rate_function_exponential(nu: float, x: float) -> float:
    """Large-deviations rate function sup_g {g*x - LMGF(g)} of the service time.

    Closed form ``nu*x - 1 - ln(nu*x)`` on ``x > 0``; ``+inf`` off the
    support (service times are positive).
    """
    if not nu > 0.0:
        raise ValueError(f"service rate must be positive, got {nu!r}")
    if x <= 0.0:
        return math.inf
    return nu * x - 1.0 - math.log(nu * x)


def optimal_sampling_delay(nu: float, theta: float) -> float:
    """Smallest sampling period meeting tail exponent ``theta`` at service rate ``nu``.

    This is the tight point ``LMGF(theta) / theta`` of the tail constraint:
    ``(1/theta) * ln(nu / (nu - theta))``.  Requires ``nu > theta``; below
    that rate no sampling period can deliver the exponent.
    """
    if not theta > 0.0:
        raise ValueError(f"outage exponent must be positive, got {theta!r}")
    if not nu > theta:
        raise InfeasibleRateError(
            f"service rate {nu!r} must strictly exceed the outage exponent {theta!r}"
        )
    return lmgf_exponential(nu, theta) / theta
