"""Command-line front end: scenario I/O, planning, analysis, and sweeps.

Exit codes: 0 success, 1 schema or argument error, 2 infeasibility,
3 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from .experiments import (
    FIG3_DEFAULT_N_VALUES,
    fig2_sweep,
    fig3_sweep,
    write_fig2_csv,
    write_fig3_csv,
)
from .feasibility import InfeasibleScenarioError, check_feasibility
from .ldp import exponent_root, exponent_variational
from .model import AllocationPlan, InfeasibleRateError, Scenario, SensorSpec, SolveMethod
from .sim import SimConfig, TailEstimate, simulate_plan
from .solver_approx import solve_approx
from .solver_exact import ConvergenceError, SolverConfig, solve_exact

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_NONCONVERGED = 3

_SCENARIO_KEYS = {"budget", "sensors"}
_SENSOR_KEYS = {"mu", "cost", "theta"}
_PLAN_KEYS = {"r", "b", "method", "total_cost", "lambda"}


class CliError(Exception):
    """Schema or argument problem that maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad arguments by default; route through CliError
    # so the exit-code contract (1 for argument errors) holds.
    def error(self, message):
        raise CliError(message)


def _finite_number(value, context: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise CliError(f"{context} must be a number, got {value!r}")
    number = float(value)
    if not math.isfinite(number):
        raise CliError(f"{context} must be finite, got {value!r}")
    return number


def _load_json(path):
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"invalid JSON in {path}: {exc}") from exc


def load_scenario(path) -> Scenario:
    """Read and schema-validate a scenario file."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise CliError(f"scenario file {path} must hold a JSON object")
    unknown = set(data) - _SCENARIO_KEYS
    if unknown:
        raise CliError(f"scenario file {path} has unknown keys: {sorted(unknown)}")
    sensors = data.get("sensors")
    if not isinstance(sensors, list) or not sensors:
        raise CliError(f"scenario file {path} needs a nonempty 'sensors' array")
    specs = []
    for index, entry in enumerate(sensors):
        if not isinstance(entry, dict):
            raise CliError(f"sensors[{index}] must be an object")
        unknown = set(entry) - _SENSOR_KEYS
        if unknown:
            raise CliError(f"sensors[{index}] has unknown keys: {sorted(unknown)}")
        missing = _SENSOR_KEYS - set(entry)
        if missing:
            raise CliError(f"sensors[{index}] is missing keys: {sorted(missing)}")
        specs.append({k: _finite_number(entry[k], f"sensors[{index}].{k}") for k in _SENSOR_KEYS})
    budget = _finite_number(data.get("budget", 1.0), "budget")
    try:
        return Scenario(
            sensors=tuple(SensorSpec(mu=s["mu"], cost=s["cost"], theta=s["theta"]) for s in specs),
            budget=budget,
        )
    except ValueError as exc:
        raise CliError(f"scenario file {path}: {exc}") from exc


def plan_to_dict(plan: AllocationPlan) -> dict:
    data = {
        "r": list(plan.r),
        "b": list(plan.b),
        "method": plan.method.value,
        "total_cost": plan.total_cost,
    }
    if plan.lam is not None:
        data["lambda"] = plan.lam
    return data


def load_plan(path) -> AllocationPlan:
    """Read and schema-validate a plan file."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise CliError(f"plan file {path} must hold a JSON object")
    unknown = set(data) - _PLAN_KEYS
    if unknown:
        raise CliError(f"plan file {path} has unknown keys: {sorted(unknown)}")
    missing = {"r", "b", "method", "total_cost"} - set(data)
    if missing:
        raise CliError(f"plan file {path} is missing keys: {sorted(missing)}")
    for key in ("r", "b"):
        if not isinstance(data[key], list) or not data[key]:
            raise CliError(f"plan file {path}: '{key}' must be a nonempty array")
    try:
        method = SolveMethod(data["method"])
    except ValueError as exc:
        raise CliError(f"plan file {path}: unknown method {data['method']!r}") from exc
    lam = data.get("lambda")
    try:
        return AllocationPlan(
            r=tuple(_finite_number(v, "r entry") for v in data["r"]),
            b=tuple(_finite_number(v, "b entry") for v in data["b"]),
            method=method,
            total_cost=_finite_number(data["total_cost"], "total_cost"),
            lam=None if lam is None else _finite_number(lam, "lambda"),
        )
    except ValueError as exc:
        raise CliError(f"plan file {path}: {exc}") from exc


def _emit(data: dict | list, out_path=None) -> None:
    text = json.dumps(data, indent=2)
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _tail_estimate_to_dict(estimate: TailEstimate) -> dict:
    summary = estimate.paoi_samples_summary
    return {
        "paoi_samples_summary": {
            "count": summary.count,
            "mean": summary.mean,
            "max": summary.max,
        },
        "fitted_exponent": estimate.fitted_exponent,
        "stderr": estimate.stderr,
        "fit_error": estimate.fit_error,
        "ccdf_points": [[x, p] for x, p in estimate.ccdf_points],
    }


def _cmd_feasible(args) -> int:
    report = check_feasibility(load_scenario(args.scenario))
    print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def _cmd_solve(args) -> int:
    scenario = load_scenario(args.scenario)
    config = SolverConfig(lambda_rel_tol=args.tol) if args.tol is not None else SolverConfig()
    plan = solve_exact(scenario, config)
    _emit(plan_to_dict(plan), args.out)
    return EXIT_OK


def _cmd_approx(args) -> int:
    plan = solve_approx(load_scenario(args.scenario))
    _emit(plan_to_dict(plan), args.out)
    return EXIT_OK


def _cmd_exponent(args) -> int:
    variational = exponent_variational(args.nu, args.b)
    root = exponent_root(args.nu, args.b)
    print(json.dumps({
        "psi_variational": variational.psi,
        "psi_root": root,
        "argmin_t": variational.argmin_t if math.isfinite(variational.argmin_t) else None,
    }, indent=2))
    return EXIT_OK


def _cmd_simulate(args) -> int:
    scenario = load_scenario(args.scenario)
    plan = load_plan(args.plan)
    config = SimConfig(num_samples=args.samples, seed=args.seed)
    estimates = simulate_plan(scenario, plan, config)
    print(json.dumps([_tail_estimate_to_dict(e) for e in estimates], indent=2))
    if args.ccdf:
        _write_ccdf_csv(estimates, args.ccdf)
    return EXIT_OK


def _write_ccdf_csv(estimates: list[TailEstimate], path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["sensor_index", "x", "ccdf", "ln_ccdf"])
        for index, estimate in enumerate(estimates):
            for x, p in estimate.ccdf_points:
                ln_p = math.log(p) if p > 0.0 else float("-inf")
                writer.writerow([index, repr(x), repr(p), repr(ln_p)])


def _cmd_fig2(args) -> int:
    rows = fig2_sweep()
    write_fig2_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def _cmd_fig3(args) -> int:
    try:
        n_values = [int(part) for part in args.n.split(",") if part.strip()]
    except ValueError as exc:
        raise CliError(f"--n must be a comma-separated integer list, got {args.n!r}") from exc
    if not n_values:
        raise CliError("--n must name at least one system size")
    rows = fig3_sweep(n_values, args.cmax, args.reps, args.seed)
    write_fig3_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="paoiplan", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("feasible", help="check a scenario against its budget")
    p.add_argument("scenario")
    p.set_defaults(func=_cmd_feasible)

    p = sub.add_parser("solve", help="exact joint plan")
    p.add_argument("scenario")
    p.add_argument("--tol", type=float, default=None, help="relative multiplier tolerance")
    p.add_argument("--out", default=None, help="write the plan JSON here instead of stdout")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("approx", help="closed-form approximate plan")
    p.add_argument("scenario")
    p.add_argument("--out", default=None, help="write the plan JSON here instead of stdout")
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("exponent", help="tail exponent for one (rate, delay) pair")
    p.add_argument("--nu", type=float, required=True, help="service rate")
    p.add_argument("--b", type=float, required=True, help="sampling delay")
    p.set_defaults(func=_cmd_exponent)

    p = sub.add_parser("simulate", help="Monte Carlo tail check of a plan")
    p.add_argument("scenario")
    p.add_argument("plan")
    p.add_argument("--samples", type=int, default=SimConfig.num_samples)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ccdf", default=None, help="write per-sensor CCDF points to this CSV")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("fig2", help="delay-versus-exponent trade-off sweep CSV")
    p.add_argument("--out", default="fig2.csv")
    p.set_defaults(func=_cmd_fig2)

    p = sub.add_parser("fig3", help="cost-gap sweep CSV over system sizes")
    p.add_argument("--n", default=",".join(str(n) for n in FIG3_DEFAULT_N_VALUES))
    p.add_argument("--cmax", type=float, default=10.0)
    p.add_argument("--reps", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="fig3.csv")
    p.set_defaults(func=_cmd_fig3)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (InfeasibleScenarioError, InfeasibleRateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
