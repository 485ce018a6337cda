"""Placement statistics: distribution of functions, demand, and characteristics.

Averages over an environment with no functions are reported as None and
rendered as empty CSV cells; percentages carry full precision and are only
rounded by whoever plots them.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import costs
from .model import RESOURCE_KINDS, Placement, ResourceKind, SSRBucket, StateError


@dataclass(frozen=True)
class PlacementReport:
    n_functions: int
    fog_fraction: float  # % of functions
    cloud_fraction: float
    demand_fog_pct: dict[ResourceKind, float]
    demand_cloud_pct: dict[ResourceKind, float]
    avg_code_fog: float | None
    avg_code_cloud: float | None
    avg_input_fog: float | None
    avg_input_cloud: float | None
    avg_critical_fog: float | None
    avg_critical_cloud: float | None
    avg_priority_fog: float | None
    avg_priority_cloud: float | None
    critical_counts: dict[int, tuple[int, int]]  # value -> (fog, cloud)
    total_step_cost: float
    objective_sum: float


def _mean(values: list[float]) -> float | None:
    return sum(values) / len(values) if values else None


def report(bucket: SSRBucket, placement: Placement) -> PlacementReport:
    if not placement.is_complete():
        raise StateError("placement is incomplete")
    flat = bucket.functions()
    n = len(flat)
    fog_fns = [fn for (_, fn), (f, _) in zip(flat, placement.flags) if f]
    cloud_fns = [fn for (_, fn), (_, c) in zip(flat, placement.flags) if c]

    demand_fog_pct = {}
    demand_cloud_pct = {}
    for kind in RESOURCE_KINDS:
        total = sum(costs.total_demand(fn).get(kind) for _, fn in flat)
        fog_part = sum(costs.total_demand(fn).get(kind) for fn in fog_fns)
        demand_fog_pct[kind] = 100.0 * fog_part / total if total else 0.0
        demand_cloud_pct[kind] = 100.0 - demand_fog_pct[kind] if total else 0.0

    counts = {
        v: (
            sum(1 for fn in fog_fns if fn.critical_value == v),
            sum(1 for fn in cloud_fns if fn.critical_value == v),
        )
        for v in range(1, 6)
    }

    ctx = costs.CostContext.from_bucket(bucket)
    _, objective_sum = costs.bucket_objective(bucket, placement, ctx)
    return PlacementReport(
        n_functions=n,
        fog_fraction=100.0 * len(fog_fns) / n,
        cloud_fraction=100.0 * len(cloud_fns) / n,
        demand_fog_pct=demand_fog_pct,
        demand_cloud_pct=demand_cloud_pct,
        avg_code_fog=_mean([fn.code_size for fn in fog_fns]),
        avg_code_cloud=_mean([fn.code_size for fn in cloud_fns]),
        avg_input_fog=_mean([fn.input_size for fn in fog_fns]),
        avg_input_cloud=_mean([fn.input_size for fn in cloud_fns]),
        avg_critical_fog=_mean([float(fn.critical_value) for fn in fog_fns]),
        avg_critical_cloud=_mean([float(fn.critical_value) for fn in cloud_fns]),
        avg_priority_fog=_mean([fn.priority for fn in fog_fns]),
        avg_priority_cloud=_mean([fn.priority for fn in cloud_fns]),
        critical_counts=counts,
        total_step_cost=costs.placement_step_cost_sum(bucket, placement, ctx),
        objective_sum=objective_sum,
    )


def critical_histogram(
    bucket: SSRBucket, placement: Placement
) -> dict[int, dict[str, float]]:
    """Per critical value 1..5: fog/cloud counts and percentage split."""
    rep = report(bucket, placement)
    out = {}
    for value, (fog_n, cloud_n) in rep.critical_counts.items():
        total = fog_n + cloud_n
        out[value] = {
            "fog_count": fog_n,
            "cloud_count": cloud_n,
            "fog_pct": 100.0 * fog_n / total if total else 0.0,
            "cloud_pct": 100.0 * cloud_n / total if total else 0.0,
        }
    return out


REPORT_COLUMNS = (
    ["run", "algorithm", "total_functions", "seed", "n_functions",
     "fog_fraction", "cloud_fraction"]
    + [f"{k.value}_fog_pct" for k in RESOURCE_KINDS]
    + [f"{k.value}_cloud_pct" for k in RESOURCE_KINDS]
    + ["avg_code_fog", "avg_code_cloud", "avg_input_fog", "avg_input_cloud",
       "avg_critical_fog", "avg_critical_cloud", "avg_priority_fog", "avg_priority_cloud"]
    + [f"crit{v}_fog" for v in range(1, 6)]
    + [f"crit{v}_cloud" for v in range(1, 6)]
    + ["total_step_cost", "objective_sum"]
)


def report_row(
    rep: PlacementReport, run: int, algorithm: str, total_functions: int, seed: int
) -> dict:
    row: dict = {
        "run": run,
        "algorithm": algorithm,
        "total_functions": total_functions,
        "seed": seed,
        "n_functions": rep.n_functions,
        "fog_fraction": rep.fog_fraction,
        "cloud_fraction": rep.cloud_fraction,
        "avg_code_fog": rep.avg_code_fog,
        "avg_code_cloud": rep.avg_code_cloud,
        "avg_input_fog": rep.avg_input_fog,
        "avg_input_cloud": rep.avg_input_cloud,
        "avg_critical_fog": rep.avg_critical_fog,
        "avg_critical_cloud": rep.avg_critical_cloud,
        "avg_priority_fog": rep.avg_priority_fog,
        "avg_priority_cloud": rep.avg_priority_cloud,
        "total_step_cost": rep.total_step_cost,
        "objective_sum": rep.objective_sum,
    }
    for kind in RESOURCE_KINDS:
        row[f"{kind.value}_fog_pct"] = rep.demand_fog_pct[kind]
        row[f"{kind.value}_cloud_pct"] = rep.demand_cloud_pct[kind]
    for value, (fog_n, cloud_n) in rep.critical_counts.items():
        row[f"crit{value}_fog"] = fog_n
        row[f"crit{value}_cloud"] = cloud_n
    return row
