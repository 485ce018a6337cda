"""Latency cost model: per-function and per-SSR objectives plus RL step costs.

Latencies enter every formula in normalized form: the user latency as its
unit-interval latency priority and the fog-cloud link latency divided by
the bucket's maximum user latency. This keeps each cost term dimensionless
and commensurate with the unit-interval user priority; it preserves all
argmin decisions relative to any fixed positive latency scaling.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import (
    RESOURCE_KINDS,
    EnvironmentLimits,
    Placement,
    ResourceKind,
    ResourceVector,
    SSR,
    SSRBucket,
    ServerlessFunction,
    StateError,
)

_COMPUTE_KINDS = (ResourceKind.CPU, ResourceKind.RAM, ResourceKind.STORAGE)


@dataclass(frozen=True)
class CostBreakdown:
    comm: float
    comp: float

    @property
    def total(self) -> float:
        return self.comm + self.comp


def per_function_cap(
    f_flag: int, c_flag: int, fog: EnvironmentLimits, cloud: EnvironmentLimits
) -> ResourceVector:
    """Resource cap of the platform the function is assigned to."""
    if f_flag + c_flag != 1:
        raise StateError("function is unassigned")
    return fog.per_function_cap if f_flag else cloud.per_function_cap


def total_demand(fn: ServerlessFunction) -> ResourceVector:
    return fn.base_demand + fn.supplementary_demand


def ssr_base_demand(ssr: SSR) -> ResourceVector:
    if not ssr.functions:
        raise ValueError("SSR has no functions")
    out = ResourceVector()
    for fn in ssr.functions:
        out = out + fn.base_demand
    return out


def ssr_supplementary_demand(ssr: SSR) -> ResourceVector:
    if not ssr.functions:
        raise ValueError("SSR has no functions")
    out = ResourceVector()
    for fn in ssr.functions:
        out = out + fn.supplementary_demand
    return out


def comm_latency_fn(f_flag: int, c_flag: int, user_priority: float, lf: float) -> float:
    """User priority plus the link penalty when the function sits in the cloud."""
    if f_flag + c_flag != 1:
        raise StateError("function is unassigned")
    return user_priority + c_flag * lf


def comp_latency_fn(
    fn: ServerlessFunction,
    f_flag: int,
    c_flag: int,
    fog: EnvironmentLimits,
    cloud: EnvironmentLimits,
    weights: ResourceVector,
    l_i: float,
    lf: float,
) -> float:
    """Weighted demand-to-cap ratios; the net I/O term scales with latency."""
    cap = per_function_cap(f_flag, c_flag, fog, cloud)
    demand = total_demand(fn)
    out = sum(demand.get(x) / cap.get(x) * weights.get(x) for x in _COMPUTE_KINDS)
    io_ratio = demand.net_io / cap.net_io
    out += io_ratio * weights.net_io * (f_flag * l_i + c_flag * lf)
    return out


def step_cost_fog(
    fn: ServerlessFunction,
    fog: EnvironmentLimits,
    weights: ResourceVector,
    l_i: float,
    user_priority: float,
) -> float:
    """Cost of placing one function on the fog node."""
    demand = total_demand(fn)
    cap = fog.per_function_cap
    out = sum(demand.get(x) / cap.get(x) * weights.get(x) for x in _COMPUTE_KINDS)
    out += demand.net_io / cap.net_io * weights.net_io * l_i
    return out + user_priority


def step_cost_cloud(
    fn: ServerlessFunction,
    cloud: EnvironmentLimits,
    weights: ResourceVector,
    l_i: float,
    lf: float,
    user_priority: float,
) -> float:
    """Cost of placing one function on the cloud node."""
    demand = total_demand(fn)
    cap = cloud.per_function_cap
    out = sum(demand.get(x) / cap.get(x) * weights.get(x) for x in _COMPUTE_KINDS)
    out += demand.net_io / cap.net_io * weights.net_io * (l_i + lf)
    return out + user_priority + lf


@dataclass(frozen=True)
class CostContext:
    """Bucket-wide normalized quantities shared by all cost evaluations."""

    bucket: SSRBucket
    norm_latency: dict[int, float]  # user id -> latency priority
    user_priority: dict[int, float]
    norm_link: float  # fog-cloud link latency / max user latency

    @classmethod
    def from_bucket(cls, bucket: SSRBucket) -> "CostContext":
        max_latency = max(u.latency for u in bucket.users)
        norm_latency = {u.id: u.latency / max_latency for u in bucket.users}
        priorities = {}
        for u in bucket.users:
            if u.priority is None:
                raise ValueError(f"user {u.id} has no cached priority; score the bucket first")
            priorities[u.id] = u.priority
        return cls(
            bucket=bucket,
            norm_latency=norm_latency,
            user_priority=priorities,
            norm_link=bucket.cloud.link_latency / max_latency,
        )

    def fn_step_cost(self, ssr: SSR, fn: ServerlessFunction, on_fog: bool) -> float:
        l_i = self.norm_latency[ssr.user_id]
        p_i = self.user_priority[ssr.user_id]
        if on_fog:
            return step_cost_fog(fn, self.bucket.fog, self.bucket.importance_factors, l_i, p_i)
        return step_cost_cloud(
            fn, self.bucket.cloud, self.bucket.importance_factors, l_i, self.norm_link, p_i
        )


def _ssr_flags(ssr: SSR, placement: Placement, offset: int) -> list[tuple[int, int]]:
    return [placement.flags[offset + j] for j in range(len(ssr.functions))]


def ssr_comm_latency(ssr: SSR, flags: list[tuple[int, int]], ctx: CostContext) -> float:
    p_i = ctx.user_priority[ssr.user_id]
    return sum(
        comm_latency_fn(f, c, p_i, ctx.norm_link) for (f, c) in flags
    )


def ssr_comp_latency(ssr: SSR, flags: list[tuple[int, int]], ctx: CostContext) -> float:
    """Priority-weighted sum of per-function computation latencies."""
    priorities = [fn.priority for fn in ssr.functions]
    if any(p is None for p in priorities):
        raise ValueError("function priorities are not cached; score the bucket first")
    max_p = max(priorities)
    l_i = ctx.norm_latency[ssr.user_id]
    out = 0.0
    for fn, (f, c), p in zip(ssr.functions, flags, priorities):
        comp = comp_latency_fn(
            fn, f, c, ctx.bucket.fog, ctx.bucket.cloud,
            ctx.bucket.importance_factors, l_i, ctx.norm_link,
        )
        out += comp * (p / max_p)
    return out


def ssr_objective(ssr: SSR, flags: list[tuple[int, int]], ctx: CostContext) -> CostBreakdown:
    if any(f + c != 1 for f, c in flags):
        raise StateError("SSR placement is incomplete")
    return CostBreakdown(
        comm=ssr_comm_latency(ssr, flags, ctx),
        comp=ssr_comp_latency(ssr, flags, ctx),
    )


def bucket_objective(
    bucket: SSRBucket, placement: Placement, ctx: CostContext | None = None
) -> tuple[list[CostBreakdown], float]:
    """Per-SSR objective vector and its unweighted sum (the evaluation scalar)."""
    ctx = ctx or CostContext.from_bucket(bucket)
    out = []
    offset = 0
    for ssr in bucket.ssrs:
        out.append(ssr_objective(ssr, _ssr_flags(ssr, placement, offset), ctx))
        offset += len(ssr.functions)
    return out, sum(b.total for b in out)


def ssr_step_cost(ssr: SSR, flags: list[tuple[int, int]], ctx: CostContext) -> float:
    out = 0.0
    for fn, (f, c) in zip(ssr.functions, flags):
        if f + c != 1:
            raise StateError("SSR placement is incomplete")
        out += ctx.fn_step_cost(ssr, fn, on_fog=bool(f))
    return out


def bucket_step_cost(
    bucket: SSRBucket, placement: Placement, ctx: CostContext | None = None
) -> float:
    """Mean per-SSR step cost over the bucket."""
    ctx = ctx or CostContext.from_bucket(bucket)
    total = 0.0
    offset = 0
    for ssr in bucket.ssrs:
        total += ssr_step_cost(ssr, _ssr_flags(ssr, placement, offset), ctx)
        offset += len(ssr.functions)
    return total / len(bucket.ssrs)


def placement_step_cost_sum(
    bucket: SSRBucket, placement: Placement, ctx: CostContext | None = None
) -> float:
    """Total per-function step cost (the brute-force and episode criterion)."""
    ctx = ctx or CostContext.from_bucket(bucket)
    total = 0.0
    offset = 0
    for ssr in bucket.ssrs:
        total += ssr_step_cost(ssr, _ssr_flags(ssr, placement, offset), ctx)
        offset += len(ssr.functions)
    return total
