"""Reference placement policies and the exhaustive brute-force oracle."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import costs
from .model import Placement, SSRBucket, cloud_feasible, fog_feasible

BRUTE_FORCE_LIMIT = 14


def _feasible_pairs(bucket: SSRBucket) -> list[tuple[bool, bool]]:
    return [
        (fog_feasible(fn, bucket.fog), cloud_feasible(fn, bucket.cloud))
        for _, fn in bucket.functions()
    ]


def fog_first(bucket: SSRBucket) -> Placement:
    """Fog whenever the per-function fog constraints permit; stand-in for
    fog-greedy offloading baselines, not a re-implementation of any of them."""
    flags = tuple(
        (1, 0) if fog_ok else (0, 1) for fog_ok, _ in _feasible_pairs(bucket)
    )
    return Placement(flags=flags)


def cloud_only(bucket: SSRBucket) -> Placement:
    return Placement(flags=((0, 1),) * bucket.n_functions)


def random_feasible(bucket: SSRBucket, rng: np.random.Generator) -> Placement:
    flags = []
    for fog_ok, cloud_ok in _feasible_pairs(bucket):
        options = [(1, 0)] * fog_ok + [(0, 1)] * cloud_ok
        if not options:
            raise ValueError("function with no feasible platform")
        flags.append(options[int(rng.integers(0, len(options)))])
    return Placement(flags=tuple(flags))


def greedy_cost(bucket: SSRBucket, ctx: costs.CostContext | None = None) -> Placement:
    """Per function, the feasible action with the smaller step cost; ties to cloud."""
    ctx = ctx or costs.CostContext.from_bucket(bucket)
    flags = []
    for (ssr_idx, fn), (fog_ok, cloud_ok) in zip(bucket.functions(), _feasible_pairs(bucket)):
        ssr = bucket.ssrs[ssr_idx]
        if not fog_ok:
            flags.append((0, 1))
            continue
        if not cloud_ok:
            flags.append((1, 0))
            continue
        fog_c = ctx.fn_step_cost(ssr, fn, on_fog=True)
        cloud_c = ctx.fn_step_cost(ssr, fn, on_fog=False)
        flags.append((1, 0) if fog_c < cloud_c else (0, 1))
    return Placement(flags=tuple(flags))


@dataclass(frozen=True)
class BruteForceResult:
    best_step_placement: Placement
    best_step_cost: float  # summed per-function step cost
    best_objective_placement: Placement
    best_objective: float  # summed per-SSR objective


def brute_force_optimum(bucket: SSRBucket) -> BruteForceResult:
    """Enumerate all feasible placements of a small bucket.

    Ties break toward the placement whose action tuple (0 = fog, 1 = cloud)
    is lexicographically smallest, which the enumeration order guarantees.
    """
    n = bucket.n_functions
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"bucket has {n} functions; oracle limit is {BRUTE_FORCE_LIMIT}")
    ctx = costs.CostContext.from_bucket(bucket)

    options = []
    for fog_ok, cloud_ok in _feasible_pairs(bucket):
        opts = [a for a, ok in ((0, fog_ok), (1, cloud_ok)) if ok]
        if not opts:
            raise ValueError("function with no feasible platform")
        options.append(opts)

    best_step: tuple[float, Placement] | None = None
    best_obj: tuple[float, Placement] | None = None
    for combo in itertools.product(*options):
        placement = Placement(
            flags=tuple((1, 0) if a == 0 else (0, 1) for a in combo)
        )
        step = costs.placement_step_cost_sum(bucket, placement, ctx)
        _, objective = costs.bucket_objective(bucket, placement, ctx)
        if best_step is None or step < best_step[0]:
            best_step = (step, placement)
        if best_obj is None or objective < best_obj[0]:
            best_obj = (objective, placement)

    assert best_step is not None and best_obj is not None
    return BruteForceResult(
        best_step_placement=best_step[1],
        best_step_cost=best_step[0],
        best_objective_placement=best_obj[1],
        best_objective=best_obj[0],
    )
