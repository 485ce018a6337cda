"""Priority scoring: user priorities and per-function placement priorities.

All functions are pure. The fog node sits at the origin of the bucket's
coordinate frame; ``user_distance`` takes explicit positions for callers
that use another frame.
"""
from __future__ import annotations

import math
from dataclasses import replace

from .model import SSR, SSRBucket, ServerlessFunction, User

# Makes the maximum function priority exactly 5, matching the convention
# that top functions within an SSR carry priority value 5.
DEFAULT_DELTA = 0.2


def user_distance(fog_pos: tuple[float, float], user_pos: tuple[float, float]) -> float:
    """Euclidean distance in km between the fog node and a user."""
    return math.hypot(user_pos[0] - fog_pos[0], user_pos[1] - fog_pos[1])


def distance_priority(d: float, cap: float) -> float:
    """d / D: 0 at the fog node, 1 at the edge of the coverage disc."""
    if cap <= 0:
        raise ValueError(f"coverage radius must be > 0, got {cap}")
    if d < 0 or d > cap:
        raise ValueError(f"distance {d} outside coverage radius {cap}")
    return d / cap


def latency_priority(latency: float, all_latencies: list[float]) -> float:
    """l_i / max over all users; self-normalizing, always in (0, 1]."""
    if not all_latencies:
        raise ValueError("latency list is empty")
    if latency <= 0 or any(l <= 0 for l in all_latencies):
        raise ValueError("latencies must be > 0")
    return latency / max(all_latencies)


def user_priority(pd: float, pl: float, p_omega: float) -> float:
    """Blend of distance and latency priority, weighted by p_omega."""
    for name, v in (("distance priority", pd), ("latency priority", pl), ("blend", p_omega)):
        if not 0 <= v <= 1:
            raise ValueError(f"{name} {v} outside [0, 1]")
    return p_omega * pd + pl * (1 - p_omega)


def function_priority(fn: ServerlessFunction, ssr: SSR, delta: float = DEFAULT_DELTA) -> float:
    """Preference of a function for fog placement, in [1/(delta+1), 1/delta].

    Higher critical value and larger code/input size (relative to the
    largest in the same SSR) all push the priority up.
    """
    if delta <= 0:
        raise ValueError(f"delta must be > 0, got {delta}")
    if not ssr.functions:
        raise ValueError("SSR has no functions")
    max_code = max(f.code_size for f in ssr.functions)
    max_input = max(f.input_size for f in ssr.functions)
    if max_code == 0 or max_input == 0:
        raise ValueError("degenerate SSR: zero maximum code or input size")
    critical_term = (5 - fn.critical_value) / 5
    code_term = (max_code - fn.code_size) / max_code
    input_term = (max_input - fn.input_size) / max_input
    return 1.0 / (delta + critical_term * code_term * input_term)


def with_priorities(bucket: SSRBucket, delta: float = DEFAULT_DELTA) -> SSRBucket:
    """Return a copy of the bucket with all cached priority fields filled.

    User priorities need the whole latency population, and function
    priorities need the enclosing SSR, so both are bucket-level steps.
    """
    latencies = [u.latency for u in bucket.users]
    users = []
    for u in bucket.users:
        pd = distance_priority(user_distance((0.0, 0.0), u.position), bucket.distance_cap)
        pl = latency_priority(u.latency, latencies)
        users.append(replace(u, priority=user_priority(pd, pl, bucket.priority_blend)))

    ssrs = []
    for ssr in bucket.ssrs:
        fns = tuple(
            replace(fn, priority=function_priority(fn, ssr, delta)) for fn in ssr.functions
        )
        ssrs.append(replace(ssr, functions=fns))

    return replace(bucket, users=tuple(users), ssrs=tuple(ssrs))
