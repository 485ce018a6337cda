"""Episodic placement environment with constraint-masked actions.

One episode assigns every function of a bucket, one decision per step.
The default processing order visits SSRs by descending user priority and
functions within an SSR by descending function priority, so high-priority
work gets first claim; insertion order is available for ablation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path

import numpy as np

from . import costs
from .model import (
    RESOURCE_KINDS,
    Placement,
    SSRBucket,
    StateError,
    cloud_feasible,
    fog_feasible,
    validate_bucket,
)

# Entries per function slot in the encoded state vector.
SLOT_WIDTH = 11


class Action(IntEnum):
    FOG = 0
    CLOUD = 1


@dataclass(frozen=True)
class EnvState:
    placement: Placement  # indexed in the bucket's insertion order
    cursor: int  # position in the processing order
    encoded: tuple[float, ...]
    mask: tuple[bool, bool]  # (fog allowed, cloud allowed) for the next function

    @property
    def done(self) -> bool:
        return self.placement.is_complete()


@dataclass(frozen=True)
class StepOutcome:
    next_state: EnvState
    cost: float
    done: bool
    mask: tuple[bool, bool]


@dataclass(frozen=True)
class EpisodeRecord:
    bucket_seed: int | None
    actions: tuple[int, ...]
    step_costs: tuple[float, ...]
    bucket_step_cost: float
    objective_total: float
    fog_count: int
    cloud_count: int

    def to_dict(self) -> dict:
        return {
            "bucket_seed": self.bucket_seed,
            "actions": list(self.actions),
            "step_costs": list(self.step_costs),
            "bucket_step_cost": self.bucket_step_cost,
            "objective_total": self.objective_total,
            "fog_count": self.fog_count,
            "cloud_count": self.cloud_count,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EpisodeRecord":
        return cls(
            bucket_seed=d.get("bucket_seed"),
            actions=tuple(int(a) for a in d["actions"]),
            step_costs=tuple(float(c) for c in d["step_costs"]),
            bucket_step_cost=float(d["bucket_step_cost"]),
            objective_total=float(d["objective_total"]),
            fog_count=int(d["fog_count"]),
            cloud_count=int(d["cloud_count"]),
        )


def write_records(records: list[EpisodeRecord], path: str | Path) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_dict(), sort_keys=True) + "\n")


def read_records(path: str | Path) -> list[EpisodeRecord]:
    out = []
    for line in Path(path).read_text().splitlines():
        if line.strip():
            out.append(EpisodeRecord.from_dict(json.loads(line)))
    return out


class PlacementEnv:
    """Stateless step semantics: reset/step take and return explicit states."""

    def __init__(
        self,
        bucket: SSRBucket,
        order: str = "priority",
        max_functions: int | None = None,
        bucket_seed: int | None = None,
    ):
        violations = validate_bucket(bucket)
        if violations:
            raise ValueError("invalid bucket: " + "; ".join(violations))
        self.bucket = bucket
        self.ctx = costs.CostContext.from_bucket(bucket)
        self.bucket_seed = bucket_seed

        flat = bucket.functions()  # insertion order: (ssr index, fn)
        n = len(flat)
        if order == "priority":
            def sort_key(flat_idx: int):
                ssr_idx, fn = flat[flat_idx]
                user = bucket.user_by_id(bucket.ssrs[ssr_idx].user_id)
                return (-user.priority, ssr_idx, -fn.priority, fn.index)
            self.order = sorted(range(n), key=sort_key)
        elif order == "insertion":
            self.order = list(range(n))
        else:
            raise ValueError(f"unknown processing order {order!r}")

        self.flat = flat
        self.n_functions = n
        self.max_functions = max_functions or n
        if self.max_functions < n:
            raise ValueError(
                f"bucket has {n} functions but the encoder allows {self.max_functions}"
            )
        self._fog_ok = [fog_feasible(fn, bucket.fog) for _, fn in flat]
        self._cloud_ok = [cloud_feasible(fn, bucket.cloud) for _, fn in flat]
        self._static = self._static_encoding()

    def reset(self) -> EnvState:
        placement = Placement.empty(self.n_functions)
        return EnvState(
            placement=placement,
            cursor=0,
            encoded=self._encode(placement, 0),
            mask=self._mask(0),
        )

    def _mask(self, cursor: int) -> tuple[bool, bool]:
        if cursor >= self.n_functions:
            return (False, False)
        idx = self.order[cursor]
        return (self._fog_ok[idx], self._cloud_ok[idx])

    def feasible_actions(self, state: EnvState) -> tuple[bool, bool]:
        if state.done:
            raise StateError("episode is complete")
        return self._mask(state.cursor)

    def step(self, state: EnvState, action: Action) -> StepOutcome:
        if state.done:
            raise StateError("episode is complete")
        mask = self._mask(state.cursor)
        if not mask[action]:
            raise StateError(f"action {Action(action).name} violates the platform limits")

        idx = self.order[state.cursor]
        ssr_idx, fn = self.flat[idx]
        ssr = self.bucket.ssrs[ssr_idx]
        cost = self.ctx.fn_step_cost(ssr, fn, on_fog=(action == Action.FOG))

        placement = state.placement.assign(idx, on_fog=(action == Action.FOG))
        cursor = state.cursor + 1
        next_state = EnvState(
            placement=placement,
            cursor=cursor,
            encoded=self._encode(placement, cursor),
            mask=self._mask(cursor),
        )
        return StepOutcome(
            next_state=next_state,
            cost=cost,
            done=next_state.done,
            mask=next_state.mask,
        )

    def _static_encoding(self) -> np.ndarray:
        vec = np.zeros(self.max_functions * SLOT_WIDTH + 1)
        cloud = self.bucket.cloud
        cap = cloud.per_function_cap
        for pos, idx in enumerate(self.order):
            ssr_idx, fn = self.flat[idx]
            user = self.bucket.user_by_id(self.bucket.ssrs[ssr_idx].user_id)
            demand = costs.total_demand(fn)
            base = pos * SLOT_WIDTH
            vec[base + 2] = fn.code_size / cloud.code_size_limit
            vec[base + 3] = fn.input_size / cloud.input_size_limit
            vec[base + 4] = fn.critical_value / 5
            for k, kind in enumerate(RESOURCE_KINDS):
                vec[base + 5 + k] = demand.get(kind) / cap.get(kind)
            vec[base + 9] = user.priority
            vec[base + 10] = 1.0 if self._fog_ok[idx] else 0.0
        return vec

    def _encode(self, placement: Placement, cursor: int) -> tuple[float, ...]:
        vec = self._static.copy()
        for pos, idx in enumerate(self.order):
            f_flag, c_flag = placement.flags[idx]
            base = pos * SLOT_WIDTH
            vec[base] = f_flag
            vec[base + 1] = c_flag
        vec[-1] = cursor / self.n_functions
        return tuple(vec.tolist())

    def encode(self, state: EnvState) -> tuple[float, ...]:
        return self._encode(state.placement, state.cursor)

    def record(self, actions: list[int], step_costs: list[float],
               placement: Placement) -> EpisodeRecord:
        objectives, total = costs.bucket_objective(self.bucket, placement, self.ctx)
        fog_count = sum(f for f, _ in placement.flags)
        return EpisodeRecord(
            bucket_seed=self.bucket_seed,
            actions=tuple(actions),
            step_costs=tuple(step_costs),
            bucket_step_cost=costs.bucket_step_cost(self.bucket, placement, self.ctx),
            objective_total=total,
            fog_count=fog_count,
            cloud_count=len(placement.flags) - fog_count,
        )
