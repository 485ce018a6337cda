"""Deep Q-learning agent built from scratch on numpy.

The value network is a plain rectifier MLP trained with SGD on the squared
temporal-difference error. Rewards are negated step costs, so maximizing Q
minimizes the placement cost. Ties in the greedy action break toward the
cloud, matching the goal of keeping the fog as free as possible.
"""
from __future__ import annotations

import csv
import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .env import Action, EpisodeRecord, PlacementEnv
from .model import Placement

CHECKPOINT_VERSION = 1


class TrainingFault(RuntimeError):
    """Non-finite parameters or inputs encountered during training."""


@dataclass(frozen=True)
class AgentConfig:
    learning_rate: float = 1e-3
    gamma: float = 0.95
    epsilon_start: float = 1.0
    epsilon_end: float = 0.05
    epsilon_decay: float = 0.995  # multiplicative, per episode
    batch_size: int = 64
    replay_capacity: int = 10_000
    target_sync_interval: int = 200  # steps
    episodes: int = 500
    hidden_sizes: tuple[int, ...] = (64, 64)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.learning_rate <= 0:
            raise ValueError("learning rate must be > 0")
        if not 0 <= self.gamma <= 1:
            raise ValueError("gamma must be in [0, 1]")
        if not 0 <= self.epsilon_end <= self.epsilon_start <= 1:
            raise ValueError("epsilon schedule must satisfy 0 <= end <= start <= 1")

    def to_dict(self) -> dict:
        return {
            "learning_rate": self.learning_rate,
            "gamma": self.gamma,
            "epsilon_start": self.epsilon_start,
            "epsilon_end": self.epsilon_end,
            "epsilon_decay": self.epsilon_decay,
            "batch_size": self.batch_size,
            "replay_capacity": self.replay_capacity,
            "target_sync_interval": self.target_sync_interval,
            "episodes": self.episodes,
            "hidden_sizes": list(self.hidden_sizes),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AgentConfig":
        kwargs = dict(d)
        if "hidden_sizes" in kwargs:
            kwargs["hidden_sizes"] = tuple(int(h) for h in kwargs["hidden_sizes"])
        return cls(**kwargs)


class ValueNetwork:
    """Rectifier MLP mapping an encoded state to one Q-value per action."""

    def __init__(self, input_size: int, hidden_sizes: tuple[int, ...],
                 rng: np.random.Generator | None = None, n_actions: int = 2):
        sizes = [input_size, *hidden_sizes, n_actions]
        self.sizes = sizes
        self.weights: list[np.ndarray] = []
        self.biases: list[np.ndarray] = []
        rng = rng or np.random.default_rng(0)
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            bound = np.sqrt(6.0 / (fan_in + fan_out))
            self.weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
            self.biases.append(np.zeros(fan_out))

    @property
    def input_size(self) -> int:
        return self.sizes[0]

    def forward(self, x: np.ndarray) -> np.ndarray:
        """Q-values for a single state (1-d) or a batch (2-d)."""
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        a = x[None, :] if single else x
        if a.shape[1] != self.input_size:
            raise ValueError(f"expected input size {self.input_size}, got {a.shape[1]}")
        for w, b in zip(self.weights[:-1], self.biases[:-1]):
            a = np.maximum(a @ w + b, 0.0)
        a = a @ self.weights[-1] + self.biases[-1]
        return a[0] if single else a

    def _forward_cached(self, x: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
        pre: list[np.ndarray] = []
        a = x
        for w, b in zip(self.weights[:-1], self.biases[:-1]):
            z = a @ w + b
            pre.append(z)
            a = np.maximum(z, 0.0)
        out = a @ self.weights[-1] + self.biases[-1]
        return pre, out

    def gradient(
        self, states: np.ndarray, actions: np.ndarray, targets: np.ndarray
    ) -> tuple[list[np.ndarray], list[np.ndarray], float]:
        """Exact gradients of mean squared error between Q(s, a) and targets."""
        states = np.asarray(states, dtype=float)
        actions = np.asarray(actions, dtype=int)
        targets = np.asarray(targets, dtype=float)
        if states.size == 0:
            raise ValueError("batch is empty")
        if not (np.isfinite(states).all() and np.isfinite(targets).all()):
            raise TrainingFault("non-finite batch input")
        batch = states.shape[0]

        pre, q = self._forward_cached(states)
        picked = q[np.arange(batch), actions]
        loss = float(np.mean((picked - targets) ** 2))

        # dL/dq, non-zero only at the taken action
        dq = np.zeros_like(q)
        dq[np.arange(batch), actions] = 2.0 * (picked - targets) / batch

        grads_w: list[np.ndarray] = [np.empty(0)] * len(self.weights)
        grads_b: list[np.ndarray] = [np.empty(0)] * len(self.biases)
        activations = [states] + [np.maximum(z, 0.0) for z in pre]
        delta = dq
        for layer in range(len(self.weights) - 1, -1, -1):
            grads_w[layer] = activations[layer].T @ delta
            grads_b[layer] = delta.sum(axis=0)
            if layer > 0:
                delta = (delta @ self.weights[layer].T) * (pre[layer - 1] > 0)
        return grads_w, grads_b, loss

    def apply_gradients(self, grads_w, grads_b, lr: float) -> None:
        for w, gw in zip(self.weights, grads_w):
            w -= lr * gw
        for b, gb in zip(self.biases, grads_b):
            b -= lr * gb
        if not all(np.isfinite(w).all() for w in self.weights):
            raise TrainingFault("non-finite network parameters after update")

    def copy(self) -> "ValueNetwork":
        clone = ValueNetwork.__new__(ValueNetwork)
        clone.sizes = list(self.sizes)
        clone.weights = [w.copy() for w in self.weights]
        clone.biases = [b.copy() for b in self.biases]
        return clone

    def save(self, path: str | Path) -> None:
        doc = {
            "version": CHECKPOINT_VERSION,
            "sizes": self.sizes,
            "weights": [w.tolist() for w in self.weights],
            "biases": [b.tolist() for b in self.biases],
        }
        Path(path).write_text(json.dumps(doc, sort_keys=True))

    @classmethod
    def load(cls, path: str | Path) -> "ValueNetwork":
        doc = json.loads(Path(path).read_text())
        if doc.get("version") != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {doc.get('version')}")
        net = cls.__new__(cls)
        net.sizes = [int(s) for s in doc["sizes"]]
        net.weights = [np.asarray(w, dtype=float) for w in doc["weights"]]
        net.biases = [np.asarray(b, dtype=float) for b in doc["biases"]]
        return net


class ReplayBuffer:
    """FIFO experience store of (state, action, reward, next state, done, next mask)."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self.entries: deque = deque(maxlen=capacity)

    def push(self, state, action, reward, next_state, done, next_mask) -> None:
        self.entries.append((state, action, reward, next_state, done, next_mask))

    def __len__(self) -> int:
        return len(self.entries)

    def sample(self, batch_size: int, rng: np.random.Generator):
        idx = rng.integers(0, len(self.entries), size=batch_size)
        return [self.entries[i] for i in idx]


def select_action(
    net: ValueNetwork,
    encoded,
    mask: tuple[bool, bool],
    epsilon: float,
    rng: np.random.Generator,
) -> Action:
    """Epsilon-greedy over the feasible actions; greedy ties go to the cloud."""
    feasible = [a for a in (Action.FOG, Action.CLOUD) if mask[a]]
    if not feasible:
        raise StateErrorForSelection("no feasible action")
    if len(feasible) == 1:
        return feasible[0]
    if rng.uniform() < epsilon:
        return feasible[int(rng.integers(0, len(feasible)))]
    q = net.forward(np.asarray(encoded))
    best = max(feasible, key=lambda a: (q[a], a == Action.CLOUD))
    return best


class StateErrorForSelection(RuntimeError):
    """Empty feasibility mask handed to action selection."""


@dataclass
class TrainResult:
    net: ValueNetwork
    log: list[dict] = field(default_factory=list)  # episode, total_cost, epsilon, loss


def _batch_targets(
    batch, target_net: ValueNetwork, gamma: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    states = np.asarray([b[0] for b in batch], dtype=float)
    actions = np.asarray([b[1] for b in batch], dtype=int)
    rewards = np.asarray([b[2] for b in batch], dtype=float)
    next_states = np.asarray([b[3] for b in batch], dtype=float)
    dones = np.asarray([b[4] for b in batch], dtype=bool)
    masks = np.asarray([b[5] for b in batch], dtype=bool)

    q_next = target_net.forward(next_states)
    # infeasible continuations are excluded from the max
    q_next = np.where(masks, q_next, -np.inf)
    best_next = q_next.max(axis=1)
    best_next = np.where(np.isfinite(best_next), best_next, 0.0)
    targets = rewards + np.where(dones, 0.0, gamma * best_next)
    return states, actions, targets


def train(env_factory: Callable[[int], PlacementEnv], cfg: AgentConfig) -> TrainResult:
    """Run cfg.episodes episodes of DQN training; fully seeded and deterministic."""
    rng = np.random.default_rng(cfg.seed)
    probe = env_factory(0)
    input_size = len(probe.reset().encoded)
    net = ValueNetwork(input_size, cfg.hidden_sizes, rng)
    target = net.copy()
    replay = ReplayBuffer(cfg.replay_capacity)

    epsilon = cfg.epsilon_start
    log: list[dict] = []
    step_count = 0
    for episode in range(cfg.episodes):
        env = env_factory(episode)
        state = env.reset()
        total_cost = 0.0
        losses: list[float] = []
        try:
            while not state.done:
                action = select_action(net, state.encoded, state.mask, epsilon, rng)
                outcome = env.step(state, action)
                replay.push(
                    state.encoded, int(action), -outcome.cost,
                    outcome.next_state.encoded, outcome.done, outcome.mask,
                )
                total_cost += outcome.cost
                state = outcome.next_state
                step_count += 1

                if len(replay) >= cfg.batch_size:
                    batch = replay.sample(cfg.batch_size, rng)
                    states, actions, targets = _batch_targets(batch, target, cfg.gamma)
                    gw, gb, loss = net.gradient(states, actions, targets)
                    net.apply_gradients(gw, gb, cfg.learning_rate)
                    losses.append(loss)
                if step_count % cfg.target_sync_interval == 0:
                    target = net.copy()
        except TrainingFault as fault:
            raise TrainingFault(f"episode {episode}: {fault}") from fault

        log.append({
            "episode": episode,
            "total_cost": total_cost,
            "epsilon": epsilon,
            "loss": float(np.mean(losses)) if losses else 0.0,
        })
        epsilon = max(cfg.epsilon_end, epsilon * cfg.epsilon_decay)

    return TrainResult(net=net, log=log)


def write_training_log(log: list[dict], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["episode", "total_cost", "epsilon", "loss"])
        writer.writeheader()
        for row in log:
            writer.writerow(row)


def greedy_rollout(net: ValueNetwork, env: PlacementEnv) -> tuple[Placement, EpisodeRecord]:
    """One epsilon=0 episode; returns the final placement and its record."""
    rng = np.random.default_rng(0)  # never consulted at epsilon 0
    state = env.reset()
    actions: list[int] = []
    step_costs: list[float] = []
    while not state.done:
        action = select_action(net, state.encoded, state.mask, 0.0, rng)
        outcome = env.step(state, action)
        actions.append(int(action))
        step_costs.append(outcome.cost)
        state = outcome.next_state
    return state.placement, env.record(actions, step_costs, state.placement)


def evaluate(net: ValueNetwork, envs: list[PlacementEnv]) -> list[tuple[Placement, EpisodeRecord]]:
    return [greedy_rollout(net, env) for env in envs]
