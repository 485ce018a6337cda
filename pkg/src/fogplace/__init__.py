"""Seedable fog/cloud serverless function placement simulator.

Submodules:
  model      domain entities, validation, bucket JSON serialization
  scoring    user and function priority formulas
  costs      latency cost model and per-step placement costs
  workload   seeded synthetic bucket generation
  env        episodic placement environment with action masking
  agent      from-scratch DQN (value network, replay, training loop)
  baselines  reference policies and the brute-force oracle
  metrics    placement reports and CSV schema
  experiment sweep runner and experiment config
  cli        command line interface
"""
from .model import (
    EnvironmentLimits,
    Placement,
    ResourceKind,
    ResourceVector,
    SSR,
    SSRBucket,
    ServerlessFunction,
    User,
    load_bucket,
    save_bucket,
    validate_bucket,
)
from .workload import GeneratorConfig, generate_bucket, generate_sweep
from .env import Action, PlacementEnv
from .agent import AgentConfig, ValueNetwork, train
from .experiment import ExperimentConfig

__all__ = [
    "Action",
    "AgentConfig",
    "EnvironmentLimits",
    "ExperimentConfig",
    "GeneratorConfig",
    "Placement",
    "PlacementEnv",
    "ResourceKind",
    "ResourceVector",
    "SSR",
    "SSRBucket",
    "ServerlessFunction",
    "User",
    "ValueNetwork",
    "generate_bucket",
    "generate_sweep",
    "load_bucket",
    "save_bucket",
    "train",
    "validate_bucket",
]
