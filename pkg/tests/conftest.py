import dataclasses

import pytest

from fogplace.model import (
    EnvironmentLimits,
    ResourceVector,
    SSR,
    SSRBucket,
    ServerlessFunction,
    User,
)


def make_limits(cpu=6, ram=5120, storage=10240, net_io=10240,
                code=500.0, input_size=2500.0, link=0.0):
    return EnvironmentLimits(
        per_function_cap=ResourceVector(cpu=cpu, ram=ram, storage=storage, net_io=net_io),
        code_size_limit=code,
        input_size_limit=input_size,
        link_latency=link,
    )


def make_fn(ssr_index=0, index=0, code=100.0, input_size=500.0, critical=3,
            base=None, suppl=None, priority=None):
    return ServerlessFunction(
        ssr_index=ssr_index,
        index=index,
        code_size=code,
        input_size=input_size,
        critical_value=critical,
        base_demand=base or ResourceVector(),
        supplementary_demand=suppl or ResourceVector(),
        priority=priority,
    )


def make_bucket(ssrs, users, fog=None, cloud=None, weights=None,
                distance_cap=100.0, priority_blend=0.5):
    return SSRBucket(
        ssrs=tuple(ssrs),
        users=tuple(users),
        fog=fog or make_limits(cpu=2, ram=1024, storage=1024, net_io=2048,
                               code=300.0, input_size=1500.0),
        cloud=cloud or make_limits(link=40.0),
        importance_factors=weights or ResourceVector(0.25, 0.25, 0.25, 0.25),
        distance_cap=distance_cap,
        priority_blend=priority_blend,
    )


def make_user(uid=0, position=(3.0, 4.0), latency=50.0, priority=0.5):
    return User(id=uid, position=position, latency=latency, priority=priority)


@pytest.fixture
def simple_bucket():
    """Two SSRs, zero-demand functions, exact normalized latencies.

    User 0: latency 40 of max 100 -> normalized 0.4; priority 0.6.
    User 1: latency 100 -> normalized 1.0; priority 0.5.
    Cloud link latency 10 of max 100 -> normalized 0.1.
    """
    users = [
        make_user(0, latency=40.0, priority=0.6),
        make_user(1, latency=100.0, priority=0.5),
    ]
    ssrs = [
        SSR(user_id=0, functions=(
            make_fn(0, 0, priority=5.0),
            make_fn(0, 1, priority=2.5),
        )),
        SSR(user_id=1, functions=(make_fn(1, 0, priority=5.0),)),
    ]
    return make_bucket(ssrs, users, cloud=make_limits(link=10.0))
