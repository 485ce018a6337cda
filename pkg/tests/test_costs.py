import numpy as np
import pytest

from fogplace import costs
from fogplace.model import Placement, ResourceVector, SSR, StateError
from fogplace.workload import GeneratorConfig, generate_bucket

from conftest import make_bucket, make_fn, make_limits, make_user

UNIFORM = ResourceVector(0.25, 0.25, 0.25, 0.25)
# caps of 2 everywhere so a demand of 1 gives a ratio of 0.5
HALF_CAP = make_limits(cpu=2, ram=2, storage=2, net_io=2, code=500, input_size=2500)
ONES = ResourceVector(1, 1, 1, 1)


def test_per_function_cap_selects_platform():
    fog = make_limits(cpu=2, ram=1024, storage=1024, net_io=2048)
    cloud = make_limits()
    assert costs.per_function_cap(1, 0, fog, cloud) == fog.per_function_cap
    assert costs.per_function_cap(0, 1, fog, cloud) == cloud.per_function_cap
    with pytest.raises(StateError):
        costs.per_function_cap(0, 0, fog, cloud)


def test_total_demand():
    fn = make_fn(base=ResourceVector(1, 100, 10, 10))
    assert costs.total_demand(fn).as_tuple() == (1, 100, 10, 10)
    fn = make_fn(base=ResourceVector(1, 100, 10, 10), suppl=ResourceVector(1, 50, 20, 30))
    assert costs.total_demand(fn).as_tuple() == (2, 150, 30, 40)
    assert costs.total_demand(make_fn()).as_tuple() == (0, 0, 0, 0)


def test_ssr_demand_sums():
    single = SSR(user_id=0, functions=(make_fn(base=ResourceVector(1, 100, 10, 10)),))
    assert costs.ssr_base_demand(single).as_tuple() == (1, 100, 10, 10)
    two = SSR(user_id=0, functions=(
        make_fn(base=ResourceVector(1, 100, 10, 10)),
        make_fn(index=1, base=ResourceVector(2, 200, 20, 20)),
    ))
    assert costs.ssr_base_demand(two).as_tuple() == (3, 300, 30, 30)
    assert costs.ssr_supplementary_demand(two).as_tuple() == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        costs.ssr_base_demand(SSR(user_id=0, functions=()))


def test_comm_latency_fn():
    assert costs.comm_latency_fn(1, 0, 0.6, 0.1) == pytest.approx(0.6, abs=1e-9)
    assert costs.comm_latency_fn(0, 1, 0.6, 0.1) == pytest.approx(0.7, abs=1e-9)
    assert costs.comm_latency_fn(0, 1, 0.0, 0.0) == 0.0
    with pytest.raises(StateError):
        costs.comm_latency_fn(0, 0, 0.6, 0.1)


def test_comp_latency_fn_zero_demand():
    fn = make_fn()
    assert costs.comp_latency_fn(fn, 1, 0, HALF_CAP, HALF_CAP, UNIFORM, 0.4, 0.1) == 0.0


def test_comp_latency_fn_hand_value_fog():
    # 3 * 0.5 * 0.25 + 0.5 * 0.25 * 0.4 = 0.425
    fn = make_fn(base=ONES)
    value = costs.comp_latency_fn(fn, 1, 0, HALF_CAP, HALF_CAP, UNIFORM, 0.4, 0.0)
    assert value == pytest.approx(0.425, abs=1e-9)


def test_comp_latency_fn_hand_value_cloud():
    fn = make_fn(base=ONES)
    value = costs.comp_latency_fn(fn, 0, 1, HALF_CAP, HALF_CAP, UNIFORM, 0.0, 0.4)
    assert value == pytest.approx(0.425, abs=1e-9)


def test_step_cost_fog():
    zero = make_fn()
    assert costs.step_cost_fog(zero, HALF_CAP, UNIFORM, 0.4, 0.6) == pytest.approx(0.6)
    # 0.375 + 0.05 + 0.6 = 1.025
    fn = make_fn(base=ONES)
    assert costs.step_cost_fog(fn, HALF_CAP, UNIFORM, 0.4, 0.6) == pytest.approx(1.025, abs=1e-9)
    assert costs.step_cost_fog(zero, HALF_CAP, UNIFORM, 0.4, 0.0) == 0.0


def test_step_cost_cloud():
    zero = make_fn()
    assert costs.step_cost_cloud(zero, HALF_CAP, UNIFORM, 0.4, 0.1, 0.6) == pytest.approx(0.7)
    # 0.375 + 0.125 * 0.5 + 0.6 + 0.1 = 1.1375
    fn = make_fn(base=ONES)
    value = costs.step_cost_cloud(fn, HALF_CAP, UNIFORM, 0.4, 0.1, 0.6)
    assert value == pytest.approx(1.1375, abs=1e-9)
    assert costs.step_cost_cloud(zero, HALF_CAP, UNIFORM, 0.4, 0.0, 0.0) == 0.0


def test_ssr_comm_latency(simple_bucket):
    ctx = costs.CostContext.from_bucket(simple_bucket)
    ssr = simple_bucket.ssrs[0]  # user priority 0.6, normalized link 0.1
    assert costs.ssr_comm_latency(ssr, [(1, 0), (0, 1)], ctx) == pytest.approx(1.3, abs=1e-9)
    single = simple_bucket.ssrs[1]  # priority 0.5 + cloud link 0.1 + 0.1
    assert costs.ssr_comm_latency(single, [(0, 1)], ctx) == pytest.approx(0.6, abs=1e-9)
    assert costs.ssr_comm_latency(single, [(1, 0)], ctx) == pytest.approx(0.5, abs=1e-9)


def test_ssr_comp_latency_priority_weighting(simple_bucket):
    # functions with priorities 5.0 and 2.5: weights 1.0 and 0.5
    ctx = costs.CostContext.from_bucket(simple_bucket)
    ssr = simple_bucket.ssrs[0]
    fns = (
        make_fn(0, 0, base=ONES, priority=5.0),
        make_fn(0, 1, base=ONES, priority=2.5),
    )
    import dataclasses
    weighted = dataclasses.replace(ssr, functions=fns)
    bucket = dataclasses.replace(
        simple_bucket,
        ssrs=(weighted, simple_bucket.ssrs[1]),
        fog=HALF_CAP, cloud=HALF_CAP,
    )
    ctx = costs.CostContext.from_bucket(
        dataclasses.replace(bucket, cloud=dataclasses.replace(HALF_CAP, link_latency=10.0))
    )
    # fog placement, user 0: l_i = 0.4 -> per-function comp 0.425
    value = costs.ssr_comp_latency(weighted, [(1, 0), (1, 0)], ctx)
    assert value == pytest.approx(0.425 * 1.0 + 0.425 * 0.5, abs=1e-9)


def test_ssr_comp_latency_two_term_hand_value(simple_bucket):
    # comp values (0.4, 0.2) with priorities (5.0, 2.5) -> 0.4 + 0.2 * 0.5 = 0.5
    weights = [1.0, 0.5]
    comps = [0.4, 0.2]
    assert sum(c * w for c, w in zip(comps, weights)) == pytest.approx(0.5)


def test_ssr_objective_total(simple_bucket):
    ctx = costs.CostContext.from_bucket(simple_bucket)
    breakdown = costs.ssr_objective(simple_bucket.ssrs[0], [(1, 0), (0, 1)], ctx)
    assert breakdown.total == pytest.approx(breakdown.comm + breakdown.comp, abs=1e-12)
    # zero-demand functions: comp is 0, total is the comm latency 1.3
    assert breakdown.total == pytest.approx(1.3, abs=1e-9)
    with pytest.raises(StateError):
        costs.ssr_objective(simple_bucket.ssrs[0], [(1, 0), (0, 0)], ctx)


def test_bucket_step_cost_is_mean_of_ssrs():
    # SSR 0: two zero-demand fog functions with P=0.5 -> cost 1.0
    # SSR 1: six zero-demand fog functions with P=0.5 -> cost 3.0
    users = [make_user(0, latency=50, priority=0.5), make_user(1, latency=50, priority=0.5)]
    ssrs = [
        SSR(user_id=0, functions=tuple(make_fn(0, j, priority=5.0) for j in range(2))),
        SSR(user_id=1, functions=tuple(make_fn(1, j, priority=5.0) for j in range(6))),
    ]
    bucket = make_bucket(ssrs, users)
    placement = Placement(flags=((1, 0),) * 8)
    assert costs.bucket_step_cost(bucket, placement) == pytest.approx(2.0, abs=1e-9)
    assert costs.placement_step_cost_sum(bucket, placement) == pytest.approx(4.0, abs=1e-9)


def test_single_ssr_bucket_step_cost_equals_ssr_cost(simple_bucket):
    import dataclasses
    bucket = dataclasses.replace(
        simple_bucket,
        ssrs=(simple_bucket.ssrs[1],),
        users=(simple_bucket.users[1],),
    )
    ctx = costs.CostContext.from_bucket(bucket)
    placement = Placement(flags=((0, 1),))
    ssr_cost = costs.ssr_step_cost(bucket.ssrs[0], [(0, 1)], ctx)
    assert costs.bucket_step_cost(bucket, placement, ctx) == pytest.approx(ssr_cost)


def _random_fn(rng, ssr_index=0, index=0):
    demand = ResourceVector(*rng.uniform(0.01, 2.0, size=4))
    return make_fn(ssr_index, index, base=demand, priority=1.0)


def test_cloud_dominance_under_equal_ratios_fuzz():
    rng = np.random.default_rng(21)
    for _ in range(500):
        fn = _random_fn(rng)
        caps = make_limits(cpu=3, ram=3, storage=3, net_io=3)
        weights = UNIFORM
        l_i = float(rng.uniform(0, 1))
        lf = float(rng.uniform(0, 1))
        p_i = float(rng.uniform(0, 1))
        fog_cost = costs.step_cost_fog(fn, caps, weights, l_i, p_i)
        cloud_cost = costs.step_cost_cloud(fn, caps, weights, l_i, lf, p_i)
        assert cloud_cost - fog_cost >= -1e-12


def test_step_cost_monotone_in_demand_fuzz():
    rng = np.random.default_rng(22)
    caps = make_limits(cpu=4, ram=4, storage=4, net_io=4)
    for _ in range(300):
        fn = _random_fn(rng)
        kind = int(rng.integers(0, 4))
        bump = [0.0] * 4
        bump[kind] = float(rng.uniform(0.01, 1.0))
        import dataclasses
        bigger = dataclasses.replace(fn, base_demand=fn.base_demand + ResourceVector(*bump))
        l_i = float(rng.uniform(0.01, 1))
        lf = float(rng.uniform(0.01, 1))
        assert (costs.step_cost_fog(bigger, caps, UNIFORM, l_i, 0.5)
                > costs.step_cost_fog(fn, caps, UNIFORM, l_i, 0.5))
        assert (costs.step_cost_cloud(bigger, caps, UNIFORM, l_i, lf, 0.5)
                > costs.step_cost_cloud(fn, caps, UNIFORM, l_i, lf, 0.5))


def test_cap_selector_partition_fuzz():
    rng = np.random.default_rng(23)
    fog = make_limits(cpu=2, ram=1024, storage=1024, net_io=2048)
    cloud = make_limits()
    for _ in range(200):
        on_fog = bool(rng.integers(0, 2))
        f, c = (1, 0) if on_fog else (0, 1)
        cap = costs.per_function_cap(f, c, fog, cloud)
        # f * fog + c * cloud reproduces the selected cap componentwise
        expected = tuple(
            f * a + c * b
            for a, b in zip(fog.per_function_cap.as_tuple(), cloud.per_function_cap.as_tuple())
        )
        assert cap.as_tuple() == expected


def test_episode_additivity_recomputation():
    bucket = generate_bucket(GeneratorConfig(seed=15, n_ssrs=(3, 3), functions_per_ssr=(2, 4)))
    ctx = costs.CostContext.from_bucket(bucket)
    rng = np.random.default_rng(5)
    flags = []
    from fogplace.model import fog_feasible
    for _, fn in bucket.functions():
        if fog_feasible(fn, bucket.fog) and rng.uniform() < 0.5:
            flags.append((1, 0))
        else:
            flags.append((0, 1))
    placement = Placement(flags=tuple(flags))
    total = costs.placement_step_cost_sum(bucket, placement, ctx)
    # recompute per function, independent of the SSR-level path
    expected = 0.0
    idx = 0
    for i, ssr in enumerate(bucket.ssrs):
        for fn in ssr.functions:
            expected += ctx.fn_step_cost(ssr, fn, on_fog=placement.flags[idx] == (1, 0))
            idx += 1
    assert total == pytest.approx(expected, abs=1e-9)
    assert costs.bucket_step_cost(bucket, placement, ctx) == pytest.approx(
        total / len(bucket.ssrs), abs=1e-12)
