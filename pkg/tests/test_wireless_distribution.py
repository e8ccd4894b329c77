import random

import pytest

from flowsched.wireless_distribution import (
    MobilePathInstance,
    SensorPathInstance,
    mobile_feasible,
    mobile_makespan_bsearch,
    mobile_makespan_linear,
    sensor_duration_general,
    sensor_duration_uniform,
    sensor_duration_zero_d,
    sensor_exhaustive,
    validate_mobile_schedule,
)

from oracles import sensor_enumerate


def random_mobile(rng, n_max=12):
    n = rng.randint(1, n_max)
    x = sorted(rng.choice([rng.uniform(0, 100), rng.randint(0, 100)]) for _ in range(n))
    return MobilePathInstance(x, rng.uniform(0.5, 30), rng.uniform(0.2, 5))


def random_sensor(rng, n_max=6, regime="general_integer", dp=None):
    n = rng.randint(2, n_max)
    x = sorted(rng.randint(0, 10) for _ in range(n))
    pt = [0] + sorted(rng.randint(0, 10) for _ in range(n - 1))
    if dp is None:
        d = [0] + [rng.randint(0, 3) for _ in range(n - 1)]
    else:
        d = [0] + [dp] * (n - 2) + [rng.randint(0, 3)]
    return SensorPathInstance(x, rng.choice([1, 2, 0.5]), pt, d, regime)


class TestMobileExamples:
    def test_already_in_range(self):
        s = mobile_makespan_linear(MobilePathInstance([0, 3], 3, 1))
        assert s.Tmin == [0, 0] and s.xmax[1] == 3

    def test_mutual_approach(self):
        s = mobile_makespan_linear(MobilePathInstance([0, 5], 3, 1))
        assert s.makespan == pytest.approx(1)
        assert s.xmax[1] == pytest.approx(4)
        assert s.cases[1] == "approach"

    def test_three_nodes(self):
        s = mobile_makespan_linear(MobilePathInstance([0, 2, 10], 3, 1))
        assert s.xmax[1] == 2
        assert s.makespan == pytest.approx(2.5)

    def test_single_node(self):
        assert mobile_makespan_linear(MobilePathInstance([7], 1, 1)).makespan == 0

    def test_wait_case(self):
        # node 2 needs an approach; node 3 reaches xmax(2)+D before node 2 gets it
        s = mobile_makespan_linear(MobilePathInstance([0, 10, 12], 3, 1))
        assert s.cases == ["source", "approach", "wait"]
        assert s.Tmin[2] == s.Tmin[1]
        assert s.xmax[2] == pytest.approx(s.xmax[1] + 3)

    def test_bsearch_examples(self):
        assert mobile_makespan_bsearch(MobilePathInstance([0, 3], 3, 1)) == 0
        got = mobile_makespan_bsearch(MobilePathInstance([0, 5], 3, 1), eps=1e-6)
        assert got == pytest.approx(1, abs=1e-6)

    def test_infeasibility_probe(self):
        inst = MobilePathInstance([0, 5], 3, 1)
        assert not mobile_feasible(inst, 0.5)
        assert mobile_feasible(inst, 1.0)
        assert not mobile_feasible(inst, -1)


class TestMobileErrors:
    def test_bad_instances(self):
        with pytest.raises(ValueError):
            MobilePathInstance([], 1, 1)
        with pytest.raises(ValueError):
            MobilePathInstance([2, 1], 1, 1)
        with pytest.raises(ValueError):
            MobilePathInstance([0, 1], 0, 1)
        with pytest.raises(ValueError):
            MobilePathInstance([0, 1], 1, -1)

    def test_bad_bsearch_args(self):
        inst = MobilePathInstance([0, 5], 3, 1)
        with pytest.raises(ValueError):
            mobile_makespan_bsearch(inst, eps=0)
        with pytest.raises(ValueError):
            mobile_makespan_bsearch(inst, TM=-1)
        with pytest.raises(ValueError):
            mobile_makespan_bsearch(inst, TM=0.5)


@pytest.mark.parametrize("seed", range(10))
def test_mobile_linear_matches_bsearch(seed):
    rng = random.Random(seed)
    for _ in range(40):
        inst = random_mobile(rng)
        s = mobile_makespan_linear(inst)
        assert abs(s.makespan - mobile_makespan_bsearch(inst)) <= 1e-6
        validate_mobile_schedule(inst, s)
        assert all(a <= b for a, b in zip(s.Tmin, s.Tmin[1:]))


def test_two_nodes_closed_form():
    rng = random.Random(5)
    for _ in range(200):
        x2, D, v = rng.uniform(0, 50), rng.uniform(0.5, 10), rng.uniform(0.2, 3)
        expect = max(0.0, (x2 - D) / (2 * v))
        assert mobile_makespan_linear(MobilePathInstance([0, x2], D, v)).makespan == pytest.approx(expect)


def test_larger_range_never_hurts():
    rng = random.Random(6)
    for _ in range(200):
        inst = random_mobile(rng)
        wider = MobilePathInstance(inst.x, inst.D * rng.uniform(1, 2), inst.v)
        assert mobile_makespan_linear(wider).makespan <= mobile_makespan_linear(inst).makespan + 1e-9


class TestSensorExamples:
    def test_zero_d_closed_form(self):
        inst = SensorPathInstance([0, 10], 1, [0, 15], [0, 2], "zero_d")
        assert sensor_duration_zero_d(inst) == 27

    def test_zero_d_round_trip(self):
        inst = SensorPathInstance([0, 4, 10], 2, [0, 0, 0], [0, 0, 0], "zero_d")
        assert sensor_duration_zero_d(inst) == 10

    def test_zero_d_colocated(self):
        inst = SensorPathInstance([3, 3], 1, [0, 4], [0, 5], "zero_d")
        assert sensor_duration_zero_d(inst) == 9

    def test_zero_d_regime_mismatch(self):
        with pytest.raises(ValueError):
            sensor_duration_zero_d(SensorPathInstance([0, 1, 2], 1, [0, 1, 2], [0, 1, 1], "zero_d"))
        with pytest.raises(ValueError):
            sensor_duration_zero_d(SensorPathInstance([0, 1], 1, [0, 1], [0, 1], "uniform_dp"))

    def test_uniform_small(self):
        inst = SensorPathInstance([0, 1, 2], 1, [0, 5, 5], [0, 1, 1], "uniform_dp")
        plan = sensor_duration_uniform(inst, 1)
        total, waiting = sensor_enumerate(inst.x, inst.s, inst.pt, inst.d)
        assert plan.total_duration == pytest.approx(total)
        assert plan.Tmin == pytest.approx(waiting)

    def test_uniform_no_releases(self):
        inst = SensorPathInstance([0, 1, 3, 4], 1, [0, 0, 0, 0], [0, 2, 2, 1], "uniform_dp")
        plan = sensor_duration_uniform(inst)
        assert plan.Tmin == 0
        assert plan.total_duration == 8 + 4 + 1

    def test_uniform_two_nodes(self):
        inst = SensorPathInstance([0, 3], 1, [0, 7], [0, 2], "uniform_dp")
        assert sensor_duration_uniform(inst).total_duration == 6 + 2 + 4

    def test_uniform_regime_mismatch(self):
        with pytest.raises(ValueError):
            sensor_duration_uniform(SensorPathInstance([0, 1, 2, 3], 1, [0] * 4, [0, 1, 2, 0], "uniform_dp"))
        with pytest.raises(ValueError):
            sensor_duration_uniform(SensorPathInstance([0, 1], 1, [0] * 2, [0] * 2, "zero_d"))

    def test_general_no_releases(self):
        inst = SensorPathInstance([0, 2, 5], 1, [0, 0, 0], [0, 3, 1])
        plan = sensor_duration_general(inst)
        assert plan.Tmin == 0 and plan.total_duration == 14

    def test_general_needs_integers(self):
        with pytest.raises(ValueError):
            sensor_duration_general(SensorPathInstance([0, 1, 2], 1, [0, 0, 0], [0, 0.5, 1]))

    def test_instance_validation(self):
        with pytest.raises(ValueError):
            SensorPathInstance([0], 1, [0], [0])
        with pytest.raises(ValueError):
            SensorPathInstance([0, 1, 2], 1, [0, 5, 3], [0, 0, 0])
        with pytest.raises(ValueError):
            SensorPathInstance([0, 1], 0, [0, 0], [0, 0])
        with pytest.raises(ValueError):
            SensorPathInstance([0, 1], 1, [0, 0], [0, -1])
        with pytest.raises(ValueError):
            SensorPathInstance([0, 1], 1, [0, 0], [0, 0], "fancy")


@pytest.mark.parametrize("seed", range(10))
def test_general_matches_enumeration(seed):
    rng = random.Random(100 + seed)
    for _ in range(20):
        inst = random_sensor(rng)
        total, _ = sensor_enumerate(inst.x, inst.s, inst.pt, inst.d)
        plan = sensor_duration_general(inst)
        assert plan.total_duration == pytest.approx(total)
        assert plan.Tmin >= 0


@pytest.mark.parametrize("seed", range(10))
def test_uniform_matches_enumeration_and_general(seed):
    rng = random.Random(200 + seed)
    for _ in range(20):
        inst = random_sensor(rng, regime="uniform_dp", dp=rng.randint(0, 3))
        total, _ = sensor_enumerate(inst.x, inst.s, inst.pt, inst.d)
        uni = sensor_duration_uniform(inst)
        assert uni.total_duration == pytest.approx(total)
        assert sensor_duration_general(inst).total_duration == pytest.approx(uni.total_duration)


def test_zero_d_matches_simulation():
    rng = random.Random(7)
    for _ in range(200):
        inst = random_sensor(rng, regime="zero_d", dp=0)
        total, _ = sensor_enumerate(inst.x, inst.s, inst.pt, inst.d)
        assert sensor_duration_zero_d(inst) == pytest.approx(total)


def test_module_simulator_agrees_with_oracle():
    rng = random.Random(8)
    for _ in range(100):
        inst = random_sensor(rng)
        assert sensor_exhaustive(inst)[1] == pytest.approx(sensor_enumerate(inst.x, inst.s, inst.pt, inst.d)[0])


def test_later_release_never_shortens():
    rng = random.Random(9)
    for _ in range(200):
        inst = random_sensor(rng)
        k = rng.randrange(1, inst.n)
        pt = list(inst.pt)
        pt[k] += rng.randint(1, 5)
        for j in range(k + 1, inst.n):
            pt[j] = max(pt[j], pt[k])
        later = SensorPathInstance(inst.x, inst.s, pt, inst.d)
        assert sensor_duration_general(later).total_duration >= sensor_duration_general(inst).total_duration - 1e-9


def test_dominated_releases_mean_no_waiting():
    inst = SensorPathInstance([0, 2, 4, 9], 1, [0, 1, 2, 3], [0, 1, 2, 1])
    assert sensor_duration_general(inst).Tmin == 0
