import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from flowsched.timeline import (
    BACKENDS,
    Quantizer,
    SignedSlotArray,
    SlotTimeline,
    longest_free_interval,
)

ALL_BACKENDS = [(b, "sorted") for b in BACKENDS] + [("grouped_slots", "hashed")]


def make(backend, view, **kw):
    return SlotTimeline(backend=backend, view=view, **kw)


@pytest.mark.parametrize("backend,view", ALL_BACKENDS)
def test_range_add_then_min(backend, view):
    tl = make(backend, view, T=4, B_max=10)
    tl.range_add(2, 3, -4)
    assert tl.avb == [10, 6, 6, 10]
    assert tl.range_min(1, 4) == 6
    assert tl.range_max(2, 4) == (10, 4)
    for t in range(1, 5):
        assert tl.range_min(t, t) == tl.avb[t - 1]
    tl.range_add(1, 4, 0)
    assert tl.avb == [10, 6, 6, 10]


@pytest.mark.parametrize("backend,view", ALL_BACKENDS)
def test_max_ties_go_left(backend, view):
    tl = make(backend, view, T=9, B_max=5)
    assert tl.range_max(3, 8) == (5, 3)


def test_grouped_lazy_globalbw():
    tl = SlotTimeline(6, B_max=5, backend="grouped_slots", k=3)
    tl.range_add(1, 6, -2)
    assert tl._impl.globalbw == [-2, -2]
    assert tl._impl.stored == [5] * 6
    assert tl.avb == [3] * 6


def test_best_fit_and_exact():
    for view in ("sorted", "hashed"):
        tl = SlotTimeline(4, B_max=9, avb=[9, 3, 5, 8], backend="grouped_slots", k=2, view=view)
        assert tl.find_exact(1, 4, 5) == 3
        assert tl.find_exact(1, 4, 7) is None
    tl = SlotTimeline(4, B_max=9, avb=[9, 3, 5, 8], backend="grouped_slots", k=2)
    assert tl.find_best_fit(1, 4, 4) == 3
    assert tl.find_best_fit(1, 4, 10) is None
    tl = SlotTimeline(4, B_max=9, avb=[9, 0, 5, 0], backend="grouped_slots", k=2)
    assert tl.find_best_fit(1, 4, 0) == 2


def test_best_fit_needs_sorted_view():
    tl = SlotTimeline(4, B_max=9, backend="grouped_slots", view="hashed")
    with pytest.raises(ValueError):
        tl.find_best_fit(1, 4, 1)
    with pytest.raises(ValueError):
        SlotTimeline(4, B_max=9).find_best_fit(1, 4, 1)


def test_errors():
    tl = SlotTimeline(4, B_max=10)
    with pytest.raises(IndexError):
        tl.range_min(0, 2)
    with pytest.raises(IndexError):
        tl.range_add(3, 5, -1)
    with pytest.raises(IndexError):
        tl.range_max(3, 2)
    with pytest.raises(ValueError):
        tl.range_add(1, 2, -11)
    with pytest.raises(ValueError):
        tl.range_add(1, 2, 1)
    with pytest.raises(ValueError):
        SlotTimeline(2, B_max=5, avb=[6, 1])


def _oracle_replay(rng, T, n_ops, backends):
    B_max = rng.randint(0, 30)
    start = [rng.randint(0, B_max) for _ in range(T)]
    oracle = list(start)
    tls = [SlotTimeline(T, B_max=B_max, avb=start, backend=b, view=v) for b, v in backends]
    for _ in range(n_ops):
        a = rng.randint(1, T)
        b = rng.randint(a, T)
        op = rng.random()
        seg = oracle[a - 1:b]
        if op < 0.4:
            lo, hi = -min(seg), B_max - max(seg)
            delta = rng.randint(lo, hi)
            for i in range(a - 1, b):
                oracle[i] += delta
            for tl in tls:
                tl.range_add(a, b, delta)
        elif op < 0.6:
            assert {tl.range_min(a, b) for tl in tls} == {min(seg)}
        elif op < 0.8:
            m = max(seg)
            expect = (m, a + seg.index(m))
            assert [tl.range_max(a, b) for tl in tls] == [expect] * len(tls)
        else:
            want = rng.randint(0, B_max)
            exact = next((a + i for i, v in enumerate(seg) if v == want), None)
            for tl in tls:
                if tl.backend == "grouped_slots":
                    assert tl.find_exact(a, b, want) == exact
            fits = [(v, a + i) for i, v in enumerate(seg) if v >= want]
            fit = min(fits)[1] if fits else None
            for tl in tls:
                if tl.backend == "grouped_slots" and tl._impl.view == "sorted":
                    assert tl.find_best_fit(a, b, want) == fit
    for tl in tls:
        assert tl.avb == oracle


@pytest.mark.parametrize("seed", range(40))
def test_random_histories_match_array(seed):
    rng = random.Random(seed)
    _oracle_replay(rng, rng.randint(1, 64), 200, ALL_BACKENDS)


def test_segment_tree_visit_bound():
    rng = random.Random(11)
    for T in (1, 2, 3, 7, 16, 33, 64, 100):
        tl = SlotTimeline(T, B_max=100)
        bound = 4 * math.ceil(math.log2(T)) + 4 if T > 1 else 4
        for _ in range(300):
            a = rng.randint(1, T)
            b = rng.randint(a, T)
            before = tl.visits
            tl._impl.range_add(a, b, rng.choice([-1, 1]))
            assert tl.visits - before <= bound
            before = tl.visits
            tl._impl.range_min(a, b)
            assert tl.visits - before <= bound
            before = tl.visits
            tl._impl.range_max(a, b)
            assert tl.visits - before <= bound


def test_json_roundtrip():
    tl = SlotTimeline(3, slot_d=2, B_max=7, avb=[7, 1, 0])
    again = SlotTimeline.from_json(tl.to_json(), backend="block_partition")
    assert again.to_dict() == {"T": 3, "slot_d": 2, "B_max": 7, "avb": [7, 1, 0]}


def test_quantizer_rounds_conservatively():
    q = Quantizer(10, Q=4)  # unit = 2.5
    assert q.supply(6) == 2
    assert q.demand(6) == 3
    assert q.demand(5) == 2
    assert q.data(5) == 2


def brute_free_run(free, a, b):
    best = (0, 0)
    run_start, run = None, 0
    for t in range(a, b + 1):
        if free[t - 1]:
            if run == 0:
                run_start = t
            run += 1
            if run > best[1]:
                best = (run_start, run)
        else:
            run = 0
    return best


def test_longest_free_examples():
    arr = SignedSlotArray(6)
    arr.reserve(3, 3)
    assert longest_free_interval(arr, 1, 6) == (4, 3)
    arr = SignedSlotArray(6)
    arr.reserve(1, 6)
    assert longest_free_interval(arr, 1, 6) == (0, 0)
    arr = SignedSlotArray(6)
    assert longest_free_interval(arr, 2, 5) == (2, 4)


def test_signed_array_rejects_weak_x():
    with pytest.raises(ValueError):
        SignedSlotArray(5, A=1, X=-5)


@settings(max_examples=150, deadline=None)
@given(
    T=st.integers(1, 40),
    A=st.integers(1, 3),
    data=st.data(),
)
def test_free_runs_match_brute_force(T, A, data):
    arr = SignedSlotArray(T, A=A)
    held = []
    mult = [0] * T
    for _ in range(data.draw(st.integers(0, 25))):
        if held and data.draw(st.booleans()):
            a, b = held.pop(data.draw(st.integers(0, len(held) - 1)))
            arr.cancel(a, b)
            for t in range(a, b + 1):
                mult[t - 1] -= 1
        else:
            a = data.draw(st.integers(1, T))
            b = data.draw(st.integers(a, T))
            arr.reserve(a, b)
            held.append((a, b))
            for t in range(a, b + 1):
                mult[t - 1] += 1
        qa = data.draw(st.integers(1, T))
        qb = data.draw(st.integers(qa, T))
        free = [m == 0 for m in mult]
        start, length = longest_free_interval(arr, qa, qb)
        assert (start, length) == brute_free_run(free, qa, qb)
        assert all(free[t - 1] for t in range(start, start + length))
    assert arr.values() == [A + m * arr.X for m in mult]
