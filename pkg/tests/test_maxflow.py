import itertools
import random

import pytest

from flowsched.maxflow import FlowNetwork, max_flow


def brute_min_cut(net):
    others = [v for v in range(net.node_count) if v not in (net.source, net.sink)]
    best = None
    for mask in range(1 << len(others)):
        side = {net.source} | {others[i] for i in range(len(others)) if mask >> i & 1}
        cut = sum(c for u, v, c in net.edges if u in side and v not in side)
        best = cut if best is None else min(best, cut)
    return best


def check_flow(net, value, flows):
    balance = [0] * net.node_count
    for idx, (u, v, c) in enumerate(net.edges):
        f = flows[idx]
        assert 0 <= f <= c
        balance[u] -= f
        balance[v] += f
    for node in range(net.node_count):
        if node == net.source:
            assert -balance[node] == value
        elif node == net.sink:
            assert balance[node] == value
        else:
            assert balance[node] == 0


def test_single_edge():
    net = FlowNetwork(2, 0, 1, [(0, 1, 7)])
    assert max_flow(net)[0] == 7


def test_no_edges():
    assert max_flow(FlowNetwork(2, 0, 1))[0] == 0


def test_diamond():
    # src=0, a=1, b=2, sink=3
    net = FlowNetwork(4, 0, 3, [(0, 1, 3), (0, 2, 2), (1, 3, 2), (2, 3, 3)])
    value, flows = max_flow(net)
    assert value == brute_min_cut(net) == 4
    check_flow(net, value, flows)


def test_rejects_bad_networks():
    with pytest.raises(ValueError):
        max_flow(FlowNetwork(2, 0, 0))
    with pytest.raises(ValueError):
        max_flow(FlowNetwork(2, 0, 1, [(0, 5, 1)]))
    with pytest.raises(ValueError):
        max_flow(FlowNetwork(2, 0, 1, [(0, 1, -1)]))


def test_deterministic():
    rng = random.Random(3)
    edges = [(rng.randrange(6), rng.randrange(6), rng.randint(0, 5)) for _ in range(15)]
    net = FlowNetwork(6, 0, 5, edges)
    assert max_flow(net) == max_flow(net)


@pytest.mark.parametrize("seed", range(150))
def test_random_against_min_cut(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    edges = [
        (u, v, rng.randint(0, 5))
        for u, v in itertools.product(range(n), repeat=2)
        if u != v and rng.random() < 0.4
    ]
    net = FlowNetwork(n, 0, n - 1, edges)
    value, flows = max_flow(net)
    assert value == brute_min_cut(net)
    check_flow(net, value, flows)
