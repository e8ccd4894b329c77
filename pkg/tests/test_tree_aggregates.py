import math
import random

import pytest

from flowsched.tree_aggregates import (
    MAX,
    MIN,
    SUM,
    XOR,
    EulerTour,
    WeightedRootedTree,
    build_euler,
    build_lift,
    compact_subtree_positions,
    euler_sequence,
    lca,
    path_aggregate_static,
)

from oracles import naive_lca, naive_root_path, naive_subtree, random_tree_edges


def path3():
    # r=0 - u=1 - v=2 with edge weights 3, 4
    return WeightedRootedTree(3, 0, [(0, 1, 3), (1, 2, 4)], wv=[1, 2, 5])


def naive_path_fold(tree, agg, u, v, weights, we=None, wv=None):
    we = tree.we if we is None else we
    wv = tree.wv if wv is None else wv
    w = naive_lca(tree, u, v)
    vals = []
    for end in (u, v):
        x = end
        while x != w:
            vals.append(we[x] if weights == "edge" else wv[x])
            x = tree.parent[x]
    if weights == "vertex":
        vals.append(wv[w])
    return agg.fold(*vals)


def test_single_vertex():
    t = WeightedRootedTree(1, 0, [], wv=[4])
    et = build_euler(t)
    assert et.seq == [0, 0] and et.a == [1] and et.b == [2]
    assert et.path_from_root(0) == 0
    sub = build_euler(t, "subtree", weights="vertex")
    assert compact_subtree_positions(sub).a == [1]
    assert compact_subtree_positions(sub).b == [1]


def test_path_tour_and_queries():
    t = path3()
    et = build_euler(t)
    assert et.seq == [0, 1, 2, 2, 1, 0]
    assert et.path_from_root(2) == 7
    assert et.path_from_root(0) == 0
    lt = build_lift(t)
    assert et.path_between(lt, 1, 2) == 4
    assert et.path_between(lt, 2, 2) == 0
    et.update_weight(2, 5)
    assert et.path_from_root(2) == 12
    with pytest.raises(ValueError):
        et.update_weight(0, 1)
    with pytest.raises(KeyError):
        et.path_from_root(7)


def test_min_static_path():
    lt = build_lift(path3(), MIN)
    assert path_aggregate_static(lt, 0, 2) == 3
    assert path_aggregate_static(lt, 1, 1) == math.inf
    assert lca(lt, 0, 2) == 0
    assert lca(lt, 2, 2) == 2


def test_subtree_examples():
    t = path3()
    et = build_euler(t, "subtree", weights="vertex")
    assert et.subtree_aggregate(0) == sum(t.wv)
    edge = build_euler(t, "subtree")
    assert edge.subtree_aggregate(2) == 0
    assert edge.subtree_aggregate(0) == 7
    comp = compact_subtree_positions(et)
    assert [(comp.a[i], comp.b[i]) for i in range(3)] == [(1, 3), (2, 3), (3, 3)]


def test_star_and_chain_lifting():
    star = WeightedRootedTree(4, 0, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    lt = build_lift(star)
    assert lt.Anc(1, 0) == 0 and lt.Anc(1, 1) == 0
    chain = WeightedRootedTree(8, 0, [(i, i + 1, 1) for i in range(7)])
    lt = build_lift(chain)
    assert lt.Anc(7, 2) == 3
    assert lt.Agg(7, 2) == 4
    assert lt.Agg(2, 2) is None


def test_mode_guards():
    t = path3()
    with pytest.raises(ValueError):
        EulerTour(t, "path", MIN)
    with pytest.raises(ValueError):
        build_euler(t, "subtree").path_from_root(1)
    with pytest.raises(ValueError):
        build_euler(t).subtree_aggregate(1)
    with pytest.raises(ValueError):
        WeightedRootedTree(3, 0, [(0, 1, 1), (0, 1, 1)])
    with pytest.raises(ValueError):
        WeightedRootedTree(0, 0, [])


def test_tour_from_positions():
    rng = random.Random(2)
    t = WeightedRootedTree(9, 4, random_tree_edges(rng, 9))
    seq, a, b = euler_sequence(t)
    et = EulerTour.from_positions(t, a, b)
    assert et.seq == seq


@pytest.mark.parametrize("seed", range(40))
def test_random_structure_and_lift(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 12)
    t = WeightedRootedTree(n, rng.randrange(n), random_tree_edges(rng, n), [rng.randint(-5, 5) for _ in range(n)])
    seq, a, b = euler_sequence(t)
    assert sorted(seq) == sorted(list(range(n)) * 2)
    assert all(a[i] < b[i] for i in range(n))
    for agg in (MIN, MAX, SUM):
        for weights in ("edge", "vertex"):
            lt = build_lift(t, agg, weights)
            for i in range(n):
                for j in range(lt.levels):
                    x = i
                    for _ in range(1 << j):
                        x = t.parent[x] if x != t.root else x
                    assert lt.Anc(i, j) == x
            for u in range(n):
                for v in range(n):
                    assert lt.lca(u, v) == naive_lca(t, u, v)
                    assert lt.path_aggregate(u, v) == naive_path_fold(t, agg, u, v, weights)


@pytest.mark.parametrize("seed", range(40))
def test_random_update_query_mix(seed):
    rng = random.Random(500 + seed)
    n = rng.randint(1, 12)
    t = WeightedRootedTree(n, rng.randrange(n), random_tree_edges(rng, n), [rng.randint(-5, 5) for _ in range(n)])
    lt = build_lift(t)
    for agg in (SUM, XOR):
        for weights in ("edge", "vertex"):
            conv = (lambda x: x & 15) if agg is XOR else (lambda x: x)
            base_we = [conv(w) if w is not None else None for w in t.we]
            base_wv = [conv(w) for w in t.wv]
            tt = WeightedRootedTree(n, t.root, [(t.parent[i], i, base_we[i]) for i in range(n) if i != t.root], base_wv)
            path = build_euler(tt, "path", agg, weights)
            sub = build_euler(tt, "subtree", agg, weights)
            we, wv = list(tt.we), list(tt.wv)
            for _ in range(200):
                op = rng.random()
                i = rng.randrange(n)
                if op < 0.3 and not (weights == "edge" and i == t.root):
                    d = conv(rng.randint(-4, 4))
                    path.update_weight(i, d)
                    sub.update_weight(i, d)
                    if weights == "edge":
                        we[i] = agg.op(we[i], d)
                    else:
                        wv[i] = agg.op(wv[i], d)
                elif op < 0.55:
                    vals = [we[x] if weights == "edge" else wv[x] for x in naive_root_path(tt, i)
                            if weights == "vertex" or x != t.root]
                    assert path.path_from_root(i) == agg.fold(*vals)
                elif op < 0.8:
                    members = naive_subtree(tt, i)
                    if weights == "edge":
                        vals = [we[x] for x in members if x != i]
                    else:
                        vals = [wv[x] for x in members]
                    assert sub.subtree_aggregate(i) == agg.fold(*vals)
                else:
                    u, v = rng.randrange(n), rng.randrange(n)
                    expect = naive_path_fold(tt, agg, u, v, weights, we, wv)
                    assert path.path_between(lt, u, v) == expect
            comp = sub.compact()
            for i in range(n):
                assert comp.subtree_aggregate(i) == sub.subtree_aggregate(i)


@pytest.mark.parametrize("seed", range(20))
def test_sum_identity_and_cross_check(seed):
    rng = random.Random(900 + seed)
    n = rng.randint(1, 12)
    t = WeightedRootedTree(n, rng.randrange(n), random_tree_edges(rng, n))
    et = build_euler(t)
    lt = build_lift(t)
    for u in range(n):
        for v in range(n):
            w = lt.lca(u, v)
            expect = et.path_from_root(u) + et.path_from_root(v) - 2 * et.path_from_root(w)
            assert et.path_between(lt, u, v) == expect == lt.path_aggregate(u, v)
