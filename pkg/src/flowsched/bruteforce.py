"""Small brute-force checkers behind the CLI ``--oracle`` flag.

Each returns a list of human-readable problems; an empty list means the
solver output agreed with the exhaustive or naive computation.
"""

from __future__ import annotations

import math
from itertools import permutations

from .perm_count import increasing_pairs
from .revenue_path import evaluate_path, path_vertices
from .wireless_distribution import sensor_exhaustive, validate_mobile_schedule

ENUM_LIMIT = 200_000


def _spread(total, caps):
    if not caps:
        if total == 0:
            yield ()
        return
    for x in range(min(total, caps[0]) + 1):
        for rest in _spread(total - x, caps[1:]):
            yield (x,) + rest


def preemptive_feasible(avb, windows, demands):
    """Exhaustive search for an integral allocation; None when too large to try."""
    budget = [ENUM_LIMIT]

    def go(i, left):
        if i == len(windows):
            return True
        S, F = windows[i]
        for vec in _spread(demands[i], left[S - 1:F]):
            budget[0] -= 1
            if budget[0] < 0:
                raise OverflowError
            nxt = list(left)
            for off, x in enumerate(vec):
                nxt[S - 1 + off] -= x
            if go(i + 1, nxt):
                return True
        return False

    try:
        return go(0, list(avb))
    except OverflowError:
        return None


def check_link_report(initial_avb, events, slot_d, report) -> list[str]:
    """Replay a run_trace report on a plain list and re-check every contract."""
    problems = []
    avb = list(initial_avb)
    by_id = {e.request.id: e.request for e in events}
    decisions = {d["request_id"]: d for d in report["decisions"]}
    for batch in report["batches"]:
        reqs = [by_id[i] for i in batch["requests"]]
        pre = [r for r in reqs if r.kind == "preemptive"]
        if pre:
            verdict = preemptive_feasible(avb, [(r.S, r.F) for r in pre], [r.demand(slot_d) for r in pre])
            all_granted = all(decisions[r.id]["granted"] for r in pre)
            if verdict is not None and verdict != all_granted:
                problems.append(f"batch {batch['index']}: brute force says feasible={verdict}, "
                                f"scheduler granted all={all_granted}")
        ordered = pre + [r for r in reqs if r.kind != "preemptive"]
        for r in ordered:
            d = decisions[r.id]
            if not d["granted"]:
                if d["allocation"]:
                    problems.append(f"{r.id}: rejected with an allocation")
                continue
            alloc = {int(t): u for t, u in d["allocation"].items()}
            if any(not r.S <= t <= r.F for t in alloc):
                problems.append(f"{r.id}: allocation outside [{r.S}, {r.F}]")
                continue
            if r.kind == "preemptive" and sum(alloc.values()) != r.demand(slot_d):
                problems.append(f"{r.id}: allocation sums to {sum(alloc.values())}, demand {r.demand(slot_d)}")
            if r.kind == "nonpreemptive_fixed" and alloc != {t: r.B for t in range(r.S, r.F + 1)}:
                problems.append(f"{r.id}: fixed request not reserved on every slot")
            if r.kind == "nonpreemptive_unit" and list(alloc.values()) != [r.B]:
                problems.append(f"{r.id}: unit request must take B in exactly one slot")
            for t, u in alloc.items():
                avb[t - 1] -= u
                if avb[t - 1] < 0:
                    problems.append(f"{r.id}: slot {t} over-committed")
    if avb != report["summary"]["timeline"]["avb"]:
        problems.append("final timeline differs from replay")
    return problems


def paint_slots(T, ops, col_init):
    slots = [col_init] * (T + 1)
    for op in ops:
        for t in range(op.a, op.b + 1):
            slots[t] = op.color
    return slots[1:]


def naive_path(tree, u, v, agg, weights):
    """Walk both endpoints up to their meeting point, folding weights."""
    vals = []
    a, b = u, v
    while a != b:
        if tree.level[a] >= tree.level[b]:
            vals.append(tree.wv[a] if weights == "vertex" else tree.we[a])
            a = tree.parent[a]
        else:
            vals.append(tree.wv[b] if weights == "vertex" else tree.we[b])
            b = tree.parent[b]
    if weights == "vertex":
        vals.append(tree.wv[a])
    return agg.fold(*vals), a


def naive_subtree(tree, i, agg, weights):
    vals = []
    stack = [i]
    while stack:
        x = stack.pop()
        if weights == "vertex":
            vals.append(tree.wv[x])
        elif x != i:
            vals.append(tree.we[x])
        stack.extend(tree.children[x])
    return agg.fold(*vals)


def best_revenue(tree):
    best = None
    for u in range(tree.n):
        for v in range(u, tree.n):
            cost, rev = evaluate_path(tree, path_vertices(tree, u, v))
            if cost <= tree.C_max and (best is None or rev > best):
                best = rev
    return best


def check_mobile(inst, sched, bsearch_value) -> list[str]:
    problems = []
    if abs(sched.makespan - bsearch_value) > 1e-6:
        problems.append(f"linear {sched.makespan} vs binary search {bsearch_value}")
    try:
        validate_mobile_schedule(inst, sched)
    except AssertionError as exc:
        problems.append(f"schedule replay failed: {exc}")
    return problems


def check_sensor(inst, total) -> list[str]:
    if inst.n > 18:
        return []
    best = sensor_exhaustive(inst)[1]
    if not math.isclose(best, total, rel_tol=1e-9, abs_tol=1e-9):
        return [f"exhaustive search gives {best}, solver gives {total}"]
    return []


def perm_row(n):
    row = [0] * n
    for p in permutations(range(1, n + 1)):
        row[increasing_pairs(p)] += 1
    return row
