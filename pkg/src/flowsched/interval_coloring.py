"""Maximally-colored interval sets over slots 1..T.

Three ways to get the final coloring after a sequence of "paint [a, b] with
color c" operations:

* :class:`ColoredIntervalSet` applies operations online on an ordered map.
* :func:`color_offline_sweep` sorts endpoints and sweeps with a max-heap;
  its memory depends only on the number of operations, never on T.
* :func:`color_offline_dsu` paints in reverse order, skipping painted runs
  with a disjoint-set forest.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from sortedcontainers import SortedDict


@dataclass(frozen=True)
class ColoringOp:
    a: int
    b: int
    color: int

    def check(self, T: int) -> None:
        if not (1 <= self.a <= self.b <= T):
            raise ValueError(f"coloring op [{self.a}, {self.b}] outside [1, {T}]")

    @classmethod
    def from_dict(cls, d: dict) -> "ColoringOp":
        return cls(int(d["a"]), int(d["b"]), int(d["color"]))


class ColoredIntervalSet:
    """Disjoint colored intervals covering [1, T], no equal-colored neighbors."""

    def __init__(self, T: int, col_init: int = 0):
        if T < 1:
            raise ValueError("T must be >= 1")
        self.T = T
        self._tree = SortedDict({1: (T, col_init)})  # lo -> (hi, color)

    @classmethod
    def from_intervals(cls, T: int, intervals) -> "ColoredIntervalSet":
        out = cls(T)
        out._tree = SortedDict({lo: (hi, col) for lo, hi, col in intervals})
        return out

    @property
    def intervals(self) -> list[tuple[int, int, int]]:
        return [(lo, hi, col) for lo, (hi, col) in self._tree.items()]

    def __len__(self) -> int:
        return len(self._tree)

    def __eq__(self, other) -> bool:
        return isinstance(other, ColoredIntervalSet) and (self.T, self.intervals) == (other.T, other.intervals)

    def __repr__(self) -> str:
        return f"ColoredIntervalSet(T={self.T}, {self.intervals})"

    def color_at(self, t: int) -> int:
        idx = self._tree.bisect_right(t) - 1
        return self._tree.peekitem(idx)[1][1]

    def slot_colors(self) -> list[int]:
        out: list[int] = []
        for lo, hi, col in self.intervals:
            out.extend([col] * (hi - lo + 1))
        return out

    def to_list(self) -> list[dict]:
        return [{"lo": lo, "hi": hi, "color": col} for lo, hi, col in self.intervals]

    def check_invariants(self) -> None:
        expect = 1
        prev = None
        for lo, hi, col in self.intervals:
            assert lo == expect and lo <= hi, "intervals must tile [1, T]"
            assert col != prev, "adjacent intervals share a color"
            expect, prev = hi + 1, col
        assert expect == self.T + 1, "intervals must end at T"

    def color(self, a: int, b: int, col: int) -> None:
        ColoringOp(a, b, col).check(self.T)
        tree = self._tree
        # intervals fully inside [a, b]
        for lo in list(tree.irange(a, b)):
            if tree[lo][0] <= b:
                del tree[lo]
        # interval starting before a: either contains [a, b] or overlaps its left end
        idx = tree.bisect_left(a) - 1
        if idx >= 0:
            c, (d, old) = tree.peekitem(idx)
            if d >= a:
                del tree[c]
                tree[c] = (a - 1, old)
                if d > b:
                    tree[b + 1] = (d, old)
        # interval overlapping the right end, starting inside (a, b]
        idx = tree.bisect_right(b) - 1
        if idx >= 0:
            p, (q, old) = tree.peekitem(idx)
            if a <= p <= b < q:
                del tree[p]
                tree[b + 1] = (q, old)
        tree[a] = (b, col)
        # merge step: left neighbor first, then right
        idx = tree.index(a)
        if idx > 0:
            c, (_, left_col) = tree.peekitem(idx - 1)
            if left_col == col:
                del tree[a]
                tree[c] = (b, col)
                a = c
        right = b + 1
        if right in tree and tree[right][1] == col:
            d = tree.pop(right)[0]
            tree[a] = (d, col)

    def apply(self, op: ColoringOp) -> None:
        self.color(op.a, op.b, op.color)


def color_online(T: int, ops, col_init: int = 0) -> ColoredIntervalSet:
    s = ColoredIntervalSet(T, col_init)
    for op in ops:
        s.apply(op)
    return s


def _merge_runs(T, runs) -> ColoredIntervalSet:
    merged: list[list[int]] = []
    for lo, hi, col in runs:
        if merged and merged[-1][2] == col:
            merged[-1][1] = hi
        else:
            merged.append([lo, hi, col])
    return ColoredIntervalSet.from_intervals(T, merged)


def color_offline_sweep(T: int, ops, col_init: int = 0) -> ColoredIntervalSet:
    """Final coloring via an endpoint sweep with a max-heap keyed by op order."""
    if T < 1:
        raise ValueError("T must be >= 1")
    ops = list(ops)
    for op in ops:
        op.check(T)
    # value 0 is the background interval [1, T]; op k has value k
    colors = [col_init] + [op.color for op in ops]
    spans = [(1, T)] + [(op.a, op.b) for op in ops]
    # (slot, 0=left / 1=right, value); lefts sort before rights at equal slots
    events = sorted(
        [(lo, 0, v) for v, (lo, _) in enumerate(spans)]
        + [(hi, 1, v) for v, (_, hi) in enumerate(spans)]
    )
    heap = [(math.inf, -1)]  # the "fake" -inf interval, stored negated
    removed: set[int] = set()

    def top():
        while heap[0][1] in removed:
            heapq.heappop(heap)
        v = heap[0][1]
        return v, colors[v] if v >= 0 else None

    tuples: list[tuple[int, int, int | None]] = []
    i = 0
    while i < len(events):
        t, kind, _ = events[i]
        j = i
        while j < len(events) and events[j][:2] == (t, kind):
            v = events[j][2]
            if kind == 0:
                heapq.heappush(heap, (-v, v))
            else:
                removed.add(v)
            j += 1
        v, col = top()
        tuples.append((t if kind == 0 else t + 1, v, col))
        i = j

    # per slot keep the tuple with the largest value; stable over production order
    best: dict[int, tuple[int, int | None]] = {}
    for t, v, col in tuples:
        if t not in best or v > best[t][0]:
            best[t] = (v, col)
    points = sorted(best.items())
    runs = [
        (t, points[n + 1][0] - 1, col)
        for n, (t, (_, col)) in enumerate(points[:-1])
    ]
    return _merge_runs(T, runs)


class IntervalDSU:
    """Union-find over slots where every set is a contiguous painted run."""

    def __init__(self, T: int):
        self.parent = list(range(T + 2))
        self.size = [1] * (T + 2)
        self.left = list(range(T + 2))
        self.right = list(range(T + 2))
        self.steps = 0  # parent-chase steps, for amortized-cost checks

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
            self.steps += 1
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> int:
        a, b = self.find(x), self.find(y)
        if a == b:
            return a
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        self.left[a] = min(self.left[a], self.left[b])
        self.right[a] = max(self.right[a], self.right[b])
        return a


def color_offline_dsu(T: int, ops, col_init: int = 0, dsu: IntervalDSU | None = None) -> ColoredIntervalSet:
    """Final coloring by painting operations last-to-first, each slot once."""
    if T < 1:
        raise ValueError("T must be >= 1")
    ops = list(ops)
    for op in ops:
        op.check(T)
    dsu = dsu or IntervalDSU(T)
    painted = [False] * (T + 2)
    final = [col_init] * (T + 2)
    for op in reversed(ops):
        idx = op.a
        while idx <= op.b:
            if painted[idx]:
                idx = dsu.right[dsu.find(idx)] + 1
                continue
            painted[idx] = True
            final[idx] = op.color
            if painted[idx - 1]:
                dsu.union(idx, idx - 1)
            if painted[idx + 1]:
                dsu.union(idx, idx + 1)
            idx += 1
    return _merge_runs(T, [(t, t, final[t]) for t in range(1, T + 1)])
