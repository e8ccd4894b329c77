"""Aggregates over rooted tree networks.

An Euler tour with a segment tree over its positions answers root-to-vertex
path aggregates and subtree aggregates under weight updates. Binary-lifting
tables answer LCA and u-v path aggregates on a static tree for any
associative aggregation, including min and max.

Vertices are ``0..n-1``. Edge weights are indexed by the child endpoint:
``we[i]`` is the weight of ``(parent(i), i)``.
"""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass
from typing import Any, Callable


@dataclass(frozen=True)
class Aggregation:
    name: str
    op: Callable[[Any, Any], Any]
    identity: Any
    inverse: Callable[[Any], Any] | None = None

    @property
    def invertible(self) -> bool:
        return self.inverse is not None

    def fold(self, *values):
        acc = self.identity
        for v in values:
            acc = self.op(acc, v)
        return acc


SUM = Aggregation("sum", operator.add, 0, operator.neg)
XOR = Aggregation("xor", operator.xor, 0, lambda x: x)
MIN = Aggregation("min", min, math.inf)
MAX = Aggregation("max", max, -math.inf)
AGGREGATIONS = {a.name: a for a in (SUM, XOR, MIN, MAX)}


class WeightedRootedTree:
    def __init__(self, n: int, root: int, edges, wv=None):
        """``edges`` is an iterable of ``(u, v, weight)``; orientation is free."""
        if n < 1:
            raise ValueError("tree needs at least one vertex")
        if not 0 <= root < n:
            raise ValueError("root out of range")
        edges = list(edges)
        if len(edges) != n - 1:
            raise ValueError(f"a tree on {n} vertices has {n - 1} edges, got {len(edges)}")
        adj: list[list[tuple[int, Any]]] = [[] for _ in range(n)]
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge ({u}, {v})")
            adj[u].append((v, w))
            adj[v].append((u, w))
        self.n = n
        self.root = root
        self.parent = [-1] * n
        self.level = [0] * n
        self.we = [None] * n
        self.children: list[list[int]] = [[] for _ in range(n)]
        seen = [False] * n
        seen[root] = True
        stack = [root]
        order = []
        while stack:
            u = stack.pop()
            order.append(u)
            for v, w in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    self.parent[v] = u
                    self.level[v] = self.level[u] + 1
                    self.we[v] = w
                    self.children[u].append(v)
                    stack.append(v)
        if len(order) != n:
            raise ValueError("edges do not connect all vertices")
        for ch in self.children:
            ch.sort()
        self.wv = list(wv) if wv is not None else [0] * n
        if len(self.wv) != n:
            raise ValueError("wv must have n entries")

    @classmethod
    def from_dict(cls, d: dict) -> "WeightedRootedTree":
        return cls(d["n"], d.get("root", 0), [(e["u"], e["v"], e.get("we", 0)) for e in d["edges"]], d.get("wv"))

    @classmethod
    def from_json(cls, text: str) -> "WeightedRootedTree":
        return cls.from_dict(json.loads(text))

    def dfs_order(self):
        """Yield ``(vertex, entering)`` events of a DFS visiting children by id."""
        stack = [(self.root, True)]
        while stack:
            u, entering = stack.pop()
            yield u, entering
            if entering:
                stack.append((u, False))
                for c in reversed(self.children[u]):
                    stack.append((c, True))


class _PointSegmentTree:
    def __init__(self, values, agg: Aggregation):
        self.n = len(values)
        self.agg = agg
        size = 1
        while size < self.n:
            size *= 2
        self.size = size
        self.data = [agg.identity] * (2 * size)
        self.data[size:size + self.n] = values
        for i in range(size - 1, 0, -1):
            self.data[i] = agg.op(self.data[2 * i], self.data[2 * i + 1])

    def set(self, pos: int, value) -> None:
        i = pos - 1 + self.size
        self.data[i] = value
        i //= 2
        while i:
            self.data[i] = self.agg.op(self.data[2 * i], self.data[2 * i + 1])
            i //= 2

    def get(self, pos: int):
        return self.data[pos - 1 + self.size]

    def query(self, lo: int, hi: int):
        """Aggregate of positions lo..hi (1-based, inclusive), left to right."""
        if lo > hi:
            return self.agg.identity
        left, right = self.agg.identity, self.agg.identity
        l, r = lo - 1 + self.size, hi + self.size
        while l < r:
            if l & 1:
                left = self.agg.op(left, self.data[l])
                l += 1
            if r & 1:
                r -= 1
                right = self.agg.op(self.data[r], right)
            l //= 2
            r //= 2
        return self.agg.op(left, right)


def euler_sequence(tree: WeightedRootedTree) -> tuple[list[int], list[int], list[int]]:
    """Tour of 2n occurrences with 1-based first / last positions per vertex."""
    seq: list[int] = []
    a = [0] * tree.n
    b = [0] * tree.n
    for u, entering in tree.dfs_order():
        seq.append(u)
        if entering:
            a[u] = len(seq)
        else:
            b[u] = len(seq)
    return seq, a, b


def tour_from_positions(a: list[int], b: list[int]) -> list[int]:
    """Rebuild the tour from the first / last positions by sorting them."""
    marks = sorted([(p, i) for i, p in enumerate(a)] + [(p, i) for i, p in enumerate(b)])
    return [i for _, i in marks]


class EulerTour:
    """Euler tour with a segment tree over its position weights.

    ``mode`` is ``"path"`` (root-to-vertex and u-v queries, needs an
    invertible aggregation) or ``"subtree"``. ``weights`` is ``"edge"`` or
    ``"vertex"``.
    """

    def __init__(self, tree: WeightedRootedTree, mode: str = "path",
                 agg: Aggregation = SUM, weights: str = "edge",
                 positions: tuple[list[int], list[int]] | None = None):
        if mode not in ("path", "subtree"):
            raise ValueError(f"unknown mode {mode!r}")
        if weights not in ("edge", "vertex"):
            raise ValueError(f"unknown weight kind {weights!r}")
        if mode == "path" and not agg.invertible:
            raise ValueError(f"path mode needs an invertible aggregation, got {agg.name}")
        self.tree = tree
        self.mode = mode
        self.agg = agg
        self.weights = weights
        self.compacted = False
        if positions is None:
            self.seq, self.a, self.b = euler_sequence(tree)
        else:
            self.a, self.b = list(positions[0]), list(positions[1])
            self.seq = tour_from_positions(self.a, self.b)
        if len(self.seq) != 2 * tree.n:
            raise ValueError("tour must have 2n positions")
        self.wv = list(tree.wv)
        self.we = list(tree.we)
        w = [agg.identity] * (2 * tree.n)
        for i in range(tree.n):
            base = self._base_weight(i)
            w[self.a[i] - 1] = base
            if mode == "path":
                w[self.b[i] - 1] = agg.inverse(base)
        self.seg = _PointSegmentTree(w, agg)

    @classmethod
    def from_positions(cls, tree, a, b, **kwargs) -> "EulerTour":
        return cls(tree, positions=(a, b), **kwargs)

    def _base_weight(self, i):
        if self.weights == "vertex":
            return self.wv[i]
        if i == self.tree.root:
            return self.agg.identity
        return self.we[i]

    def _check(self, i):
        if not 0 <= i < self.tree.n:
            raise KeyError(f"unknown vertex {i}")

    def path_from_root(self, i: int):
        if self.mode != "path":
            raise ValueError("path_from_root needs path mode")
        self._check(i)
        return self.seg.query(1, self.a[i])

    def update_weight(self, i: int, d) -> None:
        """Fold ``d`` into the weight of vertex i, or of edge (parent(i), i)."""
        self._check(i)
        if self.weights == "edge":
            if i == self.tree.root:
                raise ValueError("the root has no parent edge")
            self.we[i] = self.agg.op(self.we[i], d)
        else:
            self.wv[i] = self.agg.op(self.wv[i], d)
        pa = self.a[i]
        self.seg.set(pa, self.agg.op(self.seg.get(pa), d))
        if self.mode == "path":
            pb = self.b[i]
            self.seg.set(pb, self.agg.op(self.seg.get(pb), self.agg.inverse(d)))

    def path_between(self, lift: "LiftTables", u: int, v: int):
        self._check(u)
        self._check(v)
        w = lift.lca(u, v)
        inv = self.agg.inverse(self.path_from_root(w))
        parts = [self.path_from_root(u), self.path_from_root(v), inv, inv]
        if self.weights == "vertex":
            parts.append(self.wv[w])
        return self.agg.fold(*parts)

    def subtree_aggregate(self, i: int):
        if self.mode != "subtree":
            raise ValueError("subtree_aggregate needs subtree mode")
        self._check(i)
        lo = self.a[i] + 1 if self.weights == "edge" else self.a[i]
        return self.seg.query(lo, self.b[i])

    def compact(self) -> "EulerTour":
        """Drop closing positions, keeping n positions with b(i) rewritten.

        Each b(i) becomes the number of opening positions seen when its
        closing position is scanned; subtree answers are unchanged.
        """
        if self.mode != "subtree":
            raise ValueError("compaction applies to subtree mode only")
        out = object.__new__(EulerTour)
        out.__dict__.update(self.__dict__)
        kind_at = {}
        for i in range(self.tree.n):
            kind_at[self.a[i]] = ("a", i)
            kind_at[self.b[i]] = ("b", i)
        new_a = [0] * self.tree.n
        new_b = [0] * self.tree.n
        seq = []
        weights = []
        cnt_a = 0
        for pos in range(1, len(self.seq) + 1):
            kind, i = kind_at[pos]
            if kind == "a":
                cnt_a += 1
                new_a[i] = cnt_a
                seq.append(i)
                weights.append(self.seg.get(pos))
            else:
                new_b[i] = cnt_a
        out.a, out.b, out.seq = new_a, new_b, seq
        out.seg = _PointSegmentTree(weights, self.agg)
        out.compacted = True
        return out


def build_euler(tree: WeightedRootedTree, mode: str = "path", agg: Aggregation = SUM,
                weights: str = "edge") -> EulerTour:
    return EulerTour(tree, mode, agg, weights)


def compact_subtree_positions(et: EulerTour) -> EulerTour:
    return et.compact()


_UNDEFINED = object()


class LiftTables:
    """Ancestor / aggregate doubling tables on a static tree snapshot."""

    def __init__(self, tree: WeightedRootedTree, agg: Aggregation = SUM, weights: str = "edge"):
        if weights not in ("edge", "vertex"):
            raise ValueError(f"unknown weight kind {weights!r}")
        n = tree.n
        self.tree = tree
        self.agg = agg
        self.weights = weights
        self.levels = n.bit_length()  # floor(log2 n) + 1
        _, self.tin, self.tout = euler_sequence(tree)
        r = tree.root
        self.anc = [[r] * n for _ in range(self.levels)]
        self.agg_tab: list[list[Any]] = [[_UNDEFINED] * n for _ in range(self.levels)]
        for i in range(n):
            if i != r:
                self.anc[0][i] = tree.parent[i]
                self.agg_tab[0][i] = tree.wv[i] if weights == "vertex" else tree.we[i]
        for j in range(1, self.levels):
            prev_anc, prev_agg = self.anc[j - 1], self.agg_tab[j - 1]
            for i in range(n):
                mid = prev_anc[i]
                self.anc[j][i] = prev_anc[mid]
                if tree.level[i] >= 1 << j:
                    self.agg_tab[j][i] = agg.op(prev_agg[i], prev_agg[mid])

    def Anc(self, i: int, j: int) -> int:
        return self.anc[j][i]

    def Agg(self, i: int, j: int):
        v = self.agg_tab[j][i]
        return None if v is _UNDEFINED else v

    def is_ancestor(self, x: int, y: int) -> bool:
        """True when x lies on the root path of y (x is its own ancestor)."""
        return self.tin[x] <= self.tin[y] and self.tout[y] <= self.tout[x]

    def lca(self, u: int, v: int) -> int:
        if self.is_ancestor(u, v):
            return u
        if self.is_ancestor(v, u):
            return v
        j = self.levels - 1
        pu = u
        while j >= 0:
            while j >= 0 and self.is_ancestor(self.anc[j][pu], v):
                j -= 1
            if j >= 0:
                pu = self.anc[j][pu]
        return self.anc[0][pu]

    def aggregate_to_ancestor(self, u: int, au: int):
        """Aggregate from u up to (excluding) its ancestor au; identity if empty."""
        level = self.tree.level
        j = self.levels - 1
        pu = u
        pagg = _UNDEFINED
        while level[pu] > level[au]:
            while level[pu] - (1 << j) < level[au]:
                j -= 1
            step = self.agg_tab[j][pu]
            pagg = step if pagg is _UNDEFINED else self.agg.op(pagg, step)
            pu = self.anc[j][pu]
        return self.agg.identity if pagg is _UNDEFINED else pagg

    def path_aggregate(self, u: int, v: int):
        w = self.lca(u, v)
        parts = [self.aggregate_to_ancestor(u, w), self.aggregate_to_ancestor(v, w)]
        if self.weights == "vertex":
            parts.append(self.tree.wv[w])
        return self.agg.fold(*parts)


def build_lift(tree: WeightedRootedTree, agg: Aggregation = SUM, weights: str = "edge") -> LiftTables:
    return LiftTables(tree, agg, weights)


def lca(lt: LiftTables, u: int, v: int) -> int:
    return lt.lca(u, v)


def path_aggregate_static(lt: LiftTables, u: int, v: int):
    return lt.path_aggregate(u, v)
