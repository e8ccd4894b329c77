"""Largest-revenue path under a cost cap in a tree, via centroid decomposition.

Every simple path either passes through the centroid of the current
component or lies inside one of the components left after removing it. For
the through-the-centroid step there are four interchangeable routines:

``per_son``        sorted tuples per son of the root with prefix maxima and
                   binary search; supports switching costs / revenues.
``bounded_cost``   the same, with counting sort and cost-indexed prefix
                   maxima for small integer costs.
``global_sort``    one global sort with best / runner-up prefix maxima that
                   avoid the same son; requires zero switching terms.
``two_pointer``    ``global_sort`` with a monotone index instead of binary
                   search.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from collections import deque
from dataclasses import dataclass

NEG_INF = -math.inf
CASES = ("bounded_degree", "zero_switching")
METHODS = ("per_son", "bounded_cost", "global_sort", "two_pointer")


def _key(v, w):
    return (v, w) if v <= w else (w, v)


class CostRevenueTree:
    def __init__(self, n: int, edges, C_max, SC=None, SP=None,
                 case: str = "bounded_degree", CC_max: int | None = None,
                 D_max: int | None = None):
        """``edges``: iterable of ``(u, v, cost, revenue)``.

        ``SC`` / ``SP`` map ``(u, v, w)`` (turning at u between edges to v
        and w) to a switching cost / revenue; missing entries are 0.
        """
        if case not in CASES:
            raise ValueError(f"unknown case {case!r}")
        edges = list(edges)
        if n < 0 or (n > 0 and len(edges) != n - 1):
            raise ValueError("edge count must be n - 1")
        self.n = n
        self.C_max = C_max
        self.case = case
        self.CC_max = CC_max
        self.D_max = D_max
        self.adj: list[dict[int, tuple]] = [{} for _ in range(n)]
        for u, v, c, p in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge ({u}, {v})")
            if c < 0 or p < 0:
                raise ValueError("edge costs and revenues must be >= 0")
            self.adj[u][v] = (c, p)
            self.adj[v][u] = (c, p)
        self.sc: dict[tuple, float] = {}
        self.sp: dict[tuple, float] = {}
        for table, src in ((self.sc, SC), (self.sp, SP)):
            for (u, v, w), val in (src or {}).items():
                if val < 0:
                    raise ValueError("switching terms must be >= 0")
                if v not in self.adj[u] or w not in self.adj[u] or v == w:
                    raise ValueError(f"({u}, {v}, {w}) is not a pair of edges meeting at {u}")
                table[(u, *_key(v, w))] = val
        if case == "zero_switching" and (any(self.sc.values()) or any(self.sp.values())):
            raise ValueError("zero_switching case with non-zero switching terms")
        if D_max is not None and any(len(a) > D_max for a in self.adj):
            raise ValueError(f"vertex degree exceeds D_max={D_max}")
        self._check_connected()

    def _check_connected(self):
        if self.n == 0:
            return
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        if len(seen) != self.n:
            raise ValueError("edges do not form a tree")

    def SC(self, u, v, w) -> float:
        return self.sc.get((u, *_key(v, w)), 0)

    def SP(self, u, v, w) -> float:
        return self.sp.get((u, *_key(v, w)), 0)

    def without_switching(self) -> "CostRevenueTree":
        edges = [(u, v, c, p) for u in range(self.n) for v, (c, p) in self.adj[u].items() if u < v]
        return CostRevenueTree(self.n, edges, self.C_max, case="zero_switching", CC_max=self.CC_max)

    @classmethod
    def from_dict(cls, d: dict) -> "CostRevenueTree":
        def triples(rows):
            return {(r["u"], r["v"], r["w"]): r["value"] for r in rows or []}

        return cls(
            d["n"],
            [(e["u"], e["v"], e["C"], e["P"]) for e in d["edges"]],
            d["C_max"],
            triples(d.get("SC")),
            triples(d.get("SP")),
            d.get("case", "bounded_degree"),
            d.get("CC_max"),
            d.get("D_max"),
        )

    @classmethod
    def from_json(cls, text: str) -> "CostRevenueTree":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class PathCandidate:
    u: int
    v: int
    total_cost: float
    total_revenue: float

    def rank(self):
        """Sort key: more revenue, then less cost, then smaller endpoints."""
        return (-self.total_revenue, self.total_cost, tuple(sorted((self.u, self.v))))

    def to_dict(self) -> dict:
        u, v = sorted((self.u, self.v))
        return {"u": u, "v": v, "cost": self.total_cost, "revenue": self.total_revenue}


def _better(a: PathCandidate | None, b: PathCandidate | None) -> PathCandidate | None:
    if a is None:
        return b
    if b is None:
        return a
    return b if b.rank() < a.rank() else a


def path_vertices(tree: CostRevenueTree, u: int, v: int) -> list[int]:
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in tree.adj[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    out = [v]
    while out[-1] != u:
        out.append(parent[out[-1]])
    return out[::-1]


def evaluate_path(tree: CostRevenueTree, vertices: list[int]) -> tuple[float, float]:
    """(cost, revenue) of a vertex path, switching terms included."""
    cost = revenue = 0
    for x, y in zip(vertices, vertices[1:]):
        c, p = tree.adj[x][y]
        cost += c
        revenue += p
    for x, y, z in zip(vertices, vertices[1:], vertices[2:]):
        cost += tree.SC(y, x, z)
        revenue += tree.SP(y, x, z)
    return cost, revenue


def _neighbors(tree, comp, u):
    return [v for v in tree.adj[u] if v in comp]


def find_centroid(tree: CostRevenueTree, comp) -> int:
    """Vertex of ``comp`` minimizing the largest remaining piece (unit weights)."""
    comp = set(comp)
    if not comp:
        raise ValueError("empty component")
    start = min(comp)
    parent = {start: None}
    order = [start]
    for u in order:
        for v in _neighbors(tree, comp, u):
            if v not in parent:
                parent[v] = u
                order.append(v)
    wtt = len(order)
    wt = {u: 1 for u in order}
    heaviest_son = {u: 0 for u in order}
    for u in reversed(order):
        p = parent[u]
        if p is not None:
            wt[p] += wt[u]
            heaviest_son[p] = max(heaviest_son[p], wt[u])
    return min(order, key=lambda u: (max(heaviest_son[u], wtt - wt[u]), u))


@dataclass
class _Rooted:
    order: list[int]
    parent: dict
    C: dict
    P: dict
    pson: dict
    sons: list[int]


def _root_at(tree, comp, r) -> _Rooted:
    parent = {r: None}
    C = {r: 0}
    P = {r: 0}
    pson = {r: r}
    order = [r]
    for u in order:
        for v in sorted(_neighbors(tree, comp, u)):
            if v in parent:
                continue
            c, p = tree.adj[u][v]
            gp = parent[u]
            parent[v] = u
            C[v] = C[u] + c + (tree.SC(u, gp, v) if gp is not None else 0)
            P[v] = P[u] + p + (tree.SP(u, gp, v) if gp is not None else 0)
            pson[v] = v if u == r else pson[u]
            order.append(v)
    sons = [v for v in order if parent[v] == r]
    return _Rooted(order, parent, C, P, pson, sons)


def _single_arm(tree, rt, r) -> PathCandidate:
    best = None
    for i in rt.order:
        if rt.C[i] <= tree.C_max:
            best = _better(best, PathCandidate(r, i, rt.C[i], rt.P[i]))
    return best


def best_path_through(comp, r: int, tree: CostRevenueTree) -> PathCandidate | None:
    """Best path inside ``comp`` containing r, using per-son sorted tuples."""
    comp = set(comp)
    rt = _root_at(tree, comp, r)
    best = _single_arm(tree, rt, r)
    groups = {j: [] for j in rt.sons}
    for i in rt.order[1:]:
        groups[rt.pson[i]].append((rt.C[i], i))
    tables = {}
    for j, items in groups.items():
        items.sort()
        costs = [c for c, _ in items]
        prefix = []  # (P_max, argmax vertex), earliest (cheapest) wins ties
        cur = (NEG_INF, None)
        for _, q in items:
            if rt.P[q] > cur[0]:
                cur = (rt.P[q], q)
            prefix.append(cur)
        tables[j] = (costs, prefix)
    for i in rt.order[1:]:
        if rt.C[i] > tree.C_max:
            continue
        si = rt.pson[i]
        for j in rt.sons:
            if j == si:
                continue
            limit = tree.C_max - rt.C[i] - tree.SC(r, si, j)
            costs, prefix = tables[j]
            k = bisect_right(costs, limit)
            if k >= 1:
                pm, q = prefix[k - 1]
                cand = PathCandidate(i, q, rt.C[i] + rt.C[q] + tree.SC(r, si, j),
                                     rt.P[i] + tree.SP(r, si, j) + pm)
                best = _better(best, cand)
    return best


def best_path_through_bounded_cost(comp, r: int, tree: CostRevenueTree) -> PathCandidate | None:
    """Per-son variant with counting sort over integer costs 0..CC_max."""
    comp = set(comp)
    cc_max = tree.CC_max
    if cc_max is None:
        raise ValueError("bounded-cost variant needs CC_max")
    rt = _root_at(tree, comp, r)
    for i in rt.order:
        c = rt.C[i]
        if c != int(c):
            raise ValueError("bounded-cost variant needs integer costs")
        if c > cc_max:
            raise ValueError(f"root cost {c} of vertex {i} exceeds CC_max={cc_max}")
    best = _single_arm(tree, rt, r)
    buckets: list[list[int]] = [[] for _ in range(cc_max + 1)]
    for i in rt.order[1:]:
        buckets[int(rt.C[i])].append(i)
    pmax = {j: [(NEG_INF, None)] * (cc_max + 1) for j in rt.sons}
    for cc in range(cc_max + 1):
        for q in buckets[cc]:
            row = pmax[rt.pson[q]]
            if rt.P[q] > row[cc][0]:
                row[cc] = (rt.P[q], q)
    for row in pmax.values():
        for cc in range(1, cc_max + 1):
            if row[cc - 1][0] >= row[cc][0]:
                row[cc] = row[cc - 1]
    for i in rt.order[1:]:
        if rt.C[i] > tree.C_max:
            continue
        si = rt.pson[i]
        for j in rt.sons:
            if j == si:
                continue
            budget = tree.C_max - rt.C[i] - tree.SC(r, si, j)
            if budget < 0:
                continue
            pm, q = pmax[j][min(cc_max, math.floor(budget))]
            if q is not None:
                cand = PathCandidate(i, q, rt.C[i] + rt.C[q] + tree.SC(r, si, j),
                                     rt.P[i] + tree.SP(r, si, j) + pm)
                best = _better(best, cand)
    return best


def _global_prefix(rt):
    """Sorted tuples with best and runner-up prefix maxima from distinct sons."""
    order = sorted(rt.order, key=lambda q: (rt.C[q], q))
    costs = [rt.C[q] for q in order]
    empty = (NEG_INF, None, None)  # (revenue, son, vertex)
    first, second = [empty], [empty]
    for q in order:
        prev, prev2 = first[-1], second[-1]
        new = (rt.P[q], rt.pson[q], q)
        cur = prev if prev[0] >= new[0] else new
        rest = [c for c in (prev, prev2, new) if c[1] != cur[1]]
        runner = empty
        for c in rest:
            if c[0] > runner[0]:
                runner = c
        first.append(cur)
        second.append(runner)
    return order, costs, first, second


def _pair_with(rt, i, k, first, second, tree):
    best = None
    for pr, rs, q in (first[k], second[k]):
        if rs is None or rs == rt.pson[i] or pr == NEG_INF:
            continue
        if best is None or pr > best[0]:
            best = (pr, q)
    if best is None:
        return None
    q = best[1]
    return PathCandidate(i, q, rt.C[i] + rt.C[q], rt.P[i] + best[0])


def _require_zero_switching(tree):
    if any(tree.sc.values()) or any(tree.sp.values()):
        raise ValueError("this variant requires zero switching costs and revenues")


def best_path_global_sort(comp, r: int, tree: CostRevenueTree) -> PathCandidate | None:
    """Unbounded-degree variant: one global sort, binary search per vertex."""
    _require_zero_switching(tree)
    rt = _root_at(tree, set(comp), r)
    best = _single_arm(tree, rt, r)
    _, costs, first, second = _global_prefix(rt)
    for i in rt.order[1:]:
        if rt.C[i] > tree.C_max:
            continue
        k = bisect_right(costs, tree.C_max - rt.C[i])
        best = _better(best, _pair_with(rt, i, k, first, second, tree))
    return best


def best_path_two_pointer(comp, r: int, tree: CostRevenueTree,
                          trace: list[int] | None = None) -> PathCandidate | None:
    """Global-sort variant scanning vertices by cost with a falling index.

    When ``trace`` is given, the index used for each scanned vertex is
    appended to it; the sequence never increases.
    """
    _require_zero_switching(tree)
    rt = _root_at(tree, set(comp), r)
    best = _single_arm(tree, rt, r)
    order, costs, first, second = _global_prefix(rt)
    k = len(order)
    for i in order:
        while k > 0 and costs[k - 1] > tree.C_max - rt.C[i]:
            k -= 1
        if trace is not None:
            trace.append(k)
        if i == r or rt.C[i] > tree.C_max:
            continue
        best = _better(best, _pair_with(rt, i, k, first, second, tree))
    return best


_THROUGH = {
    "per_son": best_path_through,
    "bounded_cost": best_path_through_bounded_cost,
    "global_sort": best_path_global_sort,
    "two_pointer": best_path_two_pointer,
}


@dataclass
class CentroidNode:
    centroid: int
    component: frozenset
    depth: int
    children: list["CentroidNode"]


def _split(tree, comp, c):
    pieces = []
    seen = {c}
    for s in sorted(_neighbors(tree, comp, c)):
        piece = {s}
        seen.add(s)
        queue = [s]
        for u in queue:
            for v in _neighbors(tree, comp, u):
                if v not in seen:
                    seen.add(v)
                    piece.add(v)
                    queue.append(v)
        pieces.append(frozenset(piece))
    return pieces


def centroid_decomposition(tree: CostRevenueTree, visit=None) -> CentroidNode | None:
    """Build the centroid tree; ``visit(component, centroid)`` runs per node."""
    if tree.n == 0:
        return None
    root_comp = frozenset(range(tree.n))
    top = None
    stack = [(root_comp, 1, None)]
    while stack:
        comp, depth, parent = stack.pop()
        c = find_centroid(tree, comp)
        node = CentroidNode(c, comp, depth, [])
        if parent is None:
            top = node
        else:
            parent.children.append(node)
        if visit is not None:
            visit(comp, c)
        for piece in reversed(_split(tree, comp, c)):
            assert len(piece) <= len(comp) // 2
            stack.append((piece, depth + 1, node))
    return top


def centroid_height(node: CentroidNode | None) -> int:
    if node is None:
        return 0
    return 1 + max((centroid_height(c) for c in node.children), default=0)


def solve_max_revenue_path(tree: CostRevenueTree, method: str | None = None) -> PathCandidate | None:
    """Best path over the whole tree; a lone vertex (cost 0, revenue 0) is a path.

    ``method`` defaults to ``per_son`` for the bounded-degree case and to
    ``global_sort`` when switching terms are zero.
    """
    if method is None:
        method = "per_son" if tree.case == "bounded_degree" else "global_sort"
    if method not in _THROUGH:
        raise ValueError(f"unknown method {method!r}")
    through = _THROUGH[method]
    best: list[PathCandidate | None] = [None]

    def visit(comp, c):
        best[0] = _better(best[0], through(comp, c, tree))

    root = centroid_decomposition(tree, visit)
    if root is not None:
        assert centroid_height(root) <= tree.n.bit_length()
    return best[0]
