"""Integer maximum flow (Dinic) over small explicit networks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


@dataclass
class FlowNetwork:
    node_count: int
    source: int
    sink: int
    edges: list[tuple[int, int, int]] = field(default_factory=list)

    def add_edge(self, u: int, v: int, capacity: int) -> int:
        """Append an edge and return its index."""
        self.edges.append((u, v, capacity))
        return len(self.edges) - 1

    def validate(self) -> None:
        n = self.node_count
        if n <= 0:
            raise ValueError("node_count must be positive")
        if not (0 <= self.source < n and 0 <= self.sink < n):
            raise ValueError("source/sink out of range")
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        for idx, (u, v, cap) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {idx} references node outside [0, {n})")
            if cap < 0:
                raise ValueError(f"edge {idx} has negative capacity")


def max_flow(net: FlowNetwork) -> tuple[int, dict[int, int]]:
    """Return ``(value, edge_flows)`` for a maximum source-sink flow.

    Edge flows are keyed by the index of the edge in ``net.edges``. The
    result is deterministic for a fixed edge insertion order.
    """
    net.validate()
    n = net.node_count
    # residual arcs stored in parallel lists; arc 2i is edge i, 2i+1 its reverse
    head: list[int] = []
    cap: list[int] = []
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v, c in net.edges:
        adj[u].append(len(head))
        head.append(v)
        cap.append(c)
        adj[v].append(len(head))
        head.append(u)
        cap.append(0)

    s, t = net.source, net.sink
    total = 0
    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for arc in adj[u]:
                if cap[arc] > 0 and level[head[arc]] < 0:
                    level[head[arc]] = level[u] + 1
                    queue.append(head[arc])
        if level[t] < 0:
            break
        it = [0] * n
        while True:
            pushed = _blocking_push(s, t, adj, head, cap, level, it)
            if not pushed:
                break
            total += pushed

    flows = {i: cap[2 * i + 1] for i in range(len(net.edges))}
    return total, flows


def _blocking_push(s, t, adj, head, cap, level, it) -> int:
    # iterative DFS along the level graph; returns flow pushed on one path
    path: list[int] = []
    u = s
    while True:
        if u == t:
            amount = min(cap[a] for a in path)
            for a in path:
                cap[a] -= amount
                cap[a ^ 1] += amount
            return amount
        advanced = False
        arcs = adj[u]
        while it[u] < len(arcs):
            a = arcs[it[u]]
            v = head[a]
            if cap[a] > 0 and level[v] == level[u] + 1:
                path.append(a)
                u = v
                advanced = True
                break
            it[u] += 1
        if advanced:
            continue
        # dead end: prune u from the level graph and retreat
        level[u] = -1
        if not path:
            return 0
        a = path.pop()
        u = head[a ^ 1]
        it[u] += 1
