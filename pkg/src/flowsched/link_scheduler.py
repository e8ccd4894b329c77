"""Admission control for a single network link.

Preemptive requests are admitted in batches through a request/slot flow
network; non-preemptive requests are admitted one at a time against the
range-query timeline.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .maxflow import FlowNetwork, max_flow
from .timeline import SlotTimeline, as_fraction

log = logging.getLogger(__name__)

KINDS = ("preemptive", "nonpreemptive_fixed", "nonpreemptive_unit")
BATCH_MODES = ("iterative_grant", "desirability_cutoff")
UNIT_POLICIES = ("max_avail", "best_fit", "exact")


@dataclass
class TransferRequest:
    id: str
    kind: str
    S: int
    F: int
    TD: Fraction | float | int | None = None  # unit-seconds, preemptive only
    B: int | None = None  # units, non-preemptive only
    p: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"request {self.id}: unknown kind {self.kind!r}")
        if self.S > self.F:
            raise ValueError(f"request {self.id}: S > F")
        if self.p < 0:
            raise ValueError(f"request {self.id}: negative profit")
        if self.kind == "preemptive":
            if self.TD is None or self.TD <= 0:
                raise ValueError(f"request {self.id}: preemptive request needs TD > 0")
        elif self.B is None or self.B <= 0:
            raise ValueError(f"request {self.id}: non-preemptive request needs B > 0")

    def check_window(self, T: int) -> None:
        if not (1 <= self.S <= self.F <= T):
            raise ValueError(f"request {self.id}: window [{self.S}, {self.F}] outside [1, {T}]")

    def demand(self, slot_d) -> int:
        """Bandwidth units to spread over the window: ceil(TD / slot_d)."""
        return math.ceil(as_fraction(self.TD) / as_fraction(slot_d))


@dataclass
class ScheduleDecision:
    request_id: str
    granted: bool
    allocation: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "request_id": self.request_id,
            "granted": self.granted,
            "allocation": {str(t): u for t, u in sorted(self.allocation.items())},
        }


@dataclass
class DesirabilityConfig:
    exp: float = 1.0

    def __post_init__(self):
        if self.exp <= 0:
            raise ValueError("desirability exponent must be > 0")

    def score(self, r: TransferRequest) -> float:
        return r.p * (r.F - r.S + 1) ** self.exp / float(r.TD)


@dataclass
class BatchNetwork:
    """Flow network plus the bookkeeping needed to read allocations back."""

    net: FlowNetwork
    requests: list[TransferRequest]
    src_edges: list[int]
    slot_edges: dict[tuple[int, int], int]  # (request index, slot) -> edge index
    demands: list[int]


def build_batch_network(tl: SlotTimeline, batch: list[TransferRequest]) -> BatchNetwork:
    """Bipartite request/slot network: src -> r -> t -> dest.

    Node 0 is src, node 1 is dest, requests follow, then slots 1..T.
    """
    for r in batch:
        if r.kind != "preemptive":
            raise ValueError(f"request {r.id} is not preemptive")
        r.check_window(tl.T)
    m = len(batch)
    avb = tl.avb
    net = FlowNetwork(2 + m + tl.T, 0, 1)
    demands = [r.demand(tl.slot_d) for r in batch]
    inf = sum(demands) + 1
    src_edges = [net.add_edge(0, 2 + i, d) for i, d in enumerate(demands)]
    slot_edges = {}
    for i, r in enumerate(batch):
        for t in range(r.S, r.F + 1):
            slot_edges[(i, t)] = net.add_edge(2 + i, 1 + m + t, inf)
    for t in range(1, tl.T + 1):
        net.add_edge(1 + m + t, 1, avb[t - 1])
    return BatchNetwork(net, list(batch), src_edges, slot_edges, demands)


def _solve(tl, batch):
    bn = build_batch_network(tl, batch)
    _, flows = max_flow(bn.net)
    saturated = [flows[e] == d for e, d in zip(bn.src_edges, bn.demands)]
    allocs = []
    for i, r in enumerate(batch):
        alloc = {}
        for t in range(r.S, r.F + 1):
            f = flows[bn.slot_edges[(i, t)]]
            if f:
                alloc[t] = f
        allocs.append(alloc)
    return saturated, allocs


def batch_feasible(tl: SlotTimeline, batch: list[TransferRequest]) -> bool:
    """True when every request in ``batch`` can be granted simultaneously."""
    return all(_solve(tl, batch)[0])


def _commit(tl, alloc):
    for t, u in alloc.items():
        tl.range_add(t, t, -u)


def schedule_batch_preemptive(tl: SlotTimeline, batch: list[TransferRequest],
                              mode: str = "desirability_cutoff",
                              cfg: DesirabilityConfig | None = None,
                              limit: int | None = None) -> list[ScheduleDecision]:
    """Admit a batch of preemptive requests, updating ``tl`` in place.

    Decisions come back in the order of ``batch``.
    """
    if mode not in BATCH_MODES:
        raise ValueError(f"unknown batch mode {mode!r}")
    if limit is not None and len(batch) > limit:
        raise ValueError(f"batch of {len(batch)} exceeds limit R={limit}")
    cfg = cfg or DesirabilityConfig()
    for r in batch:
        if r.kind != "preemptive":
            raise ValueError(f"request {r.id} is not preemptive")
        r.check_window(tl.T)

    decided: dict[str, ScheduleDecision] = {}
    if mode == "iterative_grant":
        pending = list(batch)
        while pending:
            saturated, allocs = _solve(tl, pending)
            if not any(saturated):
                break
            rest = []
            for r, ok, alloc in zip(pending, saturated, allocs):
                if ok:
                    _commit(tl, alloc)
                    decided[r.id] = ScheduleDecision(r.id, True, alloc)
                else:
                    rest.append(r)
            pending = rest
    else:
        order = sorted(batch, key=lambda r: (-cfg.score(r), -r.p, r.id))
        while order:
            # largest prefix length p such that r_1..r_p are jointly feasible
            lo, hi = 0, len(order)
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if batch_feasible(tl, order[:mid]):
                    lo = mid
                else:
                    hi = mid - 1
            if lo:
                _, allocs = _solve(tl, order[:lo])
                for r, alloc in zip(order[:lo], allocs):
                    _commit(tl, alloc)
                    decided[r.id] = ScheduleDecision(r.id, True, alloc)
            if lo < len(order):
                log.debug("cutoff rejects %s", order[lo].id)
                decided[order[lo].id] = ScheduleDecision(order[lo].id, False)
            order = order[lo + 1:]

    return [decided.get(r.id) or ScheduleDecision(r.id, False) for r in batch]


def admit_nonpreemptive_fixed(tl: SlotTimeline, r: TransferRequest) -> ScheduleDecision:
    if r.kind != "nonpreemptive_fixed":
        raise ValueError(f"request {r.id} is not nonpreemptive_fixed")
    r.check_window(tl.T)
    if tl.range_min(r.S, r.F) < r.B:
        return ScheduleDecision(r.id, False)
    tl.range_add(r.S, r.F, -r.B)
    return ScheduleDecision(r.id, True, {t: r.B for t in range(r.S, r.F + 1)})


def admit_nonpreemptive_unit(tl: SlotTimeline, r: TransferRequest,
                             policy: str = "best_fit") -> ScheduleDecision:
    """Place a unit-duration request in one slot of its window.

    ``max_avail`` picks the slot with most room, ``best_fit`` the tightest
    slot that still fits, ``exact`` a slot whose availability equals B.
    """
    if r.kind != "nonpreemptive_unit":
        raise ValueError(f"request {r.id} is not nonpreemptive_unit")
    if policy not in UNIT_POLICIES:
        raise ValueError(f"unknown unit policy {policy!r}")
    r.check_window(tl.T)
    if policy == "max_avail":
        value, slot = tl.range_max(r.S, r.F)
        if value < r.B:
            slot = None
    elif policy == "best_fit":
        slot = tl.find_best_fit(r.S, r.F, r.B)
    else:
        slot = tl.find_exact(r.S, r.F, r.B)
    if slot is None:
        return ScheduleDecision(r.id, False)
    tl.range_add(slot, slot, -r.B)
    return ScheduleDecision(r.id, True, {slot: r.B})
