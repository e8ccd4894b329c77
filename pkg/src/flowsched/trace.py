"""Trace-driven batching loop over the link scheduler.

Requests arrive with simulated timestamps. A batch opens at the first
pending arrival and closes once it holds R requests or the next arrival
comes more than ``flush_timeout`` seconds after the batch opened.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .link_scheduler import (
    BATCH_MODES,
    UNIT_POLICIES,
    DesirabilityConfig,
    ScheduleDecision,
    TransferRequest,
    admit_nonpreemptive_fixed,
    admit_nonpreemptive_unit,
    schedule_batch_preemptive,
)
from .timeline import Quantizer, SlotTimeline, as_fraction

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceEvent:
    arrival: float
    request: TransferRequest


@dataclass
class BatchConfig:
    R: int = 8
    flush_timeout: float = 1.0
    mode: str = "desirability_cutoff"
    exp: float = 1.0
    unit_policy: str = "best_fit"
    backend: str = "grouped_slots"

    def __post_init__(self):
        if self.R < 1:
            raise ValueError("R must be >= 1")
        if self.flush_timeout <= 0:
            raise ValueError("flush_timeout must be > 0")
        if self.mode not in BATCH_MODES:
            raise ValueError(f"unknown batch mode {self.mode!r}")
        if self.unit_policy not in UNIT_POLICIES:
            raise ValueError(f"unknown unit policy {self.unit_policy!r}")
        DesirabilityConfig(self.exp)

    @classmethod
    def from_dict(cls, d: dict | None) -> "BatchConfig":
        d = d or {}
        known = {k: d[k] for k in ("R", "flush_timeout", "mode", "exp", "unit_policy", "backend") if k in d}
        return cls(**known)


def load_trace(data: dict, backend: str = "grouped_slots") -> tuple[SlotTimeline, list[TraceEvent]]:
    """Build the timeline and events from trace JSON, quantizing at ingest.

    ``B_max``, ``avb`` and ``B`` are physical bandwidths; ``TD`` is physical
    data (bandwidth x seconds). The timeline works in units of B_max / Q.
    """
    tdoc = data["timeline"]
    q = Quantizer(tdoc["B_max"], tdoc.get("Q", 1000))
    T = tdoc["T"]
    slot_d = as_fraction(tdoc.get("slot_d", 1))
    avb = tdoc.get("avb")
    units = [q.supply(a) for a in avb] if avb is not None else None
    tl = SlotTimeline(T, slot_d, q.Q, units, backend=backend)
    events = []
    seen = set()
    for raw in data.get("requests", []):
        rid = str(raw["id"])
        if rid in seen:
            raise ValueError(f"duplicate request id {rid!r}")
        seen.add(rid)
        kind = raw["kind"]
        td = raw.get("TD")
        b = raw.get("B")
        r = TransferRequest(
            rid, kind, raw["S"], raw["F"],
            TD=q.data(td) if kind == "preemptive" and td is not None else None,
            B=q.demand(b) if kind != "preemptive" and b is not None else None,
            p=raw.get("p", 0),
        )
        r.check_window(T)
        events.append(TraceEvent(raw.get("arrival", 0), r))
    events.sort(key=lambda e: e.arrival)  # stable: ties keep file order
    return tl, events


def make_batches(events: list[TraceEvent], cfg: BatchConfig) -> list[list[TraceEvent]]:
    batches: list[list[TraceEvent]] = []
    current: list[TraceEvent] = []
    opened = None
    for ev in events:
        if current and (len(current) >= cfg.R or ev.arrival - opened > cfg.flush_timeout):
            batches.append(current)
            current = []
        if not current:
            opened = ev.arrival
        current.append(ev)
    if current:
        batches.append(current)
    return batches


def run_trace(events: list[TraceEvent], tl: SlotTimeline, cfg: BatchConfig) -> dict:
    """Replay ``events`` against ``tl`` (mutated in place) and report decisions."""
    dcfg = DesirabilityConfig(cfg.exp)
    report_batches = []
    decisions = []
    profit = Fraction(0)
    granted = 0
    for idx, batch in enumerate(make_batches(events, cfg)):
        pre = [e.request for e in batch if e.request.kind == "preemptive"]
        by_id: dict[str, ScheduleDecision] = {}
        if pre:
            for dec in schedule_batch_preemptive(tl, pre, cfg.mode, dcfg, limit=cfg.R):
                by_id[dec.request_id] = dec
        for e in batch:
            r = e.request
            if r.kind == "nonpreemptive_fixed":
                by_id[r.id] = admit_nonpreemptive_fixed(tl, r)
            elif r.kind == "nonpreemptive_unit":
                by_id[r.id] = admit_nonpreemptive_unit(tl, r, cfg.unit_policy)
        log.info("batch %d: %d requests", idx, len(batch))
        report_batches.append({
            "index": idx,
            "opened_at": batch[0].arrival,
            "requests": [e.request.id for e in batch],
        })
        for e in batch:
            dec = by_id[e.request.id]
            out = dec.to_dict()
            out["batch"] = idx
            out["kind"] = e.request.kind
            decisions.append(out)
            if dec.granted:
                granted += 1
                profit += as_fraction(e.request.p)
    return {
        "batches": report_batches,
        "decisions": decisions,
        "summary": {
            "granted": granted,
            "rejected": len(decisions) - granted,
            "total_profit": float(profit),
            "timeline": tl.to_dict(),
        },
    }
