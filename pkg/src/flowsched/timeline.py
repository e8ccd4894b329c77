"""Per-slot available bandwidth with interchangeable range-query backends.

Slots are 1-indexed. All bandwidth values are integers in "units" of
``B_max / Q``; see :class:`Quantizer` for the conversion from physical values.
"""

from __future__ import annotations

import json
import math
import operator
from bisect import bisect_left
from collections import defaultdict
from fractions import Fraction
from numbers import Rational

BACKENDS = ("segment_tree", "block_partition", "grouped_slots")


def as_fraction(x) -> Fraction:
    """Exact rational for ints, Fractions and decimal-looking floats."""
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return Fraction(x)
    return Fraction(str(x))


class Quantizer:
    """Converts physical bandwidth / data amounts into integer units.

    The unit is ``B_max / Q``. Demands round up and supplies round down so
    that admission never over-commits the link.
    """

    def __init__(self, B_max, Q: int = 1000):
        if Q < 1:
            raise ValueError("Q must be >= 1")
        self.B_max = as_fraction(B_max)
        if self.B_max <= 0:
            raise ValueError("B_max must be positive")
        self.Q = Q
        self.unit = self.B_max / Q

    def supply(self, bw) -> int:
        return math.floor(as_fraction(bw) / self.unit)

    def demand(self, bw) -> int:
        return math.ceil(as_fraction(bw) / self.unit)

    def data(self, td) -> Fraction:
        """Physical data amount (bandwidth x seconds) as unit-seconds."""
        return as_fraction(td) / self.unit


def default_group_size(T: int) -> int:
    return max(1, math.isqrt(T - 1) + 1) if T > 1 else 1


class _SegmentTreeBackend:
    """Bottom-up lazy range-add segment tree answering min and leftmost max.

    Leaves sit at ``size .. size+n-1`` for a power-of-two ``size``. An
    internal node stores the aggregate of its children plus its own pending
    addend ``lazy[p]``, so a node's true value is its stored value plus the
    addends of its proper ancestors. Queries collect those on the way up
    instead of pushing them down.
    """

    def __init__(self, values: list[int]):
        self.n = len(values)
        size = 1
        while size < self.n:
            size *= 2
        self.size = size
        self.mn = [math.inf] * (2 * size)
        self.mx = [-math.inf] * (2 * size)
        self.mx_pos = [0] * (2 * size)
        # one spare slot: the exclusive right end can climb to index `size`
        self.lazy = [0] * (size + 1)
        self.visits = 0
        for i, v in enumerate(values):
            self.mn[size + i] = self.mx[size + i] = v
            self.mx_pos[size + i] = i + 1
        for p in range(size - 1, 0, -1):
            self._pull(p)

    def _pull(self, p):
        mn, mx, pos = self.mn, self.mx, self.mx_pos
        l, r = 2 * p, 2 * p + 1
        d = self.lazy[p]
        mn[p] = min(mn[l], mn[r]) + d
        if mx[l] >= mx[r]:
            mx[p], pos[p] = mx[l] + d, pos[l]
        else:
            mx[p], pos[p] = mx[r] + d, pos[r]

    def range_add(self, a, b, delta):
        """Add ``delta`` on [a, b]; return the new global min (delta < 0) or max."""
        mn, mx, lazy = self.mn, self.mx, self.lazy
        size = self.size
        l, r = a - 1 + size, b + size
        p, q = l >> 1, (r - 1) >> 1
        visits = 0
        while l < r:
            if l & 1:
                mn[l] += delta
                mx[l] += delta
                if l < size:
                    lazy[l] += delta
                l += 1
                visits += 1
            if r & 1:
                r -= 1
                mn[r] += delta
                mx[r] += delta
                if r < size:
                    lazy[r] += delta
                visits += 1
            l >>= 1
            r >>= 1
        pos = self.mx_pos
        while p:
            for x in (p,) if p == q else (p, q):
                c = 2 * x
                d = lazy[x]
                mn[x] = (mn[c] if mn[c] < mn[c + 1] else mn[c + 1]) + d
                if mx[c] >= mx[c + 1]:
                    mx[x], pos[x] = mx[c] + d, pos[c]
                else:
                    mx[x], pos[x] = mx[c + 1] + d, pos[c + 1]
                visits += 1
            p >>= 1
            q >>= 1
        self.visits += visits
        return mn[1] if delta < 0 else mx[1]

    def range_min(self, a, b):
        mn, lazy = self.mn, self.lazy
        l, r = a - 1 + self.size, b + self.size
        left = right = math.inf
        visits = 0
        while l < r:
            if l & 1:
                if mn[l] < left:
                    left = mn[l]
                l += 1
            if r & 1:
                r -= 1
                if mn[r] < right:
                    right = mn[r]
            l >>= 1
            r >>= 1
            left += lazy[l - 1]
            right += lazy[r]
            visits += 1
        pl, pr = l - 1, r
        while pl != pr:
            pl >>= 1
            pr >>= 1
            left += lazy[pl]
            right += lazy[pr]
            visits += 1
        best = left if left < right else right
        pl >>= 1
        while pl:
            best += lazy[pl]
            pl >>= 1
            visits += 1
        self.visits += visits
        return best

    def range_max(self, a, b):
        mx, pos, lazy = self.mx, self.mx_pos, self.lazy
        l, r = a - 1 + self.size, b + self.size
        lv = rv = -math.inf
        lp = rp = None
        visits = 0
        while l < r:
            if l & 1:
                if mx[l] > lv:
                    lv, lp = mx[l], pos[l]
                l += 1
            if r & 1:
                r -= 1
                if mx[r] >= rv:
                    rv, rp = mx[r], pos[r]
            l >>= 1
            r >>= 1
            lv += lazy[l - 1]
            rv += lazy[r]
            visits += 1
        pl, pr = l - 1, r
        while pl != pr:
            pl >>= 1
            pr >>= 1
            lv += lazy[pl]
            rv += lazy[pr]
            visits += 1
        best, at = (lv, lp) if lv >= rv else (rv, rp)
        pl >>= 1
        while pl:
            best += lazy[pl]
            pl >>= 1
            visits += 1
        self.visits += visits
        return best, at

    def values(self):
        size = self.size
        for p in range(1, size):
            d = self.lazy[p]
            if d:
                for c in (2 * p, 2 * p + 1):
                    self.mn[c] += d
                    self.mx[c] += d
                    if c < size:
                        self.lazy[c] += d
                self.lazy[p] = 0
        return self.mn[size:size + self.n]


class _BlockPartitionBackend:
    """Blocks of k slots, each with a lazy addend and cached min / max.

    Only the two end blocks of a range can be partial; the blocks in
    between are handled through their cached aggregates alone.
    """

    def __init__(self, values: list[int], k: int):
        self.n = len(values)
        self.k = k
        self.vals = list(values)
        self.nblocks = (self.n + k - 1) // k
        self.add = [0] * self.nblocks
        self.bmin = [0] * self.nblocks
        self.bmax = [0] * self.nblocks
        for g in range(self.nblocks):
            self._refresh(g)

    def _refresh(self, g):
        lo = g * self.k
        seg = self.vals[lo:lo + self.k]
        self.bmin[g] = min(seg)
        self.bmax[g] = max(seg)

    def range_add(self, a, b, delta):
        """Add ``delta`` on [a, b]; return the new min (delta < 0) or max over
        the touched blocks."""
        k, n, vals, add = self.k, self.n, self.vals, self.add
        a0 = a - 1
        ga, gb = a0 // k, (b - 1) // k
        for g in (ga,) if ga == gb else (ga, gb):
            glo = g * k
            ghi = glo + k if glo + k < n else n
            lo = a0 if a0 > glo else glo
            hi = b if b < ghi else ghi
            if lo == glo and hi == ghi:
                add[g] += delta
            else:
                vals[lo:hi] = [v + delta for v in vals[lo:hi]]
                self._refresh(g)
        if gb - ga > 1:
            add[ga + 1:gb] = [x + delta for x in add[ga + 1:gb]]
        if delta < 0:
            return min(map(operator.add, self.bmin[ga:gb + 1], add[ga:gb + 1]))
        return max(map(operator.add, self.bmax[ga:gb + 1], add[ga:gb + 1]))

    def range_min(self, a, b):
        k, vals, add = self.k, self.vals, self.add
        a0 = a - 1
        ga, gb = a0 // k, (b - 1) // k
        if ga == gb:
            return min(vals[a0:b]) + add[ga]
        best = min(vals[a0:(ga + 1) * k]) + add[ga]
        v = min(vals[gb * k:b]) + add[gb]
        if v < best:
            best = v
        if gb - ga > 1:
            v = min(map(operator.add, self.bmin[ga + 1:gb], add[ga + 1:gb]))
            if v < best:
                best = v
        return best

    def range_max(self, a, b):
        k, vals, add = self.k, self.vals, self.add
        a0 = a - 1
        ga, gb = a0 // k, (b - 1) // k
        hi = b if ga == gb else (ga + 1) * k
        seg = vals[a0:hi]
        m = max(seg)
        best, pos = m + add[ga], a0 + seg.index(m) + 1
        if ga == gb:
            return best, pos
        if gb - ga > 1:
            mids = list(map(operator.add, self.bmax[ga + 1:gb], add[ga + 1:gb]))
            m = max(mids)
            if m > best:
                g = ga + 1 + mids.index(m)
                best, pos = m, g * k + vals[g * k:(g + 1) * k].index(self.bmax[g]) + 1
        seg = vals[gb * k:b]
        m = max(seg)
        if m + add[gb] > best:
            best, pos = m + add[gb], gb * k + seg.index(m) + 1
        return best, pos

    def values(self):
        return [self.vals[i] + self.add[i // self.k] for i in range(self.n)]


class _GroupedSlotsBackend(_BlockPartitionBackend):
    """Groups of k slots with a ``globalbw`` addend per group.

    ``view="sorted"`` keeps each group's (stored value, slot) pairs in
    ascending order; ``view="hashed"`` keeps a value -> slots multiset map.
    Range add / min / max reuse the block machinery, with ``stored`` and
    ``globalbw`` as the per-slot values and group addends. A group's view is
    rebuilt lazily, on the first search after its stored values changed.
    """

    def __init__(self, values: list[int], k: int, view: str = "sorted"):
        if view not in ("sorted", "hashed"):
            raise ValueError(f"unknown grouped view {view!r}")
        self.view = view
        ngroups = (len(values) + k - 1) // k
        self._views: list = [None] * ngroups
        super().__init__(values, k)
        self.ngroups = self.nblocks
        self.stored = self.vals
        self.globalbw = self.add

    def _refresh(self, g):
        lo = g * self.k
        seg = self.vals[lo:lo + self.k]
        self.bmin[g] = min(seg)
        self.bmax[g] = max(seg)
        self._views[g] = None

    def _group_view(self, g):
        cached = self._views[g]
        if cached is None:
            lo = g * self.k
            hi = min(lo + self.k, self.n)
            if self.view == "sorted":
                cached = sorted(zip(self.vals[lo:hi], range(lo + 1, hi + 1)))
            else:
                table: dict[int, list[int]] = defaultdict(list)
                for i in range(lo, hi):
                    table[self.vals[i]].append(i + 1)
                cached = dict(table)
            self._views[g] = cached
        return cached

    def _split(self, a, b):
        """(group, lo, hi, whole) for each group meeting [a, b]; [lo, hi) is 0-based."""
        k, n = self.k, self.n
        a0 = a - 1
        out = []
        for g in range(a0 // k, (b - 1) // k + 1):
            glo = g * k
            ghi = min(glo + k, n)
            lo, hi = max(glo, a0), min(ghi, b)
            out.append((g, lo, hi, lo == glo and hi == ghi))
        return out

    def find_best_fit(self, a, b, B):
        if self.view != "sorted":
            raise ValueError("best-fit search needs the sorted group view")
        best = None  # (value, slot)
        for g, lo, hi, whole in self._split(a, b):
            gb = self.globalbw[g]
            if whole:
                view = self._group_view(g)
                j = bisect_left(view, (B - gb, -1))
                if j == len(view):
                    continue
                cand = (view[j][0] + gb, view[j][1])
            else:
                seg = self.stored[lo:hi]
                fits = [v for v in seg if v >= B - gb]
                if not fits:
                    continue
                m = min(fits)
                cand = (m + gb, lo + seg.index(m) + 1)
            if best is None or cand < best:
                best = cand
        return None if best is None else best[1]

    def find_exact(self, a, b, B):
        for g, lo, hi, whole in self._split(a, b):
            want = B - self.globalbw[g]
            if whole:
                if self.view == "hashed":
                    slots = self._group_view(g).get(want)
                    if slots:
                        return slots[0]
                else:
                    view = self._group_view(g)
                    j = bisect_left(view, (want, -1))
                    if j < len(view) and view[j][0] == want:
                        return view[j][1]
            else:
                seg = self.stored[lo:hi]
                if want in seg:
                    return lo + seg.index(want) + 1
        return None

    def values(self):
        return [self.stored[i] + self.globalbw[i // self.k] for i in range(self.n)]


class SlotTimeline:
    """Available bandwidth ``avb(t)`` for slots ``1..T`` on one link.

    ``B_max`` and every value are integer bandwidth units. ``backend`` picks
    the range-query structure; all three answer identically.
    """

    def __init__(self, T: int, slot_d=1, B_max: int = 1000, avb=None,
                 backend: str = "segment_tree", k: int | None = None,
                 view: str = "sorted"):
        if T < 1:
            raise ValueError("T must be >= 1")
        if as_fraction(slot_d) <= 0:
            raise ValueError("slot_d must be positive")
        if B_max < 0:
            raise ValueError("B_max must be >= 0")
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        values = [B_max] * T if avb is None else [int(v) for v in avb]
        if len(values) != T:
            raise ValueError(f"avb has {len(values)} entries, expected {T}")
        if any(v < 0 or v > B_max for v in values):
            raise ValueError("avb values must lie in [0, B_max]")
        self.T = T
        self.slot_d = slot_d
        self.B_max = B_max
        self.backend = backend
        self.k = k or default_group_size(T)
        if backend == "segment_tree":
            self._impl = _SegmentTreeBackend(values)
        elif backend == "block_partition":
            self._impl = _BlockPartitionBackend(values, self.k)
        else:
            self._impl = _GroupedSlotsBackend(values, self.k, view)

    def _check(self, a, b):
        if not (1 <= a <= b <= self.T):
            raise IndexError(f"slot range [{a}, {b}] outside [1, {self.T}]")

    def range_add(self, a: int, b: int, delta: int) -> None:
        if not 1 <= a <= b <= self.T:
            self._check(a, b)
        if delta == 0:
            return
        # every slot starts inside [0, B_max], so the extreme the backend
        # reports after the add exposes any violation; undo it if so
        extreme = self._impl.range_add(a, b, delta)
        if delta < 0 and extreme < 0:
            self._impl.range_add(a, b, -delta)
            raise ValueError("range_add would drive avb below 0")
        if delta > 0 and extreme > self.B_max:
            self._impl.range_add(a, b, -delta)
            raise ValueError("range_add would push avb above B_max")

    def range_min(self, a: int, b: int) -> int:
        if not 1 <= a <= b <= self.T:
            self._check(a, b)
        return self._impl.range_min(a, b)

    def range_max(self, a: int, b: int) -> tuple[int, int]:
        """Maximum over [a, b] and the leftmost slot holding it."""
        if not 1 <= a <= b <= self.T:
            self._check(a, b)
        return self._impl.range_max(a, b)

    def find_best_fit(self, a: int, b: int, B: int) -> int | None:
        if self.backend != "grouped_slots":
            raise ValueError("find_best_fit requires the grouped_slots backend")
        self._check(a, b)
        if B < 0:
            raise ValueError("B must be >= 0")
        return self._impl.find_best_fit(a, b, B)

    def find_exact(self, a: int, b: int, B: int) -> int | None:
        if self.backend != "grouped_slots":
            raise ValueError("find_exact requires the grouped_slots backend")
        self._check(a, b)
        return self._impl.find_exact(a, b, B)

    def __getitem__(self, t: int) -> int:
        return self.range_min(t, t)

    @property
    def avb(self) -> list[int]:
        return self._impl.values()

    @property
    def visits(self) -> int:
        return getattr(self._impl, "visits", 0)

    def to_dict(self) -> dict:
        slot_d = self.slot_d
        if isinstance(slot_d, Fraction):
            slot_d = float(slot_d)
        return {"T": self.T, "slot_d": slot_d, "B_max": self.B_max, "avb": self.avb}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict, **kwargs) -> "SlotTimeline":
        return cls(data["T"], data.get("slot_d", 1), data["B_max"], data.get("avb"), **kwargs)

    @classmethod
    def from_json(cls, text: str, **kwargs) -> "SlotTimeline":
        return cls.from_dict(json.loads(text), **kwargs)


class SignedSlotArray:
    """Free / occupied slot map answering longest-free-run queries.

    Free slots hold ``A``; a reservation adds ``X < -T*A`` over its range and
    a cancellation adds ``-X``. The longest free run inside ``[a, b]`` is the
    maximum-sum segment there, because any segment touching an occupied slot
    has a negative sum.

    Range additions recurse until a node is uniform (all slots equal), where
    the max-sum summary has a closed form.
    """

    def __init__(self, T: int, A: int = 1, X: int | None = None, values=None):
        if T < 1 or A <= 0:
            raise ValueError("need T >= 1 and A > 0")
        self.T = T
        self.A = A
        self.X = X if X is not None else -(T * A) - 1
        if self.X >= -T * A:
            raise ValueError("X must be < -T*A")
        vals = [A] * T if values is None else list(values)
        if len(vals) != T:
            raise ValueError("values length must equal T")
        size = 4 * T
        # node summary: total, (prefix sum, len), (suffix sum, len), (best sum, start, len)
        self.total = [0] * size
        self.pre = [(0, 0)] * size
        self.suf = [(0, 0)] * size
        self.best = [(0, 0, 0)] * size
        self.lo_v = [0] * size
        self.hi_v = [0] * size
        self.lazy = [0] * size
        self._build(1, 1, T, vals)

    def _leaf(self, node, pos, v):
        self.total[node] = v
        self.pre[node] = (v, 1)
        self.suf[node] = (v, 1)
        self.best[node] = (v, pos, 1)
        self.lo_v[node] = self.hi_v[node] = v

    def _uniform(self, node, lo, hi, v):
        L = hi - lo + 1
        self.total[node] = v * L
        self.lo_v[node] = self.hi_v[node] = v
        if v > 0:
            self.pre[node] = self.suf[node] = (v * L, L)
            self.best[node] = (v * L, lo, L)
        else:
            self.pre[node] = self.suf[node] = (v, 1)
            self.best[node] = (v, lo, 1)

    def _build(self, node, lo, hi, vals):
        if lo == hi:
            self._leaf(node, lo, vals[lo - 1])
            return
        mid = (lo + hi) // 2
        self._build(2 * node, lo, mid, vals)
        self._build(2 * node + 1, mid + 1, hi, vals)
        self._pull(node, lo, mid, hi)

    @staticmethod
    def _merge(left, right, mid_start):
        """Combine summaries (total, pre, suf, best, length) of adjacent ranges."""
        lt, lp, ls, lb, llen = left
        rt, rp, rs, rb, rlen = right
        pre = lp
        if lt + rp[0] > lp[0]:
            pre = (lt + rp[0], llen + rp[1])
        suf = rs
        if rt + ls[0] > rs[0]:
            suf = (rt + ls[0], ls[1] + rlen)
        cross = (ls[0] + rp[0], mid_start - ls[1], ls[1] + rp[1])
        # larger sum wins; ties go to the leftmost start
        best = max((lb, cross, rb), key=lambda c: (c[0], -c[1]))
        return lt + rt, pre, suf, best

    def _summary(self, node, lo, hi):
        return (self.total[node], self.pre[node], self.suf[node], self.best[node], hi - lo + 1)

    def _pull(self, node, lo, mid, hi):
        l, r = 2 * node, 2 * node + 1
        merged = self._merge(
            (self.total[l], self.pre[l], self.suf[l], self.best[l], mid - lo + 1),
            (self.total[r], self.pre[r], self.suf[r], self.best[r], hi - mid),
            mid + 1,
        )
        self.total[node], self.pre[node], self.suf[node], self.best[node] = merged
        self.lo_v[node] = min(self.lo_v[l], self.lo_v[r])
        self.hi_v[node] = max(self.hi_v[l], self.hi_v[r])

    def _push(self, node, lo, mid, hi):
        d = self.lazy[node]
        if d:
            self._shift_uniform(2 * node, lo, mid, d)
            self._shift_uniform(2 * node + 1, mid + 1, hi, d)
            self.lazy[node] = 0

    def _shift_uniform(self, node, lo, hi, d):
        # only ever called on uniform nodes, so the summary is recomputed exactly
        self._uniform(node, lo, hi, self.lo_v[node] + d)
        self.lazy[node] += d

    def range_add(self, a: int, b: int, delta: int) -> None:
        if not (1 <= a <= b <= self.T):
            raise IndexError(f"slot range [{a}, {b}] outside [1, {self.T}]")
        self._add(1, 1, self.T, a, b, delta)

    def _add(self, node, lo, hi, a, b, delta):
        if a <= lo and hi <= b and self.lo_v[node] == self.hi_v[node]:
            self._shift_uniform(node, lo, hi, delta)
            return
        mid = (lo + hi) // 2
        self._push(node, lo, mid, hi)
        if a <= mid:
            self._add(2 * node, lo, mid, a, b, delta)
        if b > mid:
            self._add(2 * node + 1, mid + 1, hi, a, b, delta)
        self._pull(node, lo, mid, hi)

    def reserve(self, a: int, b: int) -> None:
        self.range_add(a, b, self.X)

    def cancel(self, a: int, b: int) -> None:
        self.range_add(a, b, -self.X)

    def _query(self, node, lo, hi, a, b):
        if a <= lo and hi <= b:
            return self._summary(node, lo, hi)
        mid = (lo + hi) // 2
        self._push(node, lo, mid, hi)
        if b <= mid:
            return self._query(2 * node, lo, mid, a, b)
        if a > mid:
            return self._query(2 * node + 1, mid + 1, hi, a, b)
        left = self._query(2 * node, lo, mid, a, b)
        right = self._query(2 * node + 1, mid + 1, hi, a, b)
        return (*self._merge(left, right, mid + 1), left[4] + right[4])

    def max_sum_segment(self, a: int, b: int) -> tuple[int, int, int]:
        """(sum, start, length) of the best non-empty segment inside [a, b]."""
        if not (1 <= a <= b <= self.T):
            raise IndexError(f"slot range [{a}, {b}] outside [1, {self.T}]")
        return self._query(1, 1, self.T, a, b)[3]

    def values(self) -> list[int]:
        out: list[int] = []
        self._collect(1, 1, self.T, out)
        return out

    def _collect(self, node, lo, hi, out):
        if lo == hi or self.lo_v[node] == self.hi_v[node]:
            out.extend([self.lo_v[node]] * (hi - lo + 1))
            return
        mid = (lo + hi) // 2
        self._push(node, lo, mid, hi)
        self._collect(2 * node, lo, mid, out)
        self._collect(2 * node + 1, mid + 1, hi, out)


def longest_free_interval(arr: SignedSlotArray, a: int, b: int) -> tuple[int, int]:
    """Longest run of free slots within [a, b] as ``(start, length)``.

    Returns ``(0, 0)`` when no slot in the range is free.
    """
    total, start, length = arr.max_sum_segment(a, b)
    if total <= 0:
        return 0, 0
    return start, length
