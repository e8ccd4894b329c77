"""Content dissemination along path-shaped wireless networks.

Two problems:

* mobile nodes on a line, each moving at speed <= v, relaying a piece of
  content hop by hop within range D; minimize the time until node n has it.
* static sensor nodes with processing release times; the content goes left
  to right and back, and each intermediate node decides whether to wait for
  its release time on the way out or process on the way back.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

EPS = 1e-9
REGIMES = ("zero_d", "uniform_dp", "general_integer")


@dataclass
class MobilePathInstance:
    x: list[float]
    D: float
    v: float

    def __post_init__(self):
        if not self.x:
            raise ValueError("need at least one node")
        if any(a > b for a, b in zip(self.x, self.x[1:])):
            raise ValueError("coordinates must be non-decreasing")
        if self.D <= 0 or self.v <= 0:
            raise ValueError("D and v must be positive")

    @property
    def n(self) -> int:
        return len(self.x)


@dataclass
class MobileSchedule:
    Tmin: list[float]
    xmax: list[float]
    cases: list[str] = field(default_factory=list)

    @property
    def makespan(self) -> float:
        return self.Tmin[-1]


def mobile_makespan_linear(inst: MobilePathInstance) -> MobileSchedule:
    """Earliest receipt time and furthest-right receipt position per node."""
    x, D, v = inst.x, inst.D, inst.v
    Tmin = [0.0]
    xmax = [float(x[0])]
    cases = ["source"]
    for i in range(1, inst.n):
        prev_t, prev_x = Tmin[-1], xmax[-1]
        if x[i] - prev_x > D:
            tdif = (x[i] - prev_x - D) / v
            if tdif <= prev_t:
                # reach prev_x + D early and wait there
                Tmin.append(prev_t)
                xmax.append(prev_x + D)
                cases.append("wait")
            else:
                # close the remaining gap from both sides after prev_t
                x_mid = x[i] - v * prev_t
                tdif2 = (x_mid - prev_x - D) / (2 * v)
                t = prev_t + tdif2
                Tmin.append(t)
                xmax.append(x[i] - t * v)
                cases.append("approach")
        else:
            tdif = (prev_x + D - x[i]) / v
            Tmin.append(prev_t)
            xmax.append(x[i] + v * min(prev_t, tdif))
            cases.append("drift")
    return MobileSchedule(Tmin, xmax, cases)


def mobile_feasible(inst: MobilePathInstance, T: float) -> bool:
    """Can every node have the content by time T? Backward sweep from node n.

    When node i+1 sits more than D to the right, node i closes the gap by
    carrying the content rightwards after receipt rather than staying put;
    the reachability check below rejects the move if it is too long.
    """
    if T < 0:
        return False
    x, D, v = inst.x, inst.D, inst.v
    tmax = T
    xmin = x[-1] - v * T
    for i in range(inst.n - 2, -1, -1):
        if xmin - x[i] > D:
            xmin = xmin - D
        else:
            tdif = min((x[i] - xmin + D) / v, tmax)
            xmin = x[i] - tdif * v
        if tmax < -EPS or abs(x[i] - xmin) > v * tmax + EPS:
            return False
    return True


def mobile_makespan_bsearch(inst: MobilePathInstance, TM: float | None = None,
                            eps: float = 1e-9, iterations: int = 60) -> float:
    """Smallest feasible makespan, to within ``eps``, by bisection on time."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if TM is None:
        TM = (inst.x[-1] - inst.x[0]) / inst.v + 1.0
    if TM < 0:
        raise ValueError("TM must be >= 0")
    if mobile_feasible(inst, 0.0):
        return 0.0
    if not mobile_feasible(inst, TM):
        raise ValueError(f"upper bound TM={TM} is not feasible")
    lo, hi = 0.0, float(TM)
    for _ in range(iterations):
        if hi - lo < eps:
            break
        mid = (lo + hi) / 2
        if mobile_feasible(inst, mid):
            hi = mid
        else:
            lo = mid
    return hi


def mobile_trajectories(inst: MobilePathInstance, sched: MobileSchedule) -> list[list[tuple[float, float]]]:
    """Piecewise-linear (time, position) breakpoints realizing ``sched``.

    Each node moves before its receipt according to its own case; after
    receipt it may move right to meet its successor in the "approach" case.
    """
    x, v = inst.x, inst.v
    n = inst.n
    paths: list[list[tuple[float, float]]] = []
    for i in range(n):
        t_i = sched.Tmin[i]
        case = sched.cases[i]
        if case == "source":
            pts = [(0.0, float(x[0]))]
        elif case == "wait":
            target = sched.xmax[i]
            pts = [(0.0, float(x[i])), ((x[i] - target) / v, target), (t_i, target)]
        elif case == "approach":
            pts = [(0.0, float(x[i])), (t_i, sched.xmax[i])]
        else:
            moved = sched.xmax[i] - x[i]
            pts = [(0.0, float(x[i])), (moved / v, sched.xmax[i]), (t_i, sched.xmax[i])]
        pts = [p for p in pts if p[0] <= t_i + EPS] or [(0.0, float(x[i]))]
        if pts[-1][0] < t_i:
            pts.append((t_i, pts[-1][1]))
        paths.append(pts)
    for i in range(1, n):
        if sched.cases[i] == "approach":
            prev = paths[i - 1]
            t0, x0 = prev[-1]
            dt = sched.Tmin[i] - t0
            prev.append((sched.Tmin[i], x0 + v * dt))
    return paths


def position_at(path, t: float) -> float:
    for (t0, x0), (t1, x1) in zip(path, path[1:]):
        if t0 <= t <= t1:
            if t1 == t0:
                return x1
            return x0 + (x1 - x0) * (t - t0) / (t1 - t0)
    return path[-1][1]


def validate_mobile_schedule(inst: MobilePathInstance, sched: MobileSchedule, tol: float = 1e-9) -> None:
    """Raise AssertionError unless every hop is within range and speeds are legal."""
    paths = mobile_trajectories(inst, sched)
    for path in paths:
        for (t0, x0), (t1, x1) in zip(path, path[1:]):
            assert t1 >= t0 - tol, "time runs backwards"
            assert abs(x1 - x0) <= inst.v * (t1 - t0) + tol, "speed limit exceeded"
    for i in range(1, inst.n):
        t = sched.Tmin[i]
        assert sched.Tmin[i - 1] <= t + tol
        gap = abs(position_at(paths[i], t) - position_at(paths[i - 1], t))
        assert gap <= inst.D + tol, f"hop {i - 1}->{i} spans {gap} > D"


@dataclass
class SensorPathInstance:
    """Sensor path; ``pt`` and ``d`` are indexed by node (0-based), entry 0 unused."""

    x: list[float]
    s: float
    pt: list[float]
    d: list[float]
    regime: str = "general_integer"

    def __post_init__(self):
        n = len(self.x)
        if n < 2:
            raise ValueError("need at least two nodes")
        if len(self.pt) != n or len(self.d) != n:
            raise ValueError("pt and d need one entry per node")
        if any(a > b for a, b in zip(self.x, self.x[1:])):
            raise ValueError("coordinates must be non-decreasing")
        if self.s <= 0:
            raise ValueError("propagation speed must be positive")
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}")
        mids = self.pt[1:n - 1]
        if any(a > b for a, b in zip(mids, mids[1:])) or (n > 2 and mids[-1] > self.pt[-1]):
            raise ValueError("release times must be non-decreasing from node 2 on")
        if any(di < 0 for di in self.d[1:]):
            raise ValueError("durations must be >= 0")

    @property
    def n(self) -> int:
        return len(self.x)

    def hop(self, i: int) -> float:
        """Travel time from node 1 to node i (0-based i)."""
        return abs(self.x[i] - self.x[0]) / self.s


@dataclass
class WaitingPlan:
    Tmin: float
    total_duration: float
    table: list = field(default_factory=list)


def sensor_duration_zero_d(inst: SensorPathInstance) -> float:
    if inst.regime != "zero_d" or any(inst.d[1:-1]):
        raise ValueError("zero_d regime requires d(i) = 0 for intermediate nodes")
    trip = inst.hop(inst.n - 1)
    return max(trip, inst.pt[-1]) + inst.d[-1] + trip


def _final_wait(inst, rows):
    """Fold node n's forced wait into each (waiting, processing-so-far) state."""
    n = inst.n
    trip = inst.hop(n - 1)
    best = math.inf
    for wait, processed in rows:
        if wait == math.inf:
            continue
        tr = trip + wait + processed
        best = min(best, wait + (inst.pt[-1] - tr if tr < inst.pt[-1] else 0))
    return best


def sensor_duration_uniform(inst: SensorPathInstance, dp: float | None = None) -> WaitingPlan:
    """Waiting-time DP when all intermediate durations equal ``dp``.

    ``table[i][j]`` is the least waiting on the way out when the content
    reaches node i+1 (0-based i) after j intermediate nodes processed it.
    """
    n = inst.n
    if dp is None:
        dp = inst.d[1] if n > 2 else 0
    if inst.regime != "uniform_dp" or any(abs(di - dp) > EPS for di in inst.d[1:n - 1]):
        raise ValueError("uniform_dp regime requires d(i) = dp for intermediate nodes")
    inf = math.inf
    table = [[0.0]]  # node 1: nothing processed, no waiting
    for i in range(1, n - 1):
        prev = table[-1]
        row = [inf] * (i + 1)
        for j in range(0, i + 1):
            if j >= 1 and j - 1 < len(prev) and prev[j - 1] < inf:
                tr = inst.hop(i) + prev[j - 1] + (j - 1) * dp
                row[j] = min(row[j], prev[j - 1] + (inst.pt[i] - tr if tr <= inst.pt[i] else 0))
            if j < len(prev) and prev[j] < inf:
                tr2 = inst.hop(i) + prev[j] + j * dp
                if tr2 < inst.pt[i]:
                    row[j] = min(row[j], prev[j])
        table.append(row)
    Tmin = _final_wait(inst, [(w, j * dp) for j, w in enumerate(table[-1])])
    total = 2 * inst.hop(n - 1) + (n - 2) * dp + inst.d[-1] + Tmin
    return WaitingPlan(Tmin, total, table)


def sensor_duration_general(inst: SensorPathInstance) -> WaitingPlan:
    """Pseudo-polynomial DP over total processing time spent so far.

    ``table[i][tp]`` is the least waiting on the way out when the content
    leaves node i+1 (0-based i) after ``tp`` time units of processing.
    """
    n = inst.n
    d = inst.d
    if any(di != int(di) for di in d[1:]):
        raise ValueError("general DP needs integer durations")
    d = [0] + [int(di) for di in d[1:]]
    inf = math.inf
    table = [[0.0]]  # sd(1) = 0
    for i in range(1, n - 1):
        prev = table[-1]
        row = [inf] * (len(prev) + d[i])
        for tp, wait in enumerate(prev):
            if wait == inf:
                continue
            tr = inst.hop(i) + wait + tp
            if tr < inst.pt[i]:
                row[tp] = min(row[tp], wait)
                row[tp + d[i]] = min(row[tp + d[i]], wait + inst.pt[i] - tr)
            else:
                row[tp + d[i]] = min(row[tp + d[i]], wait)
        table.append(row)
    Tmin = _final_wait(inst, [(w, tp) for tp, w in enumerate(table[-1])])
    total = 2 * inst.hop(n - 1) + Tmin + sum(d[1:])
    return WaitingPlan(Tmin, total, table)


def simulate_sensor(inst: SensorPathInstance, waits: tuple[bool, ...]) -> tuple[float, float]:
    """Replay one outbound wait policy; returns (total waiting, total duration).

    ``waits[k]`` is the choice of intermediate node k+2 (1-based) when the
    content arrives before its release time on the way out.
    """
    n = inst.n
    t = 0.0
    waited = 0.0
    processed = [False] * n
    for i in range(1, n - 1):
        t += abs(inst.x[i] - inst.x[i - 1]) / inst.s
        if t >= inst.pt[i]:
            processed[i] = True
            t += inst.d[i]
        elif waits[i - 1]:
            waited += inst.pt[i] - t
            t = inst.pt[i] + inst.d[i]
            processed[i] = True
    t += abs(inst.x[-1] - inst.x[-2]) / inst.s
    if t < inst.pt[-1]:
        waited += inst.pt[-1] - t
        t = inst.pt[-1]
    t += inst.d[-1]
    for i in range(n - 2, 0, -1):
        t += abs(inst.x[i + 1] - inst.x[i]) / inst.s
        if not processed[i]:
            assert t >= inst.pt[i] - EPS, "return pass reached a node before its release"
            t += inst.d[i]
    t += abs(inst.x[1] - inst.x[0]) / inst.s
    return waited, t


def sensor_exhaustive(inst: SensorPathInstance) -> tuple[float, float]:
    """Best (waiting, duration) over all 2^(n-2) outbound wait decisions."""
    best = (math.inf, math.inf)
    for waits in itertools.product((False, True), repeat=inst.n - 2):
        w, total = simulate_sensor(inst, waits)
        if total < best[1]:
            best = (w, total)
    return best
