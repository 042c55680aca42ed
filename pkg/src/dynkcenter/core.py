"""Points with lifetimes, metrics, the guess ladder, and stream validation.

Everything here is shared by both clustering algorithms: the point type,
the two metric backends (Euclidean coordinates and an explicit distance
matrix), the geometric ladder of radius guesses, the (t_del, t_arr) total
order used for every latest-deletion selection, the expiry priority queue,
and stream parsing/validation.
"""

from __future__ import annotations

import csv
import heapq
import json
import math
from dataclasses import dataclass, field

from .errors import (
    DistanceOutOfRange,
    DuplicateArrival,
    IndexOutOfRange,
    InvalidBeta,
    InvalidBounds,
    InvertedLifetime,
    MetricError,
    TooFewPoints,
)

# Default size limit for O(n^2)/O(n^3) exhaustive validation passes.
PAIRWISE_CHECK_CAP = 500


@dataclass(frozen=True)
class TimedPoint:
    """A metric-space element with a lifetime [t_arr, t_del).

    The payload is a tuple of coordinates under a Euclidean metric, or a row
    index under a matrix metric.
    """

    id: int
    payload: object
    t_arr: int
    t_del: int

    @property
    def key(self):
        """Total order used for expiry and every latest-deletion selection."""
        return (self.t_del, self.t_arr)


def deletion_key(p: TimedPoint):
    return (p.t_del, p.t_arr)


class Metric:
    """Distance backend with a per-instance evaluation counter.

    Every ``distance`` call increments ``evals``; the time-bound acceptance
    checks are stated in terms of this counter, so it is part of the
    contract rather than debug output.
    """

    def __init__(self):
        self.evals = 0

    def distance(self, p: TimedPoint, q: TimedPoint) -> float:
        self.evals += 1
        return self._dist(p.payload, q.payload)

    def _dist(self, a, b) -> float:
        raise NotImplementedError

    def clone(self):
        """Fresh counter, same structure. Used to keep audit/oracle distance
        evaluations out of an algorithm's own counters."""
        raise NotImplementedError


class EuclideanMetric(Metric):
    def __init__(self, dim: int):
        super().__init__()
        if dim < 1:
            raise MetricError(f"dimension must be positive, got {dim}")
        self.dim = dim

    def _dist(self, a, b):
        if len(a) != self.dim or len(b) != self.dim:
            raise MetricError("payload dimension mismatch")
        return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))

    def clone(self):
        return EuclideanMetric(self.dim)


class MatrixMetric(Metric):
    """Explicit n x n distance table.

    The constructor checks symmetry, non-negativity, a zero diagonal and
    (for n <= check_cap) the triangle inequality over all triples.
    """

    def __init__(self, table, check_cap: int = PAIRWISE_CHECK_CAP):
        super().__init__()
        import numpy as np

        t = np.asarray(table, dtype=float)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise MetricError("matrix metric table must be square")
        if (t < 0).any():
            raise MetricError("negative distance in matrix metric")
        if (np.diag(t) != 0).any():
            raise MetricError("nonzero diagonal in matrix metric")
        if (t != t.T).any():
            raise MetricError("asymmetric matrix metric")
        n = t.shape[0]
        if n <= check_cap:
            for r in range(n):
                if (t > t[:, r][:, None] + t[r][None, :]).any():
                    raise MetricError(
                        f"triangle inequality violated via intermediate {r}"
                    )
        self.table = t
        self.n = n

    def _dist(self, a, b):
        if not (0 <= a < self.n and 0 <= b < self.n):
            raise IndexOutOfRange(f"matrix metric index out of range: {a}, {b}")
        return float(self.table[a][b])

    def clone(self):
        m = MatrixMetric.__new__(MatrixMetric)
        Metric.__init__(m)
        m.table = self.table
        m.n = self.n
        return m


@dataclass(frozen=True)
class GuessLadder:
    """Geometric set of radius guesses (1+beta)^i covering [d_min, d_max]."""

    d_min: float
    d_max: float
    beta: float
    guesses: tuple

    def __len__(self):
        return len(self.guesses)

    def __iter__(self):
        return iter(self.guesses)


def _floor_log(base: float, x: float) -> int:
    """floor(log_base(x)) by repeated multiplication, exact at powers."""
    i, v = 0, 1.0
    if v <= x:
        while v * base <= x:
            v *= base
            i += 1
    else:
        while v > x:
            v /= base
            i -= 1
    return i


def build_guess_ladder(d_min: float, d_max: float, beta: float) -> GuessLadder:
    if not (0 < d_min <= d_max):
        raise InvalidBounds(f"need 0 < d_min <= d_max, got {d_min}, {d_max}")
    if beta <= 0:
        raise InvalidBeta(f"beta must be positive, got {beta}")
    base = 1.0 + beta
    i_lo = _floor_log(base, d_min)
    i_hi = _floor_log(base, d_max)
    if base**i_hi < d_max:
        i_hi += 1
    guesses = tuple(base**i for i in range(i_lo, i_hi + 1))
    return GuessLadder(d_min, d_max, beta, guesses)


class DeletionQueue:
    """Min-heap over (t_del, t_arr); holds the active inserted points.

    Per-guess handle maps (point id -> list node) live inside the guess
    states, so a dequeued point's entries are reachable in O(1).
    """

    def __init__(self):
        self._heap = []

    def push(self, p: TimedPoint):
        heapq.heappush(self._heap, (p.t_del, p.t_arr, p))

    def peek_key(self):
        if not self._heap:
            return None
        t_del, t_arr, _ = self._heap[0]
        return (t_del, t_arr)

    def pop(self) -> TimedPoint:
        return heapq.heappop(self._heap)[2]

    def __len__(self):
        return len(self._heap)


@dataclass
class EventStream:
    """Arrival-ordered points plus the user-declared distance bounds."""

    points: list
    d_min: float
    d_max: float
    measured_h: int | None = field(default=None, compare=False)


def validate_stream(
    points,
    metric: Metric,
    d_min: float,
    d_max: float,
    pairwise_cap: int = PAIRWISE_CHECK_CAP,
) -> EventStream:
    """Check lifetimes, arrival uniqueness and (for small n) distance bounds.

    Points are returned sorted by arrival time. The O(n^2) bound check only
    runs when len(points) <= pairwise_cap; pass 0 to disable it.
    """
    pts = sorted(points, key=lambda p: p.t_arr)
    seen = set()
    for p in pts:
        if p.t_arr >= p.t_del:
            raise InvertedLifetime(f"point {p.id}: t_arr={p.t_arr} >= t_del={p.t_del}")
        if p.t_arr in seen:
            raise DuplicateArrival(f"arrival time {p.t_arr} used twice")
        seen.add(p.t_arr)
    if len(pts) <= pairwise_cap:
        for i, p in enumerate(pts):
            for q in pts[i + 1 :]:
                d = metric.distance(p, q)
                if not (d_min <= d <= d_max):
                    raise DistanceOutOfRange(
                        f"d({p.id},{q.id})={d} outside [{d_min}, {d_max}]"
                    )
    return EventStream(pts, d_min, d_max)


def pairwise_extremes(metric: Metric, points) -> tuple:
    """Min and max pairwise distance by O(n^2) scan."""
    if len(points) < 2:
        raise TooFewPoints("need at least two points")
    lo, hi = math.inf, -math.inf
    for i, p in enumerate(points):
        for q in points[i + 1 :]:
            d = metric.distance(p, q)
            lo = min(lo, d)
            hi = max(hi, d)
    return lo, hi


# ---------------------------------------------------------------------------
# Stream file format: JSONL, one point per line, plus an optional CSV
# distance-matrix sidecar for matrix-metric streams.


def save_stream_jsonl(points, path):
    with open(path, "w") as f:
        for p in sorted(points, key=lambda q: q.t_arr):
            row = {"id": p.id, "t_arr": p.t_arr, "t_del": p.t_del}
            if not isinstance(p.payload, int):
                row["coords"] = list(p.payload)
            f.write(json.dumps(row) + "\n")


def load_stream_jsonl(path):
    points = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            if "coords" in row:
                payload = tuple(float(c) for c in row["coords"])
            else:
                payload = int(row["id"])
            points.append(
                TimedPoint(int(row["id"]), payload, int(row["t_arr"]), int(row["t_del"]))
            )
    return points


def save_matrix_csv(table, path):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        for row in table:
            w.writerow([repr(float(x)) for x in row])


def load_matrix_csv(path):
    with open(path, newline="") as f:
        return [[float(x) for x in row] for row in csv.reader(f) if row]
