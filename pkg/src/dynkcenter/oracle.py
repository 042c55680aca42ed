"""Ground-truth computations: cluster radius, exact k-center by
enumeration, and the greedy threshold covering used by the space-efficient
query."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import Metric, pairwise_extremes  # noqa: F401  (re-exported)
from .errors import EmptyCenters, EmptyPoints, TooLargeForEnumeration

ENUMERATION_CAP = 16


@dataclass
class Solution:
    """A center set with its radius over the evaluated point set."""

    centers: list
    radius: float
    guess_used: float | None = None

    @property
    def center_ids(self):
        return [c.id for c in self.centers]


def radius(metric: Metric, centers, points) -> float:
    """max over points of the distance to the closest center."""
    if not centers:
        raise EmptyCenters("radius needs at least one center")
    if not points:
        raise EmptyPoints("radius needs at least one point")
    worst = 0.0
    for p in points:
        best = min(metric.distance(p, c) for c in centers)
        if best > worst:
            worst = best
    return worst


def exact_kcenter(metric: Metric, points, k: int, cap: int = ENUMERATION_CAP) -> Solution:
    """Optimal k-center by enumerating all size-k subsets.

    Ties between optimal subsets resolve to the lexicographically smallest
    id tuple, so the oracle is deterministic.
    """
    if len(points) > cap:
        raise TooLargeForEnumeration(f"{len(points)} points > cap {cap}")
    if not points:
        raise EmptyPoints("exact_kcenter needs at least one point")
    pts = sorted(points, key=lambda p: p.id)
    if len(pts) <= k:
        return Solution(list(pts), 0.0)
    best = None
    for combo in combinations(pts, k):
        r = radius(metric, combo, pts)
        if best is None or r < best.radius:
            best = Solution(list(combo), r)
    return best


def greedy_cover(metric: Metric, points, threshold: float, k: int):
    """Scan points in the given order, opening a new center whenever a point
    is farther than threshold from all current centers.

    Returns None as soon as more than k centers would be needed (a signal
    that no k-cover at this threshold exists, not a failure); otherwise the
    selected centers with their radius over the scanned points.
    """
    centers = []
    for q in points:
        if not centers or min(metric.distance(q, c) for c in centers) > threshold:
            centers.append(q)
            if len(centers) > k:
                return None
    if not centers:
        return Solution([], 0.0)
    return Solution(centers, radius(metric, centers, points))
