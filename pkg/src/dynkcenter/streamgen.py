"""Seeded generators of lifetime-annotated streams, plus the exact
measurer of deletion-order tameness (the smallest H such that any two
points separated by at least H intervening arrivals are deleted in arrival
order)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    EuclideanMetric,
    EventStream,
    MatrixMetric,
    Metric,
    TimedPoint,
)
from .errors import InvalidH


@dataclass
class GeneratedStream:
    stream: EventStream
    metric: Metric
    declared_h: int | None
    seed: int | None


def _rng(seed: int):
    # Counter-based generator: the stream is a pure function of the seed.
    return np.random.Generator(np.random.Philox(key=seed))


def _euclidean_extremes(coords: np.ndarray):
    """Min/max pairwise distance, vectorized; does not touch any metric
    evaluation counter."""
    n = len(coords)
    if n < 2:
        return 1.0, 1.0
    lo, hi = np.inf, 0.0
    for i in range(n - 1):
        d = np.sqrt(((coords[i + 1 :] - coords[i]) ** 2).sum(axis=1))
        lo = min(lo, float(d.min()))
        hi = max(hi, float(d.max()))
    return lo, hi


def _euclidean_stream(coords, t_arrs, t_dels, declared_h, seed):
    coords = np.asarray(coords, dtype=float)
    points = [
        TimedPoint(i, tuple(coords[i]), int(t_arrs[i]), int(t_dels[i]))
        for i in range(len(coords))
    ]
    d_min, d_max = _euclidean_extremes(coords)
    metric = EuclideanMetric(coords.shape[1])
    return GeneratedStream(EventStream(points, d_min, d_max), metric, declared_h, seed)


def sliding_window_stream(payloads, window: int) -> GeneratedStream:
    """Point i arrives at time i+1 and lives exactly `window` steps; such
    streams are 0-ordered."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    n = len(payloads)
    t_arrs = [i + 1 for i in range(n)]
    t_dels = [i + 1 + window for i in range(n)]
    return _euclidean_stream(payloads, t_arrs, t_dels, declared_h=0, seed=None)


def random_lifetime_stream(n: int, payload_dim: int, max_life: int, seed: int) -> GeneratedStream:
    """Uniform payloads in [0,1]^dim; lifetime of point i drawn uniformly
    from 1..max_life. Same seed, same stream."""
    if n < 1 or max_life < 1:
        raise ValueError("need n >= 1 and max_life >= 1")
    rng = _rng(seed)
    coords = rng.random((n, payload_dim))
    lives = rng.integers(1, max_life + 1, size=n)
    t_arrs = [i + 1 for i in range(n)]
    t_dels = [t_arrs[i] + int(lives[i]) for i in range(n)]
    return _euclidean_stream(coords, t_arrs, t_dels, declared_h=None, seed=seed)


def h_bounded_stream(n: int, h: int, payload_dim: int, seed: int) -> GeneratedStream:
    """Deletion order equals arrival order except inside consecutive blocks
    of h+1 arrivals, which are seed-permuted; measure_h(result) <= h by
    construction."""
    if not (0 <= h < n):
        raise InvalidH(f"need 0 <= h < n, got h={h}, n={n}")
    rng = _rng(seed)
    coords = rng.random((n, payload_dim))
    ranks = np.arange(n)
    block = h + 1
    for start in range(0, n, block):
        stop = min(start + block, n)
        ranks[start:stop] = rng.permutation(ranks[start:stop])
    t_arrs = [i + 1 for i in range(n)]
    t_dels = [n + 2 + int(ranks[i]) for i in range(n)]
    return _euclidean_stream(coords, t_arrs, t_dels, declared_h=h, seed=seed)


def adversarial_quadratic_stream(n: int, gamma: float) -> GeneratedStream:
    """The sequence that makes the (2+eps) structure quadratic when the
    size-balance reclustering is disabled.

    2n points over an explicit distance matrix: a short-lived anchor p0, a
    tight long-lived blob at 1.5*gamma from the anchor, and n short-lived
    points at 2.5*gamma from the anchor and from each other but 1.5*gamma
    from the blob, so each can open a fresh cluster that soon dies.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    m = 2 * n
    table = np.zeros((m, m))
    blob = range(1, n)  # indices of the long-lived blob
    late = range(n, m)  # indices of the short-lived batch
    for i in blob:
        table[0][i] = table[i][0] = 1.5 * gamma
        for j in blob:
            if j > i:
                table[i][j] = table[j][i] = 0.1 * gamma
    for i in late:
        table[0][i] = table[i][0] = 2.5 * gamma
        for j in late:
            if j > i:
                table[i][j] = table[j][i] = 2.5 * gamma
        for j in blob:
            table[i][j] = table[j][i] = 1.5 * gamma
    metric = MatrixMetric(table)
    points = []
    for i in range(m):
        t_arr = i + 1
        if i == 0:
            t_del = t_arr + n + 1
        elif i < n:
            t_del = t_arr + 2 * n - 1
        else:
            t_del = t_arr + 2
        points.append(TimedPoint(i, i, t_arr, t_del))
    stream = EventStream(points, 0.1 * gamma, 2.5 * gamma)
    return GeneratedStream(stream, metric, declared_h=None, seed=None)


def measure_h(stream: EventStream) -> int:
    """Smallest H such that the stream is H-ordered, by brute force over all
    arrival-ordered pairs. Deletion ties resolve by (t_del, t_arr)."""
    pts = sorted(stream.points, key=lambda p: p.t_arr)
    n = len(pts)
    if n < 2:
        return 0
    t_arr = np.array([p.t_arr for p in pts], dtype=np.int64)
    t_del = np.array([p.t_del for p in pts], dtype=np.int64)
    big = int(t_arr.max()) + 1
    key = t_del * big + t_arr
    # viol[i, j] for i < j: point i arrives first but outlives point j.
    viol = np.triu(key[:, None] > key[None, :], k=1)
    cols = np.nonzero(viol.any(axis=0))[0]
    if len(cols) == 0:
        return 0
    first = viol[:, cols].argmax(axis=0)
    # A violating pair with m intermediate arrivals forces H >= m + 1.
    return int((cols - first).max())
