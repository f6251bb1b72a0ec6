"""Seeded random-network generators parameterized by size and average degree.

Three families: Erdos-Renyi (independent edges), Watts-Strogatz (ring
lattice with rewiring), and a soft random geometric graph (points in the
unit square, distance cutoff with exponential acceptance, radius calibrated
to the target mean degree).

All generators draw from numpy's PCG64 keyed by the spec seed, so an
identical spec reproduces a byte-identical edge list. Substreams for
sweeps are derived by hashing the master seed together with the cell
coordinates and replicate index (BLAKE2b, 8-byte digest).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from hashlib import blake2b

import numpy as np
from scipy.spatial import cKDTree

from .graph import Graph

_FAMILIES = ("er", "ws", "rgg")

# internal master key for radius calibration; calibration must not consume
# the user seed so that the radius is a pure function of (n, avg_degree)
_CALIBRATION_KEY = 0x6E65747571
_CALIBRATION_CLOUDS = 10
_CALIBRATION_MAX_BISECTIONS = 20
_RADIUS_CACHE: dict[tuple[int, float], float] = {}


def substream_seed(master: int, *tags) -> int:
    """Stable 64-bit child seed from a master seed and hashable tags."""
    payload = repr((int(master),) + tags).encode("utf-8")
    return int.from_bytes(blake2b(payload, digest_size=8).digest(), "big")


def rng_from(master: int, *tags) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(substream_seed(master, *tags)))


@dataclass(frozen=True)
class ModelSpec:
    """One network configuration: family, size, target mean degree, seed."""

    family: str
    n: int
    avg_degree: float
    seed: int
    beta: float | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown model family {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not (0.0 <= self.avg_degree <= self.n - 1):
            raise ValueError(
                f"avg_degree {self.avg_degree} outside [0, {self.n - 1}]"
            )
        if self.family == "ws":
            if self.beta is None:
                raise ValueError("ws requires beta")
            if not (0.0 <= self.beta <= 1.0):
                raise ValueError("beta must lie in [0, 1]")
        elif self.beta is not None:
            raise ValueError(f"beta is only valid for ws, not {self.family}")


def generate(spec: ModelSpec) -> Graph:
    """Generate one network realization; deterministic in the spec."""
    if spec.family == "er":
        return gen_er(spec)
    if spec.family == "ws":
        return gen_ws(spec)
    return gen_rgg(spec)


def _graph_from_pairs(n: int, uu, vv) -> Graph:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in zip(uu.tolist(), vv.tolist()):
        adj[u].append(v)
        adj[v].append(u)
    m = 0
    for row in adj:
        row.sort()
        m += len(row)
    return Graph.from_sorted_adjacency(adj, m // 2)


def _pair_index_to_edge(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Invert colex pair numbering: index t -> (i, j), i < j, t = C(j,2)+i."""
    j = ((1.0 + np.sqrt(1.0 + 8.0 * t.astype(np.float64))) / 2.0).astype(np.int64)
    # float sqrt can land one off; nudge back into C(j,2) <= t < C(j+1,2)
    too_big = j * (j - 1) // 2 > t
    j[too_big] -= 1
    too_small = (j + 1) * j // 2 <= t
    j[too_small] += 1
    i = t - j * (j - 1) // 2
    return i, j


def gen_er(spec: ModelSpec) -> Graph:
    """Connect each of the C(n,2) pairs independently with p = k/(n-1).

    Pairs are visited in colex order with geometric skips, so cost is
    proportional to the number of edges, not pairs.
    """
    n = spec.n
    npairs = n * (n - 1) // 2
    p = spec.avg_degree / (n - 1) if n > 1 else 0.0
    if npairs == 0 or p <= 0.0:
        return Graph.from_sorted_adjacency([[] for _ in range(n)], 0)
    if p >= 1.0:
        adj = [[v for v in range(n) if v != u] for u in range(n)]
        return Graph.from_sorted_adjacency(adj, npairs)

    rng = rng_from(spec.seed, "er", n, float(spec.avg_degree))
    log_q = math.log1p(-p)
    chunk = max(1024, int(p * npairs * 1.2) + 16)
    picked: list[np.ndarray] = []
    pos = 0
    while pos < npairs:
        u = 1.0 - rng.random(chunk)
        gaps = np.floor(np.log(u) / log_q).astype(np.int64)
        idx = pos + np.cumsum(gaps + 1) - 1
        inside = idx < npairs
        picked.append(idx[inside])
        if not inside.all():
            break
        pos = int(idx[-1]) + 1
    t = np.concatenate(picked) if picked else np.empty(0, dtype=np.int64)
    i, j = _pair_index_to_edge(t)
    return _graph_from_pairs(n, i, j)


def gen_ws(spec: ModelSpec) -> Graph:
    """Ring lattice joined to K/2 neighbors per side, each edge rewired
    with probability beta to a uniform non-duplicate, non-self target.

    K is the target degree rounded to the nearest even integer, at least 2.
    """
    n = spec.n
    K = max(2, 2 * round(spec.avg_degree / 2.0))
    if K >= n:
        raise ValueError(f"lattice degree {K} must be below n={n}")
    beta = float(spec.beta if spec.beta is not None else 0.0)
    rng = rng_from(spec.seed, "ws", n, float(spec.avg_degree), beta)

    adj: list[set[int]] = [set() for _ in range(n)]
    for j in range(1, K // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)

    if beta > 0.0:
        for j in range(1, K // 2 + 1):
            for u in range(n):
                if rng.random() >= beta:
                    continue
                if len(adj[u]) >= n - 1:
                    continue
                w = int(rng.integers(0, n))
                while w == u or w in adj[u]:
                    w = int(rng.integers(0, n))
                v = (u + j) % n
                adj[u].discard(v)
                adj[v].discard(u)
                adj[u].add(w)
                adj[w].add(u)

    rows = [sorted(s) for s in adj]
    m = sum(len(r) for r in rows) // 2
    return Graph.from_sorted_adjacency(rows, m)


def _expected_degree_given_radius(trees, clouds, r: float, n: int) -> float:
    """Mean degree expectation for fixed point clouds at cutoff radius r."""
    total = 0.0
    for tree, pts in zip(trees, clouds):
        pairs = tree.query_pairs(r, output_type="ndarray")
        if len(pairs):
            d = np.linalg.norm(pts[pairs[:, 0]] - pts[pairs[:, 1]], axis=1)
            total += float(np.exp(-3.0 * d / r).sum())
    return 2.0 * total / (n * len(clouds))


def calibrated_radius(n: int, avg_degree: float) -> float:
    """Cutoff radius whose expected realized mean degree hits the target.

    Starts from the hard-disk estimate sqrt(k / (pi (n-1))) and bisects on
    the exact conditional expectation over fixed internal point clouds, so
    the result is a deterministic function of (n, avg_degree) alone.

    Raises:
        ValueError: if no radius bracket reaches the target degree.
    """
    key = (n, round(float(avg_degree), 9))
    if key in _RADIUS_CACHE:
        return _RADIUS_CACHE[key]
    k = float(avg_degree)
    clouds = [
        rng_from(_CALIBRATION_KEY, "rgg-cal", n, round(k, 9), j).random((n, 2))
        for j in range(_CALIBRATION_CLOUDS)
    ]
    trees = [cKDTree(pts) for pts in clouds]
    tol = max(0.005 * k, 1e-9)

    lo = math.sqrt(k / (math.pi * (n - 1)))
    while _expected_degree_given_radius(trees, clouds, lo, n) > k:
        lo *= 0.5
        if lo < 1e-12:
            raise ValueError("calibration failed to bracket the target degree")
    hi = lo
    for _ in range(80):
        hi *= 2.0
        if _expected_degree_given_radius(trees, clouds, hi, n) >= k:
            break
    else:
        raise ValueError("calibration failed to bracket the target degree")

    r = hi
    for _ in range(_CALIBRATION_MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        f = _expected_degree_given_radius(trees, clouds, mid, n)
        if abs(f - k) <= tol:
            r = mid
            break
        if f < k:
            lo = mid
        else:
            hi = mid
        r = 0.5 * (lo + hi)
    _RADIUS_CACHE[key] = r
    return r


def gen_rgg(spec: ModelSpec) -> Graph:
    """Soft random geometric graph on n uniform points in the unit square.

    A pair at distance d <= r is connected with probability exp(-d/(r/3)).
    The radius is calibrated so the realized mean degree matches the target
    within the calibration tolerance.
    """
    n = spec.n
    if spec.avg_degree <= 0.0 or n < 2:
        return Graph.from_sorted_adjacency([[] for _ in range(n)], 0)
    r = calibrated_radius(n, spec.avg_degree)
    rng = rng_from(spec.seed, "rgg", n, float(spec.avg_degree))
    pts = rng.random((n, 2))
    pairs = cKDTree(pts).query_pairs(r, output_type="ndarray")
    if len(pairs) == 0:
        return Graph.from_sorted_adjacency([[] for _ in range(n)], 0)
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    pairs = pairs[order]
    d = np.linalg.norm(pts[pairs[:, 0]] - pts[pairs[:, 1]], axis=1)
    keep = rng.random(len(pairs)) < np.exp(-3.0 * d / r)
    return _graph_from_pairs(n, pairs[keep, 0], pairs[keep, 1])
