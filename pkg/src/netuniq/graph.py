"""Core graph container: ingestion, neighborhoods, and summary statistics.

Graphs are simple (no self-loops, no parallel edges), undirected and
unlabeled. Nodes are dense integer indices ``0..n-1``; arbitrary string
tokens from edge-list files are remapped at ingestion and the original
tokens kept on the side for reporting.
"""

from __future__ import annotations

import logging
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

logger = logging.getLogger(__name__)


class Graph:
    """Immutable simple undirected graph with per-node sorted neighbor lists.

    Construct via :meth:`from_edges` (validating) or the trusted
    :meth:`from_sorted_adjacency` used by generators and neighborhood
    extraction. Instances are safe to share across threads once built.
    """

    __slots__ = ("_adj", "_m", "labels")

    def __init__(self, adj: list[list[int]], m: int, labels: list[str] | None = None):
        self._adj = adj
        self._m = m
        self.labels = labels

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: list[str] | None = None,
    ) -> "Graph":
        """Build a graph on ``n`` nodes, dropping self-loops and duplicates."""
        adj: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if u == v:
                continue
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if v not in adj[u]:
                adj[u].add(v)
                adj[v].add(u)
                m += 1
        return cls([sorted(s) for s in adj], m, labels)

    @classmethod
    def from_sorted_adjacency(cls, adj: list[list[int]], m: int) -> "Graph":
        """Trusted constructor: caller guarantees sorted, symmetric, simple."""
        return cls(adj, m)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self._adj]

    def neighbors(self, v: int) -> list[int]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self._adj[u]
        i = bisect_left(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in sorted order."""
        for u, nbrs in enumerate(self._adj):
            for v in nbrs:
                if v > u:
                    yield (u, v)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SummaryStats:
    """Basic whole-graph measures: size, density and local clustering."""

    n: int
    m: int
    avg_degree: float
    clustering: float


def load_edge_list(text: str) -> Graph:
    """Parse a line-oriented edge list into a :class:`Graph`.

    Each non-comment, non-blank line holds exactly two whitespace-separated
    node tokens (arbitrary strings). Tokens are remapped to dense indices in
    first-appearance order; the reverse map is kept in ``graph.labels``.
    Duplicate edges and self-loops are dropped with a logged count, and
    directed inputs are symmetrized (an edge is kept if present in either
    direction).

    Raises:
        ValueError: on a line with a token count other than two (reported
            with its 1-based line number), or if the input holds no edges.
    """
    index: dict[str, int] = {}
    labels: list[str] = []
    edge_set: set[tuple[int, int]] = set()
    self_loops = 0
    duplicates = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ValueError(
                f"line {lineno}: expected 2 node tokens, got {len(tokens)}: {raw!r}"
            )
        a, b = tokens
        for tok in (a, b):
            if tok not in index:
                index[tok] = len(labels)
                labels.append(tok)
        u, v = index[a], index[b]
        if u == v:
            self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in edge_set:
            duplicates += 1
        else:
            edge_set.add(key)

    if not edge_set:
        raise ValueError("empty input: no edges found")
    if duplicates or self_loops:
        logger.warning(
            "dropped %d duplicate edge(s) and %d self-loop(s) at ingestion",
            duplicates,
            self_loops,
        )
    return Graph.from_edges(len(labels), sorted(edge_set), labels)


def load_edge_list_file(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_edge_list(fh.read())


def neighborhood(g: Graph, v: int) -> Graph:
    """Induced subgraph on the neighbors of ``v`` (``v`` itself excluded).

    The k neighbors are relabeled ``0..k-1`` in increasing original index.
    """
    if not (0 <= v < g.n):
        raise IndexError(f"node {v} out of range for n={g.n}")
    nbrs = g.neighbors(v)
    pos = {u: i for i, u in enumerate(nbrs)}
    adj: list[list[int]] = [[] for _ in nbrs]
    m = 0
    for u in nbrs:
        row = adj[pos[u]]
        for w in g.neighbors(u):
            i = pos.get(w)
            if i is not None:
                row.append(i)
                if i > pos[u]:
                    m += 1
    # rows inherit sortedness from the parent's sorted neighbor lists
    return Graph.from_sorted_adjacency(adj, m)


def neighborhood_edge_sets(g: Graph) -> Iterator[tuple[int, list[tuple[int, int]]]]:
    """Yield ``(size, edges)`` of every node's neighborhood, relabeled 0..k-1.

    Fused extraction for the uniqueness pipeline: avoids building one Graph
    per node when only the certificate input is needed. Edges come out
    lexicographically sorted because neighbor lists are sorted.
    """
    n = g.n
    adj = g._adj
    pos = [-1] * n  # scratch: local index of each vertex in the current neighborhood
    for v in range(n):
        nbrs = adj[v]
        if len(nbrs) < 2:
            yield len(nbrs), []
            continue
        for i, u in enumerate(nbrs):
            pos[u] = i
        edges: list[tuple[int, int]] = []
        append = edges.append
        for u in nbrs:
            row = adj[u]
            if len(row) == 1:  # u connects only back to v
                continue
            iu = pos[u]
            for w in row:
                iw = pos[w]
                if iw > iu:
                    append((iu, iw))
        for u in nbrs:
            pos[u] = -1
        yield len(nbrs), edges


def triangles_per_node(g: Graph) -> list[int]:
    """Number of triangles through each node (= edges inside its neighborhood).

    Each triangle {a < b < c} is found once, at its (a, b) edge, by scanning
    for common neighbors above b.
    """
    counts = [0] * g.n
    adj_sets = [set(nbrs) for nbrs in g._adj]
    for u, v in g.edges():
        a, b = (u, v) if g.degree(u) <= g.degree(v) else (v, u)
        other = adj_sets[b]
        for w in g.neighbors(a):
            if w > v and w in other:
                counts[u] += 1
                counts[v] += 1
                counts[w] += 1
    return counts


def triangle_count(g: Graph) -> int:
    """Total number of triangles in the graph."""
    return sum(triangles_per_node(g)) // 3


def summary_stats(g: Graph) -> SummaryStats:
    """Node/edge counts, average degree 2m/n, and mean local clustering.

    A node of degree k with t triangles through it contributes
    ``t / (k choose 2)`` to the clustering average; nodes with k < 2
    contribute 0.
    """
    if g.n < 1:
        raise ValueError("summary_stats requires at least one node")
    tri = triangles_per_node(g)
    total = 0.0
    for v in range(g.n):
        k = g.degree(v)
        if k >= 2:
            total += 2.0 * tri[v] / (k * (k - 1))
    return SummaryStats(
        n=g.n,
        m=g.m,
        avg_degree=2.0 * g.m / g.n,
        clustering=total / g.n,
    )


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Apply a node permutation: new graph where old node v becomes perm[v]."""
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges():
        adj[perm[u]].append(perm[v])
        adj[perm[v]].append(perm[u])
    for row in adj:
        row.sort()
    return Graph.from_sorted_adjacency(adj, g.m)
