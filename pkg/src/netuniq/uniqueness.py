"""Re-identification risk metrics from neighborhood isomorphism classes.

A node is re-identifiable by an attacker who knows its 1-hop neighborhood
structure exactly when no other node has an isomorphic neighborhood. This
module computes, for any graph: the occurrence frequency of each node's
neighborhood class, the fraction of unique neighborhoods, the fraction of
unique degrees, and the fraction of neighborhoods containing at least one
edge (equivalently, of nodes in at least one triangle).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .canon import certificate_from_edges
from .graph import Graph, neighborhood_edge_sets


@dataclass(frozen=True)
class UniquenessReport:
    """Per-node occurrence frequencies and the derived scalar metrics."""

    occurrence: list[int]
    neighborhood_uniqueness: float
    degree_uniqueness: float
    nonempty_fraction: float
    nonempty_by_degree: dict[int, float] = field(default_factory=dict)

    def to_dict(self, include_per_node: bool = False) -> dict:
        out = {
            "n": len(self.occurrence),
            "neighborhood_uniqueness": self.neighborhood_uniqueness,
            "degree_uniqueness": self.degree_uniqueness,
            "nonempty_fraction": self.nonempty_fraction,
            "nonempty_by_degree": {
                str(k): v for k, v in sorted(self.nonempty_by_degree.items())
            },
        }
        if include_per_node:
            out["occurrence"] = list(self.occurrence)
        return out


def neighborhood_certificates(g: Graph) -> list[bytes]:
    """Certificate of every node's neighborhood, in node order."""
    return [
        certificate_from_edges(size, edges)
        for size, edges in neighborhood_edge_sets(g)
    ]


def occurrence_frequencies(g: Graph) -> list[int]:
    """Size of each node's neighborhood-isomorphism class (>= 1).

    Certificates of all n neighborhoods are grouped by exact byte equality,
    which partitions nodes identically to pairwise isomorphism testing.
    """
    certs = neighborhood_certificates(g)
    sizes = Counter(certs)
    return [sizes[c] for c in certs]


def neighborhood_uniqueness(g: Graph) -> float:
    """Fraction of nodes whose neighborhood class is a singleton."""
    occ = occurrence_frequencies(g)
    return sum(1 for o in occ if o == 1) / g.n


def degree_uniqueness(g: Graph) -> float:
    """Fraction of nodes whose degree value occurs exactly once."""
    counts = Counter(g.degrees())
    return sum(1 for d in g.degrees() if counts[d] == 1) / g.n


def nonempty_fraction(g: Graph) -> tuple[float, dict[int, float]]:
    """Fraction of nodes with >= 1 edge inside the neighborhood.

    Also returns the per-degree breakdown over degrees present in the graph.
    """
    nonempty_total = 0
    per_degree: dict[int, list[int]] = {}
    for size, edges in neighborhood_edge_sets(g):
        flag = 1 if edges else 0
        nonempty_total += flag
        bucket = per_degree.setdefault(size, [0, 0])
        bucket[0] += flag
        bucket[1] += 1
    table = {k: hits / total for k, (hits, total) in sorted(per_degree.items())}
    return nonempty_total / g.n, table


def uniqueness_report(g: Graph) -> UniquenessReport:
    """Full report: one pass over neighborhoods for all metrics."""
    occ: list[int] = []
    certs: list[bytes] = []
    nonempty_total = 0
    per_degree: dict[int, list[int]] = {}
    for size, edges in neighborhood_edge_sets(g):
        certs.append(certificate_from_edges(size, edges))
        flag = 1 if edges else 0
        nonempty_total += flag
        bucket = per_degree.setdefault(size, [0, 0])
        bucket[0] += flag
        bucket[1] += 1
    sizes = Counter(certs)
    occ = [sizes[c] for c in certs]
    return UniquenessReport(
        occurrence=occ,
        neighborhood_uniqueness=sum(1 for o in occ if o == 1) / g.n,
        degree_uniqueness=degree_uniqueness(g),
        nonempty_fraction=nonempty_total / g.n,
        nonempty_by_degree={
            k: hits / total for k, (hits, total) in sorted(per_degree.items())
        },
    )
