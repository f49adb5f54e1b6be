"""Minimum spanning tree computation and recovery metrics.

The estimator is Kruskal's algorithm over the fully sorted edge list with
a union-find (path compression + union by rank). With continuous weights
the MST is almost surely unique; exact ties are broken deterministically
by flat edge index via a stable sort. ``brute_force_mst`` enumerates all
labeled spanning trees through Prufer sequences and serves as the exact
oracle for small n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import CapacityError
from .instances import EdgeSet, PlantedInstance, decode_prufer

BRUTE_FORCE_MAX_N = 8
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RecoveryResult:
    mst: EdgeSet
    overlap: float
    normalized_weight: float
    intersection_size: int
    kind: str
    n: int

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "kind": self.kind,
            "overlap": self.overlap,
            "weight": self.normalized_weight,
            "intersection": self.intersection_size,
        }


def kruskal_mst(instance: PlantedInstance) -> EdgeSet:
    """The minimum-weight spanning tree of a complete weighted instance."""
    order = np.argsort(instance.weights, kind="stable")
    us, vs = backend.kruskal_select(order, instance.n)
    return EdgeSet.from_arrays(us, vs, instance.n)


def brute_force_mst(instance: PlantedInstance) -> EdgeSet:
    """Exact MST by enumerating all n^(n-2) labeled spanning trees.

    Test oracle only; refuses n above BRUTE_FORCE_MAX_N. Ties resolve to
    the tree of the lexicographically smallest Prufer code, which matches
    kruskal's index tie-break on the degenerate all-equal-weights case.
    """
    n = instance.n
    if n > BRUTE_FORCE_MAX_N:
        raise CapacityError(
            f"brute force enumeration limited to n <= {BRUTE_FORCE_MAX_N}, got {n}"
        )
    if n == 2:
        return EdgeSet.from_pairs([(0, 1)])
    best_edges = None
    best_total = np.inf
    for code in itertools.product(range(n), repeat=n - 2):
        edges = decode_prufer(np.asarray(code, dtype=np.int64), n)
        total = float(np.sum(instance.edge_weights(edges)))
        if total < best_total:
            best_total = total
            best_edges = edges
    return best_edges


def evaluate(instance: PlantedInstance, mst: EdgeSet) -> RecoveryResult:
    """Overlap with the planted structure and normalized MST weight.

    Null instances have no planted edges; their overlap is reported as 0
    by convention (flagged through kind == "null").
    """
    n = instance.n
    if len(mst) != n - 1:
        raise ValueError(f"expected {n - 1} MST edges, got {len(mst)}")
    if len(mst.pairs) and mst.pairs.max() >= n:
        raise ValueError("MST edge endpoint out of range")
    weight = float(np.sum(instance.edge_weights(mst))) / (n - 1)
    if instance.kind == "null" or len(instance.planted) == 0:
        return RecoveryResult(mst, 0.0, weight, 0, instance.kind, n)
    inter = mst.intersection_size(instance.planted)
    return RecoveryResult(mst, inter / (n - 1), weight, inter, instance.kind, n)
