"""Instance generation for the planted spanning structure model.

A complete graph on n vertices carries one weight per unordered pair,
stored as a flat upper-triangular array. The hidden structure is a uniform
labeled spanning tree (sampled through a uniform Prufer sequence), a
uniform Hamiltonian path (from a uniform permutation), or absent for the
null model. Planted pairs draw weights from P, all others from Q_n.

All randomness derives from a 64-bit seed through per-purpose substreams
(structure, planted weights, unplanted weights), so regenerating with the
same arguments reproduces the weight table bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import backend, weight_models
from .errors import CapacityError
from .rng import substream

KINDS = ("tree", "path", "null")
DEFAULT_MAX_N = 8192
SCHEMA_VERSION = 1


def pair_index(u, v, n):
    """Flat upper-triangular index of the unordered pair (u < v)."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


class EdgeSet:
    """Canonical edge collection: lexicographically sorted pairs with u < v."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: np.ndarray):
        self.pairs = pairs

    @classmethod
    def from_arrays(cls, us, vs, n=None) -> "EdgeSet":
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        lo = np.minimum(us, vs)
        hi = np.maximum(us, vs)
        if np.any(lo == hi):
            raise ValueError("self-loop in edge set")
        if np.any(lo < 0):
            raise ValueError("negative vertex label")
        if n is not None and np.any(hi >= n):
            raise ValueError(f"vertex label out of range [0, {n})")
        pairs = np.column_stack([lo, hi])
        order = np.lexsort((hi, lo))
        pairs = pairs[order]
        if len(pairs) > 1:
            dup = np.all(pairs[1:] == pairs[:-1], axis=1)
            if np.any(dup):
                raise ValueError("duplicate edge in edge set")
        return cls(pairs)

    @classmethod
    def from_pairs(cls, pairs, n=None) -> "EdgeSet":
        arr = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
        return cls.from_arrays(arr[:, 0], arr[:, 1], n)

    @classmethod
    def empty(cls) -> "EdgeSet":
        return cls(np.empty((0, 2), dtype=np.int64))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return (tuple(p) for p in self.pairs)

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeSet) and np.array_equal(self.pairs, other.pairs)

    def __hash__(self):
        return hash(self.pairs.tobytes())

    def to_set(self) -> set:
        return {tuple(p) for p in self.pairs}

    def intersection_size(self, other: "EdgeSet") -> int:
        if len(self) == 0 or len(other) == 0:
            return 0
        n_bound = int(max(self.pairs.max(), other.pairs.max())) + 2
        a = pair_index(self.pairs[:, 0], self.pairs[:, 1], n_bound)
        b = pair_index(other.pairs[:, 0], other.pairs[:, 1], n_bound)
        return int(np.intersect1d(a, b, assume_unique=True).size)

    def flat_indices(self, n: int) -> np.ndarray:
        return pair_index(self.pairs[:, 0], self.pairs[:, 1], n)


def _degrees(edges: EdgeSet, n: int) -> np.ndarray:
    deg = np.zeros(n, dtype=np.int64)
    np.add.at(deg, edges.pairs[:, 0], 1)
    np.add.at(deg, edges.pairs[:, 1], 1)
    return deg


def is_spanning_tree(edges: EdgeSet, n: int) -> bool:
    """Connectivity + acyclicity via union-find on n vertices."""
    if len(edges) != n - 1:
        return False
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(int(u)), find(int(v))
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def has_path_degree_profile(edges: EdgeSet, n: int) -> bool:
    deg = _degrees(edges, n)
    if n == 2:
        return np.all(deg == 1)
    return np.sum(deg == 1) == 2 and np.sum(deg == 2) == n - 2


@dataclass(frozen=True)
class PlantedInstance:
    """Complete weighted graph with (optionally) a hidden spanning structure."""

    n: int
    weights: np.ndarray  # flat upper-triangular, length n(n-1)/2
    planted: EdgeSet
    kind: str
    seed: int
    mu: float

    def weight_of(self, u: int, v: int) -> float:
        if u > v:
            u, v = v, u
        return float(self.weights[pair_index(u, v, self.n)])

    def edge_weights(self, edges: EdgeSet) -> np.ndarray:
        return self.weights[edges.flat_indices(self.n)]


def gen_uniform_spanning_tree(n: int, rng: np.random.Generator) -> EdgeSet:
    """Uniform labeled tree on [0, n) via a uniform Prufer sequence."""
    if n < 2:
        raise ValueError(f"need n >= 2 vertices, got {n}")
    if n == 2:
        return EdgeSet.from_pairs([(0, 1)])
    code = rng.integers(0, n, size=n - 2)
    us, vs = backend.prufer_decode(np.asarray(code, dtype=np.int64), n)
    return EdgeSet.from_arrays(us, vs, n)


def decode_prufer(code, n: int) -> EdgeSet:
    """Decode an explicit Prufer sequence (exposed for tests and enumeration)."""
    code = np.asarray(code, dtype=np.int64)
    if n < 2 or len(code) != n - 2:
        raise ValueError("code length must be n - 2 with n >= 2")
    if n == 2:
        return EdgeSet.from_pairs([(0, 1)])
    us, vs = backend.prufer_decode(code, n)
    return EdgeSet.from_arrays(us, vs, n)


def gen_uniform_hamiltonian_path(n: int, rng: np.random.Generator) -> EdgeSet:
    """Uniform Hamiltonian path from a uniform permutation of [0, n)."""
    if n < 2:
        raise ValueError(f"need n >= 2 vertices, got {n}")
    perm = rng.permutation(n)
    return EdgeSet.from_arrays(perm[:-1], perm[1:], n)


def gen_instance(
    n: int,
    kind: str,
    model: weight_models.EdgeWeightModel,
    seed: int,
    max_n: int = DEFAULT_MAX_N,
) -> PlantedInstance:
    """Generate one instance; deterministic in (n, kind, model, seed)."""
    if n < 2:
        raise ValueError(f"need n >= 2 vertices, got {n}")
    if n > max_n:
        raise CapacityError(
            f"n={n} exceeds the memory guard max_n={max_n}; "
            "raise max_n explicitly if this size is intended"
        )
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if model.n != n:
        raise ValueError(f"model is scaled for n={model.n} but instance has n={n}")

    weights = weight_models.sample_unplanted(
        model, substream(seed, "unplanted-weights"), size=pair_count(n)
    )
    if kind == "null":
        planted = EdgeSet.empty()
    else:
        struct_rng = substream(seed, "structure")
        if kind == "tree":
            planted = gen_uniform_spanning_tree(n, struct_rng)
        else:
            planted = gen_uniform_hamiltonian_path(n, struct_rng)
        pw = weight_models.sample_planted(
            model, substream(seed, "planted-weights"), size=n - 1
        )
        weights[planted.flat_indices(n)] = pw
    return PlantedInstance(
        n=n, weights=weights, planted=planted, kind=kind, seed=int(seed), mu=model.mu
    )


def dump_instance(instance: PlantedInstance, csv_path: str) -> str:
    """Write `u,v,weight,planted` rows for every pair plus a JSON sidecar.

    Returns the sidecar path. Weights use repr precision so loads
    round-trip bit for bit.
    """
    n = instance.n
    us, vs = np.triu_indices(n, k=1)
    planted_flags = np.zeros(pair_count(n), dtype=np.int8)
    if len(instance.planted):
        planted_flags[instance.planted.flat_indices(n)] = 1
    with open(csv_path, "w") as fh:
        fh.write("u,v,weight,planted\n")
        for u, v, w, p in zip(us, vs, instance.weights, planted_flags):
            fh.write(f"{u},{v},{float(w)!r},{p}\n")
    sidecar = _sidecar_path(csv_path)
    with open(sidecar, "w") as fh:
        json.dump(
            {
                "schema_version": SCHEMA_VERSION,
                "n": instance.n,
                "kind": instance.kind,
                "mu": instance.mu,
                "seed": instance.seed,
            },
            fh,
            sort_keys=True,
        )
        fh.write("\n")
    return sidecar


def _sidecar_path(csv_path: str) -> str:
    return (csv_path[:-4] if csv_path.endswith(".csv") else csv_path) + ".json"


def load_instance(csv_path: str) -> PlantedInstance:
    with open(_sidecar_path(csv_path)) as fh:
        meta = json.load(fh)
    n = int(meta["n"])
    weights = np.empty(pair_count(n), dtype=float)
    planted_pairs = []
    with open(csv_path) as fh:
        header = fh.readline().strip()
        if header != "u,v,weight,planted":
            raise ValueError(f"unexpected instance CSV header: {header!r}")
        for i, line in enumerate(fh):
            u_s, v_s, w_s, p_s = line.rstrip("\n").split(",")
            weights[i] = float(w_s)
            if p_s == "1":
                planted_pairs.append((int(u_s), int(v_s)))
    planted = EdgeSet.from_pairs(planted_pairs, n) if planted_pairs else EdgeSet.empty()
    return PlantedInstance(
        n=n,
        weights=weights,
        planted=planted,
        kind=meta["kind"],
        seed=int(meta["seed"]),
        mu=float(meta["mu"]),
    )
