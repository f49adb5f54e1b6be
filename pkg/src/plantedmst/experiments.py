"""Trial-level experiment orchestration.

Runs independent generate/recover trials with per-trial derived seeds and
aggregates recovery metrics. Trials are indexed, so thread scheduling
never changes the result arrays or the summary.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .instances import DEFAULT_MAX_N, gen_instance
from .mst import evaluate, kruskal_mst
from .rng import derive_seed
from .weight_models import EdgeWeightModel

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TrialResults:
    kind: str
    n: int
    mu: float
    master_seed: int
    seeds: np.ndarray
    overlaps: np.ndarray
    weights: np.ndarray
    # wall-clock seconds per trial; diagnostic only, never serialized
    # (serialized outputs must be byte-reproducible)
    elapsed: np.ndarray

    @property
    def trials(self) -> int:
        return len(self.seeds)

    def summary(self) -> dict:
        t = self.trials
        def se(x):
            return float(np.std(x, ddof=1) / np.sqrt(t)) if t > 1 else 0.0
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "n": self.n,
            "mu": self.mu,
            "trials": t,
            "mean_overlap": float(np.mean(self.overlaps)),
            "se_overlap": se(self.overlaps),
            "mean_weight": float(np.mean(self.weights)),
            "se_weight": se(self.weights),
        }


def simulate_trials(
    kind: str,
    n: int,
    mu: float,
    trials: int,
    seed: int,
    threads: int = 1,
    max_n: int = DEFAULT_MAX_N,
    purpose: str = "simulate",
) -> TrialResults:
    """Generate, recover, and score ``trials`` independent instances."""
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    model = EdgeWeightModel(mu=mu, n=n)
    seeds = np.array(
        [derive_seed(seed, purpose, t) for t in range(trials)], dtype=np.uint64
    )
    overlaps = np.empty(trials, dtype=float)
    weights = np.empty(trials, dtype=float)
    elapsed = np.empty(trials, dtype=float)

    def run(t: int):
        t0 = time.perf_counter()
        inst = gen_instance(n, kind, model, int(seeds[t]), max_n=max_n)
        res = evaluate(inst, kruskal_mst(inst))
        return t, res.overlap, res.normalized_weight, time.perf_counter() - t0

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for t, ov, w, dt in pool.map(run, range(trials)):
                overlaps[t] = ov
                weights[t] = w
                elapsed[t] = dt
    else:
        for t in range(trials):
            _, overlaps[t], weights[t], elapsed[t] = run(t)
    return TrialResults(
        kind=kind,
        n=n,
        mu=mu,
        master_seed=int(seed),
        seeds=seeds,
        overlaps=overlaps,
        weights=weights,
        elapsed=elapsed,
    )
