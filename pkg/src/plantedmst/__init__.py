"""Planted spanning structure recovery with minimum spanning trees.

End-to-end toolkit: instance generation (uniform spanning tree or
Hamiltonian path hidden in a complete weighted graph), MST recovery and
overlap metrics, threshold-extinction fixed points, a branching-process
Monte Carlo oracle, asymptotic overlap/weight predictions with a bundled
reference table, and an MST-weight detection test.
"""

from .backend import ACTIVE_BACKEND
from .bp_oracle import BranchingConfig, ExtinctionEstimate, mc_overlap, simulate_extinction
from .errors import CapacityError, ConvergenceError, PlantedMSTError
from .experiments import TrialResults, simulate_trials
from .fixed_point import (
    FixedPointSolution,
    GridFunction,
    cross_check,
    default_grid,
    iterate_path,
    iterate_tree,
    scalar_path,
    scalar_tree,
    threshold_s,
)
from .hypothesis_test import ErrorRates, TestOutcome, decide, error_rates
from .instances import (
    EdgeSet,
    PlantedInstance,
    gen_instance,
    gen_uniform_hamiltonian_path,
    gen_uniform_spanning_tree,
)
from .mst import RecoveryResult, brute_force_mst, evaluate, kruskal_mst
from .theory import TheoryPrediction, gw_weight_integral, overlap_limit, predict, weight_limit, zeta3
from .weight_models import (
    EdgeWeightModel,
    cdf_P,
    exponential_cdf,
    pdf_P,
    sample_planted,
    sample_unplanted,
)

__version__ = "0.1.0"

__all__ = [
    "ACTIVE_BACKEND",
    "BranchingConfig",
    "CapacityError",
    "ConvergenceError",
    "EdgeSet",
    "EdgeWeightModel",
    "ErrorRates",
    "ExtinctionEstimate",
    "FixedPointSolution",
    "GridFunction",
    "PlantedInstance",
    "PlantedMSTError",
    "RecoveryResult",
    "TestOutcome",
    "TheoryPrediction",
    "TrialResults",
    "brute_force_mst",
    "cdf_P",
    "cross_check",
    "decide",
    "default_grid",
    "error_rates",
    "evaluate",
    "exponential_cdf",
    "gen_instance",
    "gen_uniform_hamiltonian_path",
    "gen_uniform_spanning_tree",
    "gw_weight_integral",
    "iterate_path",
    "iterate_tree",
    "kruskal_mst",
    "mc_overlap",
    "overlap_limit",
    "pdf_P",
    "predict",
    "sample_planted",
    "sample_unplanted",
    "scalar_path",
    "scalar_tree",
    "simulate_extinction",
    "simulate_trials",
    "threshold_s",
    "weight_limit",
    "zeta3",
]
