"""Broadcast-suppression zones for location privacy on transportation graphs.

Given an undirected road network and a private node, this package derives the
node sets an external observer can reconstruct from position broadcasts,
quantifies the observer's posterior on the private node, and selects the
suppression radius that best trades privacy against lost traffic
measurements.
"""

from .graph import (
    DistanceLayers,
    GeoGraph,
    Graph,
    GraphValidityError,
    betweenness,
    bfs_layers,
    build_graph,
    diameter,
    gen_rgg,
    induced_diameter,
    line_graph,
)
from .policy import (
    AsymmetricPolicy,
    DensityMap,
    PolicyAnalysis,
    analyze,
    asymmetric_privacy,
    boundary_set,
    broadcast_set,
    candidate_set,
    excluded_edges,
    privacy_density,
    privacy_uniform,
    suppressed_set,
)
from .optimize import (
    ASYMMETRIC_NODE_CAP,
    Solution,
    SweepRow,
    solve_asymmetric_exhaustive,
    solve_constrained,
    solve_tradeoff,
    sweep,
)
from .observer import (
    InfeasibleError,
    Posterior,
    WalkTrace,
    coverage_step,
    observed_broadcast_set,
    posterior_bruteforce,
    simulate_walk,
)
from .experiment import ExperimentConfig, ExperimentResult, run_experiment

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "DistanceLayers",
    "GeoGraph",
    "GraphValidityError",
    "build_graph",
    "bfs_layers",
    "diameter",
    "induced_diameter",
    "betweenness",
    "gen_rgg",
    "line_graph",
    "PolicyAnalysis",
    "DensityMap",
    "AsymmetricPolicy",
    "suppressed_set",
    "broadcast_set",
    "boundary_set",
    "excluded_edges",
    "candidate_set",
    "privacy_uniform",
    "privacy_density",
    "asymmetric_privacy",
    "analyze",
    "SweepRow",
    "Solution",
    "ASYMMETRIC_NODE_CAP",
    "sweep",
    "solve_tradeoff",
    "solve_constrained",
    "solve_asymmetric_exhaustive",
    "WalkTrace",
    "Posterior",
    "InfeasibleError",
    "simulate_walk",
    "observed_broadcast_set",
    "coverage_step",
    "posterior_bruteforce",
    "ExperimentConfig",
    "ExperimentResult",
    "run_experiment",
]
