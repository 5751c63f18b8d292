"""Random-walk simulation of a silenced agent and the observer's inference.

`posterior_bruteforce` recovers the observer's posterior by direct
enumeration: a node is a plausible private node exactly when some radius
around it reproduces the observed broadcast set. This is deliberately
independent of the layer-matching shortcut in `policy.candidate_set` so the
two can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, bfs_layers
from .policy import DensityMap

__all__ = [
    "InfeasibleError",
    "WalkTrace",
    "Posterior",
    "simulate_walk",
    "observed_broadcast_set",
    "coverage_step",
    "posterior_bruteforce",
]


class InfeasibleError(RuntimeError):
    """Raised when an observation is inconsistent with every symmetric policy."""


@dataclass(frozen=True)
class WalkTrace:
    """Timestamped node sequence with a per-step broadcast flag."""

    steps: tuple[tuple[int, int, bool], ...]


@dataclass(frozen=True, eq=False)
class Posterior:
    """Observer's probability mass per node; nonnegative, sums to one."""

    mass: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.mass, dtype=np.float64)
        object.__setattr__(self, "mass", values)
        if (values < 0).any():
            raise ValueError("posterior mass must be nonnegative")
        if abs(float(values.sum()) - 1.0) > 1e-12:
            raise ValueError("posterior mass must sum to 1")

    @property
    def support(self) -> set[int]:
        return set(np.flatnonzero(self.mass > 0).tolist())


def simulate_walk(g: Graph, s: int, h: int, steps: int, seed: int) -> WalkTrace:
    """Uniform random walk with broadcasts silenced within h hops of s.

    The start node is drawn uniformly; each move picks a uniform neighbor.
    Deterministic for a fixed seed.
    """
    if steps < 1:
        raise ValueError("walk needs at least one step")
    g.ensure_connected()
    layers = bfs_layers(g, s)
    silenced = np.zeros(g.node_count, dtype=bool)
    for d in range(min(h, layers.eccentricity) + 1):
        for v in layers.layers[d]:
            silenced[v] = True

    rng = np.random.default_rng(seed)
    draws = rng.random(steps)  # draw 0 picks the start, the rest pick neighbors
    node = int(draws[0] * g.node_count)
    trace = [(0, node, not silenced[node])]
    for t in range(1, steps):
        nbrs = g.adjacency[node]
        node = nbrs[int(draws[t] * len(nbrs))]
        trace.append((t, node, not silenced[node]))
    return WalkTrace(steps=tuple(trace))


def observed_broadcast_set(trace: WalkTrace) -> set[int]:
    """Nodes the observer has seen a broadcast from."""
    return {node for _, node, broadcast in trace.steps if broadcast}


def coverage_step(trace: WalkTrace, node_count: int) -> int | None:
    """First time index at which the walk has visited every node, or None."""
    visited: set[int] = set()
    for t, node, _ in trace.steps:
        visited.add(node)
        if len(visited) == node_count:
            return t
    return None


def posterior_bruteforce(
    g: Graph, observed: set[int], density: DensityMap | None = None
) -> Posterior:
    """Observer posterior from a converged broadcast set, by enumeration.

    A node v gets prior weight (density, or 1) iff the broadcast set of some
    radius 0..ecc(v) around v equals `observed`; weights are then normalized.

    Raises InfeasibleError when no node qualifies, i.e. the observation cannot
    have come from a symmetric suppression policy on this graph.
    """
    g.ensure_connected()
    for v in observed:
        g.check_node(v)
    if density is not None and len(density) != g.node_count:
        raise ValueError("density map size does not match the node count")

    want = len(observed)
    weights = np.zeros(g.node_count, dtype=np.float64)
    matched = False
    for v in range(g.node_count):
        layers = bfs_layers(g, v)
        # Broadcast set for radius r is the union of layers beyond r; peel the
        # ball outward and compare only when the sizes agree.
        outside = g.node_count
        remaining = set(range(g.node_count))
        for r in range(layers.eccentricity + 1):
            layer = layers.layers[r]
            outside -= len(layer)
            remaining -= layer
            if outside == want and remaining == observed:
                matched = True
                weights[v] = 1.0 if density is None else float(density.rho[v])
                break
    if not matched:
        raise InfeasibleError(
            "observed broadcast set is inconsistent with every symmetric policy"
        )
    total = float(weights.sum())
    if total <= 0.0:
        raise ValueError("every plausible private node has zero density; posterior undefined")
    return Posterior(mass=weights / total)
