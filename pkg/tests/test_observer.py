import random

import numpy as np
import pytest

from privzone import (
    DensityMap,
    InfeasibleError,
    Posterior,
    WalkTrace,
    analyze,
    bfs_layers,
    broadcast_set,
    build_graph,
    coverage_step,
    diameter,
    observed_broadcast_set,
    posterior_bruteforce,
    simulate_walk,
    suppressed_set,
)

from oracles import random_connected_graph


class TestSimulateWalk:
    def test_deterministic_per_seed(self, c6):
        a = simulate_walk(c6, 0, 1, 500, 42)
        b = simulate_walk(c6, 0, 1, 500, 42)
        assert a == b
        c = simulate_walk(c6, 0, 1, 500, 43)
        assert a != c

    def test_consecutive_nodes_adjacent(self, c6):
        trace = simulate_walk(c6, 0, 1, 1000, 5)
        for (_, u, _), (_, v, _) in zip(trace.steps, trace.steps[1:]):
            assert v in c6.adjacency[u]

    def test_broadcast_flag_tracks_suppressed_set(self, p4):
        ball = suppressed_set(p4, 1, 1)
        trace = simulate_walk(p4, 1, 1, 2000, 9)
        for _, node, broadcast in trace.steps:
            assert broadcast == (node not in ball)

    def test_total_silence_beyond_eccentricity(self, p4):
        trace = simulate_walk(p4, 1, 2, 300, 3)
        assert all(not broadcast for _, _, broadcast in trace.steps)

    def test_radius_zero_broadcasts_off_the_private_node_only(self, c6):
        trace = simulate_walk(c6, 2, 0, 2000, 11)
        for _, node, broadcast in trace.steps:
            assert broadcast == (node != 2)

    def test_needs_at_least_one_step(self, p4):
        with pytest.raises(ValueError, match="step"):
            simulate_walk(p4, 1, 1, 0, 1)

    def test_p4_long_walk_reveals_broadcast_set(self, p4):
        trace = simulate_walk(p4, 1, 1, 10_000, 3)
        assert observed_broadcast_set(trace) == broadcast_set(p4, 1, 1) == {3}


class TestObservedBroadcastSet:
    def test_empty_when_nothing_broadcast(self):
        trace = WalkTrace(steps=((0, 2, False), (1, 3, False)))
        assert observed_broadcast_set(trace) == set()

    def test_partial_trace_is_a_subset(self, c6):
        full = broadcast_set(c6, 0, 1)
        trace = simulate_walk(c6, 0, 1, 5, 21)
        assert observed_broadcast_set(trace) <= full

    def test_converges_after_coverage(self, c6):
        trace = simulate_walk(c6, 0, 1, 50_000, 13)
        step = coverage_step(trace, c6.node_count)
        assert step is not None and step < 50_000
        assert observed_broadcast_set(trace) == broadcast_set(c6, 0, 1)


class TestCoverageStep:
    def test_reports_first_full_visit(self):
        trace = WalkTrace(steps=((0, 0, True), (1, 1, True), (2, 0, True), (3, 2, True)))
        assert coverage_step(trace, 3) == 3

    def test_none_when_never_covered(self):
        trace = WalkTrace(steps=((0, 0, True), (1, 1, True)))
        assert coverage_step(trace, 3) is None


class TestPosteriorBruteforce:
    def test_p4_observed_single_far_node(self, p4):
        posterior = posterior_bruteforce(p4, {3})
        assert posterior.mass.tolist() == [0.5, 0.5, 0.0, 0.0]
        assert posterior.support == {0, 1}

    def test_empty_observation_is_uninformative(self, p4):
        posterior = posterior_bruteforce(p4, set())
        assert posterior.mass.tolist() == [0.25] * 4

    def test_everything_but_one_pins_it(self, p4):
        posterior = posterior_bruteforce(p4, {0, 2, 3})
        assert posterior.mass.tolist() == [0.0, 1.0, 0.0, 0.0]

    def test_density_prior_reweights_support(self, p4):
        rho = DensityMap(rho=np.array([1.0, 3.0, 1.0, 1.0]))
        posterior = posterior_bruteforce(p4, {3}, rho)
        assert posterior.mass.tolist() == [0.25, 0.75, 0.0, 0.0]

    def test_inconsistent_observation_rejected(self, p4):
        # {1} is no broadcast set: any radius around any node that silences
        # 0, 2 and 3 silences 1 as well
        with pytest.raises(InfeasibleError, match="inconsistent"):
            posterior_bruteforce(p4, {1})

    def test_zero_density_on_whole_support(self, p4):
        rho = DensityMap(rho=np.array([0.0, 0.0, 1.0, 1.0]))
        with pytest.raises(ValueError, match="zero density"):
            posterior_bruteforce(p4, {3}, rho)

    def test_mass_sums_to_one(self):
        rng = random.Random(113)
        for _ in range(20):
            g = random_connected_graph(rng.randint(2, 25), 0.2, rng)
            s = rng.randrange(g.node_count)
            h = rng.randint(0, diameter(g))
            posterior = posterior_bruteforce(g, broadcast_set(g, s, h))
            assert float(posterior.mass.sum()) == pytest.approx(1.0, abs=1e-12)

    def test_posterior_validation(self):
        with pytest.raises(ValueError, match="sum"):
            Posterior(mass=np.array([0.3, 0.3]))
        with pytest.raises(ValueError, match="nonnegative"):
            Posterior(mass=np.array([-0.5, 1.5]))


class TestEndToEnd:
    def test_walk_then_inference_recovers_policy_privacy(self, p4, c6):
        for g, s, h in ((p4, 1, 1), (c6, 0, 1)):
            trace = simulate_walk(g, s, h, 100_000, 17)
            assert coverage_step(trace, g.node_count) is not None
            observed = observed_broadcast_set(trace)
            assert observed == broadcast_set(g, s, h)
            posterior = posterior_bruteforce(g, observed)
            assert float(posterior.mass[s]) == analyze(g, s, h).privacy
