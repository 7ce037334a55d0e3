import numpy as np
import pytest

from jofcmatch.assignment import evaluate_match
from jofcmatch.graph import Graph, sample_er
from jofcmatch.pipeline import JofcResult, PipelineConfig, PipelineError, jofc_match
from jofcmatch.seeding import Matching, Seeding

from .test_graph import graph_from_edges


def weighted_path(n):
    """A path with strictly increasing edge weights: no automorphisms, so
    every vertex is recoverable from its shortest-path profile."""
    w = np.zeros((n, n))
    for k in range(n - 1):
        w[k, k + 1] = w[k + 1, k] = float(k + 1)
    return Graph(w)


def permuted_copy(g, seed):
    rng = np.random.default_rng(seed)
    perm = rng.permutation(g.n)
    g2 = Graph(g.weights[np.ix_(perm, perm)])
    truth = Matching([(int(perm[k]), k) for k in range(g.n)])
    return g2, truth


class TestJofcMatch:
    def test_exact_recovery_on_weighted_path(self):
        g1 = weighted_path(10)
        g2, truth = permuted_copy(g1, 0)
        partner = truth.as_dict1()
        seeds = [(i, next(iter(partner[i]))) for i in (0, 3, 6, 9)]
        seeding = Seeding(seeds, g1.n, g2.n)
        cfg = PipelineConfig(dim=3, n_restarts=3, max_iters=500)
        result = jofc_match(g1, g2, seeding, cfg)
        ev = evaluate_match(result.matching, truth, seeding)
        assert ev.match_ratio == 1.0
        assert result.chosen_dim == 3
        for stage in ("dissimilarity", "omnibus", "embed", "oos", "match"):
            assert stage in result.stage_seconds

    def test_auto_dimension(self):
        g1 = sample_er(14, 0.5, 1)
        g2, truth = permuted_copy(g1, 2)
        partner = truth.as_dict1()
        seeds = [(i, next(iter(partner[i]))) for i in range(8)]
        seeding = Seeding(seeds, 14, 14)
        cfg = PipelineConfig(dim=None, n_restarts=2, max_iters=200)
        result = jofc_match(g1, g2, seeding, cfg)
        assert result.chosen_dim >= 1
        assert "select_dimension" in result.stage_seconds
        assert result.matching.is_bijection()

    def test_swap_symmetry(self):
        # swapping the graphs swaps the roles, with comparable recovery
        g1 = weighted_path(8)
        g2, truth = permuted_copy(g1, 3)
        partner = truth.as_dict1()
        seeds = [(i, next(iter(partner[i]))) for i in (0, 4, 7)]
        cfg = PipelineConfig(dim=2, n_restarts=3)
        fwd = jofc_match(g1, g2, Seeding(seeds, g1.n, g2.n), cfg)
        swapped = Seeding([(j, i) for i, j in seeds], g2.n, g1.n)
        back = jofc_match(g2, g1, swapped, cfg)
        back_pairs = {(i, j) for j, i in back.matching.pairs}
        seeding_fwd = Seeding(seeds, g1.n, g2.n)
        ev_fwd = evaluate_match(fwd.matching, truth, seeding_fwd)
        ev_back = evaluate_match(Matching(back_pairs), truth, seeding_fwd)
        assert ev_fwd.match_ratio == ev_back.match_ratio == 1.0

    def test_gap_matcher_covers_graph1(self):
        g1 = sample_er(10, 0.5, 4)
        g2, truth = permuted_copy(g1, 5)
        partner = truth.as_dict1()
        seeds = [(i, next(iter(partner[i]))) for i in range(4)]
        seeding = Seeding(seeds, 10, 10)
        cfg = PipelineConfig(dim=3, matcher="gap", n_restarts=2)
        result = jofc_match(g1, g2, seeding, cfg)
        assert {i for i, _ in result.matching.pairs} == set(seeding.unseeded1)

    def test_no_seeds_chance_level(self):
        g1 = sample_er(8, 0.5, 6)
        g2 = sample_er(8, 0.5, 7)
        result = jofc_match(g1, g2, Seeding([], 8, 8), PipelineConfig(dim=2, n_restarts=2))
        assert isinstance(result, JofcResult)
        assert result.matching.is_bijection()
        assert len(result.matching) == 8
        assert result.embedding.oos_points1.shape == (8, 2)

    def test_deterministic(self):
        g1 = sample_er(12, 0.5, 8)
        g2, _ = permuted_copy(g1, 9)
        seeding = Seeding([(i, i) for i in range(5)], 12, 12)
        cfg = PipelineConfig(dim=2, n_restarts=2, rng_seed=11)
        a = jofc_match(g1, g2, seeding, cfg)
        b = jofc_match(g1, g2, seeding, cfg)
        assert a.matching.pairs == b.matching.pairs
        assert np.array_equal(a.embedding.seed_points, b.embedding.seed_points)

    def test_stage_labelled_errors(self):
        g1 = graph_from_edges(4, [(0, 1), (2, 3)])  # disconnected
        g2 = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
        seeding = Seeding([(0, 0)], 4, 4)
        with pytest.raises(PipelineError, match="stage 'dissimilarity'"):
            jofc_match(g1, g2, seeding, PipelineConfig(dim=2))

    def test_invalid_config(self):
        with pytest.raises(PipelineError):
            PipelineConfig(matcher="greedy")
        with pytest.raises(PipelineError):
            PipelineConfig(dim=None, alpha=0.0)

    def test_config_round_trips_through_dict(self):
        cfg = PipelineConfig(dim=None, matcher="gap", rng_seed=5)
        assert cfg.as_dict()["dim"] == "auto"
        rebuilt = PipelineConfig(**cfg.as_dict_internal())
        assert rebuilt == cfg
