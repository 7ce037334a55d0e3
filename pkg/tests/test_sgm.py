import itertools

import numpy as np
import pytest

from jofcmatch.assignment import edge_disagreement
from jofcmatch.graph import Graph, bit_flip, sample_er
from jofcmatch.seeding import Matching, Seeding, SeedingError
from jofcmatch.sgm import SgmError, sgm


def brute_force_sgm(g1, g2, seeding):
    """Exhaustive minimum edge disagreement over seed-respecting bijections."""
    partner = dict(seeding.pairs)
    u1, u2 = seeding.unseeded1, seeding.unseeded2
    best_cost, best_pairs = np.inf, None
    for perm in itertools.permutations(u2):
        phi = np.empty(g1.n, dtype=int)
        for i, j in partner.items():
            phi[i] = j
        for i, j in zip(u1, perm):
            phi[i] = j
        cost = edge_disagreement(g1, g2, phi)
        if cost < best_cost:
            best_cost = cost
            best_pairs = list(zip(u1, perm))
    return best_cost, Matching(best_pairs)


def permuted_copy(g, seed):
    rng = np.random.default_rng(seed)
    perm = rng.permutation(g.n)
    g2 = Graph(g.weights[np.ix_(perm, perm)])
    truth = Matching([(int(perm[k]), k) for k in range(g.n)])
    return g2, truth


class TestSgm:
    def test_isomorphic_graphs_zero_objective(self):
        g1 = sample_er(12, 0.5, 0)
        g2, truth = permuted_copy(g1, 1)
        seeds = [(i, j) for i, j in sorted(truth.pairs)[:5]]
        seeding = Seeding(seeds, 12, 12)
        result = sgm(g1, g2, seeding)
        assert result.objective == 0.0
        full = Matching(list(result.matching.pairs) + seeds)
        assert full.is_bijection()
        phi = [next(iter(full.image1(i))) for i in range(12)]
        assert edge_disagreement(g1, g2, phi) == 0

    def test_iterates_doubly_stochastic(self):
        g1 = sample_er(14, 0.5, 2)
        g2 = bit_flip(g1, 0.2, 3)
        seeding = Seeding([(i, i) for i in range(6)], 14, 14)
        iterates = []
        sgm(g1, g2, seeding, iterate_callback=lambda p: iterates.append(p.copy()))
        assert len(iterates) >= 2
        for p in iterates:
            assert np.all(p >= -1e-12)
            assert np.allclose(p.sum(axis=0), 1.0)
            assert np.allclose(p.sum(axis=1), 1.0)

    def test_relaxed_objective_monotone(self):
        for seed in range(5):
            g1 = sample_er(16, 0.4, seed)
            g2 = bit_flip(g1, 0.3, seed + 10)
            seeding = Seeding([(i, i) for i in range(5)], 16, 16)
            h = np.asarray(sgm(g1, g2, seeding).objective_history)
            assert np.all(np.diff(h) <= 1e-9)

    def test_matching_covers_exactly_the_unseeded(self):
        g1 = sample_er(10, 0.5, 4)
        g2 = bit_flip(g1, 0.1, 5)
        seeding = Seeding([(0, 0), (3, 3), (7, 7)], 10, 10)
        result = sgm(g1, g2, seeding)
        assert {i for i, _ in result.matching.pairs} == set(seeding.unseeded1)
        assert {j for _, j in result.matching.pairs} == set(seeding.unseeded2)
        assert result.matching.is_bijection()

    def test_against_brute_force_on_small_instances(self):
        # the relaxation is a heuristic; demand optimality on most easy instances
        hits = total = 0
        for seed in range(20):
            g1 = sample_er(6, 0.5, seed + 200)
            g2 = bit_flip(g1, 0.1, seed + 300)
            seeding = Seeding([(0, 0), (1, 1)], 6, 6)
            best_cost, _ = brute_force_sgm(g1, g2, seeding)
            result = sgm(g1, g2, seeding)
            hits += result.objective == best_cost
            total += 1
        assert hits / total >= 0.8

    def test_objective_matches_edge_disagreement(self):
        g1 = sample_er(9, 0.5, 6)
        g2 = bit_flip(g1, 0.3, 7)
        seeding = Seeding([(i, i) for i in range(3)], 9, 9)
        result = sgm(g1, g2, seeding)
        full = dict(seeding.pairs)
        full.update({i: j for i, j in result.matching.pairs})
        phi = [full[i] for i in range(9)]
        assert result.objective == edge_disagreement(g1, g2, phi)

    def test_all_seeded(self):
        g = sample_er(5, 0.5, 8)
        seeding = Seeding([(i, i) for i in range(5)], 5, 5)
        result = sgm(g, g, seeding)
        assert len(result.matching) == 0
        assert result.objective == 0.0

    def test_size_mismatch_rejected(self):
        with pytest.raises(SgmError):
            sgm(sample_er(5, 0.5, 0), sample_er(6, 0.5, 0), Seeding([(0, 0)], 5, 6))

    def test_non_bijective_seeding_rejected(self):
        g = sample_er(5, 0.5, 1)
        with pytest.raises(SeedingError):
            sgm(g, g, Seeding([(0, 0), (0, 1)], 5, 5))
