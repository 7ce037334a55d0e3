import numpy as np
import pytest

from jofcmatch.dissimilarity import normalize, shortest_path_dissimilarity
from jofcmatch.graph import sample_er
from jofcmatch.seeding import (
    Matching,
    Seeding,
    SeedingError,
    build_omnibus,
    impute_delta,
    load_matching,
    load_seeding,
    save_matching,
    save_seeding,
)


def random_dissimilarity(n, seed):
    rng = np.random.default_rng(seed)
    d = rng.random((n, n))
    d = (d + d.T) / 2
    np.fill_diagonal(d, 0.0)
    return d / d.max()


class TestMatching:
    def test_images(self):
        m = Matching([(0, 1), (0, 2), (3, 1)])
        assert m.image1(0) == {1, 2}
        assert m.image2(1) == {0, 3}
        assert not m.is_bijection()
        assert Matching([(0, 0), (1, 1)]).is_bijection()

    def test_file_round_trip(self, tmp_path):
        m = Matching([(0, 4), (2, 1), (3, 3)])
        path = tmp_path / "m.txt"
        save_matching(m, path, "a", "b")
        assert load_matching(path).pairs == m.pairs
        assert path.read_text().startswith("# matching a -> b\n")


class TestSeeding:
    def test_partition(self):
        s = Seeding([(0, 1), (2, 2)], 4, 4)
        assert s.seeds1 == [0, 2]
        assert s.seeds2 == [1, 2]
        assert s.unseeded1 == [1, 3]
        assert s.unseeded2 == [0, 3]
        assert (s.s1, s.s2, s.u1, s.u2) == (2, 2, 2, 2)
        assert set(s.seeds1) | set(s.unseeded1) == set(range(4))
        assert set(s.seeds1) & set(s.unseeded1) == set()

    def test_out_of_range_rejected(self):
        with pytest.raises(SeedingError):
            Seeding([(0, 5)], 3, 3)

    def test_seeding_property_warns_against_reference(self):
        s = Seeding([(0, 0)], 3, 3)
        truth = Matching([(0, 0), (1, 0), (2, 2)])  # (1, 0) hits seed 0 of graph 2
        with pytest.warns(UserWarning, match="seeding property"):
            s.validate_against(truth)

    def test_consistent_reference_passes(self):
        import warnings

        s = Seeding([(0, 0)], 3, 3)
        truth = Matching([(0, 0), (1, 1), (2, 2)])
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            s.validate_against(truth)

    def test_file_round_trip(self, tmp_path):
        s = Seeding([(0, 1), (2, 0)], 5, 5)
        path = tmp_path / "s.txt"
        save_seeding(s, path)
        assert load_seeding(path, 5, 5).pairs == s.pairs


class TestImputeDelta:
    def test_matched_pair_is_zero(self):
        d = random_dissimilarity(4, 0)
        s = Seeding([(0, 0), (1, 1)], 4, 4)
        assert impute_delta(d, d, s, 0, 0) == 0.0

    def test_one_to_one_reduces_to_two_term_average(self):
        d1 = random_dissimilarity(5, 1)
        d2 = random_dissimilarity(5, 2)
        s = Seeding([(0, 3), (2, 1)], 5, 5)
        # S(0) = {3}, S(1 in g2) = {2}
        expected = (d1[0, 2] + d2[3, 1]) / 2
        assert impute_delta(d1, d2, s, 0, 1) == pytest.approx(expected, rel=1e-12)

    def test_many_to_one_hand_case(self):
        # i=0 matched to {a=0, b=1} in graph 2; j=2 matched to {c=3} in graph 1
        d1 = np.zeros((4, 4))
        d1[0, 3] = d1[3, 0] = 1.0
        d2 = np.zeros((4, 4))
        d2[0, 2] = d2[2, 0] = 2.0
        d2[1, 2] = d2[2, 1] = 4.0
        s = Seeding([(0, 0), (0, 1), (3, 2)], 4, 4)
        # ((2 + 4) / 2 + 1) / 2 = 2
        assert impute_delta(d1, d2, s, 0, 2) == pytest.approx(2.0)

    def test_symmetric_under_graph_swap(self):
        d1 = random_dissimilarity(6, 3)
        d2 = random_dissimilarity(6, 4)
        s = Seeding([(0, 1), (0, 2), (3, 0), (4, 4)], 6, 6)
        swapped = Seeding([(j, i) for i, j in s.pairs], 6, 6)
        for i in s.seeds1:
            for j in s.seeds2:
                forward = impute_delta(d1, d2, s, i, j)
                backward = impute_delta(d2, d1, swapped, j, i)
                assert forward == pytest.approx(backward, rel=1e-12)

    def test_unseeded_argument_rejected(self):
        d = random_dissimilarity(4, 5)
        s = Seeding([(0, 0)], 4, 4)
        with pytest.raises(SeedingError):
            impute_delta(d, d, s, 1, 0)


class TestBuildOmnibus:
    def test_single_seed_pair(self):
        d = random_dissimilarity(3, 6)
        s = Seeding([(1, 2)], 3, 3)
        omni = build_omnibus(d, d, s)
        assert omni.values.shape == (2, 2)
        assert np.array_equal(omni.values, np.zeros((2, 2)))

    def test_identical_graphs_identity_seeding(self):
        g = sample_er(12, 0.5, 9)
        d = normalize(shortest_path_dissimilarity(g))
        k = 5
        s = Seeding([(i, i) for i in range(k)], 12, 12)
        omni = build_omnibus(d, d, s)
        block = d[:k, :k]
        assert np.allclose(omni.values[:k, :k], block)
        assert np.allclose(omni.values[k:, k:], block)
        # delta(i, j) = (D(i, j) + D(i, j)) / 2 = D(i, j)
        assert np.allclose(omni.values[:k, k:], block)

    def test_symmetry_on_random_instances(self):
        for seed in range(4):
            d1 = random_dissimilarity(8, seed)
            d2 = random_dissimilarity(8, seed + 50)
            s = Seeding([(0, 0), (1, 3), (1, 4), (5, 5)], 8, 8)
            omni = build_omnibus(d1, d2, s)
            assert np.array_equal(omni.values, omni.values.T)
            assert np.all(np.diag(omni.values) == 0)

    def test_entries_in_unit_interval_for_normalized_inputs(self):
        d1 = random_dissimilarity(10, 11)
        d2 = random_dissimilarity(10, 12)
        s = Seeding([(i, i) for i in range(6)], 10, 10)
        omni = build_omnibus(d1, d2, s)
        assert np.all(omni.values >= 0) and np.all(omni.values <= 1)

    def test_cross_block_zero_exactly_on_seed_pairs(self):
        d1 = random_dissimilarity(8, 13)
        d2 = random_dissimilarity(8, 14)
        s = Seeding([(0, 2), (3, 3), (4, 0)], 8, 8)
        omni = build_omnibus(d1, d2, s)
        s1, s2 = s.seeds1, s.seeds2
        for a, i in enumerate(s1):
            for b, j in enumerate(s2):
                if (i, j) in s.pairs:
                    assert omni.values[a, len(s1) + b] == 0.0
                else:
                    assert omni.values[a, len(s1) + b] > 0.0

    def test_unknown_pairs_masked(self):
        d1 = random_dissimilarity(6, 15)
        d2 = random_dissimilarity(6, 16)
        s = Seeding([(0, 0), (1, 1)], 6, 6, unknown=[(0, 1)])
        omni = build_omnibus(d1, d2, s)
        assert omni.unknown_mask[0, 3]
        assert omni.values[0, 3] == 0.0

    def test_empty_seeding_rejected(self):
        d = random_dissimilarity(4, 17)
        with pytest.raises(SeedingError, match="empty"):
            build_omnibus(d, d, Seeding([], 4, 4))
