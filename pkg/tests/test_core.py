import numpy as np
import pytest

from macs.core import (
    Archive,
    ContractViolation,
    SearchSpace,
    crowding_values,
    dominance_index,
    dominates,
    infeasible_objectives,
    is_feasible,
    modified_dominance_index,
    normalized_distance,
    prune_archive,
    select_partially_dominated,
)


def brute_force_dominance_index(fs):
    """Reference implementation: count strict dominators pairwise."""
    k = len(fs)
    out = np.zeros(k, dtype=int)
    for j in range(k):
        for i in range(k):
            if i != j and all(fs[i][c] < fs[j][c] for c in range(len(fs[j]))):
                out[j] += 1
    return out


class TestDominates:
    def test_strict_better_everywhere(self):
        assert dominates([1.0, 1.0], [2.0, 2.0])

    def test_tie_does_not_dominate(self):
        assert not dominates([1.0, 1.0], [1.0, 2.0])

    def test_incomparable(self):
        assert not dominates([1.0, 3.0], [2.0, 2.0])
        assert not dominates([2.0, 2.0], [1.0, 3.0])

    def test_shape_mismatch(self):
        with pytest.raises(ContractViolation):
            dominates([1.0], [1.0, 2.0])


class TestDominanceIndex:
    def test_matches_brute_force_random_sets(self):
        rng = np.random.default_rng(7)
        for m in (2, 3):
            for _ in range(30):
                fs = rng.random((rng.integers(1, 25), m))
                # Duplicate some rows so exact ties occur too.
                fs = np.vstack([fs, fs[: max(1, len(fs) // 3)]])
                np.testing.assert_array_equal(
                    dominance_index(fs), brute_force_dominance_index(fs)
                )

    def test_single_point_is_nondominated(self):
        np.testing.assert_array_equal(dominance_index([[1.0, 2.0]]), [0])

    def test_empty_rejected(self):
        with pytest.raises(ContractViolation):
            dominance_index(np.empty((0, 2)))


class TestModifiedDominanceIndex:
    def test_identical_vectors_score_zero(self):
        assert modified_dominance_index([1.0, 2.0], [1.0, 2.0]) == 0

    def test_dominated_candidate_scores_m(self):
        assert modified_dominance_index([1.0, 1.0], [2.0, 2.0]) == 2

    def test_improvement_scores_zero(self):
        assert modified_dominance_index([1.0, 1.0], [0.5, 0.5]) == 0
        assert modified_dominance_index([1.0, 1.0], [0.5, 1.0]) == 0

    def test_partial_trade_off(self):
        # Better in one objective, worse in the other.
        assert modified_dominance_index([1.0, 1.0], [0.5, 2.0]) == 1

    def test_tie_with_strict_loss_counts(self):
        # y equals x in one component and is worse in the other.
        assert modified_dominance_index([1.0, 1.0], [1.0, 2.0]) == 2


class TestSelectPartiallyDominated:
    def test_picks_smallest_diagonal_displacement(self):
        # Among equally indexed candidates the sliding move prefers the
        # one that drifts least along the diagonal.
        x_f = np.array([1.0, 1.0])
        cands = np.array([[0.9, 1.2], [0.2, 1.2]])
        assert select_partially_dominated(x_f, cands) == 0

    def test_tie_resolves_to_first(self):
        x_f = np.array([1.0, 1.0])
        cands = np.array([[0.5, 1.5], [1.5, 0.5]])
        assert select_partially_dominated(x_f, cands) == 0

    def test_empty_rejected(self):
        with pytest.raises(ContractViolation):
            select_partially_dominated(np.array([1.0]), np.empty((0, 1)))


class TestSearchSpace:
    def test_bounds_validation(self):
        with pytest.raises(ContractViolation):
            SearchSpace(np.array([0.0, 1.0]), np.array([1.0, 1.0]))
        with pytest.raises(ContractViolation):
            SearchSpace(np.array([0.0]), np.array([1.0, 2.0]))

    def test_sample_inside(self):
        space = SearchSpace(np.array([-2.0, 0.0]), np.array([-1.0, 5.0]))
        rng = np.random.default_rng(0)
        for _ in range(100):
            assert space.contains(space.sample(rng))

    def test_normalize_clip(self):
        space = SearchSpace(np.array([0.0]), np.array([4.0]))
        assert space.normalize(np.array([1.0]))[0] == 0.25
        assert space.clip(np.array([9.0]))[0] == 4.0

    def test_normalized_distance(self):
        space = SearchSpace(np.array([0.0, 0.0]), np.array([2.0, 10.0]))
        d = normalized_distance(
            np.array([0.0, 0.0]), np.array([2.0, 10.0]), space
        )
        assert d == pytest.approx(np.sqrt(2.0))


class TestInfeasible:
    def test_sentinel_round_trip(self):
        f = infeasible_objectives(2)
        assert not is_feasible(f)
        assert is_feasible(np.array([1.0, 2.0]))

    def test_infeasible_never_survives_pruning(self):
        arch = Archive(
            np.array([[0.0], [1.0]]),
            np.vstack([infeasible_objectives(2), [1.0, 1.0]]),
        )
        space = SearchSpace(np.array([0.0]), np.array([1.0]))
        out = prune_archive(arch, space, w_c=0.0)
        assert len(out) == 1
        assert np.all(np.isfinite(out.f))


class TestPruneArchive:
    def _random_archive(self, rng, k=60, n=3, m=2):
        xs = rng.random((k, n))
        fs = rng.random((k, m))
        return Archive(xs, fs)

    def test_output_is_mutually_nondominated(self):
        rng = np.random.default_rng(11)
        space = SearchSpace(np.zeros(3), np.ones(3))
        for _ in range(10):
            out = prune_archive(self._random_archive(rng), space, w_c=1e-5)
            fs = out.f
            for i in range(len(fs)):
                for j in range(len(fs)):
                    if i != j:
                        assert not dominates(fs[i], fs[j])

    def test_minimum_spacing_enforced(self):
        rng = np.random.default_rng(13)
        space = SearchSpace(np.zeros(3), np.ones(3))
        w_c = 0.05
        for _ in range(10):
            out = prune_archive(self._random_archive(rng), space, w_c=w_c)
            for i in range(len(out)):
                for j in range(i + 1, len(out)):
                    d = normalized_distance(out.x[i], out.x[j], space)
                    assert d > w_c

    def test_capacity_respected_and_extremes_kept(self):
        rng = np.random.default_rng(17)
        space = SearchSpace(np.zeros(3), np.ones(3))
        # A line of nondominated points: f2 = 1 - f1.
        f1 = np.sort(rng.random(50))
        fs = np.column_stack([f1, 1 - f1])
        arch = Archive(rng.random((50, 3)), fs)
        out = prune_archive(arch, space, w_c=0.0, capacity=10)
        assert len(out) == 10
        assert np.min(out.f[:, 0]) == np.min(fs[:, 0])
        assert np.min(out.f[:, 1]) == np.min(fs[:, 1])

    def test_negative_w_c_rejected(self):
        space = SearchSpace(np.zeros(1), np.ones(1))
        arch = Archive.empty(1, 2)
        with pytest.raises(ContractViolation):
            prune_archive(arch, space, w_c=-1.0)


class TestCrowdingValues:
    def test_extremes_are_infinite(self):
        fs = np.array([[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]])
        crowd = crowding_values(fs)
        assert np.isinf(crowd[0]) and np.isinf(crowd[2])
        assert np.isfinite(crowd[1])

    def test_isolated_point_less_crowded(self):
        fs = np.array(
            [[0.0, 1.0], [0.1, 0.9], [0.12, 0.88], [0.6, 0.3], [1.0, 0.0]]
        )
        crowd = crowding_values(fs)
        # The gap point (index 3) beats the clustered interior ones.
        assert crowd[3] > crowd[1]
        assert crowd[3] > crowd[2]

    def test_tiny_sets_all_infinite(self):
        assert np.all(np.isinf(crowding_values(np.array([[1.0, 2.0]]))))
        assert np.all(
            np.isinf(crowding_values(np.array([[1.0, 2.0], [2.0, 1.0]])))
        )
