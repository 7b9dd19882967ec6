import numpy as np
import pytest

from macs.core import ContractViolation, dominates
from macs.metrics import (
    build_reference_front,
    dedupe_filter,
    evaluate_fronts,
    m_conv,
    m_spr,
    mean_euclidean_distance,
    success_rate,
)


class TestMSpr:
    def test_identity_is_zero(self):
        front = np.array([[1.0, 2.0], [2.0, 1.0], [3.0, 0.5]])
        assert m_spr(front, front) == 0.0

    def test_hand_computed_value(self):
        reference = np.array([[1.0, 1.0], [2.0, 0.5]])
        candidate = np.array([[1.0, 1.0]])
        # Second reference point: relative offset (-0.5, 1.0), norm
        # sqrt(1.25), in percent 111.80; mean with the exact match 55.90.
        assert m_spr(reference, candidate) == pytest.approx(55.9017, abs=1e-3)

    def test_candidate_superset_is_zero(self):
        reference = np.array([[1.0, 2.0], [2.0, 1.0]])
        candidate = np.array([[1.0, 2.0], [1.5, 1.5], [2.0, 1.0]])
        assert m_spr(reference, candidate) == 0.0

    def test_zero_reference_component_is_floored(self):
        reference = np.array([[0.0, 1.0]])
        candidate = np.array([[0.5, 1.0]])
        value = m_spr(reference, candidate)
        assert np.isfinite(value)
        assert value > 0

    def test_dimension_mismatch(self):
        with pytest.raises(ContractViolation):
            m_spr(np.ones((2, 2)), np.ones((2, 3)))


class TestMConv:
    def test_identity_is_zero(self):
        front = np.array([[1.0, 2.0], [2.0, 1.0]])
        assert m_conv(front, front) == 0.0

    def test_matching_single_candidate_is_zero(self):
        reference = np.array([[1.0, 1.0], [2.0, 0.5]])
        candidate = np.array([[1.0, 1.0]])
        assert m_conv(reference, candidate) == 0.0

    def test_hand_computed_value(self):
        reference = np.array([[1.0, 1.0]])
        candidate = np.array([[1.1, 1.1]])
        assert m_conv(reference, candidate) == pytest.approx(
            100.0 * np.sqrt(0.02), abs=1e-6
        )

    def test_adding_reference_point_never_increases(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            reference = rng.random((10, 2))
            candidate = rng.random((6, 2))
            base = m_conv(reference, candidate)
            grown = np.vstack([reference, rng.random(2)])
            assert m_conv(grown, candidate) <= base + 1e-12


class TestDedupeFilter:
    def test_idempotent(self):
        rng = np.random.default_rng(9)
        front = rng.random((40, 2))
        once = dedupe_filter(front, 0.05)
        twice = dedupe_filter(once, 0.05)
        np.testing.assert_array_equal(once, twice)

    def test_removes_near_duplicates(self):
        front = np.array([[0.0, 1.0], [1e-9, 1.0], [1.0, 0.0]])
        out = dedupe_filter(front, 1e-3)
        assert len(out) == 2

    def test_external_span(self):
        front = np.array([[0.0, 0.0], [1.0, 1.0]])
        # With a huge span both points collapse into one cell.
        out = dedupe_filter(front, 1e-3, span=(np.zeros(2), 1e5 * np.ones(2)))
        assert len(out) == 1

    def test_bad_tol(self):
        with pytest.raises(ContractViolation):
            dedupe_filter(np.ones((2, 2)), 0.0)


class TestBuildReferenceFront:
    def test_single_nondominated_input_preserved(self):
        f1 = np.linspace(0.0, 1.0, 20)
        front = np.column_stack([f1, 1 - f1])
        out = build_reference_front([front])
        assert sorted(map(tuple, out)) == sorted(map(tuple, front))

    def test_output_nondominated_and_bounded(self):
        rng = np.random.default_rng(21)
        runs = [rng.random((60, 2)) for _ in range(3)]
        out = build_reference_front(runs, max_points=25)
        assert len(out) <= 25
        for i in range(len(out)):
            for j in range(len(out)):
                if i != j:
                    assert not dominates(out[i], out[j])

    def test_sorted_by_first_objective(self):
        rng = np.random.default_rng(23)
        out = build_reference_front([rng.random((50, 2))])
        assert np.all(np.diff(out[:, 0]) >= 0)

    def test_empty_input_rejected(self):
        with pytest.raises(ContractViolation):
            build_reference_front([])


class TestSuccessRate:
    def test_strictly_below(self):
        assert success_rate([0.5, 1.0, 2.0], 1.0) == pytest.approx(1 / 3)

    def test_all_pass(self):
        assert success_rate([0.1, 0.2], 1.0) == 1.0

    def test_empty_rejected(self):
        with pytest.raises(ContractViolation):
            success_rate([], 1.0)


class TestEvaluateFronts:
    def test_identity_report(self):
        front = np.array([[1.0, 2.0], [2.0, 1.0], [4.0, 0.0]])
        report = evaluate_fronts(front, front)
        assert report.m_spr == 0.0
        assert report.m_conv == 0.0

    def test_hand_built_pair(self):
        reference = np.array([[1.0, 1.0], [2.0, 0.5]])
        candidate = np.array([[1.0, 1.0]])
        report = evaluate_fronts(reference, candidate)
        assert report.m_spr == pytest.approx(55.9017, abs=1e-3)
        assert report.m_conv == 0.0
        assert report.reference_size == 2
        assert report.candidate_size == 1


class TestMeanEuclideanDistance:
    def test_identity_is_zero(self):
        front = np.array([[1.0, 2.0], [2.0, 1.0]])
        assert mean_euclidean_distance(front, front) == 0.0

    def test_hand_computed(self):
        reference = np.array([[0.0, 0.0], [1.0, 0.0]])
        candidate = np.array([[0.0, 1.0]])
        assert mean_euclidean_distance(reference, candidate) == pytest.approx(
            (1.0 + np.sqrt(2.0)) / 2.0
        )
