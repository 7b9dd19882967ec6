import numpy as np
import pytest

from macs.core import ContractViolation, dominates
from macs.problems import PROBLEM_NAMES, analytic_problem, true_front


class TestEvaluations:
    def test_zdt2_known_point(self):
        prob = analytic_problem("zdt2")
        x = np.zeros(30)
        x[0] = 0.5
        f = prob.evaluate(x)
        assert f[0] == pytest.approx(0.5)
        assert f[1] == pytest.approx(1 - 0.25)

    def test_zdt2_g_shift(self):
        prob = analytic_problem("zdt2")
        x = np.full(30, 0.5)
        f = prob.evaluate(x)
        g = 1 + 9 * 0.5
        assert f[1] == pytest.approx(g * (1 - (0.5 / g) ** 2))

    def test_zdt4_optimum_at_zero_tail(self):
        prob = analytic_problem("zdt4")
        x = np.zeros(10)
        x[0] = 0.25
        f = prob.evaluate(x)
        assert f[1] == pytest.approx(1 - np.sqrt(0.25))

    def test_zdt6_front_point(self):
        prob = analytic_problem("zdt6")
        x = np.zeros(10)
        x[0] = 0.3
        f = prob.evaluate(x)
        f1 = 1 - np.exp(-1.2) * np.sin(1.8 * np.pi) ** 6
        assert f[0] == pytest.approx(f1)
        assert f[1] == pytest.approx(1 - f1**2)

    def test_scha_piecewise_f1(self):
        prob = analytic_problem("scha")
        cases = {-2.0: 2.0, 0.5: -0.5, 2.0: 0.0, 3.5: 0.5, 4.5: 0.5, 7.0: 3.0}
        for v, f1 in cases.items():
            f = prob.evaluate(np.array([v]))
            assert f[0] == pytest.approx(f1)
            assert f[1] == pytest.approx((v - 5.0) ** 2)

    def test_deb_first_objective_is_x1(self):
        prob = analytic_problem("deb")
        f = prob.evaluate(np.array([0.3, 0.7]))
        assert f[0] == pytest.approx(0.3)

    def test_deb2_g_multimodality(self):
        prob = analytic_problem("deb2")
        # x2 = 0 is the global valley of g; x2 = 1 a local one.
        f_glob = prob.evaluate(np.array([0.5, 0.0]))
        f_loc = prob.evaluate(np.array([0.5, 1.0]))
        assert f_loc[1] > f_glob[1]

    def test_out_of_bounds_rejected(self):
        prob = analytic_problem("zdt2")
        with pytest.raises(ContractViolation):
            prob.evaluate(np.full(30, 2.0))

    def test_unknown_name_rejected(self):
        with pytest.raises(ContractViolation):
            analytic_problem("nope")


class TestTrueFront:
    @pytest.mark.parametrize("name", PROBLEM_NAMES)
    def test_count_and_nondominance(self, name):
        front = true_front(name, 120)
        assert abs(len(front) - 120) <= 2  # piece rounding slack
        for i in range(len(front)):
            for j in range(len(front)):
                if i != j:
                    assert not dominates(front[i], front[j])

    def test_zdt2_closed_form(self):
        front = true_front("zdt2", 50)
        np.testing.assert_allclose(front[:, 1], 1 - front[:, 0] ** 2)

    def test_zdt4_closed_form(self):
        front = true_front("zdt4", 50)
        np.testing.assert_allclose(front[:, 1], 1 - np.sqrt(front[:, 0]))

    def test_deb_front_is_disconnected(self):
        front = true_front("deb", 300)
        f1 = np.sort(front[:, 0])
        gaps = np.diff(f1)
        # Four pieces -> three large gaps in the f1 coverage.
        assert np.sum(gaps > 0.05) == 3

    def test_front_points_achievable(self):
        # Every front sample must be reachable by an actual evaluation.
        prob = analytic_problem("deb2")
        front = true_front("deb2", 80)
        for f1, f2 in front:
            f = prob.evaluate(np.array([min(1.0, max(0.0, f1)), 0.0]))
            assert f[1] == pytest.approx(f2, abs=1e-6)

    def test_small_count_rejected(self):
        with pytest.raises(ContractViolation):
            true_front("zdt2", 1)
