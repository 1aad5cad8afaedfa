import dataclasses
import math

import numpy as np
import pytest

from maxprod import analysis, kernels, orlicz, signals

UNIT = (0.0, 1.0)


class TestModulusOfContinuity:
    def test_ramp_is_delta(self):
        assert analysis.modulus_of_continuity(
            signals.catalog("ramp"), 0.1) == pytest.approx(0.1, abs=1e-9)

    def test_constant_is_zero(self):
        assert analysis.modulus_of_continuity(
            signals.catalog("constant:4"), 0.2) == 0.0

    def test_abs_sine_matches_brute_force(self):
        sig = signals.catalog("abs-sine")
        value = analysis.modulus_of_continuity(sig, 0.05)
        xs = np.linspace(0.0, 1.0, 10001)
        vals = sig.evaluate(xs)
        width = int(round(0.05 * 10000))
        brute = max(float(np.max(np.abs(vals[j:] - vals[:-j])))
                    for j in range(1, width + 1))
        assert value == pytest.approx(brute, abs=1e-4)

    def test_hat_on_line(self):
        assert analysis.modulus_of_continuity(
            signals.catalog("hat"), 0.25) == pytest.approx(0.25, abs=1e-9)


class TestRunConvergence:
    def test_constant_all_zero(self, fejer_kernel):
        report = analysis.run_convergence(
            signals.catalog("constant:1"), fejer_kernel, orlicz.power_phi(2),
            1.0, [4, 8, 16, 32, 64])
        assert report.sup_errors == [0.0] * 5
        assert report.modular_errors == [0.0] * 5
        assert report.luxemburg_errors == [0.0] * 5
        assert report.fitted_rate is None  # nothing above the noise floor

    def test_ramp_modular_halves_per_doubling(self, m4_kernel):
        report = analysis.run_convergence(
            signals.catalog("ramp"), m4_kernel, orlicz.power_phi(1), 1.0,
            [8, 16, 32, 64, 128])
        errs = report.modular_errors
        for a, b in zip(errs, errs[1:]):
            assert a >= 1.5 * b
        assert all(v for v in report.valid)

    def test_step_modular_converges_sup_plateaus(self, fejer_kernel):
        report = analysis.run_convergence(
            signals.catalog("step"), fejer_kernel, orlicz.power_phi(2), 1.0,
            [8, 16, 32, 64, 128, 256])
        assert report.modular_errors[-1] < 1e-2
        assert all(a >= b for a, b in zip(report.modular_errors,
                                          report.modular_errors[1:]))
        # the sup error sits at the jump height: reconstruction of a
        # discontinuous signal converges in modular, not uniformly
        assert min(report.sup_errors) > 0.5

    def test_report_invariants(self, fejer_kernel):
        # trend check on a continuous signal: sup error at the largest scale
        # does not exceed the smallest-scale one
        report = analysis.run_convergence(
            signals.catalog("abs-sine"), fejer_kernel, orlicz.power_phi(2),
            1.0, [8, 16, 32, 64])
        assert report.scales == sorted(report.scales)
        assert all(e >= 0.0 for e in report.sup_errors)
        assert all(e >= 0.0 for e in report.modular_errors)
        assert report.sup_errors[-1] <= report.sup_errors[0]

    def test_power_luxemburg_is_modular_root(self, fejer_kernel):
        # doubling-condition families make norm and modular convergence
        # interchangeable; for u^2 the norm is literally the square root
        report = analysis.run_convergence(
            signals.catalog("step"), fejer_kernel, orlicz.power_phi(2), 1.0,
            [16, 32, 64])
        for mod, lux in zip(report.modular_errors, report.luxemburg_errors):
            assert lux == pytest.approx(math.sqrt(mod), rel=1e-6)

    def test_deterministic_reports(self, fejer_kernel):
        runs = [analysis.run_convergence(
            signals.catalog("step"), fejer_kernel, orlicz.power_phi(2), 1.0,
            [8, 16, 32]) for _ in range(2)]
        assert dataclasses.asdict(runs[0]) == dataclasses.asdict(runs[1])

    def test_threaded_matches_serial(self, fejer_kernel):
        serial = analysis.run_convergence(
            signals.catalog("step"), fejer_kernel, orlicz.power_phi(2), 1.0,
            [8, 16, 32], threads=1)
        threaded = analysis.run_convergence(
            signals.catalog("step"), fejer_kernel, orlicz.power_phi(2), 1.0,
            [8, 16, 32], threads=4)
        assert dataclasses.asdict(serial) == dataclasses.asdict(threaded)

    def test_real_line_square_pulse(self, fejer_kernel):
        report = analysis.run_convergence(
            signals.catalog("square-pulse"), fejer_kernel,
            orlicz.power_phi(1), 1.0, [8, 16, 32, 64])
        assert all(a > b for a, b in zip(report.modular_errors,
                                         report.modular_errors[1:]))


class TestModularInequality:
    def test_equal_signals_zero_both_sides(self, fejer_kernel):
        ramp = signals.catalog("ramp")
        check = analysis.check_modular_inequality(
            ramp, ramp, fejer_kernel, orlicz.power_phi(2), 1.0, 32, UNIT)
        assert check.passed and check.lhs == 0.0 and check.rhs == 0.0

    def test_ramp_vs_constant(self, fejer_kernel):
        check = analysis.check_modular_inequality(
            signals.catalog("ramp"), signals.catalog("constant:0.5"),
            fejer_kernel, orlicz.power_phi(2), 1.0, 32, UNIT)
        assert check.passed and check.slack > 0.0

    def test_small_random_campaign(self):
        result = analysis.campaign_modular_inequality(24, seed=7)
        assert result.failures == 0

    def test_vacuous_when_rhs_infinite(self, m4_kernel):
        # huge scaling drives the exponential modular past the overflow
        # guard: the check passses vacuously and says so
        f = signals.catalog("step")
        g = signals.catalog("constant:1")
        check = analysis.check_modular_inequality(
            f, g, m4_kernel, orlicz.exponential_phi(2), 50.0, 16, UNIT)
        assert check.passed and math.isinf(check.rhs)
        assert "vacuous" in check.context

    def test_inequality_check_invariant(self):
        check = analysis.InequalityCheck.from_sides(1.0, 0.5, 1e-8, "demo")
        assert not check.passed and check.slack == -0.5
        check2 = analysis.InequalityCheck.from_sides(0.5, 0.5, 1e-8, "demo")
        assert check2.passed


class TestLpLipschitz:
    def test_equal_signals(self, fejer_kernel):
        saw = signals.catalog("sawtooth")
        check = analysis.check_lp_lipschitz(saw, saw, fejer_kernel, 2.0, 16,
                                            UNIT)
        assert check.passed and check.lhs == 0.0

    def test_step_vs_ramp_with_signed_kernel(self, vp_kernel):
        check = analysis.check_lp_lipschitz(
            signals.catalog("step"), signals.catalog("ramp"), vp_kernel, 2.0,
            16, UNIT)
        assert check.passed

    def test_p1_constant_specialization(self, fejer_kernel):
        # at p = 1 the general constant collapses to 2 l1 / a_chi
        m0 = kernels.moment(fejer_kernel, 0.0, 1e-8)
        l1 = kernels.ensure_l1(fejer_kernel)
        a = kernels.lower_bound_constant(fejer_kernel, "interval")
        general = 2.0 * (m0 ** 0.0 * l1) ** 1.0 / a
        assert general == pytest.approx(2.0 * l1 / a, rel=1e-15)

    def test_small_campaign(self):
        result = analysis.campaign_lp_lipschitz(12, seed=11)
        assert result.failures == 0


class TestJackson:
    def test_constant_zero_both_sides(self, fejer_kernel):
        check = analysis.check_jackson(signals.catalog("constant:2"),
                                       fejer_kernel, 32)
        assert check.passed and check.lhs == 0.0 and check.rhs == 0.0

    @pytest.mark.parametrize("n", [16, 32, 64])
    def test_abs_sine_with_fejer(self, fejer_kernel, n):
        check = analysis.check_jackson(signals.catalog("abs-sine"),
                                       fejer_kernel, n)
        assert check.passed

    def test_hat_with_vallee_poussin(self, vp_kernel):
        check = analysis.check_jackson(signals.catalog("hat"), vp_kernel, 64)
        assert check.passed

    def test_divergent_first_moment_rejected(self):
        # decay order 1/2 < 1: the order-1 lattice terms grow like sqrt(u)
        from maxprod.errors import TruncationError
        slow = kernels.Kernel("slow",
                              lambda x: 1.0 / (1.0 + np.sqrt(np.abs(x))),
                              decay_order=0.5, decay_coeff=1.0, sup_norm=1.0)
        with pytest.raises(TruncationError):
            analysis.check_jackson(signals.catalog("abs-sine"), slow, 16)


class TestComparison:
    def test_constant_both_columns_zero(self, m4_kernel):
        # compact kernel + inset grid: the spline lattice sums to one, so
        # both operators reproduce the constant exactly
        sig = signals.catalog("constant:1")
        table = analysis.compare_linear_vs_maxprod(sig, m4_kernel, [8, 16])
        np.testing.assert_allclose(table.maxprod_sup_errors, 0.0, atol=1e-12)
        np.testing.assert_allclose(table.linear_sup_errors, 0.0, atol=1e-12)

    def test_hat_table_shape_and_trend(self, fejer_kernel):
        scales = [8, 16, 32, 64, 128, 256]
        table = analysis.compare_linear_vs_maxprod(
            signals.catalog("hat"), fejer_kernel, scales)
        assert len(table.maxprod_sup_errors) == len(scales)
        assert len(table.linear_sup_errors) == len(scales)
        assert all(a > b for a, b in zip(table.maxprod_sup_errors,
                                         table.maxprod_sup_errors[1:]))
        assert all(a > b for a, b in zip(table.linear_sup_errors,
                                         table.linear_sup_errors[1:]))
        assert table.maxprod_rate is not None
        assert table.linear_rate is not None


class TestFindModularLambda:
    def test_constant_returns_largest(self, fejer_kernel):
        lam = analysis.find_modular_lambda(
            signals.catalog("constant:1"), fejer_kernel, orlicz.power_phi(2),
            [8, 16, 32])
        assert lam == 4.0

    def test_step_power_two_top_of_grid(self, fejer_kernel):
        # doubling-condition family: the whole grid works once the
        # threshold matches the scale range
        lam = analysis.find_modular_lambda(
            signals.catalog("step"), fejer_kernel, orlicz.power_phi(2),
            [16, 32, 64, 128, 256], lambda_grid=(1.0, 0.5, 0.25),
            threshold=1e-2)
        assert lam == 1.0

    def test_scaled_step_exponential_needs_smaller_lambda(self, fejer_kernel):
        tall = signals.PiecewisePoly((0.0, 0.5, 1.0),
                                     [(0.0,), (5.0,)]).to_signal(name="tall")
        lam = analysis.find_modular_lambda(
            tall, fejer_kernel, orlicz.exponential_phi(2),
            [16, 32, 64, 128, 256], threshold=1e-2)
        assert lam is not None and lam < 4.0

    def test_exhausted_grid_returns_none(self, fejer_kernel):
        lam = analysis.find_modular_lambda(
            signals.catalog("step"), fejer_kernel, orlicz.power_phi(1),
            [8, 16], lambda_grid=(4.0,), threshold=1e-9)
        assert lam is None


class TestRateFitting:
    def test_fit_recovers_slope(self):
        scales = [8, 16, 32, 64]
        errors = [1.0 / n for n in scales]
        assert analysis.fit_rate(scales, errors) == pytest.approx(-1.0,
                                                                  abs=1e-12)

    def test_zeros_excluded(self):
        assert analysis.fit_rate([8, 16, 32], [0.0, 0.0, 0.0]) is None
        assert analysis.fit_rate([8, 16], [1e-16, 1e-3]) is None
