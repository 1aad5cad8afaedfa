import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxprod import orlicz, signals
from maxprod.errors import UnknownNameError
from maxprod.quadrature import adaptive

SHIPPED = [orlicz.power_phi(1), orlicz.power_phi(2), orlicz.zygmund_phi(1, 1),
           orlicz.zygmund_phi(2, 1.5), orlicz.exponential_phi(1),
           orlicz.exponential_phi(2)]


def phi_at(phi, u):
    return float(phi.evaluate(np.asarray(u, dtype=float)))


class TestPhiFamilies:
    def test_power_values_and_flags(self):
        p2 = orlicz.power_phi(2)
        assert phi_at(p2, 3.0) == 9.0
        assert phi_at(orlicz.power_phi(1), 0.0) == 0.0
        assert p2.delta2 and p2.convex
        with pytest.raises(ValueError):
            orlicz.power_phi(0.5)

    def test_zygmund_values_and_flags(self):
        z = orlicz.zygmund_phi(1, 1)
        assert phi_at(z, 0.0) == 0.0
        u = math.e ** 2 - math.e
        assert phi_at(z, u) == pytest.approx(2.0 * u, rel=1e-14)
        assert z.delta2 and z.convex
        with pytest.raises(ValueError):
            orlicz.zygmund_phi(0.9, 1.0)
        with pytest.raises(ValueError):
            orlicz.zygmund_phi(1.0, 0.0)

    def test_exponential_values_and_flags(self):
        e1 = orlicz.exponential_phi(1)
        assert phi_at(e1, math.log(2.0)) == pytest.approx(1.0, rel=1e-14)
        assert phi_at(orlicz.exponential_phi(2), 0.0) == 0.0
        assert not e1.delta2
        assert e1.convex
        assert not orlicz.exponential_phi(0.5).convex
        with pytest.raises(ValueError):
            orlicz.exponential_phi(0.0)

    def test_phi_by_name(self):
        assert orlicz.phi_by_name("power:2").name == "power:2"
        assert orlicz.phi_by_name("zygmund:1,1").delta2
        assert not orlicz.phi_by_name("exponential:0.5").delta2
        with pytest.raises(UnknownNameError):
            orlicz.phi_by_name("young:1")
        with pytest.raises(UnknownNameError):
            orlicz.phi_by_name("power:x")

    @given(st.floats(min_value=0.0, max_value=40.0),
           st.floats(min_value=0.0, max_value=40.0))
    @settings(max_examples=100, deadline=None, derandomize=True)
    def test_axiom_monotone(self, u, v):
        lo, hi = sorted((u, v))
        for phi in SHIPPED:
            assert phi_at(phi, lo) <= phi_at(phi, hi) + 1e-12

    @given(st.floats(min_value=0.0, max_value=20.0),
           st.floats(min_value=0.0, max_value=20.0),
           st.floats(min_value=0.0, max_value=1.0))
    @settings(max_examples=100, deadline=None, derandomize=True)
    def test_convexity_of_flagged_instances(self, u, v, t):
        for phi in SHIPPED:
            if not phi.convex:
                continue
            mix = phi_at(phi, t * u + (1.0 - t) * v)
            bound = t * phi_at(phi, u) + (1.0 - t) * phi_at(phi, v)
            assert mix <= bound + 1e-9 * (1.0 + abs(bound))

    def test_axioms_zero_positive_unbounded(self):
        for phi in SHIPPED:
            assert phi_at(phi, 0.0) == 0.0
            assert phi_at(phi, 1e-6) > 0.0
            assert phi_at(phi, 1e6) >= 1e6 or math.isinf(phi_at(phi, 1e6))


class TestModular:
    def test_ramp_square_integral(self):
        ramp = signals.catalog("ramp")
        value = orlicz.modular(orlicz.power_phi(2), ramp, (0.0, 1.0))
        assert value == pytest.approx(1.0 / 3.0, abs=1e-9)

    def test_zero_signal(self):
        zero = signals.catalog("constant:0")
        for phi in SHIPPED:
            assert orlicz.modular(phi, zero, (0.0, 1.0)) == 0.0

    def test_exponential_constant(self):
        one = signals.catalog("constant:1")
        value = orlicz.modular(orlicz.exponential_phi(1), one, (0.0, 2.0),
                               scale=1.0)
        assert value == pytest.approx(2.0 * (math.e - 1.0), rel=1e-10)

    def test_divergence_reported_as_inf(self):
        big = signals.catalog("constant:50")
        value = orlicz.modular(orlicz.exponential_phi(2), big, (0.0, 1.0))
        assert math.isinf(value)

    def test_monotone_under_pointwise_domination(self, rng):
        poly = signals.random_piecewise_poly(rng)
        f = poly.to_signal(name="f")
        g = poly.shifted(0.25).to_signal(name="g")  # g >= f pointwise
        for phi in SHIPPED[:4]:
            mf = orlicz.modular(phi, f, (0.0, 1.0))
            mg = orlicz.modular(phi, g, (0.0, 1.0))
            assert mf <= mg + 1e-12

    def test_breakpoint_split_matches_exact_integral(self, rng):
        poly = signals.random_piecewise_poly(rng)
        sig = poly.to_signal()
        value = orlicz.modular(orlicz.power_phi(1), sig, (0.0, 1.0))
        assert value == pytest.approx(poly.integral(0.0, 1.0), abs=1e-10)


class TestLuxemburg:
    def test_unit_constant(self):
        one = signals.catalog("constant:1")
        assert orlicz.luxemburg_norm(orlicz.power_phi(2), one,
                                     (0.0, 1.0)) == pytest.approx(1.0,
                                                                  abs=1e-9)

    def test_exponential_closed_form(self):
        two = signals.catalog("constant:2")
        value = orlicz.luxemburg_norm(orlicz.exponential_phi(1), two,
                                      (0.0, 1.0))
        assert value == pytest.approx(2.0 / math.log(2.0), rel=1e-8)

    def test_zero_signal_returns_zero(self):
        zero = signals.catalog("constant:0")
        assert orlicz.luxemburg_norm(orlicz.power_phi(2), zero,
                                     (0.0, 1.0)) == 0.0

    @pytest.mark.parametrize("p", [1.0, 2.0, 5.0])
    def test_matches_direct_lp_norm(self, p, rng):
        # identity: inf{lam : integral |f/lam|^p <= 1} is the p-norm
        phi = orlicz.power_phi(p)
        for _ in range(8):
            poly = signals.random_piecewise_poly(rng)
            sig = poly.to_signal()
            lux = orlicz.luxemburg_norm(phi, sig, (0.0, 1.0), tol=1e-10)
            edges = [0.0, *sig.split_points(), 1.0]
            direct = adaptive(lambda x: np.abs(sig.evaluate(x)) ** p, edges,
                              atol=1e-12) ** (1.0 / p)
            assert lux == pytest.approx(direct, abs=1e-6)

    def test_norm_le_one_implies_modular_le_one(self, rng):
        phi = orlicz.zygmund_phi(1, 1)
        for _ in range(5):
            poly = signals.random_piecewise_poly(rng)
            sig = poly.to_signal()
            norm = orlicz.luxemburg_norm(phi, sig, (0.0, 1.0))
            if norm <= 1e-12:
                continue
            scaled = poly.scaled(1.0 / norm).to_signal()
            assert orlicz.modular(phi, scaled, (0.0, 1.0)) <= 1.0 + 1e-7

    def test_modular_shrinks_when_downscaled(self, rng):
        poly = signals.random_piecewise_poly(rng)
        for phi in SHIPPED:
            base = orlicz.modular(phi, poly.to_signal(), (0.0, 1.0))
            shrunk = orlicz.modular(phi, poly.scaled(0.5).to_signal(),
                                    (0.0, 1.0))
            assert shrunk <= base + 1e-12


class TestMaxPhiInequality:
    def test_worked_example(self):
        le, eq = orlicz.maxphi_inequality_check(orlicz.power_phi(2),
                                                [1.0, 3.0, 2.0])
        assert le and eq

    def test_singleton_zero(self):
        assert orlicz.maxphi_inequality_check(orlicz.exponential_phi(1),
                                              [0.0]) == (True, True)

    def test_random_batch(self, rng):
        values = rng.uniform(0.0, 10.0, size=100)
        for phi in SHIPPED:
            if not phi.convex:
                continue
            le, eq = orlicz.maxphi_inequality_check(phi, values)
            assert le and eq

    @given(st.lists(st.floats(min_value=0.0, max_value=30.0), min_size=1,
                    max_size=40))
    @settings(max_examples=100, deadline=None, derandomize=True)
    def test_finite_case_equality_exact(self, values):
        for phi in (orlicz.power_phi(2), orlicz.zygmund_phi(1, 1)):
            le, eq = orlicz.maxphi_inequality_check(phi, values)
            assert le and eq

    def test_rejects_negative_values(self):
        with pytest.raises(ValueError):
            orlicz.maxphi_inequality_check(orlicz.power_phi(2), [-1.0])
