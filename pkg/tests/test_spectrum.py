import math

import numpy as np
import pytest

import oracles
from specgrowth.errors import (
    DomainError,
    ModelUnsuitableError,
    SingularityError,
)
from specgrowth.monotone import evaluate, log_uniform_grid
from specgrowth.spectrum import (
    FinitePoints,
    LatticeFamily,
    SampledCurve,
    ThetaParams,
    UnionModel,
    dist_to_imag,
    dist_to_point,
    envelope_witness,
    liminf_axis_growth,
    log_resolvent_criterion,
    resolvent_envelope,
    resolvent_norm_on_axis,
    semigroup_derivative_norm,
    semigroup_derivative_norm_details,
    sup_real,
    theta_region_check,
)

# full-integer brute-force scan of the power lattice at t = 1e-3,
# maximum attained at k = 3999999
LATTICE_NORM_T1E3 = 541341.2006140966


def random_left_half_points(rng, n):
    re = -rng.uniform(0.2, 50.0, n)
    im = rng.uniform(-200.0, 200.0, n)
    return tuple(complex(a, b) for a, b in zip(re, im))


class TestConstruction:
    def test_axis_window_violation_rejected(self):
        # a point on the axis at height beyond b is forbidden
        with pytest.raises(DomainError):
            FinitePoints((complex(0.0, 5.0),), imag_bound_b=1.0)

    def test_log_profile_needs_axis_window(self):
        # -log(1) = 0 puts z_1 on the axis, so b must exceed 1
        with pytest.raises(DomainError):
            LatticeFamily(("log", 1.0))
        LatticeFamily(("log", 1.0), imag_bound_b=2.0)

    def test_sup_real(self):
        assert sup_real(FinitePoints((-1 + 2j, -0.25 - 1j))) == -0.25
        assert sup_real(LatticeFamily(("power", 0.5, 1.0))) == -1.0


class TestDistances:
    def test_single_point(self):
        assert dist_to_imag(FinitePoints((-1 + 0j,)), 0.0) == pytest.approx(1.0)

    def test_three_four_five(self):
        assert dist_to_imag(FinitePoints((-3 + 4j,)), 0.0) == pytest.approx(5.0)

    def test_lattice_near_height(self):
        m = LatticeFamily(("power", 0.5, 1.0))
        d = dist_to_imag(m, 1e4)
        assert d == pytest.approx(100.0, rel=1e-2)

    def test_lattice_matches_window_scan(self):
        m = LatticeFamily(("power", 0.5, 1.0))
        for eta in (37.0, 513.0, 1e4):
            k = np.arange(1, 200_000, dtype=float)
            pts = -np.sqrt(k) + 1j * k
            want = float(np.min(np.abs(1j * eta - pts)))
            assert dist_to_imag(m, eta) == pytest.approx(want, rel=1e-9)

    def test_lipschitz_in_eta(self):
        m = LatticeFamily(("power", 0.5, 1.0))
        etas = np.geomspace(5.0, 1e5, 60)
        d = np.array([dist_to_imag(m, e) for e in etas])
        gaps = np.abs(np.diff(d))
        steps = np.diff(etas)
        assert np.all(gaps <= steps * (1 + 1e-9))

    def test_resolvent_norm_reciprocal(self):
        assert resolvent_norm_on_axis(FinitePoints((-1 + 0j,)), 0.0) == 1.0
        assert resolvent_norm_on_axis(FinitePoints((-3 + 4j,)), 0.0) == pytest.approx(0.2)
        m = LatticeFamily(("power", 0.5, 1.0))
        assert resolvent_norm_on_axis(m, 1e4) == pytest.approx(1e-2, rel=1e-2)

    def test_singularity(self):
        with pytest.raises(SingularityError):
            resolvent_norm_on_axis(SampledCurve((0 + 3j, -1 + 4j), imag_bound_b=5.0), 3.0)


class TestEnvelope:
    def test_single_point_closed_form(self):
        m = FinitePoints((-1 + 0j,))
        grid = np.unique(np.concatenate([[2.0], np.geomspace(0.5, 50.0, 40)]))
        env = resolvent_envelope(m, grid)
        assert evaluate(env, 2.0) == pytest.approx(math.sqrt(5.0), rel=1e-9)
        # exact at every knot; between knots only interpolation accuracy
        assert np.allclose(env.values, np.hypot(1.0, env.grid), rtol=1e-9)

    def test_power_lattice_scale(self, power_envelope):
        assert 99.0 <= evaluate(power_envelope, 1e4) <= 101.0

    def test_log_lattice_scale(self, log_envelope):
        assert 9.5 <= evaluate(log_envelope, math.exp(10.0)) <= 10.5

    def test_matches_brute_force_on_finite_models(self):
        rng = np.random.default_rng(42)
        for _ in range(5):
            pts = random_left_half_points(rng, 60)
            m = FinitePoints(pts)
            grid = np.geomspace(1.0, 2000.0, 80)
            env = resolvent_envelope(m, grid)
            want = [oracles.finite_envelope_exact(pts, s) for s in grid]
            # running minimum from the right mirrors the tail infimum
            want = np.minimum.accumulate(np.asarray(want)[::-1])[::-1]
            assert np.allclose(env.values, want, rtol=1e-6)

    def test_at_most_linear_growth(self, power_envelope):
        v, g = power_envelope.values, power_envelope.grid
        assert np.all(np.diff(v) <= np.diff(g) * (1 + 1e-9))

    def test_flat_envelope_rejected(self):
        # a tall vertical line keeps dist(i eta, spectrum) pinned at 1,
        # so the envelope never doubles across the window
        ys = np.geomspace(1.0, 1e5, 2000)
        heights = np.concatenate([-ys[::-1], ys])
        m = SampledCurve(tuple(complex(-1, y) for y in heights))
        with pytest.raises(ModelUnsuitableError):
            resolvent_envelope(m, np.geomspace(10.0, 1e4, 30))

    def test_witness_attains_the_infimum(self):
        rng = np.random.default_rng(3)
        pts = random_left_half_points(rng, 40)
        m = FinitePoints(pts)
        for s in (5.0, 55.0, 400.0):
            w = envelope_witness(m, s)
            assert abs(w.eta) >= s * (1 - 1e-12)
            assert abs(complex(0, w.eta) - w.point) == pytest.approx(w.dist, rel=1e-12)
            assert w.dist == pytest.approx(oracles.finite_envelope_exact(pts, s), rel=1e-9)

    def test_lower_bound_mechanism(self, power_envelope):
        # each witness point u+iv has |u| <= M(s) and reaches near s
        m = LatticeFamily(("power", 0.5, 1.0))
        for s in (100.0, 1e4, 1e6):
            w = envelope_witness(m, s)
            assert abs(w.point.real) <= evaluate(power_envelope, s) * (1 + 1e-6)
            assert abs(w.point) >= (1 - 0.05) * s


class TestDerivativeNorm:
    def test_single_point(self):
        assert semigroup_derivative_norm(FinitePoints((-1 + 0j,)), 1.0) == pytest.approx(
            math.exp(-1.0)
        )

    def test_symmetric_pair(self):
        m = FinitePoints((-1 + 2j, -1 - 2j))
        for t in (0.1, 1.0, 3.0):
            want = math.sqrt(5.0) * math.exp(-t)
            assert semigroup_derivative_norm(m, t) == pytest.approx(want, rel=1e-12)

    def test_lattice_frozen_value(self):
        m = LatticeFamily(("power", 0.5, 1.0))
        got = semigroup_derivative_norm(m, 1e-3)
        assert got == pytest.approx(LATTICE_NORM_T1E3, rel=1e-9)
        # continuum prediction (4/t^2) e^{-2} is within 2 percent
        assert got == pytest.approx(4e6 * math.exp(-2.0), rel=0.02)

    def test_details_fields(self):
        m = LatticeFamily(("power", 0.5, 1.0))
        det = semigroup_derivative_norm_details(m, 1e-3)
        assert det.upper_bound >= det.value
        assert det.arg_abs_imag == pytest.approx(4e6, rel=0.01)
        assert not det.saturated

    def test_saturation_flagged_at_truncation(self):
        # log profile grows so slowly the maximizer pins at k_max
        m = LatticeFamily(("log", 1.0), k_max=1e6, imag_bound_b=2.0)
        det = semigroup_derivative_norm_details(m, 1e-3)
        assert det.saturated
        assert det.arg_abs_imag == pytest.approx(1e6)

    def test_nonpositive_t_rejected(self):
        with pytest.raises(DomainError):
            semigroup_derivative_norm(FinitePoints((-1 + 0j,)), 0.0)

    def test_non_increasing_in_t(self):
        m = LatticeFamily(("power", 0.5, 1.0))
        ts = np.geomspace(1e-3, 1.0, 12)
        vals = [semigroup_derivative_norm(m, t) for t in ts]
        assert np.all(np.diff(vals) <= 1e-9)

    def test_dominates_every_point(self):
        rng = np.random.default_rng(7)
        pts = random_left_half_points(rng, 30)
        m = FinitePoints(pts)
        for t in (0.05, 0.7):
            norm = semigroup_derivative_norm(m, t)
            for z in pts:
                assert abs(z) * math.exp(t * z.real) <= norm * (1 + 1e-12)

    def test_union_takes_the_max(self):
        a = FinitePoints((-1 + 0j,))
        b = FinitePoints((-0.5 + 1j,))
        u = UnionModel((a, b))
        t = 0.3
        want = max(
            oracles.finite_derivative_norm(a.points, t),
            oracles.finite_derivative_norm(b.points, t),
        )
        assert semigroup_derivative_norm(u, t) == pytest.approx(want, rel=1e-12)


class TestThetaRegion:
    def test_isolated_real_point_passes(self):
        rep = theta_region_check(
            FinitePoints((-1 + 0j,)),
            ThetaParams(p=1.0, q=1.0, omega=1.0, resolvent_slope_C=10.0),
        )
        assert rep.passed and rep.point_avoidance

    def test_log_lattice_q_half_fails(self):
        m = LatticeFamily(("log", 1.0), imag_bound_b=2.0)
        rep = theta_region_check(
            m, ThetaParams(p=1.5, q=0.5, omega=0.0, resolvent_slope_C=10.0)
        )
        assert not rep.passed
        assert not rep.point_avoidance
        assert rep.point_witness is not None
        # the reported point really is in the region
        z = rep.point_witness
        assert 1.5 * math.exp(-0.5 * z.real) <= abs(z.imag) * (1 + 1e-12)

    def test_log_lattice_q_two_avoids(self):
        m = LatticeFamily(("log", 1.0), imag_bound_b=2.0)
        rep = theta_region_check(
            m, ThetaParams(p=1.5, q=2.0, omega=0.0, resolvent_slope_C=10.0)
        )
        assert rep.point_avoidance

    def test_boundary_membership_is_inclusive(self):
        # z_1 = i sits exactly on the region boundary at p=1 (equality
        # in p e^{-q Re} <= |Im|), and the region is defined with <=
        m = LatticeFamily(("log", 1.0), imag_bound_b=2.0)
        rep = theta_region_check(
            m, ThetaParams(p=1.0, q=2.0, omega=0.0, resolvent_slope_C=10.0)
        )
        assert not rep.point_avoidance
        assert rep.point_witness == pytest.approx(complex(0.0, 1.0))

    def test_power_lattice_passes(self):
        m = LatticeFamily(("power", 0.5, 1.0))
        rep = theta_region_check(
            m, ThetaParams(p=1.0, q=1.0, omega=0.0, resolvent_slope_C=10.0)
        )
        assert rep.passed

    def test_invalid_params_rejected(self):
        with pytest.raises(DomainError):
            ThetaParams(p=0.0, q=1.0, omega=0.0, resolvent_slope_C=1.0)


class TestLogResolventCriterion:
    def test_single_point_vanishes(self):
        rep = log_resolvent_criterion(
            FinitePoints((-1 + 0j,)), 0.0, np.geomspace(10.0, 1e8, 129)
        )
        assert rep.relation == "little-o"

    def test_power_lattice_vanishes(self):
        m = LatticeFamily(("power", 0.5, 1.0))
        rep = log_resolvent_criterion(m, 0.0, np.geomspace(10.0, 1e8, 129))
        assert rep.relation == "little-o"

    def test_log_lattice_levels_off(self):
        m = LatticeFamily(("log", 1.0), imag_bound_b=2.0)
        rep = log_resolvent_criterion(m, 0.0, np.geomspace(10.0, 1e8, 129))
        assert rep.relation == "none"
        assert rep.decade_sups[-1] == pytest.approx(1.0, rel=0.1)

    def test_omega_inside_spectrum_rejected(self):
        m = LatticeFamily(("power", 0.5, 1.0))
        with pytest.raises(DomainError):
            log_resolvent_criterion(m, -2.0, np.geomspace(10.0, 1e6, 65))

    def test_grid_must_clear_axis_window(self):
        m = FinitePoints((-1 + 0j,), imag_bound_b=20.0)
        with pytest.raises(DomainError):
            log_resolvent_criterion(m, 0.0, np.geomspace(5.0, 1e6, 65))


class TestLiminfAxisGrowth:
    def test_single_point_tends_to_one(self):
        m = FinitePoints((-1 + 0j,))
        est = liminf_axis_growth(m, np.geomspace(10.0, 1e6, 65))
        assert est == pytest.approx(1.0, rel=1e-2)

    def test_power_lattice_diverges(self):
        m = LatticeFamily(("power", 0.5, 1.0))
        est = liminf_axis_growth(m, np.geomspace(10.0, 1e8, 129))
        assert est > 1e3

    def test_vertical_line_diverges(self):
        # dist stays pinned near 1, so the estimate tracks the window's
        # upper-decade start and keeps growing with the window
        pts = tuple(complex(-1.0, y) for y in np.linspace(-500, 500, 1001))
        m = SampledCurve(pts)
        est_small = liminf_axis_growth(m, np.geomspace(10.0, 100.0, 17))
        est_big = liminf_axis_growth(m, np.geomspace(10.0, 400.0, 33))
        assert est_small > 9.0
        assert est_big > 35.0
        assert est_big > est_small
