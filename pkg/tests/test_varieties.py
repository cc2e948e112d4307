"""Level-set sampling on charts and hypersurfaces."""

import numpy as np
import pytest

from milnorbook import (
    Hypersurface,
    SamplerConfig,
    SmoothChart,
    parse_polynomial,
    sample_points,
)
from milnorbook.errors import InputError, SamplingFailed

BRIESKORN = Hypersurface(parse_polynomial("z0^2 + z1^3 + z2^5", 3))


class TestModels:
    def test_identity_chart(self):
        chart = SmoothChart.identity(2)
        assert chart.ambient_dim == 2 and chart.target_dim == 2
        point = np.array([1 + 1j, 2.0])
        assert np.allclose(chart.phi_values(point), point)
        assert np.allclose(chart.phi_jacobian(point), np.eye(2))
        assert chart.rho(point) == pytest.approx(6.0)

    def test_chart_dimension_checks(self):
        with pytest.raises(InputError):
            SmoothChart(0, ())
        with pytest.raises(InputError):
            SmoothChart(1, ())
        with pytest.raises(InputError, match="variables"):
            SmoothChart(1, (parse_polynomial("z0 + z1", 2),))

    def test_chart_must_send_origin_to_origin(self):
        with pytest.raises(InputError, match="origin"):
            SmoothChart(1, (parse_polynomial("z0 + 1", 1),))

    def test_hypersurface_validation(self):
        with pytest.raises(InputError, match="two variables"):
            Hypersurface(parse_polynomial("z0^2", 1))
        with pytest.raises(InputError, match="nonconstant"):
            Hypersurface(parse_polynomial("0", 2))
        with pytest.raises(InputError, match="origin"):
            Hypersurface(parse_polynomial("z0 z1 + 1", 2))

    def test_hypersurface_geometry(self):
        point = np.array([1.0, 2.0, 0.5 + 0j])
        assert BRIESKORN.defining_value(point) == pytest.approx(
            1 + 8 + 0.5**5
        )
        assert np.allclose(
            BRIESKORN.defining_gradient(point),
            [2.0, 12.0, 5 * 0.5**4],
        )
        assert BRIESKORN.defining_scale(0.01) > 0

    def test_hypersurface_tangent_basis_spans_kernel(self):
        point = np.array([0.3 + 0.1j, -0.2, 0.5j])
        basis = BRIESKORN.tangent_basis(point)
        assert basis.shape == (3, 2)
        gradient = BRIESKORN.defining_gradient(point)
        assert np.max(np.abs(gradient @ basis)) < 1e-14
        assert np.allclose(basis.conj().T @ basis, np.eye(2))

    def test_reprs_are_readable(self):
        assert "z0^2" in repr(BRIESKORN)
        assert "SmoothChart" in repr(SmoothChart.identity(1))


class TestChartSampling:
    def test_points_land_on_the_level(self):
        chart = SmoothChart.identity(2)
        epsilon = 0.01
        samples = sample_points(chart, epsilon, 200, seed=0)
        assert len(samples) == 200
        for p in samples:
            assert abs(chart.rho(p.point) - epsilon) <= 1e-10 * epsilon
            assert p.rho_value == pytest.approx(epsilon, rel=1e-9)
            assert p.tangent_basis.shape == (2, 2)

    def test_nonlinear_chart_levels(self):
        chart = SmoothChart(1, (parse_polynomial("z0^2 + z0", 1),))
        epsilon = 0.25
        for p in sample_points(chart, epsilon, 50, seed=1):
            assert abs(chart.rho(p.point) - epsilon) <= 1e-10 * epsilon

    def test_deterministic_for_fixed_seed(self):
        chart = SmoothChart.identity(3)
        a = sample_points(chart, 0.01, 25, seed=7)
        b = sample_points(chart, 0.01, 25, seed=7)
        for p, q in zip(a, b):
            assert np.array_equal(p.point, q.point)
        c = sample_points(chart, 0.01, 25, seed=8)
        assert not np.array_equal(a[0].point, c[0].point)


class TestHypersurfaceSampling:
    def test_points_satisfy_both_equations(self):
        epsilon = 0.01
        scale = BRIESKORN.defining_scale(epsilon)
        samples = sample_points(BRIESKORN, epsilon, 200, seed=0)
        assert len(samples) == 200
        for p in samples:
            assert abs(BRIESKORN.defining_value(p.point)) <= 1e-10 * scale
            assert abs(BRIESKORN.rho(p.point) - epsilon) <= 1e-10 * epsilon

    def test_tangent_basis_annihilated_by_differential(self):
        samples = sample_points(BRIESKORN, 0.01, 50, seed=3)
        for p in samples:
            gradient = BRIESKORN.defining_gradient(p.point)
            assert np.max(np.abs(gradient @ p.tangent_basis)) < 1e-12

    def test_deterministic_for_fixed_seed(self):
        a = sample_points(BRIESKORN, 0.01, 25, seed=11)
        b = sample_points(BRIESKORN, 0.01, 25, seed=11)
        for p, q in zip(a, b):
            assert np.array_equal(p.point, q.point)

    def test_nodal_curve_samples(self):
        surface = Hypersurface(parse_polynomial("z0 z1", 2))
        for p in sample_points(surface, 0.04, 50, seed=5):
            assert abs(surface.defining_value(p.point)) <= 1e-10

    def test_unreachable_tolerance_fails_loudly(self):
        config = SamplerConfig(max_iterations=1, newton_tolerance=1e-30)
        with pytest.raises(SamplingFailed):
            sample_points(BRIESKORN, 0.01, 20, seed=0, config=config)


class TestInputValidation:
    @pytest.mark.parametrize("epsilon", [0.0, -1.0, float("nan"), float("inf")])
    def test_bad_level_value(self, epsilon):
        with pytest.raises(SamplingFailed):
            sample_points(SmoothChart.identity(1), epsilon, 5, seed=0)

    def test_bad_count(self):
        with pytest.raises(InputError):
            sample_points(SmoothChart.identity(1), 0.01, 0, seed=0)

    def test_unknown_model(self):
        with pytest.raises(InputError):
            sample_points(object(), 0.01, 5, seed=0)
