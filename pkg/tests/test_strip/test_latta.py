# tests/test_strip/test_latta.py
"""
Test the t- and θ-systems and the reconstruction of g_c, g_s from η
"""
import numpy as np
import pytest

class TestCurvature:
    """Test the compatibility of the two linear systems"""

    @pytest.mark.parametrize("nu", [-0.25, 0.1, 0.4])
    def test_fixed_point(self, nu):
        """Test zero curvature at η ≡ 1, ρ ≡ 0"""
        from painleve_strip.latta import curvature

        for t in (-0.5, 0.0, 0.7):
            assert np.linalg.norm(curvature(nu, 1.3, t, 1.0, 0.0, 0.0), "fro") <= 1e-12

    @pytest.mark.parametrize("theta", [0.5, 1.0, 2.0])
    def test_along_curve(self, eta_curve, theta):
        """Test zero curvature along the Painlevé curve"""
        from painleve_strip.latta import zero_curvature_residual

        for t in (-0.5, 0.0, 0.5):
            assert zero_curvature_residual(0.25, theta, t, eta_curve) <= 1e-7

    def test_lax_pair(self, eta_curve):
        """Test LaxPair against the module functions"""
        from painleve_strip.latta import LaxPair, matrix_n, zero_curvature_residual

        pair = LaxPair.from_curve(0.25, 1.0, eta_curve)
        assert np.trace(pair.M(0.5)) == pytest.approx(0.5 * 1.5 / 0.75, rel=1e-12)
        assert np.allclose(pair.N(0.3), matrix_n(1.0, 0.3, pair.rho))
        residual = float(np.linalg.norm(pair.curvature(0.5), "fro"))
        assert residual == pytest.approx(zero_curvature_residual(0.25, 1.0, 0.5, eta_curve), abs=1e-14)

    def test_off_curve(self):
        """Test that arbitrary data does not satisfy the compatibility condition"""
        from painleve_strip.latta import curvature

        assert np.linalg.norm(curvature(0.25, 1.0, 0.3, 0.5, 0.9, 0.2), "fro") > 1e-3

    def test_poles(self):
        """Test PoleError at t = ±1 and η = 0, DomainError for θ ≤ 0"""
        from painleve_strip.latta import matrix_m, matrix_n
        from painleve_strip.exceptions import DomainError, PoleError

        with pytest.raises(PoleError):
            matrix_m(0.25, 1.0, 1.0, 0.5, 0.1)
        with pytest.raises(PoleError):
            matrix_m(0.25, 1.0, 0.2, 0.0, 0.1)
        with pytest.raises(DomainError):
            matrix_n(0.0, 0.2, 0.1)

class TestReconstruction:
    """Test g_c, g_s rebuilt from (η, ρ)"""

    def test_operator_normalization(self, eta_curve, nystrom_pair):
        """Test the reconstruction against the Nyström solutions"""
        from painleve_strip.latta import reconstruct_solutions

        gc_ref, gs_ref = nystrom_pair
        gc, gs = reconstruct_solutions(0.25, 1.0, eta_curve, n_quad=len(gc_ref.nodes), normalization="operator")
        scale = np.max(np.abs(gc_ref.smooth_values))
        assert np.max(np.abs(gc.smooth_values - gc_ref.smooth_values)) <= 1e-5 * scale
        assert np.max(np.abs(gs.smooth_values - gs_ref.smooth_values)) <= 1e-5 * scale

    def test_normalizations_agree(self, eta_curve):
        """Test the G(1) identity scale against the operator scale"""
        from painleve_strip.latta import reconstruct_solutions

        by_identity, _ = reconstruct_solutions(0.25, 1.0, eta_curve, normalization="identity")
        by_operator, _ = reconstruct_solutions(0.25, 1.0, eta_curve, normalization="operator")
        assert np.allclose(by_identity.smooth_values, by_operator.smooth_values,
                           rtol=1e-4, atol=1e-4 * np.max(np.abs(by_operator.smooth_values)))

    @pytest.mark.parametrize("side", [1.0, -1.0])
    def test_edge_brackets_vanish(self, eta_curve, nystrom_pair, side):
        """Test h_c − (t/η)h_s = 0 and h_s − tη h_c = 0 at t = ±1"""
        from painleve_strip.latta import reconstruct_solutions

        eta = eta_curve.state_at(1.0)[0]
        rebuilt = reconstruct_solutions(0.25, 1.0, eta_curve, n_quad=64, normalization="operator")
        for gc, gs in (nystrom_pair, rebuilt):
            hc, hs = gc.smooth(side), gs.smooth(side)
            scale = abs(gc.smooth(1.0))
            assert abs(hc - side * hs / eta) <= 1e-5 * scale
            assert abs(hs - side * eta * hc) <= 1e-5 * scale

    def test_unknown_normalization(self, eta_curve):
        """Test an unknown normalization name"""
        from painleve_strip.latta import reconstruct_solutions

        with pytest.raises(ValueError):
            reconstruct_solutions(0.25, 1.0, eta_curve, normalization="unit")

class TestThetaDerivatives:
    """Test the θ-system at the edge and for G(1)"""

    def test_g1_log_derivative(self, eta_curve):
        """Test d/dθ ln G(1) = ν/θ + η + 1/η by central differences"""
        from painleve_strip.specfun import make_params
        from painleve_strip.solver import laplace_transforms, special_solutions
        from painleve_strip.latta import g1_log_derivative

        theta, delta = 1.0, 1e-3
        logs = []
        for th in (theta - delta, theta + delta):
            gc, gs = special_solutions(make_params(0.25, th))
            logs.append(np.log(laplace_transforms(gc, gs, 1.0, th).G1))
        fd = (logs[1] - logs[0]) / (2 * delta)
        eta = float(eta_curve.eta_at(theta))
        assert g1_log_derivative(0.25, theta, eta) == pytest.approx(fd, rel=1e-4)

    def test_kc_log_derivative(self, eta_curve):
        """Test d/dθ ln k_c = (½ + ρ)/θ + η by central differences"""
        from painleve_strip.specfun import make_params
        from painleve_strip.solver import edge_coefficients, special_solutions
        from painleve_strip.latta import kc_log_derivative

        theta, delta = 1.0, 1e-3
        logs = []
        for th in (theta - delta, theta + delta):
            logs.append(np.log(edge_coefficients(*special_solutions(make_params(0.25, th))).k_c))
        fd = (logs[1] - logs[0]) / (2 * delta)
        eta, _, rho = eta_curve.state_at(theta)
        assert kc_log_derivative(theta, eta, rho) == pytest.approx(fd, rel=1e-4)

    def test_theta_system_interior(self, eta_curve):
        """Test ∂_θ g = N g at interior nodes by central differences"""
        from painleve_strip.specfun import make_params
        from painleve_strip.solver import special_solutions
        from painleve_strip.latta import matrix_n

        theta, delta = 1.0, 1e-3
        lower, upper = (special_solutions(make_params(0.25, th), n_quad=64) for th in (theta - delta, theta + delta))
        centre = special_solutions(make_params(0.25, theta), n_quad=64)
        rho = eta_curve.state_at(theta)[2]
        nodes = centre[0].nodes
        h = np.vstack([centre[0].smooth_values, centre[1].smooth_values])
        fd = np.vstack([(upper[k].smooth_values - lower[k].smooth_values) / (2 * delta) for k in range(2)])
        scale = np.max(np.abs(h))
        for i in np.flatnonzero(np.abs(nodes) <= 0.9):
            expected = matrix_n(theta, nodes[i], rho) @ h[:, i]
            assert np.max(np.abs(fd[:, i] - expected)) <= 1e-5 * scale

    def test_g1_pole(self):
        """Test PoleError at η = 0"""
        from painleve_strip.latta import g1_log_derivative
        from painleve_strip.exceptions import PoleError

        with pytest.raises(PoleError):
            g1_log_derivative(0.25, 1.0, 0.0)

    def test_normalization_constant(self):
        """Test C(0) = 1/(2π²)"""
        from painleve_strip.latta import normalization_constant

        assert normalization_constant(0.0) == pytest.approx(1.0 / (2 * np.pi ** 2), rel=1e-14)
