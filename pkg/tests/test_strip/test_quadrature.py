# tests/test_strip/test_quadrature.py
"""
Test Gauss–Jacobi rules and the closed-form power-kernel spectrum
"""
import math

import numpy as np
import pytest
from scipy import special

class TestGaussJacobi:
    """Test the edge-weight quadrature rule"""

    @pytest.mark.parametrize("nu", [0.25, -0.25, 0.0, 0.45])
    def test_weight_sum(self, nu):
        """Test Σω = ∫(1−t²)^{−ν−½}dt = B(½, ½−ν)"""
        from painleve_strip.quadrature import gauss_jacobi

        rule = gauss_jacobi(nu, 32)
        a = nu + 0.5
        expected = math.sqrt(math.pi) * special.gamma(1 - a) / special.gamma(1.5 - a)
        assert rule.weights.sum() == pytest.approx(expected, rel=1e-12)

    def test_symmetric_nodes(self):
        """Test that nodes are mirrored and weights symmetric"""
        from painleve_strip.quadrature import gauss_jacobi

        rule = gauss_jacobi(0.1, 33)
        assert np.array_equal(rule.nodes, -rule.nodes[::-1])
        assert np.array_equal(rule.weights, rule.weights[::-1])
        assert rule.size == 33

    def test_rule_is_cached_and_read_only(self):
        """Test the rule cache and immutability"""
        from painleve_strip.quadrature import gauss_jacobi

        first = gauss_jacobi(0.25, 20)
        assert gauss_jacobi(0.25, 20) is first
        with pytest.raises(ValueError):
            first.nodes[0] = 0.0

    def test_too_few_nodes(self):
        """Test that a one-node rule is refused"""
        from painleve_strip.quadrature import gauss_jacobi
        from painleve_strip.exceptions import DomainError

        with pytest.raises(DomainError):
            gauss_jacobi(0.25, 1)

class TestOrthonormalBasis:
    """Test the orthonormal polynomial basis"""

    @pytest.mark.parametrize("nu", [0.25, -0.3, 0.0])
    def test_orthonormal(self, nu):
        """Test Σ ω p_j p_k = δ_jk"""
        from painleve_strip.quadrature import gauss_jacobi, orthonormal_basis

        rule = gauss_jacobi(nu, 24)
        basis = orthonormal_basis(nu, 12, rule.nodes)
        gram = (basis * rule.weights) @ basis.T
        assert np.allclose(gram, np.eye(12), atol=1e-11)

class TestPowerKernelSpectrum:
    """Test closed-form integrals of the singular kernel part"""

    @pytest.mark.parametrize("nu", [0.25, -0.25, 0.4])
    def test_lowest_eigenvalue(self, nu):
        """Test ∫|t|^{2ν}(1−t²)^{−ν−½}dt = π / cos πν"""
        from painleve_strip.quadrature import power_kernel_spectrum

        assert power_kernel_spectrum(nu, 4)[0] == pytest.approx(math.pi / math.cos(math.pi * nu), rel=1e-13)

    def test_first_eigenvalue(self):
        """Test ∫|x−t|^{2ν}(1−t²)^{−ν−½} t dt = −2νπ/cos(πν) · x"""
        from painleve_strip.quadrature import power_kernel_spectrum

        nu = 0.25
        assert power_kernel_spectrum(nu, 4)[1] == pytest.approx(-2 * nu * math.pi / math.cos(math.pi * nu), rel=1e-13)

    def test_logarithmic_spectrum(self):
        """Test the ln|w| spectrum at ν = 0"""
        from painleve_strip.quadrature import power_kernel_spectrum

        spectrum = power_kernel_spectrum(0.0, 4)
        assert spectrum[0] == pytest.approx(-math.pi * math.log(2.0))
        assert spectrum[3] == pytest.approx(-math.pi / 3.0)

    def test_spectrum_against_quadrature(self):
        """Test the k = 2 eigen-relation at an interior point by adaptive quadrature"""
        from scipy import integrate
        from painleve_strip.quadrature import power_kernel_spectrum
        from painleve_strip.specfun import gegenbauer

        nu, x = 0.25, 0.3
        mu = -nu
        a = nu + 0.5

        left, _ = integrate.quad(lambda t: (1 - t) ** (-a) * gegenbauer(2, mu, t), -1.0, x,
                                 weight="alg", wvar=(-a, 2 * nu), epsabs=1e-13)
        right, _ = integrate.quad(lambda t: (1 + t) ** (-a) * gegenbauer(2, mu, t), x, 1.0,
                                  weight="alg", wvar=(2 * nu, -a), epsabs=1e-13)
        expected = power_kernel_spectrum(nu, 3)[2] * gegenbauer(2, mu, x)
        assert left + right == pytest.approx(expected, rel=1e-9)

class TestExtrapolateEdge:
    """Test edge extrapolation"""

    def test_exact_for_polynomials(self):
        """Test that a cubic in (1−t) is extrapolated exactly"""
        from painleve_strip.quadrature import extrapolate_edge

        t = np.linspace(0.5, 0.99, 20)
        s = 1 - t
        values = 1.5 + 2 * s - 0.5 * s ** 3
        assert extrapolate_edge(t, values, side=1) == pytest.approx(1.5, abs=1e-10)
        assert extrapolate_edge(-t, values, side=-1) == pytest.approx(1.5, abs=1e-10)

    def test_too_few_points(self):
        """Test EdgeFitError when the stencil is smaller than the degree"""
        from painleve_strip.quadrature import extrapolate_edge
        from painleve_strip.exceptions import EdgeFitError

        with pytest.raises(EdgeFitError):
            extrapolate_edge([0.9, 0.95, 0.99], [1.0, 1.0, 1.0], degree=4)
