# tests/test_strip/test_painleve.py
"""
Test the Painlevé III equation, its small-θ data and the connection problem
"""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

nonzero_nu = st.one_of(st.floats(-0.45, -0.01), st.floats(0.01, 0.45))

class TestEquation:
    """Test the right-hand side and its symmetries"""

    def test_fixed_point(self):
        """Test that η ≡ 1 solves the equation for every ν"""
        from painleve_strip.painleve import painleve_rhs, rho_from_eta, rho_prime

        for nu in (-0.3, 0.0, 0.25):
            assert painleve_rhs(nu, 2.0, 1.0, 0.0) == pytest.approx(0.0, abs=1e-15)
            assert rho_from_eta(nu, 2.0, 1.0, 0.0) == 0.0
            assert rho_prime(nu, 2.0, 1.0, 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_pole(self):
        """Test PoleError at η = 0"""
        from painleve_strip.painleve import painleve_rhs
        from painleve_strip.exceptions import PoleError

        with pytest.raises(PoleError):
            painleve_rhs(0.25, 1.0, 0.0, 1.0)

    def test_rho_round_trip(self):
        """Test η' → ρ → η'"""
        from painleve_strip.painleve import eta_prime_from_rho, rho_from_eta

        rho = rho_from_eta(0.1, 1.5, 0.6, 0.3)
        assert eta_prime_from_rho(1.5, 0.6, rho) == pytest.approx(0.3, rel=1e-14)

    @settings(max_examples=50, deadline=None)
    @given(nu=st.floats(-0.45, 0.45), theta=st.floats(0.1, 5.0), eta=st.floats(0.1, 3.0),
           eta_p=st.floats(-2.0, 2.0))
    def test_inverse_symmetry(self, nu, theta, eta, eta_p):
        """Test that η → 1/η maps solutions to solutions"""
        from painleve_strip.painleve import apply_symmetry, painleve_rhs

        second = painleve_rhs(nu, theta, eta, eta_p)
        new_nu, new_eta, new_eta_p = apply_symmetry(nu, eta, eta_p, kind="inverse")
        chained = -second / eta ** 2 + 2.0 * eta_p ** 2 / eta ** 3
        assert painleve_rhs(new_nu, theta, new_eta, new_eta_p) == pytest.approx(chained, rel=1e-9, abs=1e-8)

    @settings(max_examples=50, deadline=None)
    @given(nu=st.floats(-0.45, 0.45), theta=st.floats(0.1, 5.0), eta=st.floats(0.1, 3.0),
           eta_p=st.floats(-2.0, 2.0))
    def test_reflect_symmetry(self, nu, theta, eta, eta_p):
        """Test that (η, ν) → (−η, −ν) maps solutions to solutions"""
        from painleve_strip.painleve import apply_symmetry, painleve_rhs

        second = painleve_rhs(nu, theta, eta, eta_p)
        new_nu, new_eta, new_eta_p = apply_symmetry(nu, eta, eta_p, kind="reflect")
        assert painleve_rhs(new_nu, theta, new_eta, new_eta_p) == pytest.approx(-second, rel=1e-9, abs=1e-8)

    def test_unknown_symmetry(self):
        """Test an unknown symmetry name"""
        from painleve_strip.painleve import apply_symmetry

        with pytest.raises(ValueError):
            apply_symmetry(0.1, 0.5, 0.1, kind="rotate")

class TestSmallThetaData:
    """Test the one-parameter family and the integral-equation member"""

    @settings(max_examples=40, deadline=None)
    @given(nu=nonzero_nu)
    def test_B_identity(self, nu):
        """Test that the family member σ = 1 − 2ν carries the integral-equation B"""
        from painleve_strip.painleve import mccoy_family, our_B

        family = mccoy_family(1 - 2 * nu, nu)
        assert family.B == pytest.approx(our_B(nu), rel=1e-12)
        assert abs(family.B3) <= 1e-10
        assert family.lam == pytest.approx(np.cos(np.pi * nu) / np.pi, abs=1e-12)

    def test_sigma_range(self):
        """Test that σ outside (−1, 2) is refused"""
        from painleve_strip.painleve import mccoy_family
        from painleve_strip.exceptions import DomainError

        with pytest.raises(DomainError):
            mccoy_family(2.5, 0.1)

    def test_anchor_errors(self):
        """Test anchors at ν = 0 and at too large θ₀"""
        from painleve_strip.painleve import our_B, small_theta_anchor
        from painleve_strip.exceptions import DomainError, UnsupportedAnchorError

        with pytest.raises(UnsupportedAnchorError):
            small_theta_anchor(0.0, 1e-3)
        with pytest.raises(UnsupportedAnchorError):
            our_B(0.0)
        with pytest.raises(DomainError):
            small_theta_anchor(0.25, 0.1)

class TestDecayingMode:
    """Test the decaying solution of the linearized equation"""

    def test_large_theta_form(self):
        """Test D(θ) ≈ θ^{−ν−½} e^{−2θ}(1 − (ν+½)²/(4θ))"""
        from painleve_strip.painleve import decaying_mode

        nu, theta = 0.25, 50.0
        a = nu + 0.5
        ratio = decaying_mode(nu, theta) / (theta ** (-a) * np.exp(-2 * theta))
        assert ratio == pytest.approx(1 - a * a / (4 * theta), abs=1e-4)

    def test_log_derivative(self):
        """Test the closed-form log-derivative against central differences"""
        from painleve_strip.painleve import decaying_mode, decaying_mode_log_derivative

        nu, theta, h = -0.25, 3.0, 1e-4
        fd = (np.log(decaying_mode(nu, theta + h)) - np.log(decaying_mode(nu, theta - h))) / (2 * h)
        assert decaying_mode_log_derivative(nu, theta) == pytest.approx(fd, rel=1e-6)

class TestConnectionProblem:
    """Test the bounded curve selected by the integral equation"""

    def test_curve_shape(self, eta_curve):
        """Test 0 < η < 1, monotone growth and approach to 1"""
        assert np.all((eta_curve.eta > 0) & (eta_curve.eta < 1))
        assert np.all(np.diff(eta_curve.eta) > 0)
        assert eta_curve.eta[-1] > 0.999
        assert eta_curve.thetas[-1] == pytest.approx(8.0)

    def test_rho_consistency(self, eta_curve):
        """Test that stored ρ matches θ(1 − η' − η²)/(2η)"""
        assert eta_curve.rho_consistency() <= 1e-10

    def test_small_theta_connection(self, eta_curve):
        """Test the curve at θ = 0.01 against the two-term small-θ formula"""
        from painleve_strip.asymptotics import small_theta_eta

        expected = small_theta_eta(0.25, 1e-2, branch="full")
        assert float(eta_curve.eta_at(1e-2)) == pytest.approx(expected, rel=0.03)

    @pytest.mark.parametrize("nu", [-0.25, 0.1, 0.25, 0.4])
    def test_large_theta_amplitude(self, nu):
        """Test λ̂ against cos πν / π"""
        from painleve_strip.painleve import fit_large_theta_amplitude, integrate_eta

        curve = integrate_eta(nu, theta1=8.0)
        assert fit_large_theta_amplitude(curve) == pytest.approx(np.cos(np.pi * nu) / np.pi, rel=1e-3)

    def test_negative_order(self):
        """Test the curve for ν < 0 starts near −θ/(2ν)"""
        from painleve_strip.painleve import integrate_eta

        curve = integrate_eta(-0.25, theta1=4.0)
        assert curve.thetas[0] == pytest.approx(1e-4)
        assert float(curve.eta_at(1e-3)) == pytest.approx(2e-3, rel=0.05)
        assert np.all((curve.eta > 0) & (curve.eta < 1))

    def test_ivp_matches_bvp(self, eta_curve):
        """Test forward integration from the anchor over a short range"""
        from painleve_strip.painleve import integrate_eta

        ivp = integrate_eta(0.25, theta1=0.1, method="ivp")
        assert ivp.method == "ivp"
        assert float(ivp.eta_at(0.1)) == pytest.approx(float(eta_curve.eta_at(0.1)), rel=1e-2)

    def test_state_at_matches_interpolant(self, eta_curve):
        """Test the local refinement against the Hermite interpolant"""
        theta = 0.5 * (eta_curve.thetas[40] + eta_curve.thetas[41])
        eta, eta_p, rho = eta_curve.state_at(theta)
        eta_i, eta_p_i, rho_i = eta_curve.interpolate(theta)
        assert eta == pytest.approx(float(eta_i), rel=1e-6)
        assert eta_p == pytest.approx(float(eta_p_i), rel=1e-4, abs=1e-8)
        assert rho == pytest.approx(float(rho_i), rel=1e-4, abs=1e-8)

    @pytest.mark.parametrize("theta1", [5.0, 7.0, 8.0])
    def test_curve_ends_exactly(self, theta1):
        """Test that both ends of the requested range can be evaluated"""
        from painleve_strip.painleve import integrate_eta

        curve = integrate_eta(0.25, theta1=theta1)
        assert curve.thetas[0] == 1e-3
        assert curve.thetas[-1] == theta1
        assert np.all(np.diff(curve.thetas) > 0)
        assert 0 < float(curve.eta_at(theta1)) < 1
        assert curve.state_at(theta1)[0] == pytest.approx(float(curve.eta_at(theta1)), rel=1e-12)

    @pytest.mark.parametrize("nu", [0.25, -0.25])
    def test_anchor_robustness(self, nu):
        """Test that halving θ₀ leaves η(1) unchanged"""
        from painleve_strip.config import get_config
        from painleve_strip.painleve import integrate_eta

        theta0 = get_config().painleve.anchor_for(nu)
        default = integrate_eta(nu, theta1=2.0)
        halved = integrate_eta(nu, theta0=theta0 / 2, theta1=2.0)
        assert float(halved.eta_at(1.0)) == pytest.approx(float(default.eta_at(1.0)), abs=1e-6)

    @pytest.mark.parametrize("nu", [0.25, -0.25])
    def test_ode_residual(self, nu):
        """Test the Painlevé equation along accepted curves with η'' by differentiation"""
        from painleve_strip.painleve import integrate_eta

        assert integrate_eta(nu, theta1=2.0).ode_residual() <= 1e-7

    def test_outside_range(self, eta_curve):
        """Test DomainError outside the sampled range"""
        from painleve_strip.exceptions import DomainError

        with pytest.raises(DomainError):
            eta_curve.eta_at(9.0)
        with pytest.raises(DomainError):
            eta_curve.state_at(1e-5)

    def test_bad_interval(self):
        """Test θ₀ ≥ θ₁ and unknown methods"""
        from painleve_strip.painleve import integrate_eta
        from painleve_strip.exceptions import DomainError

        with pytest.raises(DomainError):
            integrate_eta(0.25, theta0=1e-2, theta1=1e-3)
        with pytest.raises(ValueError):
            integrate_eta(0.25, method="shooting")

class TestIntegrateFromData:
    """Test forward integration from arbitrary data"""

    def test_fixed_point_stays(self):
        """Test that η ≡ 1 is preserved, including at ν = 0"""
        from painleve_strip.painleve import integrate_from_data

        curve = integrate_from_data(0.0, 1.0, 1.0, 0.0, 3.0)
        assert np.allclose(curve.eta, 1.0, atol=1e-12)

    def test_singularity(self):
        """Test SingularityError when the solution runs into a pole"""
        from painleve_strip.painleve import integrate_from_data
        from painleve_strip.exceptions import SingularityError

        with pytest.raises(SingularityError):
            integrate_from_data(0.0, 1.0, 1.0, 5.0, 10.0)

    def test_zero_data(self):
        """Test PoleError for η₀ = 0"""
        from painleve_strip.painleve import integrate_from_data
        from painleve_strip.exceptions import PoleError

        with pytest.raises(PoleError):
            integrate_from_data(0.1, 1.0, 0.0, 1.0, 2.0)
