"""
Painlevé III function η(θ) attached to the strip integral equation

    η'' = η'²/η − η'/θ − 2ν(1 − η²)/θ + η³ − 1/η
    ρ   = θ(1 − η' − η²)/(2η),   ρ' = (ν+½+ρ)/η − (ν+½−ρ)η

The bounded solution is fixed by its small-θ expansion and its decay to 1
at large θ; it is computed as a two-point boundary value problem in
s = ln θ for (ln η, ρ).
"""

import logging
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import special
from scipy.integrate import solve_bvp, solve_ivp
from scipy.interpolate import CubicHermiteSpline

from .config import PainleveConfig, get_config
from .exceptions import ConvergenceError, DomainError, PoleError, SingularityError, UnsupportedAnchorError
from .specfun import gamma_fn

logger = logging.getLogger(__name__)

def _check_eta(eta):
    if np.any(np.asarray(eta) == 0):
        raise PoleError("eta = 0 is a pole of the Painlevé equation")

def painleve_rhs(nu: float, theta, eta, eta_p):
    """η'' from the Painlevé III equation"""
    _check_eta(eta)
    if np.any(np.asarray(theta) <= 0):
        raise DomainError("theta must be positive")
    return eta_p ** 2 / eta - eta_p / theta - 2.0 * nu * (1.0 - eta ** 2) / theta + eta ** 3 - 1.0 / eta

def rho_from_eta(nu: float, theta, eta, eta_p):
    """ρ = θ(1 − η' − η²)/(2η)"""
    _check_eta(eta)
    return theta * (1.0 - eta_p - eta ** 2) / (2.0 * eta)

def rho_prime(nu: float, theta, eta, rho):
    """ρ' = (ν+½+ρ)/η − (ν+½−ρ)η"""
    _check_eta(eta)
    a = nu + 0.5
    return (a + rho) / eta - (a - rho) * eta

def eta_prime_from_rho(theta, eta, rho):
    """η' = 1 − η² − 2ηρ/θ"""
    return 1.0 - eta ** 2 - 2.0 * eta * rho / theta

@dataclass(frozen=True, eq=False)
class EtaCurve:
    """Sampled Painlevé solution with Hermite interpolation in θ"""
    thetas: np.ndarray
    eta: np.ndarray
    eta_prime: np.ndarray
    rho: np.ndarray
    nu: float
    method: str = "bvp"

    @cached_property
    def _eta_spline(self) -> CubicHermiteSpline:
        return CubicHermiteSpline(self.thetas, self.eta, self.eta_prime)

    @cached_property
    def _rho_spline(self) -> CubicHermiteSpline:
        return CubicHermiteSpline(self.thetas, self.rho, rho_prime(self.nu, self.thetas, self.eta, self.rho))

    def contains(self, theta: float) -> bool:
        return self.thetas[0] <= theta <= self.thetas[-1]

    def interpolate(self, theta) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(η, η', ρ) at θ inside the sampled range"""
        theta_arr = np.asarray(theta, dtype=float)
        if np.any(theta_arr < self.thetas[0]) or np.any(theta_arr > self.thetas[-1]):
            raise DomainError(f"theta outside curve range [{self.thetas[0]:.3g}, {self.thetas[-1]:.3g}]")
        return (self._eta_spline(theta_arr), self._eta_spline(theta_arr, 1), self._rho_spline(theta_arr))

    def eta_at(self, theta):
        return self.interpolate(theta)[0]

    def state_at(self, theta: float, rtol: float = 1e-13) -> Tuple[float, float, float]:
        """(η, η', ρ) at one θ, integrating the first-order system from the nearest sample"""
        if not self.contains(theta):
            raise DomainError(f"theta outside curve range [{self.thetas[0]:.3g}, {self.thetas[-1]:.3g}]")
        k = int(np.argmin(np.abs(self.thetas - theta)))
        eta0, rho0 = float(self.eta[k]), float(self.rho[k])
        if self.thetas[k] != theta:
            nu = self.nu

            def rhs(th, y):
                return [eta_prime_from_rho(th, y[0], y[1]), rho_prime(nu, th, y[0], y[1])]

            sol = solve_ivp(rhs, (float(self.thetas[k]), float(theta)), [eta0, rho0], method="DOP853",
                            rtol=rtol, atol=1e-15)
            if not sol.success:
                raise SingularityError(f"Local integration to theta={theta} failed: {sol.message}")
            eta0, rho0 = float(sol.y[0, -1]), float(sol.y[1, -1])
        return eta0, float(eta_prime_from_rho(theta, eta0, rho0)), rho0

    def rho_consistency(self) -> float:
        """Max deviation of stored ρ from θ(1 − η' − η²)/(2η)"""
        return float(np.max(np.abs(self.rho - rho_from_eta(self.nu, self.thetas, self.eta, self.eta_prime))))

    def ode_residual(self, points: int = 40, rtol: float = 1e-13) -> float:
        """Max of |η'' − rhs| / max(1, |rhs|) at interval midpoints

        η'' is a fourth-order central difference of η', with the stencil refined
        by one local integration from the left sample of each checked interval.
        """
        nu = self.nu

        def rhs(th, y):
            return [eta_prime_from_rho(th, y[0], y[1]), rho_prime(nu, th, y[0], y[1])]

        picks = np.unique(np.linspace(0, self.thetas.size - 2, min(points, self.thetas.size - 1)).astype(int))
        worst = 0.0
        for k in picks:
            left, right = float(self.thetas[k]), float(self.thetas[k + 1])
            mid = 0.5 * (left + right)
            h = min(1e-3 * mid, (right - left) / 8.0)
            stencil = mid + h * np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
            sol = solve_ivp(rhs, (left, float(stencil[-1])), [float(self.eta[k]), float(self.rho[k])],
                            method="DOP853", rtol=rtol, atol=1e-15, t_eval=stencil)
            if not sol.success:
                raise SingularityError(f"Local integration near theta={mid:.6g} failed: {sol.message}")
            eta, rho = sol.y
            eta_p = eta_prime_from_rho(stencil, eta, rho)
            second = (eta_p[0] - 8.0 * eta_p[1] + 8.0 * eta_p[3] - eta_p[4]) / (12.0 * h)
            expected = float(painleve_rhs(nu, mid, eta[2], eta_p[2]))
            worst = max(worst, abs(second - expected) / max(1.0, abs(expected)))
        return float(worst)

@dataclass(frozen=True)
class McCoyFamily:
    """Small-θ data B, B₁, B₂, B₃ and amplitude λ of one bounded solution"""
    sigma: float
    lam: float
    B: float
    B1: float
    B2: float
    B3: float
    nu: float

    def expansion(self, theta) -> np.ndarray:
        """B(2θ)^σ + B₁(2θ) + B₂(2θ)^{1+2σ} + B₃(2θ)^{2−σ}"""
        x = 2.0 * np.asarray(theta, dtype=float)
        s = self.sigma
        return self.B * x ** s + self.B1 * x + self.B2 * x ** (1 + 2 * s) + self.B3 * x ** (2 - s)

    def expansion_derivative(self, theta) -> np.ndarray:
        x = 2.0 * np.asarray(theta, dtype=float)
        s = self.sigma
        return 2.0 * (self.B * s * x ** (s - 1) + self.B1 + self.B2 * (1 + 2 * s) * x ** (2 * s)
                      + self.B3 * (2 - s) * x ** (1 - s))

def mccoy_family(sigma: float, nu: float) -> McCoyFamily:
    """Bounded solution with exponent σ: λ = sin(πσ/2)/π and the series constants"""
    if not -1.0 < sigma < 2.0:
        raise DomainError(f"sigma must lie in (-1, 2), got {sigma}")
    if abs(nu) >= 0.5:
        raise DomainError(f"nu must satisfy |nu| < 1/2, got {nu}")
    B = (2.0 ** (-3.0 * sigma) * gamma_fn((1 - sigma) / 2) ** 2 * gamma_fn((1 + sigma) / 2 + nu)
         / (gamma_fn((1 + sigma) / 2) ** 2 * gamma_fn((1 - sigma) / 2 + nu)))
    B1 = -nu / (1 - sigma) ** 2
    B2 = B * B * nu / (1 + sigma) ** 2
    B3 = (4 * nu * nu - (1 - sigma) ** 2) / (16.0 * B * (1 - sigma) ** 4)
    return McCoyFamily(sigma=sigma, lam=np.sin(np.pi * sigma / 2) / np.pi, B=B, B1=B1, B2=B2, B3=B3, nu=nu)

def our_B(nu: float) -> float:
    """B = 2^{−3(1−2ν)} Γ²(ν) / (Γ²(1−ν) Γ(2ν))"""
    if nu == 0:
        raise UnsupportedAnchorError("B is not defined at nu = 0")
    return float(2.0 ** (-3.0 * (1 - 2 * nu)) * gamma_fn(nu) ** 2 / (gamma_fn(1 - nu) ** 2 * gamma_fn(2 * nu)))

def integral_equation_family(nu: float) -> McCoyFamily:
    """The member σ = 1 − 2ν selected by the integral equation (B₃ vanishes identically)"""
    if nu == 0:
        raise UnsupportedAnchorError("The integral-equation family degenerates at nu = 0")
    return replace(mccoy_family(1 - 2 * nu, nu), B=our_B(nu), B3=0.0)

def small_theta_anchor(nu: float, theta0: float) -> Tuple[float, float]:
    """(η, η') at θ₀ from the small-θ expansion of the integral-equation solution"""
    if nu == 0:
        raise UnsupportedAnchorError("No small-theta anchor at nu = 0; use integrate_from_data")
    if not 0 < theta0 <= 1e-2:
        raise DomainError(f"theta0 must lie in (0, 1e-2], got {theta0}")
    family = integral_equation_family(nu)
    eta = float(family.expansion(theta0))
    eta_p = float(family.expansion_derivative(theta0))
    if nu < 0:
        a3 = 1.0 / (8.0 * nu * (1.0 - nu * nu))
        eta += a3 * theta0 ** 3
        eta_p += 3.0 * a3 * theta0 ** 2
    return eta, eta_p

def decaying_mode(nu: float, theta):
    """2^{1+2ν} e^{−2θ} U(ν+½, 1, 4θ), asymptotic to θ^{−ν−½}e^{−2θ}"""
    theta = np.asarray(theta, dtype=float)
    return 2.0 ** (1 + 2 * nu) * np.exp(-2.0 * theta) * special.hyperu(nu + 0.5, 1.0, 4.0 * theta)

def decaying_mode_log_derivative(nu: float, theta):
    a = nu + 0.5
    z = 4.0 * np.asarray(theta, dtype=float)
    return -2.0 - 4.0 * a * special.hyperu(a + 1.0, 2.0, z) / special.hyperu(a, 1.0, z)

def _initial_guess(nu: float, thetas: np.ndarray) -> np.ndarray:
    family = integral_equation_family(nu)
    if nu > 0:
        lead = family.B * (2 * thetas) ** family.sigma
        lead_p = 2 * family.B * family.sigma * (2 * thetas) ** (family.sigma - 1)
    else:
        lead = -thetas / (2 * nu)
        lead_p = np.full_like(thetas, -1.0 / (2 * nu))
    eta = np.tanh(lead)
    eta_p = (1.0 - eta ** 2) * lead_p
    return np.vstack([np.log(eta), rho_from_eta(nu, thetas, eta, eta_p)])

def _log_system(nu: float):
    a = nu + 0.5

    def fun(s, y):
        theta = np.exp(s)
        u, rho = y
        return np.vstack([theta * (np.exp(-u) - np.exp(u)) - 2.0 * rho,
                          theta * ((a + rho) * np.exp(-u) - (a - rho) * np.exp(u))])
    return fun

def _solve_connection_problem(nu: float, theta0: float, theta_end: float, cfg: PainleveConfig):
    eta0, _ = small_theta_anchor(nu, theta0)
    fun = _log_system(nu)
    log_ratio = float(decaying_mode_log_derivative(nu, theta_end))

    def bc(ya, yb):
        u_b, rho_b = yb
        slope = theta_end * (np.exp(-u_b) - np.exp(u_b)) - 2.0 * rho_b
        return np.array([ya[0] - np.log(eta0), slope - theta_end * log_ratio * u_b])

    s = np.linspace(np.log(theta0), np.log(theta_end), 600)
    sol = solve_bvp(fun, bc, s, _initial_guess(nu, np.exp(s)), tol=cfg.bvp_tol, max_nodes=cfg.max_nodes)
    if not sol.success:
        raise ConvergenceError(f"Connection problem at nu={nu} failed: {sol.message}")
    logger.debug(f"Connection problem nu={nu}: {sol.x.size} nodes, max residual {np.max(sol.rms_residuals):.2e}")
    return sol

def _curve_from_state(nu: float, thetas: np.ndarray, u: np.ndarray, rho: np.ndarray, method: str) -> EtaCurve:
    eta = np.exp(u)
    return EtaCurve(thetas=thetas, eta=eta, eta_prime=eta_prime_from_rho(thetas, eta, rho), rho=rho,
                    nu=nu, method=method)

def integrate_eta(nu: float, theta0: Optional[float] = None, theta1: float = 8.0, tol: Optional[float] = None,
                  method: str = "bvp", config: Optional[PainleveConfig] = None) -> EtaCurve:
    """η(θ) on [θ₀, θ₁] for the solution selected by the integral equation

    method="bvp" (default) closes the problem at θ_end with the exact linear
    decaying mode; method="ivp" integrates forward from the anchor only.
    """
    cfg = config or get_config().painleve
    theta0 = theta0 or cfg.anchor_for(nu)
    if not theta0 < theta1:
        raise DomainError(f"Need theta0 < theta1, got {theta0} and {theta1}")

    if method == "ivp":
        eta0, eta_p0 = small_theta_anchor(nu, theta0)
        return integrate_from_data(nu, theta0, eta0, eta_p0, theta1, rtol=tol or cfg.ivp_rtol)
    if method != "bvp":
        raise ValueError(f"Unknown method '{method}'")

    if tol is not None:
        cfg = replace(cfg, bvp_tol=tol)
    theta_end = max(cfg.theta_end, theta1 + 2.0)
    sol = _solve_connection_problem(nu, theta0, theta_end, cfg)

    s = np.append(sol.x[sol.x < np.log(theta1) - 1e-12], np.log(theta1))
    u, rho = sol.sol(s)
    # exp(log θ) can round below θ; pin the ends so θ₀ and θ₁ stay inside the curve
    thetas = np.exp(s)
    thetas[0], thetas[-1] = theta0, theta1
    curve = _curve_from_state(nu, thetas, u, rho, "bvp")
    logger.info(f"Painlevé curve nu={nu} on [{theta0:g}, {theta1:g}] with {curve.thetas.size} samples")
    return curve

def integrate_from_data(nu: float, theta0: float, eta0: float, eta_p0: float, theta1: float,
                        rtol: Optional[float] = None, blowup: float = 1e8) -> EtaCurve:
    """Forward DOP853 integration of the Painlevé equation from arbitrary data (any ν, including 0)"""
    rtol = rtol or get_config().painleve.ivp_rtol
    _check_eta(eta0)

    def rhs(theta, y):
        return [y[1], painleve_rhs(nu, theta, y[0], y[1])]

    def hits_zero(theta, y):
        return y[0] - 1e-300 * np.sign(eta0)
    hits_zero.terminal = True

    def hits_pole(theta, y):
        return abs(y[0]) - blowup
    hits_pole.terminal = True

    sol = solve_ivp(rhs, (theta0, theta1), [eta0, eta_p0], method="DOP853", rtol=rtol,
                    atol=1e-14, events=[hits_zero, hits_pole])
    if sol.status == 1:
        where = sol.t[-1]
        raise SingularityError(f"eta reached a zero or a pole near theta={where:.6g} (nu={nu})")
    if not sol.success:
        raise SingularityError(f"Painlevé integration stopped: {sol.message}")

    eta, eta_p = sol.y
    return EtaCurve(thetas=sol.t, eta=eta, eta_prime=eta_p, rho=rho_from_eta(nu, sol.t, eta, eta_p),
                    nu=nu, method="ivp")

def fit_large_theta_amplitude(curve: EtaCurve, window: Sequence[float] = (5.0, 7.0), points: int = 41) -> float:
    """λ̂ from 1 − η ≈ λ Γ(ν+½) 2^{−2ν} D(θ) on the window, D the exact decaying mode"""
    nu = curve.nu
    thetas = np.linspace(window[0], window[1], points)
    gap = 1.0 - curve.eta_at(thetas)
    basis = special.gamma(nu + 0.5) * 2.0 ** (-2 * nu) * decaying_mode(nu, thetas)
    lam = float(np.dot(gap, basis) / np.dot(basis, basis))
    logger.debug(f"Large-theta amplitude at nu={nu}: {lam:.10g} (cos(pi nu)/pi = {np.cos(np.pi * nu) / np.pi:.10g})")
    return lam

def apply_symmetry(nu: float, eta, eta_p, kind: str = "inverse"):
    """Map a solution to another one: η → 1/η, or (η, ν) → (−η, −ν)"""
    _check_eta(eta)
    if kind == "inverse":
        return nu, 1.0 / eta, -eta_p / eta ** 2
    if kind == "reflect":
        return -nu, -eta, -eta_p
    raise ValueError(f"Unknown symmetry '{kind}'")
