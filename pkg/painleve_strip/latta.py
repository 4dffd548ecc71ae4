"""
Linear systems in t and θ whose compatibility is the Painlevé equation

    ∂_t g = M g,   ∂_θ g = N g,   g = (g_c, g_s)

M has simple poles at t = ±1; the solutions are reconstructed from η, ρ in
the factored variable h = (1 − t²)^{ν+½} g.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import special
from scipy.integrate import solve_ivp

from .config import get_config
from .exceptions import CompatibilityError, DomainError, PoleError
from .painleve import EtaCurve, rho_prime
from .quadrature import gauss_jacobi
from .solver import GridFunction, NystromOperator, edge_coefficients, laplace_transforms
from .specfun import Params

logger = logging.getLogger(__name__)

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])

# t-integration stops short of the pole of M
_T_STOP = 1.0 - 1e-6

def matrix_m(nu: float, theta: float, t: float, eta: float, rho: float) -> np.ndarray:
    if abs(t) >= 1:
        raise PoleError(f"M has poles at t = ±1, got t={t}")
    if eta == 0:
        raise PoleError("M is singular at eta = 0")
    a = nu + 0.5
    pole = np.array([[t * (a - rho), (a + rho) / eta],
                     [eta * (a - rho), t * (a + rho)]])
    return theta * _SIGMA_X + pole / (1.0 - t * t)

def matrix_n(theta: float, t: float, rho: float) -> np.ndarray:
    if theta <= 0:
        raise DomainError("theta must be positive")
    return np.array([[(0.5 + rho) / theta, t],
                     [t, (0.5 - rho) / theta]])

def _dm_dtheta(nu: float, t: float, eta: float, eta_p: float, rho: float, rho_p: float) -> np.ndarray:
    a = nu + 0.5
    pole = np.array([[-t * rho_p, (rho_p * eta - (a + rho) * eta_p) / eta ** 2],
                     [eta_p * (a - rho) - eta * rho_p, t * rho_p]])
    return _SIGMA_X + pole / (1.0 - t * t)

def curvature(nu: float, theta: float, t: float, eta: float, eta_p: float, rho: float,
              rho_p: Optional[float] = None) -> np.ndarray:
    """∂_t N − ∂_θ M − [M, N] for given (η, η', ρ, ρ')"""
    if rho_p is None:
        rho_p = rho_prime(nu, theta, eta, rho)
    m = matrix_m(nu, theta, t, eta, rho)
    n = matrix_n(theta, t, rho)
    return _SIGMA_X - _dm_dtheta(nu, t, eta, eta_p, rho, rho_p) - (m @ n - n @ m)

@dataclass(frozen=True)
class LaxPair:
    """M and N frozen at one point (η, η', ρ) of a curve"""
    nu: float
    theta: float
    eta: float
    eta_p: float
    rho: float

    @classmethod
    def from_curve(cls, nu: float, theta: float, curve: EtaCurve) -> "LaxPair":
        eta, eta_p, rho = curve.state_at(theta)
        return cls(nu=nu, theta=theta, eta=eta, eta_p=eta_p, rho=rho)

    def M(self, t: float) -> np.ndarray:
        return matrix_m(self.nu, self.theta, t, self.eta, self.rho)

    def N(self, t: float) -> np.ndarray:
        return matrix_n(self.theta, t, self.rho)

    def curvature(self, t: float) -> np.ndarray:
        return curvature(self.nu, self.theta, t, self.eta, self.eta_p, self.rho)

def zero_curvature_residual(nu: float, theta: float, t: float, curve: EtaCurve) -> float:
    """Frobenius norm of the curvature along a sampled curve

    η, η' and ρ come from a local solve of the curve's first-order system; ρ' from its ODE.
    """
    return float(np.linalg.norm(LaxPair.from_curve(nu, theta, curve).curvature(t), "fro"))

def normalization_constant(nu: float) -> float:
    """C(ν) = cos πν / (2^{ν+1} π^{3/2} Γ(½−ν))"""
    return float(np.cos(np.pi * nu) / (2.0 ** (nu + 1) * np.pi ** 1.5 * special.gamma(0.5 - nu)))

def _factored_system(nu: float, theta: float, eta: float, rho: float):
    a = nu + 0.5
    P, Q = a - rho, a + rho

    def rhs(t, h):
        hc, hs = h
        inv = 1.0 / (1.0 - t * t)
        return [theta * hs + inv * (-t * Q * hc + Q * hs / eta),
                theta * hc + inv * (eta * P * hc - t * P * hs)]
    return rhs

def reconstruct_solutions(nu: float, theta: float, curve: EtaCurve, n_quad: Optional[int] = None,
                          normalization: str = "identity", tol: float = 1e-6) -> Tuple[GridFunction, GridFunction]:
    """(g_c, g_s) from η(θ), ρ(θ) by integrating the t-system from t = 0

    normalization="identity" fixes the scale by η k_c² = C(ν) θ^{1−ν} G(1);
    normalization="operator" by (Γ g_c)(0) = 1.
    """
    eta, _, rho = curve.state_at(theta)
    n_quad = n_quad or get_config().solver.quadrature_order(theta)
    rule = gauss_jacobi(nu, n_quad)

    sol = solve_ivp(_factored_system(nu, theta, eta, rho), (0.0, _T_STOP), [1.0, 0.0], method="DOP853",
                    rtol=1e-13, atol=1e-15, dense_output=True)
    if not sol.success:
        raise CompatibilityError(f"t-system integration failed: {sol.message}")

    half = rule.nodes[rule.nodes >= 0]
    hc_half, hs_half = sol.sol(half)
    mirror_c = hc_half[::-1]
    mirror_s = -hs_half[::-1]
    if rule.size % 2:
        # the centre node t = 0 is shared by both halves
        mirror_c, mirror_s = mirror_c[:-1], mirror_s[:-1]
    hc = np.concatenate([mirror_c, hc_half])
    hs = np.concatenate([mirror_s, hs_half])

    gc = GridFunction(nodes=rule.nodes, smooth_values=hc, nu=nu, weights=rule.weights, parity="even")
    gs = GridFunction(nodes=rule.nodes, smooth_values=hs, nu=nu, weights=rule.weights, parity="odd")

    edge = edge_coefficients(gc, gs)
    if abs(edge.eta - eta) > tol * abs(eta):
        raise CompatibilityError(f"Edge ratio {edge.eta:.12g} differs from eta {eta:.12g}")

    if normalization == "identity":
        lap = laplace_transforms(gc, gs, 1.0, theta)
        scale = normalization_constant(nu) * theta ** (1 - nu) * lap.G1 / (eta * edge.k_c ** 2)
    elif normalization == "operator":
        op = NystromOperator(Params(nu=nu, theta=theta), n_quad)
        scale = 1.0 / float(op.apply(gc, [0.0])[0])
    else:
        raise ValueError(f"Unknown normalization '{normalization}'")

    logger.info(f"Reconstructed g_c, g_s at nu={nu}, theta={theta}: scale {scale:.12g}, edge ratio {edge.eta:.12g}")
    return gc.scaled(scale), gs.scaled(scale)

def g1_log_derivative(nu: float, theta: float, eta: float) -> float:
    """d/dθ ln G(1) = ν/θ + η + 1/η"""
    if eta == 0:
        raise PoleError("eta = 0")
    return nu / theta + eta + 1.0 / eta

def kc_log_derivative(theta: float, eta: float, rho: float) -> float:
    """d/dθ ln k_c = (½ + ρ)/θ + η, the θ-system at the edge"""
    return (0.5 + rho) / theta + eta
