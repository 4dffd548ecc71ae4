"""
Closed-form limits: small-θ power-kernel solutions, the half-line problem and
the large-θ two-edge approximation
"""

import logging
from typing import Callable, Tuple

import numpy as np
from scipy import integrate, special

from .exceptions import DomainError
from .painleve import our_B
from .specfun import KernelSplit, Params, gamma_fn, kernel_eval, laguerre

logger = logging.getLogger(__name__)

def _require_nonzero(nu: float):
    if nu == 0 or abs(nu) >= 0.5:
        raise DomainError(f"Need 0 < |nu| < 1/2, got {nu}")

def power_kernel_solutions(nu: float) -> Tuple[Callable, Callable]:
    """Solutions of ∫|x−t|^{2ν} g dt = 1 and = x"""
    _require_nonzero(nu)
    a = nu + 0.5
    c = np.cos(np.pi * nu) / np.pi

    def g0(t):
        t = np.asarray(t, dtype=float)
        return c * (1.0 - t * t) ** (-a)

    def g1(t):
        t = np.asarray(t, dtype=float)
        return -c * t / (2.0 * nu) * (1.0 - t * t) ** (-a)

    return g0, g1

def small_kernel_constants(nu: float, theta: float) -> Tuple[float, float]:
    """K(w) ≈ A₀ + A₁|w|^{2ν} for θw ≪ 1"""
    a0 = 2.0 ** (nu - 1) * gamma_fn(nu) * theta ** (-nu)
    a1 = 2.0 ** (-nu - 1) * gamma_fn(-nu) * theta ** nu
    return a0, a1

def mu_c_mu_s(nu: float, theta: float) -> Tuple[float, float]:
    """Amplitudes of g_c ≈ μ_c g₀ and g_s ≈ μ_s g₁ at small θ"""
    _require_nonzero(nu)
    a0, a1 = small_kernel_constants(nu, theta)
    mass = np.cos(np.pi * nu) / np.pi * np.sqrt(np.pi) * gamma_fn(0.5 - nu) / gamma_fn(1.0 - nu)
    return 1.0 / (a0 * mass + a1), theta / a1

def small_theta_eta(nu: float, theta: float, branch: str = "dominant") -> float:
    """B(2θ)^{1−2ν} − θ/(2ν); branch="dominant" keeps the leading term for the sign of ν"""
    _require_nonzero(nu)
    power = our_B(nu) * (2.0 * theta) ** (1 - 2 * nu)
    linear = -theta / (2.0 * nu)
    if branch == "full":
        return float(power + linear)
    if branch == "dominant":
        return float(power if nu > 0 else linear)
    raise ValueError(f"Unknown branch '{branch}'")

def wiener_hopf_constant(nu: float) -> float:
    """C_ν = √2 cos πν / π^{3/2}"""
    return float(np.sqrt(2.0) * np.cos(np.pi * nu) / np.pi ** 1.5)

def wiener_hopf_halfline(nu: float) -> Callable:
    """g₀(v) = C_ν v^{−ν−½} e^{−v}, solving ∫₀^∞ K(|u−v|) g₀(v) dv = e^{−u} at θ = 1"""
    if abs(nu) >= 0.5:
        raise DomainError(f"nu must satisfy |nu| < 1/2, got {nu}")
    c = wiener_hopf_constant(nu)

    def g0(v):
        v = np.asarray(v, dtype=float)
        return c * v ** (-nu - 0.5) * np.exp(-v)

    return g0

def _quad(f, lo, hi, alpha=0.0, beta=0.0, log_end=None) -> float:
    weight = {None: "alg", "a": "alg-loga", "b": "alg-logb"}[log_end]
    value, _ = integrate.quad(lambda v: float(f(v)), lo, hi, weight=weight, wvar=(alpha, beta), epsabs=1e-14, epsrel=1e-12, limit=200)
    return value

def halfline_convolution(nu: float, theta: float, u: float, smooth: Callable, cutoff: float = 40.0) -> float:
    """∫₀^cutoff K(|u−v|) v^{−ν−½} φ(v) dv with the kernel and edge singularities in the quadrature weights"""
    if u <= 0:
        raise DomainError("u must be positive")
    a = nu + 0.5
    split = KernelSplit(nu=nu, theta=theta)
    p = Params.model_construct(nu=nu, theta=theta)
    log_end = split.logarithmic
    k_pow = 0.0 if log_end else 2.0 * nu
    delta = min(1.0 / theta, u)

    def density(v):
        return v ** (-a) * smooth(v)

    total = 0.0
    lo = u - delta
    if lo > 0:
        total += _quad(lambda v: kernel_eval(p, u - v) * smooth(v), 0.0, lo, alpha=-a)
        total += _quad(lambda v: split.singular_poly(u - v) * density(v), lo, u, beta=k_pow,
                       log_end="b" if log_end else None)
        total += _quad(lambda v: split.regular(u - v) * density(v), lo, u)
    else:
        total += _quad(lambda v: split.singular_poly(u - v) * smooth(v), 0.0, u, alpha=-a, beta=k_pow,
                       log_end="b" if log_end else None)
        total += _quad(lambda v: split.regular(u - v) * smooth(v), 0.0, u, alpha=-a)

    hi = min(u + 1.0 / theta, cutoff)
    total += _quad(lambda v: split.singular_poly(v - u) * density(v), u, hi, alpha=k_pow,
                   log_end="a" if log_end else None)
    total += _quad(lambda v: split.regular(v - u) * density(v), u, hi)
    if hi < cutoff:
        total += _quad(lambda v: kernel_eval(p, v - u) * density(v), hi, cutoff)
    return float(total)

def halfline_residual(nu: float, u: float, cutoff: float = 40.0) -> float:
    """∫₀^∞ K(|u−v|) g₀(v) dv − e^{−u} at θ = 1"""
    c = wiener_hopf_constant(nu)
    value = halfline_convolution(nu, 1.0, u, lambda v: c * np.exp(-v), cutoff=cutoff)
    return value - float(np.exp(-u))

def laguerre_eigenvalue(nu: float, n: int) -> float:
    """√π Γ(ν+½) Γ(n+½−ν) / n!"""
    return float(np.sqrt(np.pi) * gamma_fn(nu + 0.5) * gamma_fn(n + 0.5 - nu) / special.factorial(n))

def laguerre_identity(nu: float, n: int, x: float, cutoff: float = 80.0) -> Tuple[float, float]:
    """Both sides of ∫₀^∞ K_{θ=½}(|x−t|) t^{−ν−½} e^{−t/2} L_n(t) dt = μ_n e^{−x/2} L_n(x), L_n = L_n^{−ν−½}"""
    lam = -nu - 0.5
    lhs = halfline_convolution(nu, 0.5, x, lambda t: np.exp(-t / 2.0) * laguerre(n, lam, t), cutoff=cutoff)
    rhs = laguerre_eigenvalue(nu, n) * float(np.exp(-x / 2.0) * laguerre(n, lam, x))
    logger.debug(f"Laguerre identity nu={nu}, n={n}, x={x}: {lhs:.12g} vs {rhs:.12g}")
    return lhs, rhs

def large_theta_delta(nu: float, theta: float) -> float:
    """δ = θ^{−ν−½} 2^{−2ν} cos πν e^{−2θ} Γ(ν+½) / (2π)"""
    return float(theta ** (-nu - 0.5) * 2.0 ** (-2 * nu) * np.cos(np.pi * nu) * np.exp(-2.0 * theta)
                 * gamma_fn(nu + 0.5) / (2.0 * np.pi))

def gminus_large_theta(nu: float, theta: float) -> Tuple[Callable, float]:
    """Two-edge approximation of the solution for the rhs e^{−θx}"""
    if theta < 3:
        raise DomainError(f"The two-edge approximation needs theta >= 3, got {theta}")
    a = nu + 0.5
    c = wiener_hopf_constant(nu) * np.sqrt(theta)
    delta = large_theta_delta(nu, theta)

    def approx(t):
        t = np.asarray(t, dtype=float)
        return c * ((1.0 + t) ** (-a) * np.exp(-t * theta) + delta * (1.0 - t) ** (-a) * np.exp(t * theta))

    return approx, delta

def large_theta_eta(nu: float, theta: float) -> float:
    """η = (1 − δ)/(1 + δ), the edge limit of the two-edge approximation"""
    delta = large_theta_delta(nu, theta)
    return (1.0 - delta) / (1.0 + delta)
