"""
Special functions for the kernel w^ν K_ν(θw)

Gamma, fractional-order modified Bessel functions, Gegenbauer and Laguerre
polynomials, the kernel with its Fourier transform, and the split of the
kernel into a weakly singular part and an analytic remainder.
"""

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator
from scipy import special

from .exceptions import DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

EULER_GAMMA = np.euler_gamma

class Params(BaseModel):
    """Order ν and scale θ of the kernel"""

    model_config = ConfigDict(frozen=True)

    nu: float
    theta: float

    @field_validator("nu")
    @classmethod
    def validate_nu(cls, v):
        if not math.isfinite(v) or abs(v) >= 0.5:
            raise ValueError("nu must satisfy |nu| < 1/2")
        return v

    @field_validator("theta")
    @classmethod
    def validate_theta(cls, v):
        if not math.isfinite(v) or v <= 0:
            raise ValueError("theta must be positive")
        return v

    @property
    def edge_exponent(self) -> float:
        """Exponent a = ν + 1/2 of the edge singularity (1 − t²)^{−a}"""
        return self.nu + 0.5

def make_params(nu: float, theta: float) -> Params:
    """Build validated parameters, raising DomainError on bad input"""
    try:
        return Params(nu=nu, theta=theta)
    except ValidationError as e:
        raise DomainError(f"Invalid parameters nu={nu}, theta={theta}: {e}") from e

def gamma_fn(x: ArrayLike) -> ArrayLike:
    """Euler Gamma function; non-positive integers are poles"""
    arr = np.asarray(x, dtype=float)
    if np.any((arr <= 0) & (arr == np.round(arr))):
        raise DomainError(f"Gamma function has a pole at {x}")
    result = special.gamma(arr)
    return float(result) if np.ndim(result) == 0 else result

def bessel_k(nu: float, w: ArrayLike) -> ArrayLike:
    """Modified Bessel function of the third kind K_ν(w) for w > 0"""
    arr = np.asarray(w, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("bessel_k requires w > 0")
    if abs(nu) >= 1:
        raise DomainError(f"Order |nu| < 1 required, got {nu}")
    result = special.kv(nu, arr)
    return float(result) if np.ndim(result) == 0 else result

def bessel_i(nu: float, w: ArrayLike) -> ArrayLike:
    """Modified Bessel function of the first kind I_ν(w) for w ≥ 0"""
    arr = np.asarray(w, dtype=float)
    if np.any(arr < 0):
        raise DomainError("bessel_i requires w >= 0")
    result = special.iv(nu, arr)
    return float(result) if np.ndim(result) == 0 else result

def bessel_i_series(nu: float, w: ArrayLike, terms: int = 60) -> ArrayLike:
    """Ascending series Σ (w/2)^{2k+ν} / (k! Γ(k+ν+1))"""
    arr = np.asarray(w, dtype=float)
    half = arr / 2.0
    total = np.zeros_like(arr)
    for k in range(terms):
        total = total + half ** (2 * k) * special.rgamma(k + 1) * special.rgamma(k + nu + 1)
    return half ** nu * total

def bessel_k_series(nu: float, w: ArrayLike, terms: int = 60) -> ArrayLike:
    """K_ν from (π/2)(I_{−ν} − I_ν)/sin(νπ); accurate for small w, non-integer ν"""
    if nu == 0 or nu != nu:
        raise DomainError("bessel_k_series needs a non-integer order")
    return np.pi / (2.0 * np.sin(nu * np.pi)) * (bessel_i_series(-nu, w, terms) - bessel_i_series(nu, w, terms))

def bessel_k_asymptotic(nu: float, w: ArrayLike, max_terms: int = 40) -> ArrayLike:
    """Large-w expansion √(π/2w) e^{−w} Σ a_k(ν)/w^k, summed to its smallest term"""
    arr = np.asarray(w, dtype=float)
    mu = 4.0 * nu * nu
    term = np.ones_like(arr)
    total = np.ones_like(arr)
    for k in range(1, max_terms):
        nxt = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * arr)
        if np.all(np.abs(nxt) >= np.abs(term)):
            break
        term = np.where(np.abs(nxt) < np.abs(term), nxt, 0.0)
        total = total + term
    return np.sqrt(np.pi / (2.0 * arr)) * np.exp(-arr) * total

def kernel_eval(p: Params, w: ArrayLike) -> ArrayLike:
    """Kernel K(w) = w^ν K_ν(θw) for w > 0"""
    arr = np.asarray(w, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("kernel_eval requires w > 0; the diagonal limit is the caller's job")
    result = arr ** p.nu * special.kv(p.nu, p.theta * arr)
    return float(result) if np.ndim(result) == 0 else result

def kernel_small_w(p: Params, w: ArrayLike) -> ArrayLike:
    """Two leading small-w terms 2^{ν−1}Γ(ν)θ^{−ν} + 2^{−ν−1}Γ(−ν)θ^ν w^{2ν}"""
    nu, theta = p.nu, p.theta
    arr = np.asarray(w, dtype=float)
    return (2.0 ** (nu - 1) * special.gamma(nu) * theta ** (-nu)
            + 2.0 ** (-nu - 1) * special.gamma(-nu) * theta ** nu * arr ** (2 * nu))

def kernel_fourier(p: Params, momentum: ArrayLike) -> ArrayLike:
    """Fourier transform (2θ)^ν √π Γ(ν+½) / (p² + θ²)^{ν+½}"""
    nu, theta = p.nu, p.theta
    k = np.asarray(momentum, dtype=float)
    result = (2.0 * theta) ** nu * np.sqrt(np.pi) * special.gamma(nu + 0.5) / (k * k + theta * theta) ** (nu + 0.5)
    return float(result) if np.ndim(result) == 0 else result

def gegenbauer_all(n_max: int, mu: float, x: ArrayLike) -> np.ndarray:
    """C_0^μ(x) … C_{n_max}^μ(x) by forward recurrence, shape (n_max+1,) + x.shape

    Forward recurrence on |x| ≤ 1 loses at most O(n) ulps at these orders.
    """
    if mu == 0:
        raise DomainError("Gegenbauer normalization degenerates at mu = 0")
    arr = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + arr.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2.0 * mu * arr
    for n in range(1, n_max):
        out[n + 1] = (2.0 * (n + mu) * arr * out[n] - (n + 2.0 * mu - 1.0) * out[n - 1]) / (n + 1.0)
    return out

def gegenbauer(n: int, mu: float, x: ArrayLike) -> ArrayLike:
    """Gegenbauer polynomial C_n^μ(x) with C_n^μ(1) = Γ(n+2μ)/(n!Γ(2μ))"""
    if n < 0:
        raise DomainError("Gegenbauer degree must be non-negative")
    result = gegenbauer_all(n, mu, x)[n]
    return float(result) if np.ndim(result) == 0 else result

def gegenbauer_at_one(n: ArrayLike, mu: float) -> ArrayLike:
    """C_n^μ(1) = Γ(n+2μ) / (n! Γ(2μ))"""
    n = np.asarray(n, dtype=float)
    return special.poch(n + 1.0, 2.0 * mu - 1.0) / special.gamma(2.0 * mu)

def gegenbauer_norm(n: ArrayLike, mu: float) -> ArrayLike:
    """h_n = ∫(1−x²)^{μ−½}[C_n^μ]² dx = 2^{1−2μ}πΓ(n+2μ) / (n! Γ(μ)² (n+μ))"""
    n = np.asarray(n, dtype=float)
    return (2.0 ** (1.0 - 2.0 * mu) * np.pi * special.poch(n + 1.0, 2.0 * mu - 1.0)
            / (special.gamma(mu) ** 2 * (n + mu)))

def laguerre(n: int, lam: float, x: ArrayLike) -> ArrayLike:
    """Generalized Laguerre polynomial L_n^λ(x) for x ≥ 0"""
    if n < 0:
        raise DomainError("Laguerre degree must be non-negative")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise DomainError("laguerre requires x >= 0")
    result = special.eval_genlaguerre(n, lam, arr)
    return float(result) if np.ndim(result) == 0 else result

@dataclass(frozen=True)
class KernelSplit:
    """K(w) = s(w)·P(w) + R(w) with s = |w|^{2ν} (ln|w| at ν=0), P an even polynomial

    P is the Taylor polynomial of the singular Bessel-I branch up to w^{2·order},
    so R is analytic apart from a |w|^{2ν+2·order+2} kink at the origin. With
    kind="power" the kernel is the bare power |w|^{2ν} (P ≡ 1, R ≡ 0).
    """

    nu: float
    theta: float
    order: int = 4
    kind: str = "bessel"
    seam: float = 2.0

    def __post_init__(self):
        if self.kind not in ("bessel", "power"):
            raise DomainError(f"Unknown kernel kind '{self.kind}'")
        if self.kind == "power" and self.nu == 0:
            raise DomainError("The power kernel needs nu != 0")

    @property
    def logarithmic(self) -> bool:
        return self.nu == 0 and self.kind == "bessel"

    def singular_factor(self, w: ArrayLike) -> ArrayLike:
        arr = np.abs(np.asarray(w, dtype=float))
        if self.logarithmic:
            return np.log(arr)
        return arr ** (2.0 * self.nu)

    def _singular_coefficients(self) -> np.ndarray:
        half = self.theta / 2.0
        k = np.arange(self.order + 1)
        if self.logarithmic:
            return -(half ** (2 * k)) / special.factorial(k) ** 2
        c = np.pi / (2.0 * np.sin(self.nu * np.pi))
        return -c * half ** self.nu * half ** (2 * k) * special.rgamma(k + 1.0) * special.rgamma(k + self.nu + 1.0)

    def singular_poly(self, w: ArrayLike) -> ArrayLike:
        arr = np.asarray(w, dtype=float)
        if self.kind == "power":
            return np.ones_like(arr)
        coeffs = self._singular_coefficients()
        w2 = arr * arr
        total = np.zeros_like(arr)
        for ck in coeffs[::-1]:
            total = total * w2 + ck
        return total

    def regular(self, w: ArrayLike) -> ArrayLike:
        """Analytic remainder R(|w|), including the w = 0 limit"""
        arr = np.abs(np.asarray(w, dtype=float))
        if self.kind == "power":
            return np.zeros_like(arr)
        z = self.theta * arr
        near = z < self.seam
        out = np.empty_like(arr)
        if np.any(near):
            out[near] = self._regular_series(arr[near])
        far = ~near
        if np.any(far):
            wf = arr[far]
            bessel = special.kv(self.nu, self.theta * wf) * wf ** self.nu
            out[far] = bessel - self.singular_factor(wf) * self.singular_poly(wf)
        return out

    def _regular_series(self, w: np.ndarray, terms: int = 40) -> np.ndarray:
        nu, half = self.nu, self.theta / 2.0
        x2 = (half * w) ** 2
        smooth = np.zeros_like(w)
        tail = np.zeros_like(w)
        power = np.ones_like(w)
        harmonic = 0.0
        for k in range(terms):
            if self.logarithmic:
                if k >= 1:
                    harmonic += 1.0 / k
                inv = 1.0 / math.factorial(k) ** 2
                smooth = smooth + (harmonic - math.log(half) - EULER_GAMMA) * power * inv
                if k > self.order:
                    tail = tail + power * inv
            else:
                smooth = smooth + power * special.rgamma(k + 1.0) * special.rgamma(k - nu + 1.0)
                if k > self.order:
                    tail = tail + power * special.rgamma(k + 1.0) * special.rgamma(k + nu + 1.0)
            power = power * x2

        if self.logarithmic:
            with np.errstate(divide="ignore", invalid="ignore"):
                log_tail = np.where(w > 0, np.log(np.where(w > 0, w, 1.0)) * tail, 0.0)
            return smooth - log_tail

        with np.errstate(divide="ignore", invalid="ignore"):
            power_tail = np.where(w > 0, np.where(w > 0, w, 1.0) ** (2.0 * nu) * tail, 0.0)
        c = np.pi / (2.0 * np.sin(nu * np.pi))
        return c * (half ** (-nu) * smooth - half ** nu * power_tail)

    def __call__(self, w: ArrayLike) -> ArrayLike:
        """Full kernel value for w > 0"""
        arr = np.abs(np.asarray(w, dtype=float))
        return self.singular_factor(arr) * self.singular_poly(arr) + self.regular(arr)
