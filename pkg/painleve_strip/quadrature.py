"""
Gauss–Jacobi machinery for the edge weight (1 − t²)^{−ν−½}
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import chebyshev
from scipy import special

from .exceptions import DomainError, EdgeFitError
from .specfun import gegenbauer_all, gegenbauer_norm

logger = logging.getLogger(__name__)

@dataclass(frozen=True, eq=False)
class GaussJacobiRule:
    """Nodes and weights exact for polynomials of degree ≤ 2n−1 against the edge weight"""
    nu: float
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return len(self.nodes)

@lru_cache(maxsize=64)
def gauss_jacobi(nu: float, n: int) -> GaussJacobiRule:
    """Gauss–Jacobi rule for α = β = −ν − ½, symmetrized so that t_j = −t_{n−1−j}"""
    if n < 2:
        raise DomainError("Gauss–Jacobi rule needs at least two nodes")
    alpha = -nu - 0.5
    nodes, weights = special.roots_jacobi(n, alpha, alpha)
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    logger.debug(f"Gauss–Jacobi rule nu={nu} n={n}, weight sum {weights.sum():.15g}")
    return GaussJacobiRule(nu=nu, nodes=nodes, weights=weights)

def orthonormal_basis(nu: float, n_terms: int, x) -> np.ndarray:
    """Orthonormal polynomials p_0 … p_{n_terms−1} for the edge weight, shape (n_terms, len(x))

    Gegenbauer C_k^{−ν}/√h_k for ν ≠ 0, Chebyshev T_k scaled by √(1/π), √(2/π) for ν = 0.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if nu == 0:
        basis = chebyshev.chebvander(x, n_terms - 1).T
        scale = np.full(n_terms, np.sqrt(2.0 / np.pi))
        scale[0] = np.sqrt(1.0 / np.pi)
        return basis * scale[:, None]

    mu = -nu
    basis = gegenbauer_all(n_terms - 1, mu, x)
    norms = gegenbauer_norm(np.arange(n_terms), mu)
    return basis / np.sqrt(norms)[:, None]

def power_kernel_spectrum(nu: float, n_terms: int) -> np.ndarray:
    """Eigenvalues of h ↦ ∫ s(x−t)(1−t²)^{−ν−½}h(t)dt on the orthonormal basis

    s = |w|^{2ν}: πΓ(k−2ν) / (k! Γ(−2ν) cos πν); s = ln|w| (ν = 0): −π ln 2, −π/k.
    """
    k = np.arange(n_terms, dtype=float)
    if nu == 0:
        out = np.empty(n_terms)
        out[0] = -np.pi * np.log(2.0)
        out[1:] = -np.pi / k[1:]
        return out
    return np.pi * special.poch(k + 1.0, -2.0 * nu - 1.0) / (special.gamma(-2.0 * nu) * np.cos(np.pi * nu))

def extrapolate_edge(t, values, side: int = 1, degree: int = 4, points: int = 6,
                     rtol: float = 1e-3) -> float:
    """Value at t = ±1 of a least-squares polynomial in (1 ∓ t) over the points nearest the edge"""
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    order = np.argsort(side * t)[::-1][:points]
    s = 1.0 - side * t[order]
    v = values[order]
    if len(s) <= degree:
        raise EdgeFitError(f"Need more than {degree} points to extrapolate, got {len(s)}")

    fit = np.polynomial.polynomial.polyfit(s, v, degree)
    lower = np.polynomial.polynomial.polyfit(s, v, degree - 1)
    estimate, check = fit[0], lower[0]
    scale = max(1.0, np.max(np.abs(v)))
    if abs(estimate - check) > rtol * scale:
        raise EdgeFitError(
            f"Edge extrapolation unstable: degree {degree} gives {estimate:.6g}, "
            f"degree {degree - 1} gives {check:.6g}"
        )
    return float(estimate)
