"""
Solution of ∫_{−1}^{1} K(|x−t|) g(t) dt = f(x) with K(w) = w^ν K_ν(θw)

Solutions are stored in factored form g(t) = h(t)(1 − t²)^{−ν−½} with the
smooth factor h sampled at Gauss–Jacobi nodes. The Nyström matrix integrates
the |w|^{2ν} (or ln|w|) part of the kernel exactly against the Jacobi weight
through its Gegenbauer (Chebyshev) spectrum; the analytic remainder of the
kernel is handled by the Gauss–Jacobi rule itself.
"""

import logging
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Callable, List, NamedTuple, Optional, Tuple

import numpy as np
from scipy import linalg

from .config import SolverConfig, SpheroidalConfig, get_config
from .exceptions import DegenerateModeError, DomainError, IllConditionedError, TruncationError
from .quadrature import extrapolate_edge, gauss_jacobi, orthonormal_basis, power_kernel_spectrum
from .specfun import KernelSplit, Params
from .spheroidal import SpheroidalMode, angular_modes, angular_values, plane_wave_coefficients

logger = logging.getLogger(__name__)

RHS = Callable[[np.ndarray], np.ndarray]

@dataclass(frozen=True, eq=False)
class GridFunction:
    """g(t) = h(t)(1 − t²)^{−ν−½} with h sampled at Gauss–Jacobi nodes"""
    nodes: np.ndarray
    smooth_values: np.ndarray
    nu: float
    weights: np.ndarray
    parity: Optional[str] = None
    residual: float = float("nan")

    @property
    def edge_exponent(self) -> float:
        return self.nu + 0.5

    @cached_property
    def coefficients(self) -> np.ndarray:
        """Coefficients of h in the orthonormal basis of the edge weight"""
        basis = orthonormal_basis(self.nu, len(self.nodes), self.nodes)
        return basis @ (self.weights * self.smooth_values)

    def smooth(self, t) -> np.ndarray:
        """Spectral interpolant of h, valid on the closed interval"""
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        values = self.coefficients @ orthonormal_basis(self.nu, len(self.nodes), t_arr)
        return float(values[0]) if np.ndim(t) == 0 else values

    def __call__(self, t) -> np.ndarray:
        t_arr = np.asarray(t, dtype=float)
        if np.any(np.abs(t_arr) >= 1):
            raise DomainError("g(t) is evaluated only for |t| < 1")
        return self.smooth(t_arr) * (1.0 - t_arr * t_arr) ** (-self.edge_exponent)

    def edge_value(self, side: int = 1, method: str = "spectral") -> float:
        """h(±1)"""
        if method == "spectral":
            return float(self.smooth(float(side)))
        if method == "extrapolate":
            return extrapolate_edge(self.nodes, self.smooth_values, side=side)
        raise ValueError(f"Unknown edge method '{method}'")

    def integrate(self, func: RHS) -> float:
        """∫ g(t) f(t) dt by the Gauss–Jacobi rule"""
        return float(np.sum(self.weights * self.smooth_values * func(self.nodes)))

    def parity_defect(self) -> Tuple[float, float]:
        """Sup-norm of the odd and even parts of h at mirrored nodes"""
        mirrored = self.smooth_values[::-1]
        return (float(np.max(np.abs(self.smooth_values - mirrored))) / 2.0,
                float(np.max(np.abs(self.smooth_values + mirrored))) / 2.0)

    def _check_compatible(self, other: "GridFunction"):
        if self.nu != other.nu or len(self.nodes) != len(other.nodes):
            raise DomainError("Grid functions live on different Gauss–Jacobi rules")

    def __add__(self, other: "GridFunction") -> "GridFunction":
        self._check_compatible(other)
        parity = self.parity if self.parity == other.parity else None
        return replace(self, smooth_values=self.smooth_values + other.smooth_values,
                       parity=parity, residual=float("nan"))

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        return self + other.scaled(-1.0)

    def scaled(self, factor: float) -> "GridFunction":
        return replace(self, smooth_values=factor * self.smooth_values, residual=float("nan"))

def _symmetrized(values: np.ndarray, parity: Optional[str]) -> np.ndarray:
    if parity == "even":
        return 0.5 * (values + values[::-1])
    if parity == "odd":
        return 0.5 * (values - values[::-1])
    return values

class NystromOperator:
    """Discretized integral operator on a Gauss–Jacobi rule"""

    def __init__(self, p: Params, n_quad: int, kind: str = "bessel", config: Optional[SolverConfig] = None):
        if n_quad < 16:
            raise DomainError(f"n_quad must be at least 16, got {n_quad}")
        self.params = p
        self.config = config or get_config().solver
        self.kind = kind
        self.rule = gauss_jacobi(p.nu, n_quad)
        self.split = KernelSplit(nu=p.nu, theta=p.theta, order=self.config.split_order, kind=kind)
        self._spectrum = power_kernel_spectrum(p.nu, n_quad)
        self._node_basis = orthonormal_basis(p.nu, n_quad, self.rule.nodes)

    @property
    def size(self) -> int:
        return self.rule.size

    def weights_at(self, x) -> np.ndarray:
        """Row x_i of the discrete operator: (Γg)(x_i) ≈ Σ_j W_ij h_j"""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        t, om = self.rule.nodes, self.rule.weights
        distance = np.abs(x[:, None] - t[None, :])
        spectral = (orthonormal_basis(self.params.nu, self.size, x).T * self._spectrum) @ self._node_basis
        singular = spectral * self.split.singular_poly(distance)
        return (self.split.regular(distance) + singular) * om[None, :]

    @cached_property
    def matrix(self) -> np.ndarray:
        return self.weights_at(self.rule.nodes)

    @cached_property
    def factorization(self):
        cond = np.linalg.cond(self.matrix)
        logger.debug(f"Nyström matrix n={self.size}, condition {cond:.3e}")
        if not np.isfinite(cond) or cond > self.config.cond_limit:
            raise IllConditionedError(f"Nyström matrix condition number {cond:.3e} exceeds "
                                      f"{self.config.cond_limit:.1e}")
        return linalg.lu_factor(self.matrix)

    def solve_values(self, rhs_values: np.ndarray) -> np.ndarray:
        return linalg.lu_solve(self.factorization, rhs_values)

    def apply(self, g: GridFunction, x) -> np.ndarray:
        """(Γg)(x), interpolating g onto this rule when the rules differ"""
        if g.nu != self.params.nu:
            raise DomainError("Grid function and operator have different orders")
        values = g.smooth_values if len(g.nodes) == self.size else g.smooth(self.rule.nodes)
        return self.weights_at(x) @ values

def residual_norm(p: Params, g: GridFunction, rhs: RHS, kind: str = "bessel",
                  config: Optional[SolverConfig] = None) -> float:
    """Sup-norm of Γg − f on a rule check_factor times finer, plus t = 0, ±1"""
    cfg = config or get_config().solver
    fine = NystromOperator(p, cfg.check_factor * len(g.nodes), kind=kind, config=cfg)
    x = np.concatenate([fine.rule.nodes, [-1.0, 0.0, 1.0]])
    return float(np.max(np.abs(fine.apply(g, x) - rhs(x))))

def solve_nystrom(p: Params, rhs: RHS, n_quad: Optional[int] = None, kind: str = "bessel",
                  parity: Optional[str] = None, check: bool = True,
                  config: Optional[SolverConfig] = None) -> GridFunction:
    """Solve Γg = rhs on a Gauss–Jacobi grid; kind="power" uses the bare |x−t|^{2ν} kernel"""
    cfg = config or get_config().solver
    n_quad = n_quad or cfg.quadrature_order(p.theta)
    op = NystromOperator(p, n_quad, kind=kind, config=cfg)
    h = _symmetrized(op.solve_values(rhs(op.rule.nodes)), parity)
    g = GridFunction(nodes=op.rule.nodes, smooth_values=h, nu=p.nu, weights=op.rule.weights, parity=parity)
    if not check:
        return g

    res = residual_norm(p, g, rhs, kind=kind, config=cfg)
    tol = cfg.tolerance_for(p.theta)
    if res > 10.0 * tol:
        logger.warning(f"Nyström residual {res:.3e} above 10×{tol:.1e} at nu={p.nu}, theta={p.theta}, n={n_quad}")
    else:
        logger.debug(f"Nyström residual {res:.3e} at nu={p.nu}, theta={p.theta}, n={n_quad}")
    return replace(g, residual=res)

def _series_smooth_part(modes: List[SpheroidalMode], t: np.ndarray) -> np.ndarray:
    amplitudes = np.array([mode.mu for mode in modes]) * plane_wave_coefficients(modes)
    terms = amplitudes[:, None] * np.stack([angular_values(mode, t) for mode in modes])
    total = terms.sum(axis=0)
    tail = float(np.max(np.abs(terms[-1])))
    if tail > 1e-10 * max(float(np.max(np.abs(total))), 1e-300):
        raise TruncationError(f"Spheroidal series not converged with {len(modes)} modes", tail_estimate=tail)
    return total

def special_solutions(p: Params, method: str = "nystrom", n_quad: Optional[int] = None,
                      n_modes: Optional[int] = None) -> Tuple[GridFunction, GridFunction]:
    """(g_c, g_s) solving Γg_c = cosh θx and Γg_s = sinh θx"""
    theta = p.theta
    cosh_rhs = lambda x: np.cosh(theta * x)
    sinh_rhs = lambda x: np.sinh(theta * x)
    if method == "nystrom":
        gc = solve_nystrom(p, cosh_rhs, n_quad=n_quad, parity="even")
        gs = solve_nystrom(p, sinh_rhs, n_quad=n_quad, parity="odd")
        logger.info(f"Special solutions by Nyström at nu={p.nu}, theta={theta}: "
                    f"residuals {gc.residual:.2e}, {gs.residual:.2e}")
        return gc, gs
    if method != "series":
        raise ValueError(f"Unknown method '{method}'")

    cfg = get_config()
    n_quad = n_quad or cfg.solver.quadrature_order(theta)
    n_modes = n_modes or cfg.spheroidal.n_modes
    rule = gauss_jacobi(p.nu, n_quad)
    out = []
    for parity, rhs in (("even", cosh_rhs), ("odd", sinh_rhs)):
        modes = angular_modes(p, parity, n_modes)
        h = _symmetrized(_series_smooth_part(modes, rule.nodes), parity)
        g = GridFunction(nodes=rule.nodes, smooth_values=h, nu=p.nu, weights=rule.weights, parity=parity)
        out.append(replace(g, residual=residual_norm(p, g, rhs, config=cfg.solver)))
    logger.info(f"Special solutions by spheroidal series at nu={p.nu}, theta={theta} with {n_modes} modes per parity")
    return out[0], out[1]

class EtaEstimate(NamedTuple):
    eta: float
    tail_estimate: float

def _edge_sum(modes: List[SpheroidalMode]) -> Tuple[float, float]:
    terms = np.array([mode.mu * x * angular_values(mode, 1.0)
                      for mode, x in zip(modes, plane_wave_coefficients(modes))])
    total = float(terms.sum())
    last, prev = abs(terms[-1]), abs(terms[-2])
    ratio = last / prev if prev > 0 else 0.0
    tail = last * ratio / (1.0 - ratio) if ratio < 1 else last
    return total, float(tail)

def eta_from_series(p: Params, M: int = 24, config: Optional[SpheroidalConfig] = None) -> EtaEstimate:
    """η as the ratio of the odd to the even spheroidal sums at the edge t = 1"""
    if M < 4:
        raise DomainError(f"M must be at least 4, got {M}")
    cfg = config or get_config().spheroidal
    numerator, tail_num = _edge_sum(angular_modes(p, "odd", M, config=cfg))
    denominator, tail_den = _edge_sum(angular_modes(p, "even", M, config=cfg))
    if abs(denominator) < 1e-300 or abs(denominator) <= 1e3 * tail_den:
        raise DegenerateModeError(f"Even-mode edge sum {denominator:.3e} is not resolved")
    eta = numerator / denominator
    tail = abs(eta) * (tail_num / max(abs(numerator), 1e-300) + tail_den / abs(denominator))
    logger.debug(f"Series eta at nu={p.nu}, theta={p.theta}: {eta:.15g} (tail {tail:.2e})")
    return EtaEstimate(eta=float(eta), tail_estimate=float(tail))

@dataclass(frozen=True)
class LaplaceData:
    """Ĝ_c(p), Ĝ_s(p) and G(1) = Ĝ_c(1) + Ĝ_s(1)"""
    Gc: float
    Gs: float
    G1: float

    @property
    def G_plus(self) -> float:
        """G(p) = Ĝ_c(p) + Ĝ_s(p)"""
        return self.Gc + self.Gs

    @property
    def G_minus(self) -> float:
        """G(−p) = Ĝ_c(p) − Ĝ_s(p)"""
        return self.Gc - self.Gs

def laplace_transforms(gc: GridFunction, gs: GridFunction, p_arg: float, theta: float) -> LaplaceData:
    """Ĝ(p) = ∫ g(t) e^{pθt} dt by Gauss–Jacobi quadrature"""
    Gc = gc.integrate(lambda t: np.exp(p_arg * theta * t))
    Gs = gs.integrate(lambda t: np.exp(p_arg * theta * t))
    G1 = gc.integrate(lambda t: np.exp(theta * t)) + gs.integrate(lambda t: np.exp(theta * t))
    return LaplaceData(Gc=Gc, Gs=Gs, G1=G1)

class EdgeCoefficients(NamedTuple):
    k_c: float
    k_s: float
    eta: float

def edge_coefficients(gc: GridFunction, gs: GridFunction, method: str = "spectral") -> EdgeCoefficients:
    """k = h(1)/2^{ν+½} for both solutions and η = k_s/k_c"""
    scale = 2.0 ** gc.edge_exponent
    k_c = gc.edge_value(1, method=method) / scale
    k_s = gs.edge_value(1, method=method) / scale
    if k_c == 0:
        raise DegenerateModeError("k_c vanishes; η is undefined")
    if method == "spectral":
        check = extrapolate_edge(gc.nodes, gc.smooth_values) / scale
        if abs(check - k_c) > 1e-6 * abs(k_c):
            logger.warning(f"Edge value of g_c: spectral {k_c:.12g} vs extrapolated {check:.12g}")
    return EdgeCoefficients(k_c=k_c, k_s=k_s, eta=k_s / k_c)

def operator_eigenvalues(p: Params, n_quad: Optional[int] = None, parity: Optional[str] = None,
                         count: int = 8) -> np.ndarray:
    """Smallest generalized eigenvalues μ of the discretized operator, ascending

    The Nyström matrix is similar to a symmetric one through the square roots
    of the Gauss–Jacobi weights, so the spectrum is computed with eigh.
    """
    n_quad = n_quad or get_config().solver.quadrature_order(p.theta)
    op = NystromOperator(p, n_quad)
    root = np.sqrt(op.rule.weights)
    sym = op.matrix * root[:, None] / root[None, :]
    sym = 0.5 * (sym + sym.T)
    kappa, vectors = np.linalg.eigh(sym)
    order = np.argsort(-np.abs(kappa))
    kappa, vectors = kappa[order], vectors[:, order]
    if parity is not None:
        sign = 1.0 if parity == "even" else -1.0
        mirrored = vectors[::-1, :]
        keep = np.sum(vectors * mirrored, axis=0) * sign > 0
        kappa = kappa[keep]
    return 1.0 / kappa[:count]

def rayleigh_quotient(mode: SpheroidalMode, p: Params, n_quad: Optional[int] = None) -> float:
    """μ_m from N_m / ⟨Y_m, Γ Y_m⟩ with the edge weight"""
    n_quad = n_quad or get_config().solver.quadrature_order(p.theta)
    op = NystromOperator(p, n_quad)
    y = angular_values(mode, op.rule.nodes)
    return float(mode.norm / np.sum(op.rule.weights * y * (op.matrix @ y)))
