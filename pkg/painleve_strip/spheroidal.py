"""
Angular and radial spheroidal functions of the kernel's Green-function equation

The angular functions Y_m(γ) solve
    Y'' − 2ν cot γ Y' − (α − ½θ² cos 2γ) Y = 0
and are expanded in Gegenbauer polynomials C_n^{−ν}(cos γ). The radial
functions solve, in x = cosh ξ,
    (x² − 1) X'' + (1 − 2ν) x X' + (α + ½θ² − θ² x²) X = 0.
"""

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy import linalg, special
from scipy.integrate import solve_ivp

from .config import SpheroidalConfig, get_config
from .exceptions import DegenerateModeError, EigenSolveError, TruncationError, UnsupportedAnchorError
from .specfun import Params, gegenbauer_all, gegenbauer_norm

logger = logging.getLogger(__name__)

Parity = Union[int, str]

# Matching point of the Frobenius pair with the inward-integrated solution, in y = cosh ξ − 1
_Y_MATCH = 0.5

# last term of the first-kind series relative to its largest term
_RADIAL_TAIL = 1e-12

def _parity_index(parity: Parity) -> int:
    if parity in (0, "even"):
        return 0
    if parity in (1, "odd"):
        return 1
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")

def _require_series_order(nu: float):
    if nu == 0:
        raise UnsupportedAnchorError("The spheroidal series is not available at nu = 0")

def pencil_coefficients(nu: float, n) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """A_n, B_n, D_n of cos 2γ · C_n = A_n C_n + B_{n−2} C_{n−2} + D_{n+2} C_{n+2}"""
    n = np.asarray(n, dtype=float)
    a = -nu * (1.0 + nu) / ((n - nu) ** 2 - 1.0)
    b = (n - 2 * nu + 1) * (n - 2 * nu) / (2.0 * (n - nu + 2) * (n - nu + 1))
    d = (n - 1) * n / (2.0 * (n - nu - 2) * (n - nu - 1))
    return a, b, d

@dataclass(frozen=True, eq=False)
class Pencil:
    """Tridiagonal coefficient matrix acting on b_n, n = parity, parity+2, …"""
    nu: float
    theta: float
    parity: int
    indices: np.ndarray
    diagonal: np.ndarray
    upper: np.ndarray  # coefficient of b_{n+2} in row n
    lower: np.ndarray  # coefficient of b_n in row n+2

    def dense(self) -> np.ndarray:
        return np.diag(self.diagonal) + np.diag(self.upper, 1) + np.diag(self.lower, -1)

    def symmetrized(self) -> Tuple[np.ndarray, np.ndarray]:
        """Diagonal and off-diagonal of the similar symmetric matrix (scaling by √h_n)"""
        h = gegenbauer_norm(self.indices, -self.nu)
        off = self.upper * np.sqrt(h[:-1] / h[1:])
        return self.diagonal.copy(), off

def build_pencil(p: Params, parity: Parity, n_trunc: int) -> Pencil:
    """Three-diagonal pencil with diagonal ½θ²A_n − n(n−2ν) and couplings ½θ²B_n, ½θ²D_n"""
    _require_series_order(p.nu)
    if n_trunc < 8:
        raise ValueError("n_trunc must be at least 8")
    par = _parity_index(parity)
    nu, half_t2 = p.nu, 0.5 * p.theta ** 2
    n = par + 2 * np.arange(n_trunc)
    a, b, d = pencil_coefficients(nu, n)
    diagonal = half_t2 * a - n * (n - 2 * nu)
    upper = half_t2 * b[:-1]
    lower = half_t2 * d[1:]
    return Pencil(nu=nu, theta=p.theta, parity=par, indices=n, diagonal=diagonal, upper=upper, lower=lower)

@dataclass(frozen=True, eq=False)
class RadialSolution:
    """Decaying radial solution: Frobenius pair near x = 1 joined to an inward Riccati solve"""
    nu: float
    theta: float
    alpha: float
    regular_coeffs: np.ndarray
    singular_coeffs: np.ndarray
    ratio: float  # B'/A in X = A φ₀ + B' φ₁
    x_far: float
    log_amp: object  # dense solution of (w, L), L = ln X relative to x_far

    def frobenius(self, y, derivative: bool = False):
        """A = 1 combination φ₀ + ratio·φ₁ at y = x − 1 ≥ 0"""
        r = self.nu + 0.5
        v0, d0 = _power_series(self.regular_coeffs, 0.0, y)
        v1, d1 = _power_series(self.singular_coeffs, r, y)
        if derivative:
            return d0 + self.ratio * d1
        return v0 + self.ratio * v1

def _frobenius_coefficients(nu: float, theta: float, alpha: float, r: float,
                            y_max: float = _Y_MATCH, tol: float = 1e-17, max_terms: int = 600) -> np.ndarray:
    q0 = alpha - 0.5 * theta ** 2
    q1 = -2.0 * theta ** 2
    q2 = -theta ** 2
    coeffs = [1.0]
    peak = 1.0
    small_run = 0
    for k in range(1, max_terms):
        acc = coeffs[k - 1] * ((k - 1 + r) * (k + r - 1 - 2 * nu) + q0)
        if k >= 2:
            acc += q1 * coeffs[k - 2]
        if k >= 3:
            acc += q2 * coeffs[k - 3]
        ck = -acc / ((k + r) * (2 * (k + r) - 1 - 2 * nu))
        coeffs.append(ck)
        size = abs(ck) * y_max ** k
        peak = max(peak, size)
        small_run = small_run + 1 if size < tol * peak else 0
        if small_run >= 3:
            break
    else:
        raise TruncationError("Frobenius series at cosh ξ = 1 did not converge", tail_estimate=size / peak)
    return np.asarray(coeffs)

def _power_series(coeffs: np.ndarray, r: float, y):
    """Value and y-derivative of y^r Σ c_k y^k"""
    y = np.asarray(y, dtype=float)
    k = np.arange(len(coeffs))
    poly = np.polynomial.polynomial.polyval(y, coeffs)
    dpoly = np.polynomial.polynomial.polyval(y, coeffs[1:] * k[1:])
    if r == 0:
        return poly, dpoly
    with np.errstate(divide="ignore", invalid="ignore"):
        yr = np.where(y > 0, y, 1.0) ** r
        value = np.where(y > 0, yr * poly, 0.0)
        deriv = np.where(y > 0, yr * (r * poly / np.where(y > 0, y, 1.0) + dpoly), np.inf)
    return value, deriv

def _asymptotic_log_derivative(nu: float, theta: float, alpha: float, x: float) -> Tuple[float, float]:
    """X ≈ e^{−θx} x^s (1 + c₁/x): returns (X'/X, c₁)"""
    s = nu - 0.5
    kappa = alpha - s * s - s - 0.5 * theta ** 2
    c1 = -kappa / (2.0 * theta)
    w = -theta + s / x - c1 / (x * x) / (1.0 + c1 / x)
    return w, c1

def solve_radial(nu: float, theta: float, alpha: float, rtol: float = 1e-12) -> RadialSolution:
    """Decaying radial solution with A = 1 normalization at ξ = 0"""
    s = nu - 0.5
    kappa = alpha - s * s - s - 0.5 * theta ** 2
    x_match = 1.0 + _Y_MATCH
    x_far = max(max(40.0, 4.0 * abs(kappa)) / theta, 4.0 * x_match)
    w_far, _ = _asymptotic_log_derivative(nu, theta, alpha, x_far)

    def rhs(x, state):
        w = state[0]
        q = alpha + 0.5 * theta ** 2 - theta ** 2 * x * x
        dw = -((1.0 - 2.0 * nu) * x * w + q) / (x * x - 1.0) - w * w
        return [dw, w]

    sol = solve_ivp(rhs, (x_far, x_match), [w_far, 0.0], method="DOP853",
                    rtol=rtol, atol=1e-14, dense_output=True)
    if not sol.success:
        raise TruncationError(f"Radial integration failed: {sol.message}")
    w_match = sol.y[0, -1]

    regular = _frobenius_coefficients(nu, theta, alpha, 0.0)
    singular = _frobenius_coefficients(nu, theta, alpha, nu + 0.5)
    v0, d0 = _power_series(regular, 0.0, _Y_MATCH)
    v1, d1 = _power_series(singular, nu + 0.5, _Y_MATCH)
    denom = w_match * v1 - d1
    if abs(denom) < 1e-14 * (abs(d0) + abs(w_match * v0)):
        raise DegenerateModeError(f"Decaying radial solution has A ≈ 0 (alpha={alpha:.6g})")
    ratio = float((d0 - w_match * v0) / denom)

    logger.debug(f"Radial solve alpha={alpha:.8g}: x_far={x_far:.4g}, steps={sol.t.size}, B'/A={ratio:.10g}")
    return RadialSolution(nu=nu, theta=theta, alpha=alpha, regular_coeffs=regular,
                          singular_coeffs=singular, ratio=ratio, x_far=x_far, log_amp=sol.sol)

@dataclass(frozen=True, eq=False)
class SpheroidalMode:
    """One angular eigenpair with its radial data"""
    m: int
    parity: str
    alpha: float
    coeffs: np.ndarray
    indices: np.ndarray
    norm: float
    nu: float
    theta: float
    mu: float = float("nan")
    edge_A: float = float("nan")
    edge_B: float = float("nan")
    radial: Optional[RadialSolution] = None

def _refine_tail(pencil: Pencil, alpha: float, b: np.ndarray) -> np.ndarray:
    """Recompute the decaying tail of b from backward continued-fraction ratios

    The eigenvector is accurate only to absolute precision; the ratios restore
    relative precision of the tiny high-order coefficients.
    """
    diag = pencil.diagonal - alpha
    up, low = pencil.upper, pencil.lower
    size = len(b)
    ratios = np.zeros(size - 1)
    for i in range(size - 2, -1, -1):
        tail = up[i + 1] * ratios[i + 1] if i + 1 < size - 1 else 0.0
        ratios[i] = -low[i] / (diag[i + 1] + tail)

    peak = int(np.argmax(np.abs(b)))
    start = None
    for i in range(peak, size - 1):
        coupling = abs(low[i]) + (abs(up[i + 1]) if i + 1 < size - 1 else 0.0)
        if abs(diag[i + 1]) > 2.0 * coupling:
            start = i
            break
    if start is None:
        return b
    out = b.copy()
    for i in range(start, size - 1):
        out[i + 1] = out[i] * ratios[i]
    return out

def _solve_pencil(p: Params, parity: int, m_count: int, n_trunc: int):
    pencil = build_pencil(p, parity, n_trunc)
    d, e = pencil.symmetrized()
    if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
        raise EigenSolveError(f"Non-finite pencil entries at nu={p.nu}, theta={p.theta}")
    try:
        values, vectors = linalg.eigh_tridiagonal(d, e, select="i",
                                                  select_range=(n_trunc - m_count, n_trunc - 1))
    except (linalg.LinAlgError, ValueError) as exc:
        cond = np.linalg.cond(pencil.dense())
        raise EigenSolveError(f"Tridiagonal eigen-solve failed ({exc}); pencil condition {cond:.3e}") from exc

    order = np.argsort(values)[::-1]
    sqrt_h = np.sqrt(gegenbauer_norm(pencil.indices, -p.nu))
    return pencil, values[order], vectors[:, order] / sqrt_h[:, None]

def angular_modes(p: Params, parity: Parity, m_count: int, n_trunc: Optional[int] = None,
                  config: Optional[SpheroidalConfig] = None, with_radial: bool = True) -> List[SpheroidalMode]:
    """First m_count modes of a parity, α_m descending, with norms and operator eigenvalues"""
    _require_series_order(p.nu)
    cfg = config or get_config().spheroidal
    par = _parity_index(parity)
    n_trunc = n_trunc or cfg.n_trunc
    if m_count > n_trunc // 2:
        raise ValueError(f"m_count={m_count} exceeds n_trunc/2={n_trunc // 2}")

    while True:
        pencil, alphas, vectors = _solve_pencil(p, par, m_count, n_trunc)
        coeff_sets = []
        worst = 0.0
        for i in range(m_count):
            b = _refine_tail(pencil, alphas[i], vectors[:, i])
            b = b / b[np.argmax(np.abs(b))]
            coeff_sets.append(b)
            worst = max(worst, abs(b[-1]))
        radial_tail = max(float(_tail_ratio(_first_kind_terms(p.nu, p.theta, b, pencil.indices, np.zeros(1)))[0])
                          for b in coeff_sets)
        if worst <= cfg.coeff_decay and radial_tail <= _RADIAL_TAIL:
            break
        if 2 * n_trunc > cfg.max_n_trunc:
            raise TruncationError(f"Coefficient decay {worst:.3e} (radial tail {radial_tail:.1e}) not resolved "
                                  f"at n_trunc={n_trunc}", tail_estimate=worst)
        n_trunc *= 2
        logger.warning(f"Doubling spheroidal truncation to {n_trunc} (decay {worst:.2e}, radial tail {radial_tail:.1e})")

    h = gegenbauer_norm(pencil.indices, -p.nu)
    modes = []
    for i in range(m_count):
        b = coeff_sets[i]
        mode = SpheroidalMode(m=par + 2 * i, parity="even" if par == 0 else "odd", alpha=float(alphas[i]),
                              coeffs=b, indices=pencil.indices, norm=float(np.sum(b * b * h)),
                              nu=p.nu, theta=p.theta)
        if with_radial:
            radial = solve_radial(p.nu, p.theta, mode.alpha)
            mode = replace(mode, radial=radial, edge_A=1.0, edge_B=radial.ratio * 2.0 ** (-p.nu - 0.5))
            mode = replace(mode, mu=operator_eigenvalue(mode, p))
        modes.append(mode)

    logger.info(f"Built {m_count} {modes[0].parity} modes at nu={p.nu}, theta={p.theta}, n_trunc={n_trunc}")
    return modes

def angular_values(mode: SpheroidalMode, t) -> np.ndarray:
    """Y_m as a function of t = cos γ"""
    t = np.asarray(t, dtype=float)
    table = gegenbauer_all(int(mode.indices[-1]), -mode.nu, t)
    return np.tensordot(mode.coeffs, table[mode.indices], axes=(0, 0))

def angular_eval(mode: SpheroidalMode, gamma) -> np.ndarray:
    """Y_m(γ) = Σ b_n C_n^{−ν}(cos γ)"""
    result = angular_values(mode, np.cos(np.asarray(gamma, dtype=float)))
    return float(result) if np.ndim(result) == 0 else result

def _first_kind_terms(nu: float, theta: float, coeffs: np.ndarray, indices: np.ndarray,
                      xi: np.ndarray) -> np.ndarray:
    z = theta * np.cosh(xi)
    n = indices.astype(float)
    weights = coeffs * special.poch(n + 1.0, -2.0 * nu - 1.0)
    return weights[:, None] * special.iv(n[:, None] - nu, z[None, :]) * z[None, :] ** nu

def _tail_ratio(terms: np.ndarray) -> np.ndarray:
    return np.abs(terms[-1]) / np.maximum(np.max(np.abs(terms), axis=0), 1e-300)

def _first_kind(mode: SpheroidalMode, xi: np.ndarray) -> np.ndarray:
    nu = mode.nu
    terms = _first_kind_terms(nu, mode.theta, mode.coeffs, mode.indices, xi)
    if np.any(_tail_ratio(terms) > _RADIAL_TAIL):
        raise TruncationError("First-kind radial series not converged at truncation",
                              tail_estimate=float(np.max(np.abs(terms[-1]))))
    prefactor = np.pi * 2.0 ** (1.0 + nu) / (mode.norm * special.gamma(-nu))
    return prefactor * terms.sum(axis=0)

def _third_kind(mode: SpheroidalMode, xi: np.ndarray) -> np.ndarray:
    radial = mode.radial
    if radial is None:
        raise DegenerateModeError(f"Mode m={mode.m} carries no radial solution")
    nu, theta = mode.nu, mode.theta
    x = np.cosh(xi)
    y = x - 1.0
    out = np.empty_like(x)
    near = y <= _Y_MATCH
    out[near] = radial.frobenius(y[near])

    x_match = 1.0 + _Y_MATCH
    x_match_value = radial.frobenius(_Y_MATCH)
    log_match = radial.log_amp(x_match)[1]
    mid = (~near) & (x <= radial.x_far)
    if np.any(mid):
        out[mid] = x_match_value * np.exp(radial.log_amp(x[mid])[1] - log_match)
    far = x > radial.x_far
    if np.any(far):
        _, c1 = _asymptotic_log_derivative(nu, theta, radial.alpha, radial.x_far)
        s = nu - 0.5
        base = x_match_value * np.exp(radial.log_amp(radial.x_far)[1] - log_match)
        xf = x[far]
        shape = np.exp(-theta * (xf - radial.x_far)) * (xf / radial.x_far) ** s * (1.0 + c1 / xf) / (1.0 + c1 / radial.x_far)
        out[far] = base * shape
    return out

def radial_eval(mode: SpheroidalMode, xi, kind: str = "first"):
    """X̃_m(ξ) (kind='first') or the decaying X_m(ξ) with X_m(0) = 1 (kind='third')"""
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    if np.any(xi_arr < 0):
        raise ValueError("xi must be non-negative")
    if kind == "first":
        result = _first_kind(mode, xi_arr)
    elif kind == "third":
        result = _third_kind(mode, xi_arr)
    else:
        raise ValueError(f"kind must be 'first' or 'third', got {kind!r}")
    return float(result[0]) if np.ndim(xi) == 0 else result

def operator_eigenvalue(mode: SpheroidalMode, p: Params) -> float:
    """μ_m = −2^ν θ^{−ν} (2ν+1) B_m / (√π Γ(½−ν) A_m)"""
    nu, theta = p.nu, p.theta
    if not np.isfinite(mode.edge_A) or abs(mode.edge_A) < 1e-12:
        raise DegenerateModeError(f"Mode m={mode.m} has |A_m| below threshold")
    return float(-(2.0 ** nu) * theta ** (-nu) * (2 * nu + 1) * mode.edge_B
                 / (np.sqrt(np.pi) * special.gamma(0.5 - nu) * mode.edge_A))

def fit_edge_coefficients(mode: SpheroidalMode, xi_min: Optional[float] = None,
                          xi_max: Optional[float] = None, points: int = 48) -> Tuple[float, float]:
    """Least-squares (A_m, B_m) from X_m on a small-ξ stencil with two correction terms"""
    cfg = get_config().spheroidal
    xi_min = xi_min or cfg.fit_xi_min
    xi_max = xi_max or cfg.fit_xi_max
    xi = np.geomspace(xi_min, xi_max, points)
    values = radial_eval(mode, xi, kind="third")
    e = 1.0 + 2.0 * mode.nu
    design = np.column_stack([np.ones_like(xi), xi ** e, xi ** 2, xi ** (e + 2), xi ** 4])
    scale = np.max(np.abs(design), axis=0)
    solution, *_ = np.linalg.lstsq(design / scale, values, rcond=None)
    solution = solution / scale
    return float(solution[0]), float(solution[1])

def plane_wave_coefficients(modes: List[SpheroidalMode], xi: float = 0.0) -> np.ndarray:
    """X̃_m(ξ): coefficients of e^{θ cosh ξ cos γ} in the modes"""
    return np.array([radial_eval(mode, xi, kind="first") for mode in modes])
