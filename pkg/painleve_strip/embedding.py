"""
Plane-wave right-hand sides e^{−θzx} from the two special solutions

    g = Ψ − a₊g₊ − a₋g₋,   g_± = g_c ± g_s,
    θ⁻¹Ψ' + zΨ = ((z² − 1)/G(1)) [Ĝ_c(z) g_s − Ĝ_s(z) g_c],   Ψ(±1) = 0
"""

import logging
from dataclasses import dataclass, replace
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import special

from .config import get_config
from .exceptions import EmbeddingConsistencyError, PositivityViolationError
from .solver import GridFunction, LaplaceData, laplace_transforms, residual_norm, special_solutions
from .specfun import Params

logger = logging.getLogger(__name__)

def embedding_coefficients(p: Params, z: float, lap1: LaplaceData, lapz: LaplaceData) -> Tuple[float, float]:
    """a_± = −(1 ∓ z) G(∓z) / (2 G(1))"""
    if not lap1.G1 > 0:
        raise PositivityViolationError(f"G(1) = {lap1.G1:.6g} is not positive at nu={p.nu}, theta={p.theta}")
    a_plus = -(1.0 - z) * lapz.G_minus / (2.0 * lap1.G1)
    a_minus = -(1.0 + z) * lapz.G_plus / (2.0 * lap1.G1)
    return float(a_plus), float(a_minus)

@dataclass(frozen=True, eq=False)
class EmbeddingData:
    """Ψ in factored form together with the constants it was built from"""
    z: float
    psi: GridFunction
    a_plus: float
    a_minus: float
    lap1: LaplaceData
    lapz: LaplaceData

def _partial_integrals(source: GridFunction, rate: float, t: np.ndarray, order: int) -> np.ndarray:
    """I(t) = ∫_{−1}^{t} s(y)(1−y²)^{−a} e^{rate·y} dy, taken from the nearer edge"""
    a = source.edge_exponent
    u, w = special.roots_jacobi(order, 0.0, -a)
    out = np.empty_like(t)
    for i, ti in enumerate(t):
        if ti <= 0:
            span = ti + 1.0
            y = -1.0 + span * (u + 1.0) / 2.0
            far = (1.0 - y) ** (-a)
            sign = 1.0
        else:
            span = 1.0 - ti
            y = 1.0 - span * (u + 1.0) / 2.0
            far = (1.0 + y) ** (-a)
            sign = -1.0
        integrand = far * source.smooth(y) * np.exp(rate * y)
        out[i] = sign * (span / 2.0) ** (1.0 - a) * np.dot(w, integrand)
    return out

def embedding_function(p: Params, z: float, gc: GridFunction, gs: GridFunction, tol: float = 1e-8) -> EmbeddingData:
    """Ψ from the integrating factor e^{zθt}, started at t = −1"""
    theta = p.theta
    lap1 = laplace_transforms(gc, gs, 1.0, theta)
    lapz = laplace_transforms(gc, gs, z, theta)
    a_plus, a_minus = embedding_coefficients(p, z, lap1, lapz)

    factor = (z * z - 1.0) / lap1.G1
    source = gs.scaled(factor * lapz.Gc) - gc.scaled(factor * lapz.Gs)

    total = source.integrate(lambda y: np.exp(z * theta * y))
    scale = max(float(np.sum(source.weights * np.abs(source.smooth_values) * np.exp(z * theta * source.nodes))), 1e-300)
    if abs(total) > tol * scale:
        raise EmbeddingConsistencyError(f"Ψ(1) does not vanish: ∫S e^(zθy) = {total:.3e} (scale {scale:.3e})")

    t = gc.nodes
    integrals = _partial_integrals(source, z * theta, t, order=len(t))
    psi = theta * np.exp(-z * theta * t) * integrals
    psi_smooth = (1.0 - t * t) ** gc.edge_exponent * psi
    psi_grid = GridFunction(nodes=t, smooth_values=psi_smooth, nu=gc.nu, weights=gc.weights)
    return EmbeddingData(z=z, psi=psi_grid, a_plus=a_plus, a_minus=a_minus, lap1=lap1, lapz=lapz)

def psi_moments(data: EmbeddingData, theta: float) -> Dict[str, Tuple[float, float]]:
    """∫Ψe^{±θt}dt computed directly and from the Laplace data"""
    lap1, lapz = data.lap1, data.lapz
    g_one, g_minus_one = lap1.G1, 2.0 * lap1.Gc - lap1.G1
    direct_plus = data.psi.integrate(lambda t: np.exp(theta * t))
    direct_minus = data.psi.integrate(lambda t: np.exp(-theta * t))
    formula_plus = lapz.G_minus + data.a_plus * g_one + data.a_minus * g_minus_one
    formula_minus = lapz.G_plus + data.a_plus * g_minus_one + data.a_minus * g_one
    return {"plus": (direct_plus, formula_plus), "minus": (direct_minus, formula_minus)}

def plane_wave_solution(p: Params, z: float, gc: Optional[GridFunction] = None, gs: Optional[GridFunction] = None,
                        check: bool = True) -> GridFunction:
    """Solution of Γg = e^{−θzx} assembled from g_c, g_s"""
    if gc is None or gs is None:
        gc, gs = special_solutions(p, method="nystrom")
    data = embedding_function(p, z, gc, gs)
    g_plus, g_minus = gc + gs, gc - gs
    g = data.psi - g_plus.scaled(data.a_plus) - g_minus.scaled(data.a_minus)
    if not check:
        return g

    theta = p.theta
    res = residual_norm(p, g, lambda x: np.exp(-theta * z * x))
    tol = get_config().solver.tolerance_for(theta)
    if res > 10.0 * tol:
        logger.warning(f"Plane-wave residual {res:.3e} at nu={p.nu}, theta={theta}, z={z}")
    logger.info(f"Plane wave z={z} at nu={p.nu}, theta={theta}: a+={data.a_plus:.10g}, a-={data.a_minus:.10g}, residual {res:.2e}")
    return replace(g, residual=res)
