"""
Strip integral equation with kernel w^ν K_ν(θw), its spheroidal series
solution and the Painlevé III function governing its edge behaviour
"""

__version__ = "1.0.0"

from typing import Callable, Dict, Optional, Tuple

from .config import ConfigManager, StripConfig, get_config, reset_config, set_config
from .specfun import KernelSplit, Params, kernel_eval, kernel_fourier, make_params
from .spheroidal import SpheroidalMode, angular_modes, radial_eval
from .solver import (EdgeCoefficients, GridFunction, LaplaceData, edge_coefficients, eta_from_series,
                     laplace_transforms, solve_nystrom, special_solutions)
from .painleve import EtaCurve, integrate_eta, painleve_rhs
from .latta import LaxPair, normalization_constant, reconstruct_solutions, zero_curvature_residual
from .embedding import plane_wave_solution
from .asymptotics import large_theta_eta, small_theta_eta
from .validation import CheckResult, SolveReport, run_suite
from .exceptions import (
    StripSolverException,
    DomainError,
    PoleError,
    SingularityError,
    IllConditionedError,
    TruncationError,
    DegenerateModeError,
    EigenSolveError,
    EdgeFitError,
    CompatibilityError,
    PositivityViolationError,
    EmbeddingConsistencyError,
    UnsupportedAnchorError,
    ConvergenceError,
    ConfigurationError
)

# Main API class
class StripEquation:
    """
    One instance of the integral equation at fixed (ν, θ), tying together
    the Nyström, spheroidal-series and Painlevé routes
    """

    def __init__(self, nu: float, theta: float, n_quad: Optional[int] = None, n_modes: Optional[int] = None):
        """
        Args:
            nu: kernel order, |ν| < 1/2
            theta: kernel scale, θ > 0
            n_quad: Gauss–Jacobi nodes (default from configuration)
            n_modes: spheroidal modes per parity (default from configuration)
        """
        self.params = make_params(nu, theta)
        self.n_quad = n_quad
        self.n_modes = n_modes or get_config().spheroidal.n_modes
        self._solutions: Dict[str, Tuple[GridFunction, GridFunction]] = {}
        self._curve: Optional[EtaCurve] = None

    @property
    def nu(self) -> float:
        return self.params.nu

    @property
    def theta(self) -> float:
        return self.params.theta

    def special_solutions(self, method: str = "nystrom") -> Tuple[GridFunction, GridFunction]:
        """(g_c, g_s), cached per method"""
        if method not in self._solutions:
            self._solutions[method] = special_solutions(self.params, method=method, n_quad=self.n_quad,
                                                        n_modes=self.n_modes)
        return self._solutions[method]

    def curve(self) -> EtaCurve:
        if self._curve is None:
            self._curve = integrate_eta(self.nu, theta1=max(self.theta + 1.0, 8.0))
        return self._curve

    def eta(self, method: str = "nystrom") -> float:
        """Edge ratio g_s(1)/g_c(1) by "nystrom", "series" or "painleve" """
        if method == "nystrom":
            return edge_coefficients(*self.special_solutions("nystrom")).eta
        if method == "series":
            return eta_from_series(self.params, self.n_modes).eta
        if method == "painleve":
            return float(self.curve().eta_at(self.theta))
        raise ValueError(f"Unknown method '{method}'")

    def solve(self, rhs: Callable, parity: Optional[str] = None) -> GridFunction:
        return solve_nystrom(self.params, rhs, n_quad=self.n_quad, parity=parity)

    def plane_wave(self, z: float) -> GridFunction:
        """Solution for the right-hand side e^{−θzx}"""
        gc, gs = self.special_solutions("nystrom")
        return plane_wave_solution(self.params, z, gc, gs)

    def report(self, tol: float = 1e-4) -> SolveReport:
        """Residuals, three-way η agreement and positivity checks at this (ν, θ)"""
        report = SolveReport(nu=self.nu, theta=self.theta)
        gc, gs = self.special_solutions("nystrom")
        report.residuals.update(g_c=gc.residual, g_s=gs.residual)

        edge = edge_coefficients(gc, gs)
        lap = laplace_transforms(gc, gs, 1.0, self.theta)
        report.checks.append(CheckResult.positive("G1", lap.G1))
        report.checks.append(CheckResult.positive("eta", edge.eta))
        report.checks.append(CheckResult.at_most("residual_g_c", gc.residual,
                                                 10.0 * get_config().solver.tolerance_for(self.theta)))

        if self.nu != 0:
            etas = {"nystrom": edge.eta, "series": self.eta("series"), "painleve": self.eta("painleve")}
            for first, second in (("series", "nystrom"), ("painleve", "nystrom"), ("series", "painleve")):
                gap = abs(etas[first] - etas[second])
                report.discrepancies[f"{first}_{second}"] = gap
                report.checks.append(CheckResult.at_most(f"eta_{first}_{second}", gap, tol))
            identity = normalization_constant(self.nu) * self.theta ** (1 - self.nu) * lap.G1
            mismatch = abs(edge.eta * edge.k_c ** 2 - identity) / abs(identity)
            report.discrepancies["eta_kc2_identity"] = mismatch
            report.checks.append(CheckResult.at_most("eta_kc2_identity", mismatch, tol))
        return report

    def get_info(self) -> Dict:
        return {
            "nu": self.nu,
            "theta": self.theta,
            "n_quad": self.n_quad or get_config().solver.quadrature_order(self.theta),
            "n_modes": self.n_modes,
            "solved_methods": sorted(self._solutions),
        }

# Convenience functions
def compute_eta(nu: float, theta: float, method: str = "nystrom", **kwargs) -> float:
    """η(ν, θ) by the chosen route"""
    return StripEquation(nu, theta, **kwargs).eta(method)

def solve_strip(nu: float, theta: float, rhs: Callable, parity: Optional[str] = None, **kwargs) -> GridFunction:
    """Solve ∫K(|x−t|)g(t)dt = rhs(x) on [−1, 1]"""
    return StripEquation(nu, theta, **kwargs).solve(rhs, parity=parity)

__all__ = [
    "StripEquation",
    "compute_eta",
    "solve_strip",
    "Params",
    "make_params",
    "KernelSplit",
    "kernel_eval",
    "kernel_fourier",
    "SpheroidalMode",
    "angular_modes",
    "radial_eval",
    "GridFunction",
    "EdgeCoefficients",
    "LaplaceData",
    "edge_coefficients",
    "eta_from_series",
    "laplace_transforms",
    "solve_nystrom",
    "special_solutions",
    "EtaCurve",
    "integrate_eta",
    "painleve_rhs",
    "reconstruct_solutions",
    "LaxPair",
    "zero_curvature_residual",
    "plane_wave_solution",
    "small_theta_eta",
    "large_theta_eta",
    "CheckResult",
    "SolveReport",
    "run_suite",
    "ConfigManager",
    "StripConfig",
    "get_config",
    "set_config",
    "reset_config",
    "StripSolverException",
    "DomainError",
    "PoleError",
    "SingularityError",
    "IllConditionedError",
    "TruncationError",
    "DegenerateModeError",
    "EigenSolveError",
    "EdgeFitError",
    "CompatibilityError",
    "PositivityViolationError",
    "EmbeddingConsistencyError",
    "UnsupportedAnchorError",
    "ConvergenceError",
    "ConfigurationError",
]
