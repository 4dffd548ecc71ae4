"""
Invariant suites and per-(ν, θ) reports
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .asymptotics import halfline_residual, laguerre_identity, small_theta_eta
from .exceptions import StripSolverException
from .latta import curvature, normalization_constant, zero_curvature_residual
from .painleve import EtaCurve, fit_large_theta_amplitude, integrate_eta, mccoy_family, our_B
from .solver import edge_coefficients, eta_from_series, laplace_transforms, special_solutions
from .specfun import make_params

logger = logging.getLogger(__name__)

@dataclass
class CheckResult:
    name: str
    value: float
    threshold: float
    passed: bool

    @classmethod
    def at_most(cls, name: str, value: float, threshold: float) -> "CheckResult":
        value = float(value)
        return cls(name=name, value=value, threshold=threshold, passed=bool(np.isfinite(value) and value <= threshold))

    @classmethod
    def positive(cls, name: str, value: float) -> "CheckResult":
        value = float(value)
        return cls(name=name, value=value, threshold=0.0, passed=bool(value > 0))

@dataclass
class SolveReport:
    """Residuals, cross-method discrepancies and check verdicts for one (ν, θ)"""
    nu: float
    theta: float
    residuals: Dict[str, float] = field(default_factory=dict)
    discrepancies: Dict[str, float] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(check.passed for check in self.checks)

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_records(self, suite: str) -> List[Dict]:
        if self.error is not None:
            return [{"suite": suite, "nu": self.nu, "theta": self.theta, "name": "error",
                     "value": float("nan"), "threshold": float("nan"), "passed": False}]
        return [{"suite": suite, "nu": self.nu, "theta": self.theta, **asdict(check)} for check in self.checks]

DEFAULT_NUS = (-0.25, 0.1, 0.25, 0.4)
MCCOY_NUS = tuple(np.linspace(-0.45, 0.45, 20))
DEFAULT_THETAS = (0.25, 0.5, 1.0, 2.0, 4.0)

def _guarded(nu: float, theta: float, body: Callable[[SolveReport], None]) -> SolveReport:
    report = SolveReport(nu=nu, theta=theta)
    try:
        body(report)
    except StripSolverException as e:
        logger.error(f"Check failed with an exception at nu={nu}, theta={theta}: {e}")
        report.error = str(e)
    return report

def zero_curvature_suite(nus: Sequence[float], thetas: Sequence[float], tol: float = 1e-7) -> List[SolveReport]:
    reports = []
    for nu in nus:
        fixed = float(np.linalg.norm(curvature(nu, 1.0, 0.5, 1.0, 0.0, 0.0), "fro"))
        curve = integrate_eta(nu, theta1=max(thetas) + 1.0)
        ode = curve.ode_residual()

        def body(report, theta, fixed=fixed, curve=curve, ode=ode):
            report.checks.append(CheckResult.at_most("fixed_point_curvature", fixed, 1e-13))
            report.residuals["painleve_ode"] = ode
            report.checks.append(CheckResult.at_most("painleve_ode", ode, 1e-7))
            for t in (-0.5, 0.0, 0.5):
                value = zero_curvature_residual(nu, theta, t, curve)
                report.residuals[f"curvature_t{t:+.1f}"] = value
                report.checks.append(CheckResult.at_most(f"zero_curvature_t{t:+.1f}", value, tol))
        reports.extend(_guarded(nu, theta, lambda r, th=theta: body(r, th)) for theta in thetas)
    return reports

def asymptotics_suite(nus: Sequence[float]) -> List[SolveReport]:
    reports = []
    for nu in nus:
        def body(report):
            curve = integrate_eta(nu, theta1=8.0)
            eta_small = float(curve.eta_at(1e-2))
            gap = abs(eta_small - small_theta_eta(nu, 1e-2, branch="full")) / eta_small
            report.discrepancies["small_theta_relative"] = gap
            report.checks.append(CheckResult.at_most("small_theta_connection", gap, 0.03))
            lam = np.cos(np.pi * nu) / np.pi
            lam_hat = fit_large_theta_amplitude(curve)
            report.discrepancies["lambda_hat"] = lam_hat
            report.checks.append(CheckResult.at_most("large_theta_amplitude", abs(lam_hat - lam) / lam, 0.02))
        reports.append(_guarded(nu, float("nan"), body))
    return reports

def positivity_suite(nus: Sequence[float], thetas: Sequence[float], tol: float = 1e-4) -> List[SolveReport]:
    reports = []
    for nu in nus:
        for theta in thetas:
            def body(report, theta=theta):
                p = make_params(nu, theta)
                gc, gs = special_solutions(p)
                lap = laplace_transforms(gc, gs, 1.0, theta)
                edge = edge_coefficients(gc, gs)
                report.residuals.update(g_c=gc.residual, g_s=gs.residual)
                identity = normalization_constant(nu) * theta ** (1 - nu) * lap.G1
                mismatch = abs(edge.eta * edge.k_c ** 2 - identity) / abs(identity)
                report.discrepancies["eta_kc2_identity"] = mismatch
                report.checks.append(CheckResult.positive("G1", lap.G1))
                report.checks.append(CheckResult.positive("eta", edge.eta))
                report.checks.append(CheckResult.at_most("eta_kc2_identity", mismatch, tol))
            reports.append(_guarded(nu, theta, body))
    return reports

def crosscheck_suite(nus: Sequence[float], thetas: Sequence[float], tol: float = 1e-4,
                     n_modes: Optional[int] = None) -> List[SolveReport]:
    reports = []
    for nu in nus:
        curve: Optional[EtaCurve] = None
        try:
            curve = integrate_eta(nu, theta1=max(thetas) + 1.0)
        except StripSolverException as e:
            logger.error(f"Painlevé curve unavailable at nu={nu}: {e}")
        for theta in thetas:
            def body(report, theta=theta):
                if curve is None:
                    raise StripSolverException(f"No Painlevé curve at nu={nu}")
                p = make_params(nu, theta)
                eta_ode = float(curve.eta_at(theta))
                eta_series = eta_from_series(p, n_modes or 24).eta
                eta_edge = edge_coefficients(*special_solutions(p)).eta
                report.discrepancies.update(series_ode=abs(eta_series - eta_ode), edge_ode=abs(eta_edge - eta_ode),
                                            series_edge=abs(eta_series - eta_edge))
                for name, value in report.discrepancies.items():
                    report.checks.append(CheckResult.at_most(f"eta_{name}", value, tol))
            reports.append(_guarded(nu, theta, body))
    return reports

def mccoy_suite(nus: Sequence[float]) -> List[SolveReport]:
    reports = []
    for nu in nus:
        def body(report):
            family = mccoy_family(1 - 2 * nu, nu)
            B = our_B(nu)
            report.checks.append(CheckResult.at_most("B_identity", abs(family.B - B) / abs(B), 1e-12))
            report.checks.append(CheckResult.at_most("B3_vanishes", abs(family.B3), 1e-10))
            lam = np.cos(np.pi * nu) / np.pi
            report.checks.append(CheckResult.at_most("lambda_identity", abs(family.lam - lam), 1e-12))
        reports.append(_guarded(nu, float("nan"), body))
    return reports

def wiener_hopf_suite(nus: Sequence[float]) -> List[SolveReport]:
    reports = []
    for nu in nus:
        def body(report):
            for u in (0.5, 1.0, 2.0):
                value = abs(halfline_residual(nu, u))
                report.residuals[f"halfline_u{u:g}"] = value
                report.checks.append(CheckResult.at_most(f"halfline_u{u:g}", value, 1e-5))
            for n in range(3):
                lhs, rhs = laguerre_identity(nu, n, 1.0)
                value = abs(lhs - rhs) / max(abs(rhs), 1e-300)
                report.checks.append(CheckResult.at_most(f"laguerre_n{n}", value, 1e-4))
        reports.append(_guarded(nu, float("nan"), body))
    return reports

SUITES = ("zero-curvature", "asymptotics", "positivity", "crosscheck", "mccoy", "wiener-hopf")

def run_suite(name: str, nus: Optional[Sequence[float]] = None,
              thetas: Optional[Sequence[float]] = None) -> List[SolveReport]:
    """Run one named suite (or "all") over a (ν, θ) grid"""
    if name == "all":
        return [report for suite in SUITES for report in run_suite(suite, nus, thetas)]
    mccoy_nus = list(nus) if nus else list(MCCOY_NUS)
    nus = list(nus or DEFAULT_NUS)
    thetas = list(thetas or DEFAULT_THETAS)
    runners = {
        "zero-curvature": lambda: zero_curvature_suite(nus, thetas),
        "asymptotics": lambda: asymptotics_suite(nus),
        "positivity": lambda: positivity_suite(nus, thetas),
        "crosscheck": lambda: crosscheck_suite(nus, thetas),
        "mccoy": lambda: mccoy_suite(mccoy_nus),
        "wiener-hopf": lambda: wiener_hopf_suite(nus),
    }
    if name not in runners:
        raise ValueError(f"Unknown suite '{name}'; choose from {', '.join(SUITES + ('all',))}")
    reports = runners[name]()
    logger.info(f"Suite {name}: {sum(r.passed for r in reports)}/{len(reports)} reports passed")
    return reports
