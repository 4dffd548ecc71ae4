"""
Command Line Interface for painleve-strip

Tables go to stdout, diagnostics and progress to stderr.

Exit codes: 0 success, 1 failed validation, 2 usage or domain error,
3 numerical failure.
"""

import argparse
import logging
import sys
from multiprocessing import Pool
from typing import Dict, List, Optional

import numpy as np
from tqdm import tqdm

from .config import ConfigManager, StripConfig, get_config, set_config
from .embedding import plane_wave_solution
from .exceptions import ConfigurationError, DomainError, StripSolverException, UnsupportedAnchorError
from .painleve import integrate_eta, rho_from_eta
from .solver import edge_coefficients, eta_from_series, solve_nystrom, special_solutions
from .specfun import make_params
from .utils import RunUtils
from .validation import SUITES, run_suite

logger = logging.getLogger(__name__)

EXIT_FAILED_CHECK = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

ETA_METHODS = ("painleve", "series", "nystrom")

EPILOG = """\
eta columns:      theta, method, eta, rho, tail_estimate[, abs_delta_eta]
solve columns:    t, g, smooth_factor   (g = smooth_factor / (1 - t^2)^(nu + 1/2))
validate columns: suite, nu, theta, name, value, threshold, passed
"""

class UsageError(Exception):
    """Invalid flag combination"""
    pass

def _add_common_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--tol', type=float, help='Residual tolerance of the Nyström solves')
    parser.add_argument('--n-quad', type=int, help='Minimum number of Gauss-Jacobi nodes')
    parser.add_argument('--n-modes', type=int, help='Spheroidal modes per parity')
    parser.add_argument('--seed-free', action='store_true',
                        help='Accepted for compatibility; every computation is deterministic')
    parser.add_argument('--format', choices=['csv', 'json'], help='Output format (default csv)')
    parser.add_argument('--workers', type=int, help='Processes for the theta grid')
    parser.add_argument('--output', '-o', help='Output file (default stdout)')

def setup_argument_parser():
    """Setup command line argument parser"""
    parser = argparse.ArgumentParser(
        prog='painleve-strip',
        description="Strip integral equation with kernel w^nu K_nu(theta w) and its Painlevé III connection",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG
    )

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    # Eta command
    eta_parser = subparsers.add_parser('eta', help='Edge ratio eta(theta) on a grid',
                                       formatter_class=argparse.RawDescriptionHelpFormatter, epilog=EPILOG)
    eta_parser.add_argument('--nu', type=float, required=True, help='Kernel order, |nu| < 1/2')
    eta_parser.add_argument('--theta-min', type=float, default=0.1, help='First grid point')
    eta_parser.add_argument('--theta-max', type=float, default=5.0, help='Last grid point')
    eta_parser.add_argument('--points', type=int, default=50, help='Number of grid points')
    eta_parser.add_argument('--method', default='painleve',
                            help='Comma-separated subset of painleve,series,nystrom')
    _add_common_arguments(eta_parser)

    # Solve command
    solve_parser = subparsers.add_parser('solve', help='Solve the integral equation for one right-hand side',
                                         formatter_class=argparse.RawDescriptionHelpFormatter, epilog=EPILOG)
    solve_parser.add_argument('--nu', type=float, required=True, help='Kernel order, |nu| < 1/2')
    solve_parser.add_argument('--theta', type=float, required=True, help='Kernel scale, theta > 0')
    solve_parser.add_argument('--rhs', choices=['cosh', 'sinh', 'planewave'], default='cosh', help='Right-hand side')
    solve_parser.add_argument('--z', type=float, help='Plane-wave parameter for rhs exp(-theta z x)')
    _add_common_arguments(solve_parser)

    # Validate command
    validate_parser = subparsers.add_parser('validate', help='Run an invariant suite',
                                            formatter_class=argparse.RawDescriptionHelpFormatter, epilog=EPILOG)
    validate_parser.add_argument('--suite', choices=list(SUITES) + ['all'], default='all', help='Suite to run')
    validate_parser.add_argument('--nu', type=float, nargs='+', help='Kernel orders (default grid if omitted)')
    validate_parser.add_argument('--theta', type=float, nargs='+', help='Kernel scales (default grid if omitted)')
    _add_common_arguments(validate_parser)

    # Global options
    parser.add_argument('--verbose', '-v', action='store_true', help='Verbose output')
    parser.add_argument('--config', '-c', help='Configuration file')
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        default=None, help='Log level')

    return parser

def _exit_code(error: Exception) -> int:
    if isinstance(error, (UsageError, DomainError, UnsupportedAnchorError, ConfigurationError, ValueError)):
        return EXIT_USAGE
    return EXIT_NUMERICAL

def _fail(error: Exception):
    code = _exit_code(error)
    logger.error(f"{type(error).__name__}: {error}")
    print(f"Error: {error}", file=sys.stderr)
    sys.exit(code)

def apply_overrides(config: StripConfig, args) -> StripConfig:
    """Fold --tol, --n-quad, --n-modes, --format and --workers into the configuration"""
    if getattr(args, 'tol', None) is not None:
        if args.tol <= 0:
            raise UsageError("--tol must be positive")
        config.solver.tol_res = args.tol
        config.solver.tol_res_large_theta = max(args.tol, config.solver.tol_res_large_theta)
    if getattr(args, 'n_quad', None) is not None:
        if args.n_quad < 4:
            raise UsageError("--n-quad must be at least 4")
        config.solver.n_quad = args.n_quad
    if getattr(args, 'n_modes', None) is not None:
        if args.n_modes < 4:
            raise UsageError("--n-modes must be at least 4")
        config.spheroidal.n_modes = args.n_modes
    if getattr(args, 'format', None):
        config.output.format = args.format
    if getattr(args, 'workers', None) is not None:
        if args.workers < 1:
            raise UsageError("--workers must be at least 1")
        config.output.workers = args.workers
    return config

def _install_config(config: StripConfig):
    set_config(ConfigManager.from_config(config))

def parallel_map(func, tasks: List, workers: int, desc: str) -> List:
    """Ordered map over tasks, optionally across processes, with progress on stderr"""
    config = get_config()
    progress = tqdm(total=len(tasks), desc=desc, unit="pt", file=sys.stderr, disable=len(tasks) < 2)
    results = []
    with progress:
        if workers <= 1:
            for task in tasks:
                results.append(func(task))
                progress.update(1)
        else:
            with Pool(processes=workers, initializer=_install_config, initargs=(config,)) as pool:
                for result in pool.imap(func, tasks):
                    results.append(result)
                    progress.update(1)
    return results

def theta_grid(theta_min: float, theta_max: float, points: int) -> np.ndarray:
    if points < 1:
        raise UsageError("--points must be at least 1")
    if theta_min <= 0 or theta_max < theta_min:
        raise UsageError(f"Need 0 < theta-min <= theta-max, got {theta_min}, {theta_max}")
    if points == 1:
        return np.array([theta_min])
    return np.linspace(theta_min, theta_max, points)

def parse_methods(text: str, nu: float) -> List[str]:
    methods = [m.strip() for m in text.split(',') if m.strip()]
    unknown = [m for m in methods if m not in ETA_METHODS]
    if not methods or unknown:
        raise UsageError(f"Unknown method(s) {unknown or text!r}; choose from {', '.join(ETA_METHODS)}")
    if nu == 0 and any(m in ("series", "painleve") for m in methods):
        raise UnsupportedAnchorError("nu = 0 is unsupported for the series and painleve methods")
    return list(dict.fromkeys(methods))

def _eta_point(task) -> Dict:
    """η at one θ by the series or the Nyström route"""
    method, nu, theta = task
    p = make_params(nu, theta)
    if method == "series":
        estimate = eta_from_series(p, get_config().spheroidal.n_modes)
        return {"theta": theta, "method": method, "eta": estimate.eta, "tail_estimate": estimate.tail_estimate}
    edge = edge_coefficients(*special_solutions(p, method="nystrom"))
    return {"theta": theta, "method": method, "eta": edge.eta, "tail_estimate": float("nan")}

def _finite_difference_rho(nu: float, rows: List[Dict]):
    # η' from the grid itself; needs at least three points
    if len(rows) < 3:
        for row in rows:
            row["rho"] = float("nan")
        return
    thetas = np.array([row["theta"] for row in rows])
    eta = np.array([row["eta"] for row in rows])
    eta_p = np.gradient(eta, thetas, edge_order=2)
    for row, value in zip(rows, rho_from_eta(nu, thetas, eta, eta_p)):
        row["rho"] = float(value)

def eta_table(nu: float, thetas: np.ndarray, methods: List[str], workers: int = 1) -> List[Dict]:
    """Rows (theta, method, eta, rho, tail_estimate) ordered by θ, then by method"""
    make_params(nu, float(thetas[0]))
    by_method: Dict[str, List[Dict]] = {}
    if "painleve" in methods:
        curve = integrate_eta(nu, theta1=float(thetas[-1]) if thetas[-1] > thetas[0] else float(thetas[0]) + 1.0)
        eta, _, rho = curve.interpolate(thetas)
        by_method["painleve"] = [{"theta": float(th), "method": "painleve", "eta": float(e), "rho": float(r),
                                  "tail_estimate": float("nan")} for th, e, r in zip(thetas, eta, rho)]

    for method in (m for m in methods if m != "painleve"):
        tasks = [(method, nu, float(theta)) for theta in thetas]
        rows = parallel_map(_eta_point, tasks, workers, desc=f"eta[{method}]")
        _finite_difference_rho(nu, rows)
        by_method[method] = rows

    table = []
    for i in range(len(thetas)):
        group = [by_method[m][i] for m in methods]
        if len(methods) > 1:
            for row in group:
                row["abs_delta_eta"] = max(abs(row["eta"] - other["eta"]) for other in group if other is not row)
        table.extend(group)
    columns = ["theta", "method", "eta", "rho", "tail_estimate"] + (["abs_delta_eta"] if len(methods) > 1 else [])
    return [{column: row[column] for column in columns} for row in table]

def _emit(rows: List[Dict], args, meta: Dict):
    out = get_config().output
    content = RunUtils.format_table(rows, fmt=out.format, precision=out.precision,
                                    schema_version=out.schema_version, meta=meta)
    RunUtils.write_output(content, args.output)

def handle_eta_command(args):
    """Handle the eta command"""
    try:
        methods = parse_methods(args.method, args.nu)
        thetas = theta_grid(args.theta_min, args.theta_max, args.points)
        rows = eta_table(args.nu, thetas, methods, workers=get_config().output.workers)
        _emit(rows, args, {"command": "eta", "nu": args.nu, "methods": methods})

        if args.verbose:
            print(f"Computed eta at {len(thetas)} points by {', '.join(methods)}", file=sys.stderr)

    except (UsageError, StripSolverException, ValueError) as e:
        _fail(e)

def solve_table(nu: float, theta: float, rhs: str, z: Optional[float] = None):
    """Grid solution for one right-hand side and its residual"""
    p = make_params(nu, theta)
    if rhs == "planewave":
        if z is None:
            raise UsageError("--rhs planewave requires --z")
        g = plane_wave_solution(p, z)
    elif rhs == "cosh":
        g = solve_nystrom(p, lambda x: np.cosh(theta * x), parity="even")
    elif rhs == "sinh":
        g = solve_nystrom(p, lambda x: np.sinh(theta * x), parity="odd")
    else:
        raise UsageError(f"Unknown rhs '{rhs}'")

    values = g(g.nodes)
    rows = [{"t": float(t), "g": float(v), "smooth_factor": float(h)}
            for t, v, h in zip(g.nodes, values, g.smooth_values)]
    return rows, g.residual

def handle_solve_command(args):
    """Handle the solve command"""
    try:
        rows, residual = solve_table(args.nu, args.theta, args.rhs, args.z)
        meta = {"command": "solve", "nu": args.nu, "theta": args.theta, "rhs": args.rhs,
                "z": args.z, "residual": residual}
        _emit(rows, args, meta)
        print(f"residual={residual:.6e} nodes={len(rows)}", file=sys.stderr)

    except (UsageError, StripSolverException, ValueError) as e:
        _fail(e)

def handle_validate_command(args):
    """Handle the validate command"""
    try:
        names = list(SUITES) if args.suite == "all" else [args.suite]
        records, failures = [], []
        for name in names:
            for report in run_suite(name, args.nu, args.theta):
                records.extend(report.to_records(name))
                if report.error is not None:
                    failures.append(f"{name} nu={report.nu} theta={report.theta}: {report.error}")
                failures.extend(f"{name} nu={report.nu} theta={report.theta}: {check.name} = {check.value:.6g} "
                                f"(threshold {check.threshold:.3g})" for check in report.failures())
        _emit(records, args, {"command": "validate", "suite": args.suite, "passed": not failures})

        if failures:
            for line in failures:
                print(f"FAILED {line}", file=sys.stderr)
            sys.exit(EXIT_FAILED_CHECK)
        if args.verbose:
            print(f"All {len(records)} checks passed", file=sys.stderr)

    except (UsageError, StripSolverException, ValueError) as e:
        _fail(e)

def main(argv: Optional[List[str]] = None):
    """Main CLI entry point"""
    parser = setup_argument_parser()
    args = parser.parse_args(argv)

    # Load configuration if provided
    try:
        manager = ConfigManager(args.config)
        manager.update_from_env()
        apply_overrides(manager.config, args)
    except (UsageError, ConfigurationError) as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_USAGE)
    set_config(manager)

    # Setup logging
    log_cfg = manager.config.logging
    RunUtils.setup_logging(args.log_level or log_cfg.level, log_cfg.file_path, log_cfg.format)
    if getattr(args, 'seed_free', False):
        logger.debug("--seed-free given; no random numbers are drawn anywhere")

    # Handle commands
    if args.command == 'eta':
        handle_eta_command(args)
    elif args.command == 'solve':
        handle_solve_command(args)
    elif args.command == 'validate':
        handle_validate_command(args)
    else:
        parser.print_help()

if __name__ == '__main__':
    main()
