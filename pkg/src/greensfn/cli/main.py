"""Command line: greens, check, solve, spectral, funnel and presets.

Reports go to stdout as sorted-key JSON; logs and ``--metrics`` go to stderr.
"""
import argparse
import os
import sys
from typing import Any, Callable, Dict, List, Optional

from greensfn.analysis.export import solution_header, solution_rows, write_csv
from greensfn.analysis.report_generation import render_json
from greensfn.cli.builder import Problem, build_problem
from greensfn.cli.expressions import compile_scalar
from greensfn.cli.presets import PRESET_ALIASES, PRESETS, load_preset, preset_names, resolve_preset
from greensfn.cli.spec_parser import ProblemSpecParser
from greensfn.config import Settings
from greensfn.funnel import approximation_scheme, sample_funnel
from greensfn.greens import build_greens, homogeneous_lift, kernel_diagnostics, kernel_norms
from greensfn.hammerstein import (
    Selection,
    apriori_bounds,
    check_conditions,
    lipschitz_bounds,
    nemytskii,
    picard_solve,
    residual_check,
)
from greensfn.models.problem import ProblemSpec
from greensfn.spectral import build_comparison, hill_radius_for_kernel, power_iteration, radius_norm_bound
from greensfn.utils.errors import (
    ConditionError,
    ConfigurationError,
    DivergenceError,
    GreensFnError,
    IncompatibleProblemError,
    SpectralError,
)
from greensfn.utils.logger import Logger, setup_logger
from greensfn.utils.metrics import metrics

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONDITION = 2
EXIT_INCOMPATIBLE = 3
EXIT_DIVERGENCE = 4
EXIT_LOW_CONFIDENCE = 5


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors raised instead of exiting with status 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigurationError(f"{self.prog}: {message}")


def _int_list(text: str) -> List[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("spec", help="problem file (JSON or sectioned text) or preset name")
    common.add_argument("--grid", type=int, default=None, help="grid subinterval count (even)")
    common.add_argument("--out", default=None, help="output directory for CSV files")
    common.add_argument("--seed", type=int, default=None, help="seed for random starts and selections")
    common.add_argument("--metrics", action="store_true", help="print collected metrics to stderr")
    common.add_argument("--log-dir", default=None, help="directory for rotating JSON log files")
    common.add_argument("--log-level", default=None, help="console log level")

    parser = ArgumentParser(prog="greensfn", description="Green's functions and Hammerstein problems on [0, 1]")
    sub = parser.add_subparsers(dest="command", required=True)

    greens = sub.add_parser("greens", parents=[common], help="build the kernel and report its norms")
    greens.add_argument("--csv", default=None, help="write the dense kernel snapshot to this path")

    sub.add_parser("check", parents=[common], help="evaluate the existence conditions")

    solve = sub.add_parser("solve", parents=[common], help="solve by Picard iteration")
    solve.add_argument("--tol", type=float, default=None)
    solve.add_argument("--max-iter", type=int, default=None)
    solve.add_argument("--selection", choices=["nearest", "center"], default="nearest")

    spectral = sub.add_parser("spectral", parents=[common], help="spectral radius of the comparison operator")
    spectral.add_argument("--method", choices=["power", "hill", "both"], default="power")
    spectral.add_argument("--eta", default=None, help="expression in t overriding the problem's eta")
    spectral.add_argument("--lambda-max", type=float, default=None, help="upper end of the Hill scan")

    funnel = sub.add_parser("funnel", parents=[common], help="sample a solution funnel")
    funnel.add_argument("--members", type=int, default=64)
    funnel.add_argument("--perturb", type=_int_list, default=None, help="n-list of the F + x/n scheme, e.g. 4,16,64")
    funnel.add_argument("--workers", type=int, default=4)
    funnel.add_argument("--tol", type=float, default=None)
    funnel.add_argument("--max-iter", type=int, default=None)

    sub.add_parser("presets", help="list built-in problems")
    return parser


def load_spec(source: str) -> ProblemSpec:
    """A problem file path, or the name of a built-in preset."""
    if os.path.isfile(source):
        spec, _ = ProblemSpecParser().parse_file(source)
        return spec
    if resolve_preset(source) is not None:
        return load_preset(source)
    raise ConfigurationError(f"no problem file or preset named {source!r}")


def emit(report: Dict[str, Any]) -> None:
    sys.stdout.write(render_json(report))
    sys.stdout.flush()


def _header(command: str, problem: Problem) -> Dict[str, Any]:
    return {"command": command, "problem": problem.name, "n": problem.grid.n, "boundary": problem.bc.name}


def cmd_greens(problem: Problem, settings: Settings, args: argparse.Namespace) -> int:
    grid = problem.grid
    kernel = build_greens(problem.coeffs, problem.bc, grid)
    norms = kernel_norms(kernel, grid)
    report = _header("greens", problem)
    report.update({
        "determinant": kernel.determinant,
        "diagnostics": kernel_diagnostics(kernel, grid),
        "norms": norms,
        "representation": kernel.representation,
        "sign": kernel.sign(grid),
        "thresholds": norms.thresholds(),
    })
    if args.csv:
        report["csv"] = kernel.write_kernel_csv(args.csv, grid)
    emit(report)
    return EXIT_OK


def cmd_check(problem: Problem, settings: Settings, args: argparse.Namespace) -> int:
    grid, rhs = problem.grid, problem.rhs
    kernel = build_greens(problem.coeffs, problem.bc, grid)
    norms = kernel_norms(kernel, grid)
    radius = None
    if rhs.eta is not None:
        radius = power_iteration(build_comparison(kernel, rhs.eta, grid)).radius
    report = check_conditions(norms, rhs, grid, spectral_radius=radius)
    out = _header("check", problem)
    out.update({"report": report, "all_pass": report.all_evaluable_pass})
    emit(out)
    return EXIT_OK if report.all_evaluable_pass else EXIT_CONDITION


def _bounds(fn: Callable, *args: Any) -> Optional[Any]:
    try:
        return fn(*args)
    except ConditionError:
        return None


def cmd_solve(problem: Problem, settings: Settings, args: argparse.Namespace) -> int:
    grid, rhs = problem.grid, problem.rhs
    kernel = build_greens(problem.coeffs, problem.bc, grid)
    h, dh = homogeneous_lift(problem.coeffs, problem.bc, grid, rhs.dim)
    w0 = nemytskii(rhs, h, Selection.random(settings.seed))
    out = _header("solve", problem)
    out.update({"selection": args.selection, "seed": settings.seed, "tol": settings.tol})

    status = EXIT_OK
    try:
        sol = picard_solve(kernel, h, rhs, selection=args.selection, tol=settings.tol,
                           max_iter=settings.max_iter, w0=w0, dh=dh)
    except DivergenceError as e:
        sol = e.solution
        out["error"] = str(e)
        status = EXIT_DIVERGENCE

    norms = kernel_norms(kernel, grid)
    apriori = _bounds(apriori_bounds, norms, rhs, grid, h, dh)
    lipschitz = _bounds(lipschitz_bounds, norms, rhs, grid, h)
    out.update({
        "apriori": apriori,
        "lipschitz": lipschitz,
        "residual": residual_check(problem.coeffs, problem.bc, rhs, sol.x, sol.dx),
        "solution": sol.summary(),
    })
    if apriori is not None and sol.converged:
        out["within_apriori"] = bool(sol.x.sup() <= apriori.sup_norm_bound * (1.0 + 1e-3) + 1e-12)
    if args.out:
        rows = solution_rows(grid.nodes, sol.x.values, sol.dx.values, sol.w.values)
        out["csv"] = write_csv(os.path.join(args.out, f"{problem.name}_solution.csv"), solution_header(rhs.dim), rows)
    emit(out)
    return status


def cmd_spectral(problem: Problem, settings: Settings, args: argparse.Namespace) -> int:
    grid = problem.grid
    eta = compile_scalar(args.eta) if args.eta else problem.rhs.eta
    if eta is None:
        raise ConfigurationError("spectral needs eta: declare it in the problem file or pass --eta")
    kernel = build_greens(problem.coeffs, problem.bc, grid)
    out = _header("spectral", problem)
    out.update({"method": args.method, "mesh": grid.n})

    if args.method in ("power", "both"):
        est = power_iteration(build_comparison(kernel, eta, grid))
        if not est.converged:
            raise SpectralError(
                f"power iteration did not converge; radius in [{est.bracket[0]:.12g}, {est.bracket[1]:.12g}]"
            )
        out["power"] = {"radius": est.radius, "iterations": est.iterations, "bracket": est.bracket}
        out["norm_bound"] = radius_norm_bound(kernel_norms(kernel, grid), eta, grid)
    if args.method in ("hill", "both"):
        root = hill_radius_for_kernel(kernel, eta, grid, lambda_max=args.lambda_max)
        out["hill"] = {
            "radius": root.radius,
            "found": root.found,
            "root_method": root.method,
            "iterations": root.evaluations,
        }

    primary = out["power"] if "power" in out else out["hill"]
    out["radius"] = primary["radius"]
    out["iterations"] = primary["iterations"]
    if args.method == "both":
        out["gap"] = abs(out["power"]["radius"] - out["hill"]["radius"])
    emit(out)
    return EXIT_OK


def cmd_funnel(problem: Problem, settings: Settings, args: argparse.Namespace) -> int:
    grid, rhs = problem.grid, problem.rhs
    kernel = build_greens(problem.coeffs, problem.bc, grid)
    h, dh = homogeneous_lift(problem.coeffs, problem.bc, grid, rhs.dim)
    out = _header("funnel", problem)
    out["seed"] = settings.seed
    status = EXIT_OK

    if rhs.is_box or not args.perturb:
        bundle = sample_funnel(
            kernel, rhs, args.members, settings.seed, grid,
            tol=settings.tol, max_iter=settings.max_iter, h=h, dh=dh, workers=args.workers,
        )
        directory = args.out or os.path.join(os.getcwd(), f"{problem.name}_funnel")
        bundle.export(directory)
        out["bundle"] = bundle.manifest()
        out["directory"] = os.path.abspath(directory)
        if bundle.low_confidence:
            status = EXIT_LOW_CONFIDENCE
    if args.perturb:
        scheme = approximation_scheme(
            rhs, kernel, grid, args.perturb, tol=settings.tol, seed=settings.seed, max_iter=settings.max_iter,
        )
        out["scheme"] = scheme
        out["scheme_pass"] = scheme.all_pass
        if not scheme.all_pass and status == EXIT_OK:
            status = EXIT_CONDITION
    emit(out)
    return status


COMMANDS: Dict[str, Callable[[Problem, Settings, argparse.Namespace], int]] = {
    "greens": cmd_greens,
    "check": cmd_check,
    "solve": cmd_solve,
    "spectral": cmd_spectral,
    "funnel": cmd_funnel,
}


def cmd_presets() -> int:
    emit({
        "aliases": dict(PRESET_ALIASES),
        "presets": {name: PRESETS[name][0] for name in preset_names()},
    })
    return EXIT_OK


def _fail(code: int, error: Exception, **extra: Any) -> int:
    logger.error(str(error), extra={"error_type": type(error).__name__, **extra})
    sys.stderr.write(f"greensfn: {error}\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
        if args.command == "presets":
            return cmd_presets()
        settings = Settings.from_env({
            "grid": args.grid,
            "seed": args.seed,
            "tol": getattr(args, "tol", None),
            "max_iter": getattr(args, "max_iter", None),
            "log_level": args.log_level,
            "log_dir": args.log_dir,
        })
        Logger.reconfigure(log_dir=settings.log_dir, level=settings.log_level)
        problem = build_problem(load_spec(args.spec), grid=args.grid, default_grid=settings.grid)
        problem.coeffs.check(problem.grid)
        logger.info("Running command", extra={"command": args.command, "problem": problem.name, "n": problem.grid.n})
        code = COMMANDS[args.command](problem, settings, args)
    except ConfigurationError as e:
        return _fail(EXIT_USAGE, e)
    except IncompatibleProblemError as e:
        return _fail(EXIT_INCOMPATIBLE, e, determinant=e.determinant)
    except (ConditionError, SpectralError) as e:
        return _fail(EXIT_CONDITION, e)
    except DivergenceError as e:
        return _fail(EXIT_DIVERGENCE, e)
    except GreensFnError as e:
        return _fail(EXIT_USAGE, e)

    if args.metrics:
        sys.stderr.write(render_json({"metrics": metrics.export()}))
    return code


if __name__ == "__main__":
    sys.exit(main())
