"""
The mirrorphase command line.

Exit codes: 0 on success, 1 on a runtime failure (divergence, degenerate data, failed sweep)
with an error JSON on stdout, 2 on invalid flags or parameters.
Logs go to stderr. Every JSON report echoes the resolved parameters, the seed, and the schema version.
"""

# Types.
from typing import Callable, Dict, List, Optional, Any

# Logging standard lib.
import logging

# OS standard lib.
import os

# Functools standard lib.
import functools

# Path standard class.
from pathlib import Path

import click

# Version information.
from mirrorphase import SCHEMA_VERSION, __version__

# Errors.
from mirrorphase.lib.errors import (
    DivergedError,
    InvalidParameterError,
    MirrorPhaseError,
    NumericOverflowError,
    SweepFailureError,
)

# Seeding.
from mirrorphase.lib.seeding import RandomStream

# Reports.
from mirrorphase.lib.serialization import dump_json, write_json

# Signal model.
from mirrorphase.classes.signal.signal import SparseSignal, assumption_report, sample_signal
from mirrorphase.classes.signal.dataset import PhaselessDataset, observation_summary, sample_dataset

# Solver.
from mirrorphase.classes.solver.state import DEFAULT_BETA, DEFAULT_MAX_ITERS, Engine, SolverConfig
from mirrorphase.classes.solver.runner import (
    initialization_quality,
    run,
    theory_reference,
)

# Diagnostics.
from mirrorphase.classes.diagnostics.trajectory import Trajectory
from mirrorphase.classes.diagnostics.stopping import (
    WarmupTracker,
    convergence_summary,
    holdout_split,
    stopping_summary,
)

# Experiments.
from mirrorphase.experiments.sweep import (
    DEFAULT_TRIALS,
    Axis,
    FitKind,
    Metric,
    SweepResult,
    SweepSpec,
    run_sweep,
)
from mirrorphase.experiments.figures import FIGURES, FigureResult, run_figure

# Self test.
from mirrorphase.cli.selftest import run_selftest

logger: logging.Logger = logging.getLogger(__name__)

# Environment variable overriding the output directory when --output-dir isn't given.
OUTPUT_DIR_VARIABLE: str = "MIRRORPHASE_OUTPUT_DIR"

EXIT_RUNTIME: int = 1
EXIT_USAGE: int = 2


class CliConfig:
    """
    CliConfig class.
    The subcommand, its resolved parameters, and where its artifacts go.
    """

    def __init__(
        self,
        subcommand: str,
        parameters: Dict[str, Any],
        output_dir: Path,
        seed: int,
        scale: Optional[float] = None,
        threads: int = 1,
    ) -> None:
        """Constructor."""

        if subcommand not in ("solve", "sweep", "figure", "selftest"):
            raise InvalidParameterError(f"Unknown subcommand {subcommand}.")
        if threads < 1:
            raise InvalidParameterError(f"threads={threads} must be at least 1.")

        output_dir.mkdir(parents=True, exist_ok=True)
        if not os.access(output_dir, os.W_OK):
            raise InvalidParameterError(f"Output directory {output_dir} isn't writable.")

        self.subcommand: str = subcommand
        self.parameters: Dict[str, Any] = parameters
        self.output_dir: Path = output_dir
        self.seed: int = seed
        self.scale: Optional[float] = scale
        self.threads: int = threads

    def path(self, name: str) -> Path:
        return self.output_dir / name

    def to_json(self) -> Dict[str, Any]:
        """Convert a CliConfig to a transmittable format. The output directory is left out."""

        return {
            "subcommand": self.subcommand,
            "parameters": self.parameters,
            "seed": self.seed,
            "scale": self.scale,
            "threads": self.threads,
        }


def error_report(error: MirrorPhaseError) -> Dict[str, Any]:
    """Machine-readable description of a failure."""

    report: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "software_version": __version__,
        "error": type(error).__name__,
        "message": str(error),
    }
    if isinstance(error, DivergedError):
        report["iteration"] = error.iteration
        report["coordinate"] = error.coordinate
    if isinstance(error, NumericOverflowError):
        report["coordinate"] = error.coordinate
    if isinstance(error, SweepFailureError):
        report["axis_value"] = error.axis_value
    return report


def reports_errors(command: Callable[..., None]) -> Callable[..., None]:
    """Turns library errors into an error JSON on stdout and the matching exit code."""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            command(*args, **kwargs)
        except InvalidParameterError as e:
            click.echo(dump_json(error_report(e)), nl=False)
            raise SystemExit(EXIT_USAGE)
        except MirrorPhaseError as e:
            click.echo(dump_json(error_report(e)), nl=False)
            raise SystemExit(EXIT_RUNTIME)

    return wrapper


def positive_scale(_: click.Context, __: click.Parameter, value: float) -> float:
    if not value > 0:
        raise click.BadParameter("the scale factor must be positive")
    return value


def parse_values(_: click.Context, __: click.Parameter, value: str) -> List[float]:
    try:
        return [float(entry) for entry in value.split(",") if entry.strip()]
    except ValueError:
        raise click.BadParameter("expected a comma separated list of numbers")


def report_header(config: CliConfig) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "software_version": __version__,
        "seed": config.seed,
        "command": config.to_json(),
    }


@click.group()
@click.version_option(__version__)
@click.option("--verbose", is_flag=True, help="Log progress at INFO level.")
@click.option(
    "--output-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help=f"Where artifacts are written. Defaults to ${OUTPUT_DIR_VARIABLE} or the working directory.",
)
@click.pass_context
def cli(ctx: click.Context, verbose: bool, output_dir: Optional[Path]) -> None:
    """Early-stopped mirror descent for noisy sparse phase retrieval."""

    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    if output_dir is None:
        output_dir = Path(os.environ.get(OUTPUT_DIR_VARIABLE, "."))
    ctx.obj = output_dir


@cli.command()
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Dimension.")
@click.option("--m", "m", type=click.IntRange(min=1), required=True, help="Number of observations.")
@click.option("--k", "k", type=click.IntRange(min=1), required=True, help="Sparsity.")
@click.option("--sigma", type=click.FloatRange(min=0), default=0.0, show_default=True, help="Gaussian noise standard deviation.")
@click.option("--beta", type=float, default=DEFAULT_BETA, show_default=True, help="Mirror map parameter.")
@click.option("--eta", type=float, default=None, help="Step size. Defaults to 0.3 mean(Y)^(-3/2).")
@click.option("--iters", type=click.IntRange(min=1), default=DEFAULT_MAX_ITERS, show_default=True)
@click.option("--record-every", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--seed", type=click.IntRange(min=0, max=2 ** 64 - 1), default=0, show_default=True)
@click.option("--engine", type=click.Choice([engine.value for engine in Engine]), default=Engine.Dual.value, show_default=True)
@click.option("--holdout-fraction", type=float, default=None, help="Train on this share of rows and record hold-out risk on the rest.")
@click.option("--save-dataset", is_flag=True, help="Also write the dataset as CSV (sensing regenerated from its seed).")
@click.pass_obj
@reports_errors
def solve(
    output_dir: Path,
    n: int,
    m: int,
    k: int,
    sigma: float,
    beta: float,
    eta: Optional[float],
    iters: int,
    record_every: int,
    seed: int,
    engine: str,
    holdout_fraction: Optional[float],
    save_dataset: bool,
) -> None:
    """Run mirror descent once on a synthetic instance."""

    solver_config: SolverConfig = SolverConfig(beta, eta, iters, record_every, False, Engine(engine))
    config: CliConfig = CliConfig(
        "solve",
        {"n": n, "m": m, "k": k, "sigma": sigma, "holdout_fraction": holdout_fraction, **solver_config.to_json()},
        output_dir,
        seed,
    )

    rng: RandomStream = RandomStream(seed)
    signal: SparseSignal = sample_signal(n, k, rng)
    data: PhaselessDataset = sample_dataset(signal, m, sigma, rng)
    if save_dataset:
        data.to_csv(config.path("solve_dataset.csv"))

    train: PhaselessDataset = data
    validation: Optional[PhaselessDataset] = None
    if holdout_fraction is not None:
        (train, validation) = holdout_split(data, holdout_fraction, rng)

    tracker: WarmupTracker = WarmupTracker(signal)
    report: Dict[str, Any] = report_header(config)
    try:
        trajectory: Trajectory = run(train, solver_config, signal, validation, [tracker])
    except DivergedError as e:
        if e.trajectory is not None:
            e.trajectory.to_csv(config.path("solve_trajectory.csv"))
        raise

    trajectory.to_csv(config.path("solve_trajectory.csv"))
    final_dist: Optional[float] = trajectory.records[-1].dist
    stopping: Dict[str, Any] = stopping_summary(trajectory, signal, tracker.t_warmup)
    report.update(
        {
            "status": trajectory.status.value,
            "eta": trajectory.eta,
            "dataset": observation_summary(data),
            "stopping": stopping,
            "convergence": convergence_summary(trajectory, tracker.t_warmup, stopping["t_stop_oracle"]),
            "final_rel_error": None if final_dist is None else final_dist / signal.norm2,
            "assumptions": assumption_report(signal, m, sigma).to_json(),
            "initialization": initialization_quality(signal, train).to_json(),
            "theory": theory_reference(signal, train.m, sigma, beta, trajectory.eta).to_json(),
            "records": len(trajectory),
        }
    )
    write_json(config.path("solve_summary.json"), report)
    click.echo(dump_json(report["stopping"]), nl=False)


@cli.command()
@click.option("--axis", type=click.Choice([axis.value for axis in Axis]), required=True)
@click.option("--values", callback=parse_values, required=True, help="Comma separated axis values.")
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--m", "m", type=click.IntRange(min=2), required=True)
@click.option("--k", "k", type=click.IntRange(min=1), required=True)
@click.option("--noise-ratio", type=click.FloatRange(min=0), default=0.0, show_default=True, help="sigma / ||x*||^2.")
@click.option("--beta", type=float, default=DEFAULT_BETA, show_default=True)
@click.option("--eta", type=float, default=None)
@click.option("--iters", type=click.IntRange(min=1), default=DEFAULT_MAX_ITERS, show_default=True)
@click.option("--trials", type=click.IntRange(min=1), default=DEFAULT_TRIALS, show_default=True)
@click.option("--metric", "metrics", type=click.Choice([metric.value for metric in Metric]), multiple=True, default=(Metric.Oracle.value,), show_default=True)
@click.option("--fit", type=click.Choice([kind.value for kind in FitKind]), default=FitKind.Off.value, show_default=True)
@click.option("--holdout-fraction", type=float, default=0.9, show_default=True)
@click.option("--engine", type=click.Choice([engine.value for engine in Engine]), default=Engine.Dual.value, show_default=True)
@click.option("--seed", type=click.IntRange(min=0, max=2 ** 64 - 1), default=0, show_default=True)
@click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True)
@click.pass_obj
@reports_errors
def sweep(
    output_dir: Path,
    axis: str,
    values: List[float],
    n: int,
    m: int,
    k: int,
    noise_ratio: float,
    beta: float,
    eta: Optional[float],
    iters: int,
    trials: int,
    metrics: List[str],
    fit: str,
    holdout_fraction: float,
    engine: str,
    seed: int,
    threads: int,
) -> None:
    """Run a Monte Carlo sweep over one parameter."""

    chosen: List[Metric] = [Metric(metric) for metric in metrics]
    spec: SweepSpec = SweepSpec(
        Axis(axis),
        values,
        n,
        m,
        k,
        noise_ratio,
        beta,
        eta,
        iters,
        trials,
        seed,
        chosen,
        FitKind(fit),
        chosen if fit != FitKind.Off.value else [],
        holdout_fraction,
        1,
        Engine(engine),
    )
    config: CliConfig = CliConfig("sweep", spec.to_json(), output_dir, seed, None, threads)
    write_result(config, "sweep", run_sweep(spec, threads))


@cli.command()
@click.option("--name", type=click.Choice(sorted(FIGURES)), required=True)
@click.option("--scale", type=float, default=1.0, show_default=True, callback=positive_scale)
@click.option("--trials", type=click.IntRange(min=1), default=None, help="Overrides the scaled trial count.")
@click.option("--seed", type=click.IntRange(min=0, max=2 ** 64 - 1), default=0, show_default=True)
@click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True)
@click.pass_obj
@reports_errors
def figure(output_dir: Path, name: str, scale: float, trials: Optional[int], seed: int, threads: int) -> None:
    """Reproduce one of the published experiments."""

    config: CliConfig = CliConfig(
        "figure", {"name": name, "trials": trials}, output_dir, seed, scale, threads
    )
    write_result(config, f"figure-{name}", run_figure(name, scale, trials, seed, threads))


def write_result(config: CliConfig, stem: str, result: FigureResult) -> None:
    """Writes a sweep or figure CSV and its JSON summary."""

    result.write_csv(config.path(f"{stem}.csv"))
    report: Dict[str, Any] = {**result.to_json(), "command": config.to_json()}
    write_json(config.path(f"{stem}.json"), report)
    if isinstance(result, SweepResult):
        click.echo(dump_json({"fits": report["fits"], "failures": report["failures"]}), nl=False)
    else:
        click.echo(dump_json({"curves": report["curves"]}), nl=False)


@cli.command()
def selftest() -> None:
    """Run the fast invariant checks."""

    failed: int = 0
    for (name, passed, detail) in run_selftest():
        click.echo(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        if not passed:
            failed += 1
    if failed:
        raise SystemExit(EXIT_RUNTIME)
