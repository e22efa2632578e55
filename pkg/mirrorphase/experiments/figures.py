"""
Presets reproducing the published experiments, each with a scale factor for desk runs.

Scaling shrinks n and m by the factor, never letting m fall below k_max^2 or n below k_max,
and shrinks the default trial count with a floor of one. An explicit trial count wins.
Scale 1 gives the published parameters.
"""

# Types.
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Union, Any

# Logging standard lib.
import logging

# math standard lib.
import math

# CSV standard lib.
import csv

# Path standard class.
from pathlib import Path

# Version information.
from mirrorphase import SCHEMA_VERSION, __version__

# Errors.
from mirrorphase.lib.errors import DivergedError, InvalidParameterError

# Seeding.
from mirrorphase.lib.seeding import RandomStream, trial_seed

# Float formatting.
from mirrorphase.lib.serialization import format_float

# Signal model.
from mirrorphase.classes.signal.signal import SparseSignal, sample_signal
from mirrorphase.classes.signal.dataset import PhaselessDataset, sample_dataset

# Solver.
from mirrorphase.classes.solver.state import DEFAULT_BETA, DEFAULT_MAX_ITERS, SolverConfig
from mirrorphase.classes.solver.runner import run

# Diagnostics.
from mirrorphase.classes.diagnostics.trajectory import Trajectory
from mirrorphase.classes.diagnostics.stopping import WarmupTracker, stopping_summary

# Sweeps.
from mirrorphase.experiments.sweep import (
    DEFAULT_TRIALS,
    Axis,
    FitKind,
    Metric,
    SweepResult,
    SweepSpec,
    run_sweep,
)

logger: logging.Logger = logging.getLogger(__name__)

# Warm-up sweeps stop each run at T1, so their iteration cap only bounds runs which never warm up.
WARMUP_MAX_ITERS: int = 20000

FIGURE3_COLUMNS: List[str] = [
    "noise_ratio",
    "beta",
    "t",
    "risk",
    "rel_dist",
    "rel_dist_phi",
    "off_support_l1",
]

# Scale giving n = 2000 for the convergence-curve figure.
FIGURE3_DESK_SCALE: float = 0.04


def check_scale(scale: float) -> None:
    if (not math.isfinite(scale)) or (scale <= 0):
        raise InvalidParameterError(f"Scale factor {scale} must be positive.")


def scaled_trials(scale: float, trials: Optional[int]) -> int:
    if trials is not None:
        return trials
    return max(1, round(DEFAULT_TRIALS * scale))


def scaled_dimension(value: int, scale: float, floor: int) -> int:
    return max(int(round(value * scale)), floor)


def scaled_spec(
    scale: float,
    trials: Optional[int],
    seed: int,
    axis: Axis,
    values: Sequence[float],
    n: int,
    m: int,
    k_max: int,
    **fixed: Any,
) -> SweepSpec:
    """Builds a preset's SweepSpec at the given scale."""

    check_scale(scale)
    if axis == Axis.SampleSize:
        values = [scaled_dimension(int(value), scale, k_max * k_max) for value in values]
    return SweepSpec(
        axis,
        values,
        n=scaled_dimension(n, scale, k_max),
        m=scaled_dimension(m, scale, k_max * k_max),
        trials=scaled_trials(scale, trials),
        seed=seed,
        **fixed,
    )


def figure1_left_spec(scale: float = 1.0, trials: Optional[int] = None, seed: int = 0) -> SweepSpec:
    """Relative error against the noise-to-signal ratio."""

    return scaled_spec(
        scale,
        trials,
        seed,
        Axis.NoiseRatio,
        [0.05, 0.1, 0.2, 0.3, 0.4, 0.5],
        n=2000,
        m=2000,
        k_max=10,
        k=10,
        metrics=(Metric.Oracle, Metric.Holdout),
        fit=FitKind.Linear,
        fit_metrics=(Metric.Oracle, Metric.Holdout),
    )


def figure1_center_spec(scale: float = 1.0, trials: Optional[int] = None, seed: int = 0) -> SweepSpec:
    """Relative error against the sample size."""

    return scaled_spec(
        scale,
        trials,
        seed,
        Axis.SampleSize,
        list(range(1500, 5001, 500)),
        n=2000,
        m=1500,
        k_max=10,
        k=10,
        noise_ratio=0.1,
        metrics=(Metric.Oracle, Metric.Holdout),
        fit=FitKind.LogLog,
        fit_metrics=(Metric.Oracle, Metric.Holdout),
    )


def figure1_right_spec(scale: float = 1.0, trials: Optional[int] = None, seed: int = 0) -> SweepSpec:
    """Relative error against the sparsity."""

    return scaled_spec(
        scale,
        trials,
        seed,
        Axis.Sparsity,
        [5, 10, 15, 20, 25],
        n=2000,
        m=4000,
        k_max=25,
        k=5,
        noise_ratio=0.1,
        metrics=(Metric.Oracle, Metric.Holdout),
        fit=FitKind.LogLog,
        fit_metrics=(Metric.Oracle, Metric.Holdout),
    )


def figure2_warmup_beta_spec(scale: float = 1.0, trials: Optional[int] = None, seed: int = 0) -> SweepSpec:
    """
    Warm-up time against log(1 / beta).
    The published caption gives n = 1000 while the text gives n = 2000; this follows the text.
    beta is absolute where the published sweep is over beta / ||x*||. ||x*|| varies per trial,
    which shifts log(1 / beta) by a per-trial constant and leaves the fitted slope unchanged.
    """

    return scaled_spec(
        scale,
        trials,
        seed,
        Axis.Beta,
        [10.0 ** -exponent for exponent in range(4, 41, 4)],
        n=2000,
        m=1500,
        k_max=10,
        k=10,
        noise_ratio=0.1,
        t_max=WARMUP_MAX_ITERS,
        metrics=(Metric.Warmup,),
        fit=FitKind.LinearLogInverse,
        fit_metrics=(Metric.Warmup,),
        stop_at_warmup=True,
    )


def figure2_warmup_k_spec(scale: float = 1.0, trials: Optional[int] = None, seed: int = 0) -> SweepSpec:
    """Warm-up time against the sparsity. beta is absolute, as in figure2_warmup_beta_spec."""

    return scaled_spec(
        scale,
        trials,
        seed,
        Axis.Sparsity,
        [5, 10, 15, 20, 25],
        n=2000,
        m=4000,
        k_max=25,
        k=5,
        noise_ratio=0.1,
        beta=DEFAULT_BETA,
        t_max=WARMUP_MAX_ITERS,
        metrics=(Metric.Warmup,),
        fit=FitKind.Linear,
        fit_metrics=(Metric.Warmup,),
        stop_at_warmup=True,
    )


def figure1_left(scale: float = 1.0, trials: Optional[int] = None, seed: int = 0, threads: int = 1) -> SweepResult:
    return run_sweep(figure1_left_spec(scale, trials, seed), threads)


def figure1_center(scale: float = 1.0, trials: Optional[int] = None, seed: int = 0, threads: int = 1) -> SweepResult:
    return run_sweep(figure1_center_spec(scale, trials, seed), threads)


def figure1_right(scale: float = 1.0, trials: Optional[int] = None, seed: int = 0, threads: int = 1) -> SweepResult:
    return run_sweep(figure1_right_spec(scale, trials, seed), threads)


def figure2_warmup_beta(scale: float = 1.0, trials: Optional[int] = None, seed: int = 0, threads: int = 1) -> SweepResult:
    return run_sweep(figure2_warmup_beta_spec(scale, trials, seed), threads)


def figure2_warmup_k(scale: float = 1.0, trials: Optional[int] = None, seed: int = 0, threads: int = 1) -> SweepResult:
    return run_sweep(figure2_warmup_k_spec(scale, trials, seed), threads)


class Figure3Setup(NamedTuple):
    """Parameters of the convergence-curve figure."""

    n: int
    m: int
    k: int
    betas: List[float]
    noise_ratios: List[float]
    t_max: int
    record_every: int
    seed: int

    def to_json(self) -> Dict[str, Any]:
        """Convert a Figure3Setup to a transmittable format."""

        return dict(self._asdict())


class Figure3Curve:
    """Figure3Curve class. One trajectory of the convergence-curve figure."""

    def __init__(
        self,
        noise_ratio: float,
        beta: float,
        signal: SparseSignal,
        trajectory: Trajectory,
        t_warmup: Optional[int],
    ) -> None:
        """Constructor."""

        self.noise_ratio: float = noise_ratio
        self.beta: float = beta
        self.norm: float = signal.norm2
        self.trajectory: Trajectory = trajectory
        self.summary: Dict[str, Any] = stopping_summary(trajectory, signal, t_warmup)

    def rows(self) -> List[List[str]]:
        """Long-form CSV rows."""

        result: List[List[str]] = []
        for record in self.trajectory.records:
            assert (record.dist is not None) and (record.dist_phi is not None)
            result.append(
                [
                    format_float(self.noise_ratio),
                    format_float(self.beta),
                    str(record.t),
                    format_float(record.risk),
                    format_float(record.dist / self.norm),
                    format_float(record.dist_phi / self.norm),
                    format_float(record.off_support_l1),
                ]
            )
        return result

    def to_json(self) -> Dict[str, Any]:
        """Convert a Figure3Curve to a transmittable format."""

        return {
            "noise_ratio": self.noise_ratio,
            "beta": self.beta,
            "status": self.trajectory.status.value,
            "diverged_at": self.trajectory.diverged_at,
            "eta": self.trajectory.eta,
            **self.summary,
        }


class Figure3Result:
    """Figure3Result class. Every curve of the convergence-curve figure."""

    def __init__(self, setup: Figure3Setup, curves: List[Figure3Curve]) -> None:
        """Constructor."""

        self.setup: Figure3Setup = setup
        self.curves: List[Figure3Curve] = curves

    def curve(self, noise_ratio: float, beta: float) -> Figure3Curve:
        for curve in self.curves:
            if (curve.noise_ratio == noise_ratio) and (curve.beta == beta):
                return curve
        raise InvalidParameterError(f"No curve for noise ratio {noise_ratio} and beta {beta}.")

    def to_json(self) -> Dict[str, Any]:
        """Convert a Figure3Result to a transmittable format."""

        return {
            "schema_version": SCHEMA_VERSION,
            "software_version": __version__,
            "seed": self.setup.seed,
            "spec": self.setup.to_json(),
            "curves": [curve.to_json() for curve in self.curves],
        }

    def write_csv(self, path: Path) -> None:
        """Write every curve in long form."""

        with open(path, "w", newline="", encoding="utf-8") as file:
            writer: Any = csv.writer(file, lineterminator="\n")
            writer.writerow(FIGURE3_COLUMNS)
            for curve in self.curves:
                writer.writerows(curve.rows())


def figure3_setup(scale: float = 1.0, seed: int = 0, t_max: int = DEFAULT_MAX_ITERS, record_every: int = 1) -> Figure3Setup:
    """The convergence-curve parameters. Only n scales."""

    check_scale(scale)
    k: int = 10
    return Figure3Setup(
        n=scaled_dimension(50000, scale, k),
        m=1000,
        k=k,
        betas=[1e-6, 1e-8, 1e-10, 1e-12, 1e-14],
        noise_ratios=[0.0, 0.5],
        t_max=t_max,
        record_every=record_every,
        seed=seed,
    )


def figure3_curves(
    scale: float = 1.0,
    trials: Optional[int] = None,
    seed: int = 0,
    threads: int = 1,
    t_max: int = DEFAULT_MAX_ITERS,
    record_every: int = 1,
) -> Figure3Result:
    """
    Convergence curves of dist and dist_Phi for each beta, noiseless and noisy.
    One signal and dataset is drawn per noise ratio and shared by every beta.
    The figure shows single runs, so trials and threads are ignored.
    """

    setup: Figure3Setup = figure3_setup(scale, seed, t_max, record_every)
    curves: List[Figure3Curve] = []
    for j, noise_ratio in enumerate(setup.noise_ratios):
        rng: RandomStream = RandomStream(trial_seed(seed, j, 0))
        signal: SparseSignal = sample_signal(setup.n, setup.k, rng)
        data: PhaselessDataset = sample_dataset(signal, setup.m, noise_ratio * signal.norm2 ** 2, rng)

        for beta in setup.betas:
            tracker: WarmupTracker = WarmupTracker(signal)
            config: SolverConfig = SolverConfig(beta, None, setup.t_max, setup.record_every)
            trajectory: Trajectory
            try:
                trajectory = run(data, config, signal, None, [tracker])
            except DivergedError as e:
                assert e.trajectory is not None
                trajectory = e.trajectory
            curves.append(Figure3Curve(noise_ratio, beta, signal, trajectory, tracker.t_warmup))
            logger.info("Finished the curve for noise ratio %r and beta %r.", noise_ratio, beta)

    return Figure3Result(setup, curves)


FigureResult = Union[SweepResult, Figure3Result]

FIGURES: Dict[str, Callable[..., FigureResult]] = {
    "1-left": figure1_left,
    "1-center": figure1_center,
    "1-right": figure1_right,
    "2-beta": figure2_warmup_beta,
    "2-k": figure2_warmup_k,
    "3": figure3_curves,
}


def run_figure(name: str, scale: float = 1.0, trials: Optional[int] = None, seed: int = 0, threads: int = 1) -> FigureResult:
    """Runs a preset by name."""

    if name not in FIGURES:
        raise InvalidParameterError(f"Unknown figure {name}.")
    return FIGURES[name](scale, trials, seed, threads)
