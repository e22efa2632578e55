"""
Monte Carlo sweeps over one parameter axis.

Trial i at axis position j draws everything from RandomStream(H(master, j, i)), where H is
the mixing function of mirrorphase.lib.seeding. Each trial draws a fresh signal and a fresh
dataset, optionally splits off a validation part, runs the solver, and applies the requested
stopping rules. Outcomes are sorted by (axis position, trial) before aggregation, so results
don't depend on the order trials finished in.
"""

# Types.
from typing import Dict, List, Tuple, NamedTuple, Optional, Sequence, Any

# Enum class.
from enum import Enum

# Logging standard lib.
import logging

# math standard lib.
import math

# CSV standard lib.
import csv

# Path standard class.
from pathlib import Path

# Worker pool.
from concurrent.futures import ProcessPoolExecutor

# Repeat iterator.
from itertools import repeat

import numpy as np

# Rank correlation.
from scipy.stats import spearmanr

# Version information.
from mirrorphase import SCHEMA_VERSION, __version__

# Errors.
from mirrorphase.lib.errors import (
    DegenerateDataError,
    DivergedError,
    InvalidParameterError,
    SweepFailureError,
)

# Seeding.
from mirrorphase.lib.seeding import RandomStream, trial_seed

# Float formatting.
from mirrorphase.lib.serialization import format_float

# Signal model.
from mirrorphase.classes.signal.signal import SparseSignal, sample_signal
from mirrorphase.classes.signal.dataset import PhaselessDataset, sample_dataset

# Solver.
from mirrorphase.classes.solver.state import DEFAULT_BETA, DEFAULT_MAX_ITERS, Engine, SolverConfig
from mirrorphase.classes.solver.runner import run

# Diagnostics.
from mirrorphase.classes.diagnostics.trajectory import Trajectory
from mirrorphase.classes.diagnostics.stopping import (
    DEFAULT_HOLDOUT_FRACTION,
    WarmupTracker,
    holdout_split,
    stopping_summary,
)

logger: logging.Logger = logging.getLogger(__name__)

# Axis values with a larger share of failed trials are left out of fits.
FIT_FAILURE_LIMIT: float = 0.2

# Points a fit needs.
MIN_FIT_POINTS: int = 3

# Default number of trials per axis value.
DEFAULT_TRIALS: int = 100

SWEEP_COLUMNS: List[str] = [
    "axis_value",
    "trial",
    "seed",
    "metric_oracle",
    "metric_holdout",
    "t_warmup",
    "t_stop",
    "status",
    "t_stop_holdout",
]


class Axis(Enum):
    NoiseRatio = "noise_ratio"
    SampleSize = "m"
    Sparsity = "k"
    Beta = "beta"


class Metric(Enum):
    Oracle = "oracle"
    Holdout = "holdout"
    Warmup = "warmup"


class FitKind(Enum):
    # log y against log x.
    LogLog = "loglog"
    # y against x.
    Linear = "linear"
    # y against log(1 / x).
    LinearLogInverse = "linear_log_inverse"
    Off = "none"


class TrialStatus(Enum):
    Completed = "completed"
    Diverged = "diverged"
    Degenerate = "degenerate"


class SweepSpec:
    """
    SweepSpec class.
    Fixed parameters of a sweep plus exactly one swept axis.
    The noise level is given as sigma / ||x*||^2; each trial scales it by its own signal's norm.
    """

    def __init__(
        self,
        axis: Axis,
        values: Sequence[float],
        n: int,
        m: int,
        k: int,
        noise_ratio: float = 0.0,
        beta: float = DEFAULT_BETA,
        eta: Optional[float] = None,
        t_max: int = DEFAULT_MAX_ITERS,
        trials: int = DEFAULT_TRIALS,
        seed: int = 0,
        metrics: Sequence[Metric] = (Metric.Oracle,),
        fit: FitKind = FitKind.Off,
        fit_metrics: Sequence[Metric] = (),
        holdout_fraction: float = DEFAULT_HOLDOUT_FRACTION,
        record_every: int = 1,
        engine: Engine = Engine.Dual,
        stop_at_warmup: bool = False,
    ) -> None:
        """Constructor."""

        if not values:
            raise InvalidParameterError("A sweep needs at least one axis value.")
        if trials < 1:
            raise InvalidParameterError(f"trials={trials} must be at least 1.")
        if not metrics:
            raise InvalidParameterError("A sweep needs at least one metric.")
        for metric in fit_metrics:
            if metric not in metrics:
                raise InvalidParameterError(f"Fitted metric {metric.value} isn't evaluated.")
        if stop_at_warmup and (tuple(metrics) != (Metric.Warmup,)):
            raise InvalidParameterError("Stopping at the warm-up only applies to warm-up sweeps.")

        self.axis: Axis = axis
        self.values: List[float] = [float(value) for value in values]
        if axis in (Axis.SampleSize, Axis.Sparsity):
            if any(value != int(value) for value in self.values):
                raise InvalidParameterError(f"Axis {axis.value} takes integer values.")

        self.n: int = n
        self.m: int = m
        self.k: int = k
        self.noise_ratio: float = noise_ratio
        self.beta: float = beta
        self.eta: Optional[float] = eta
        self.t_max: int = t_max
        self.trials: int = trials
        self.seed: int = seed
        self.metrics: Tuple[Metric, ...] = tuple(metrics)
        self.fit: FitKind = fit
        self.fit_metrics: Tuple[Metric, ...] = tuple(fit_metrics)
        self.holdout_fraction: float = holdout_fraction
        self.record_every: int = record_every
        self.engine: Engine = engine
        self.stop_at_warmup: bool = stop_at_warmup

        # Validates every solver setting the sweep will use.
        for j in range(len(self.values)):
            self.solver_config(j)
            parameters: Dict[str, Any] = self.parameters_at(j)
            if not (1 <= parameters["k"] <= parameters["n"]):
                raise InvalidParameterError(f"Sparsity k={parameters['k']} out of range at position {j}.")
            if parameters["m"] < 2:
                raise InvalidParameterError(f"Sample count m={parameters['m']} is too small.")
            if parameters["noise_ratio"] < 0:
                raise InvalidParameterError("Noise ratio must be nonnegative.")

    def parameters_at(self, axis_index: int) -> Dict[str, Any]:
        """The full parameter set at an axis position."""

        parameters: Dict[str, Any] = {
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "noise_ratio": self.noise_ratio,
            "beta": self.beta,
        }
        value: float = self.values[axis_index]
        if self.axis in (Axis.SampleSize, Axis.Sparsity):
            parameters[self.axis.value] = int(value)
        else:
            parameters[self.axis.value] = value
        return parameters

    def solver_config(self, axis_index: int) -> SolverConfig:
        return SolverConfig(
            self.parameters_at(axis_index)["beta"],
            self.eta,
            self.t_max,
            self.record_every,
            False,
            self.engine,
        )

    def to_json(self) -> Dict[str, Any]:
        """Convert a SweepSpec to a transmittable format."""

        return {
            "axis": self.axis.value,
            "values": self.values,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "noise_ratio": self.noise_ratio,
            "beta": self.beta,
            "eta": "auto" if self.eta is None else self.eta,
            "t_max": self.t_max,
            "trials": self.trials,
            "seed": self.seed,
            "metrics": [metric.value for metric in self.metrics],
            "fit": self.fit.value,
            "fit_metrics": [metric.value for metric in self.fit_metrics],
            "holdout_fraction": self.holdout_fraction,
            "record_every": self.record_every,
            "engine": self.engine.value,
            "stop_at_warmup": self.stop_at_warmup,
        }

    @staticmethod
    def from_json(spec: Dict[str, Any]) -> "SweepSpec":
        """Load a SweepSpec from JSON."""

        return SweepSpec(
            Axis(spec["axis"]),
            spec["values"],
            spec["n"],
            spec["m"],
            spec["k"],
            spec["noise_ratio"],
            spec["beta"],
            None if spec["eta"] == "auto" else spec["eta"],
            spec["t_max"],
            spec["trials"],
            spec["seed"],
            [Metric(metric) for metric in spec["metrics"]],
            FitKind(spec["fit"]),
            [Metric(metric) for metric in spec["fit_metrics"]],
            spec["holdout_fraction"],
            spec["record_every"],
            Engine(spec["engine"]),
            spec["stop_at_warmup"],
        )


class TrialOutcome(NamedTuple):
    """One trial's stopping metrics. Metrics are None when not requested or the trial failed."""

    axis_index: int
    axis_value: float
    trial: int
    seed: int
    status: TrialStatus
    metric_oracle: Optional[float]
    metric_holdout: Optional[float]
    t_warmup: Optional[int]
    t_stop: Optional[int]
    t_stop_holdout: Optional[int]

    def metric(self, metric: Metric) -> Optional[float]:
        if metric == Metric.Oracle:
            return self.metric_oracle
        if metric == Metric.Holdout:
            return self.metric_holdout
        return None if self.t_warmup is None else float(self.t_warmup)

    def row(self) -> List[str]:
        """CSV row."""

        return [
            format_float(self.axis_value),
            str(self.trial),
            str(self.seed),
            format_float(self.metric_oracle),
            format_float(self.metric_holdout),
            "" if self.t_warmup is None else str(self.t_warmup),
            "" if self.t_stop is None else str(self.t_stop),
            self.status.value,
            "" if self.t_stop_holdout is None else str(self.t_stop_holdout),
        ]


def draw_instance(
    spec: SweepSpec, axis_index: int, seed: int
) -> Tuple[SparseSignal, PhaselessDataset]:
    """The signal and dataset of one trial."""

    parameters: Dict[str, Any] = spec.parameters_at(axis_index)
    rng: RandomStream = RandomStream(seed)
    signal: SparseSignal = sample_signal(parameters["n"], parameters["k"], rng)
    sigma: float = parameters["noise_ratio"] * signal.norm2 ** 2
    return (signal, sample_dataset(signal, parameters["m"], sigma, rng))


def run_trial(spec: SweepSpec, axis_index: int, trial: int) -> TrialOutcome:
    """
    Runs one trial.
    With the hold-out metric requested, the solver runs on the training part only and both
    stopping rules read that single trajectory.
    """

    seed: int = trial_seed(spec.seed, axis_index, trial)
    axis_value: float = spec.values[axis_index]

    signal: SparseSignal
    data: PhaselessDataset
    (signal, data) = draw_instance(spec, axis_index, seed)

    train: PhaselessDataset = data
    validation: Optional[PhaselessDataset] = None
    if Metric.Holdout in spec.metrics:
        (train, validation) = holdout_split(data, spec.holdout_fraction, RandomStream(seed))

    tracker: Optional[WarmupTracker] = None
    if Metric.Warmup in spec.metrics:
        tracker = WarmupTracker(signal)

    def reached(_: int) -> bool:
        return (tracker is not None) and (tracker.t_warmup is not None)

    try:
        trajectory: Trajectory = run(
            train,
            spec.solver_config(axis_index),
            signal,
            validation,
            [] if tracker is None else [tracker],
            reached if spec.stop_at_warmup else None,
        )
    except DivergedError as e:
        logger.debug("Trial %d at %s=%r diverged at iteration %d.", trial, spec.axis.value, axis_value, e.iteration)
        return TrialOutcome(axis_index, axis_value, trial, seed, TrialStatus.Diverged, None, None, None, None, None)
    except DegenerateDataError:
        logger.debug("Trial %d at %s=%r has degenerate data.", trial, spec.axis.value, axis_value)
        return TrialOutcome(axis_index, axis_value, trial, seed, TrialStatus.Degenerate, None, None, None, None, None)

    summary: Dict[str, Any] = stopping_summary(
        trajectory, signal, None if tracker is None else tracker.t_warmup
    )
    oracle: bool = Metric.Oracle in spec.metrics
    return TrialOutcome(
        axis_index,
        axis_value,
        trial,
        seed,
        TrialStatus.Completed,
        summary["min_rel_error"] if oracle else None,
        summary["holdout_rel_error"],
        summary["t_warmup"],
        summary["t_stop_oracle"] if oracle else None,
        summary["t_stop_holdout"],
    )


class MetricSummary(NamedTuple):
    """Mean and sample standard deviation of a metric over the trials that produced it."""

    mean: float
    std: float
    count: int

    def to_json(self) -> Dict[str, Any]:
        """Convert a MetricSummary to a transmittable format."""

        return dict(self._asdict())


def summarize(values: List[float]) -> MetricSummary:
    if not values:
        return MetricSummary(math.nan, math.nan, 0)
    array: np.ndarray = np.array(values, dtype=np.float64)
    std: float = float(np.std(array, ddof=1)) if array.size > 1 else 0.0
    return MetricSummary(float(np.mean(array)), std, int(array.size))


class AxisSummary:
    """AxisSummary class. Aggregates of every trial at one axis value."""

    def __init__(self, axis_value: float, outcomes: List[TrialOutcome], metrics: Sequence[Metric]) -> None:
        """Constructor."""

        self.axis_value: float = axis_value
        self.trials: int = len(outcomes)
        self.successes: int = sum(1 for outcome in outcomes if outcome.status == TrialStatus.Completed)
        self.failures: int = self.trials - self.successes

        self.metrics: Dict[Metric, MetricSummary] = {}
        for metric in metrics:
            values: List[float] = []
            for outcome in outcomes:
                value: Optional[float] = outcome.metric(metric)
                if (outcome.status == TrialStatus.Completed) and (value is not None):
                    values.append(value)
            self.metrics[metric] = summarize(values)

    @property
    def failure_share(self) -> float:
        return self.failures / self.trials

    def to_json(self) -> Dict[str, Any]:
        """Convert an AxisSummary to a transmittable format."""

        return {
            "axis_value": self.axis_value,
            "trials": self.trials,
            "successes": self.successes,
            "failures": self.failures,
            "metrics": {metric.value: self.metrics[metric].to_json() for metric in self.metrics},
        }


class SlopeFit(NamedTuple):
    """Ordinary least squares line through transformed points."""

    slope: float
    intercept: float
    r_squared: float

    def to_json(self) -> Dict[str, Any]:
        """Convert a SlopeFit to a transmittable format."""

        return dict(self._asdict())


def least_squares(xs: np.ndarray, ys: np.ndarray) -> SlopeFit:
    """Fits ys = slope xs + intercept and reports R^2 (1 for an exact fit of constant data)."""

    (slope, intercept) = np.polyfit(xs, ys, 1)
    residuals: np.ndarray = ys - (slope * xs + intercept)
    ss_res: float = float(residuals @ residuals)
    centered: np.ndarray = ys - np.mean(ys)
    ss_tot: float = float(centered @ centered)
    if ss_tot == 0:
        r_squared: float = 1.0 if ss_res <= 1e-24 * max(1.0, float(ys @ ys)) else 0.0
    else:
        r_squared = 1.0 - ss_res / ss_tot
    return SlopeFit(float(slope), float(intercept), r_squared)


def fit_points(xs: Sequence[float], ys: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    x_array: np.ndarray = np.asarray(xs, dtype=np.float64)
    y_array: np.ndarray = np.asarray(ys, dtype=np.float64)
    if x_array.shape != y_array.shape:
        raise InvalidParameterError("Fit inputs differ in length.")
    if x_array.size < MIN_FIT_POINTS:
        raise InvalidParameterError(f"A fit needs at least {MIN_FIT_POINTS} points.")
    if not (np.all(np.isfinite(x_array)) and np.all(np.isfinite(y_array))):
        raise InvalidParameterError("Fit inputs must be finite.")
    return (x_array, y_array)


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> SlopeFit:
    """Least squares on (log x, log y). Every input must be positive."""

    (x_array, y_array) = fit_points(xs, ys)
    if np.any(x_array <= 0) or np.any(y_array <= 0):
        raise InvalidParameterError("Log-log fits need positive inputs.")
    return least_squares(np.log(x_array), np.log(y_array))


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> SlopeFit:
    """Least squares on (x, y)."""

    (x_array, y_array) = fit_points(xs, ys)
    return least_squares(x_array, y_array)


def rank_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank correlation; nan when either side is constant."""

    if len(xs) < 2:
        return math.nan
    if (len(set(xs)) == 1) or (len(set(ys)) == 1):
        return math.nan
    return float(spearmanr(xs, ys)[0])


class SweepFit:
    """SweepFit class. A fitted law of one metric against the axis, with the points it used."""

    def __init__(
        self,
        kind: FitKind,
        metric: Metric,
        xs: List[float],
        ys: List[float],
        excluded: List[float],
    ) -> None:
        """Constructor."""

        self.kind: FitKind = kind
        self.metric: Metric = metric
        self.xs: List[float] = xs
        self.ys: List[float] = ys
        self.excluded: List[float] = excluded

        self.line: Optional[SlopeFit] = None
        if len(xs) >= MIN_FIT_POINTS:
            if kind == FitKind.LogLog:
                self.line = loglog_slope(xs, ys)
            elif kind == FitKind.Linear:
                self.line = linear_fit(xs, ys)
            elif kind == FitKind.LinearLogInverse:
                self.line = linear_fit([math.log(1.0 / x) for x in xs], ys)
        self.spearman: float = rank_correlation(xs, ys)

    @property
    def slope(self) -> float:
        return math.nan if self.line is None else self.line.slope

    @property
    def r_squared(self) -> float:
        return math.nan if self.line is None else self.line.r_squared

    def to_json(self) -> Dict[str, Any]:
        """Convert a SweepFit to a transmittable format."""

        return {
            "kind": self.kind.value,
            "metric": self.metric.value,
            "slope": self.slope,
            "intercept": math.nan if self.line is None else self.line.intercept,
            "r_squared": self.r_squared,
            "spearman": self.spearman,
            "points": len(self.xs),
            "excluded_axis_values": self.excluded,
        }


class SweepResult:
    """SweepResult class. Raw per-trial outcomes, per-axis aggregates, and fits."""

    def __init__(self, spec: SweepSpec, outcomes: List[TrialOutcome]) -> None:
        """Constructor."""

        self.spec: SweepSpec = spec
        self.outcomes: List[TrialOutcome] = sorted(
            outcomes, key=lambda outcome: (outcome.axis_index, outcome.trial)
        )

        self.summaries: List[AxisSummary] = []
        for j, value in enumerate(spec.values):
            at_value: List[TrialOutcome] = [
                outcome for outcome in self.outcomes if outcome.axis_index == j
            ]
            summary: AxisSummary = AxisSummary(value, at_value, spec.metrics)
            if summary.successes == 0:
                raise SweepFailureError(
                    f"Every trial failed at {spec.axis.value}={value!r}.", value
                )
            self.summaries.append(summary)

        self.fits: List[SweepFit] = []
        if spec.fit != FitKind.Off:
            for metric in spec.fit_metrics:
                self.fits.append(self.fit_metric(metric))

    def fit_metric(self, metric: Metric) -> SweepFit:
        """Fits a metric's means against the axis, leaving out axis values with too many failures."""

        xs: List[float] = []
        ys: List[float] = []
        excluded: List[float] = []
        for summary in self.summaries:
            aggregate: MetricSummary = summary.metrics[metric]
            if (summary.failure_share > FIT_FAILURE_LIMIT) or (aggregate.count == 0):
                logger.warning(
                    "Leaving %s=%r out of the %s fit: %d of %d trials failed.",
                    self.spec.axis.value,
                    summary.axis_value,
                    metric.value,
                    summary.trials - aggregate.count,
                    summary.trials,
                )
                excluded.append(summary.axis_value)
                continue
            xs.append(summary.axis_value)
            ys.append(aggregate.mean)

        if len(xs) < MIN_FIT_POINTS:
            logger.warning("Only %d points remain for the %s fit; no line is fitted.", len(xs), metric.value)
        return SweepFit(self.spec.fit, metric, xs, ys, excluded)

    def fit(self, metric: Metric) -> SweepFit:
        """The fit of the given metric."""

        for fit in self.fits:
            if fit.metric == metric:
                return fit
        raise InvalidParameterError(f"No fit was made for {metric.value}.")

    def means(self, metric: Metric) -> List[float]:
        """Per-axis means of a metric."""

        return [summary.metrics[metric].mean for summary in self.summaries]

    def to_json(self) -> Dict[str, Any]:
        """Convert a SweepResult to a transmittable format."""

        return {
            "schema_version": SCHEMA_VERSION,
            "software_version": __version__,
            "seed": self.spec.seed,
            "spec": self.spec.to_json(),
            "summaries": [summary.to_json() for summary in self.summaries],
            "fits": [fit.to_json() for fit in self.fits],
            "failures": sum(summary.failures for summary in self.summaries),
        }

    def write_csv(self, path: Path) -> None:
        """Write the per-trial table."""

        with open(path, "w", newline="", encoding="utf-8") as file:
            writer: Any = csv.writer(file, lineterminator="\n")
            writer.writerow(SWEEP_COLUMNS)
            for outcome in self.outcomes:
                writer.writerow(outcome.row())


def run_sweep(spec: SweepSpec, threads: int = 1) -> SweepResult:
    """
    Runs every trial of a sweep and aggregates them.
    threads > 1 runs trials in worker processes; the result is the same either way.
    Raises SweepFailureError if every trial at some axis value failed.
    """

    if threads < 1:
        raise InvalidParameterError(f"threads={threads} must be at least 1.")

    positions: List[int] = []
    trials: List[int] = []
    for j in range(len(spec.values)):
        for i in range(spec.trials):
            positions.append(j)
            trials.append(i)

    outcomes: List[TrialOutcome] = []
    if threads == 1:
        for j in range(len(spec.values)):
            for i in range(spec.trials):
                outcomes.append(run_trial(spec, j, i))
            logger.info("Finished %s=%r (%d trials).", spec.axis.value, spec.values[j], spec.trials)
    else:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            outcomes = list(executor.map(run_trial, repeat(spec), positions, trials))
        logger.info("Finished %d trials on %d workers.", len(outcomes), threads)

    return SweepResult(spec, outcomes)
