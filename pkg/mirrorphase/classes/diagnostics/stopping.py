"""Stopping rules, warm-up detection, and trajectory diagnostics."""

# Types.
from typing import Dict, List, Tuple, NamedTuple, Optional, Union, Any

# math standard lib.
import math

import numpy as np

# Errors.
from mirrorphase.lib.errors import InvalidParameterError

# RandomStream class.
from mirrorphase.lib.seeding import RandomStream

# Signal model.
from mirrorphase.classes.signal.signal import SparseSignal
from mirrorphase.classes.signal.dataset import PhaselessDataset

# Trajectory classes.
from mirrorphase.classes.diagnostics.trajectory import Trajectory

# Default share of rows used for training by the hold-out rule.
DEFAULT_HOLDOUT_FRACTION: float = 0.9

# Ratio every support coordinate must exceed to end the warm-up.
WARMUP_RATIO: float = 0.5


def warmup_reached(primal: np.ndarray, xstar: SparseSignal) -> bool:
    """min over the support of |X_i| / |x*_i| > 1/2."""

    support: np.ndarray = xstar.support
    ratios: np.ndarray = np.abs(primal[support]) / np.abs(xstar.values[support])
    return bool(np.min(ratios) > WARMUP_RATIO)


class WarmupTracker:
    """
    WarmupTracker class.
    A run hook remembering the first iteration at which the warm-up condition holds.
    Sees every iteration, so it doesn't depend on the recording cadence.
    """

    def __init__(self, xstar: SparseSignal) -> None:
        """Constructor."""

        if xstar.k == 0:
            raise InvalidParameterError("Warm-up time of the zero signal is undefined.")
        self.xstar: SparseSignal = xstar
        self.t_warmup: Optional[int] = None

    def __call__(self, t: int, primal: np.ndarray) -> None:
        if (self.t_warmup is None) and warmup_reached(primal, self.xstar):
            self.t_warmup = t


def warmup_time(
    source: Union[Trajectory, WarmupTracker], xstar: Optional[SparseSignal]
) -> Optional[int]:
    """
    T1: the first iteration at which every support coordinate exceeds half its target magnitude.
    Reads a WarmupTracker that ran alongside the solver, or a trajectory recorded with full iterates.
    None if never reached.
    """

    if xstar is None:
        raise InvalidParameterError("Warm-up time needs the ground-truth signal.")
    if isinstance(source, WarmupTracker):
        return source.t_warmup

    for record in source.records:
        if record.iterate is None:
            raise InvalidParameterError(
                "Warm-up time of a trajectory needs full iterates or a WarmupTracker."
            )
        if warmup_reached(record.iterate, xstar):
            return record.t
    return None


class OracleStop(NamedTuple):
    """The recorded iteration with the smallest relative error and that error."""

    t_star: int
    min_rel_error: float


class HoldoutStop(NamedTuple):
    """The recorded iteration with the smallest hold-out risk and that risk."""

    t_stop: int
    holdout_risk: float


def oracle_stop(trajectory: Trajectory, xstar: SparseSignal) -> OracleStop:
    """argmin over recorded t of dist(x*, X^t) / ||x*||. Ties go to the earliest t."""

    if not trajectory.has("dist"):
        raise InvalidParameterError("Oracle stopping needs dist in every record.")
    if xstar.norm2 == 0:
        raise InvalidParameterError("Relative error against the zero signal is undefined.")

    errors: np.ndarray = trajectory.column("dist") / xstar.norm2
    best: int = int(np.argmin(errors))
    return OracleStop(trajectory.records[best].t, float(errors[best]))


def holdout_stop(trajectory: Trajectory) -> HoldoutStop:
    """argmin over recorded t of the hold-out risk. Ties go to the earliest t."""

    if not trajectory.has("holdout_risk"):
        raise InvalidParameterError("Hold-out stopping needs holdout_risk in every record.")

    risks: np.ndarray = trajectory.column("holdout_risk")
    best: int = int(np.argmin(risks))
    return HoldoutStop(trajectory.records[best].t, float(risks[best]))


def holdout_sizes(m: int, fraction: float) -> Tuple[int, int]:
    """Train and validation row counts. Train gets ceil(fraction m) rows."""

    if not (0 < fraction < 1):
        raise InvalidParameterError(f"Hold-out fraction {fraction} must lie in (0, 1).")
    # The epsilon keeps products like 0.9 * 10 from rounding up past an integer.
    train: int = math.ceil(fraction * m - 1e-9)
    if (train < 1) or (train >= m):
        raise InvalidParameterError(
            f"Fraction {fraction} of {m} rows leaves an empty training or validation part."
        )
    return (train, m - train)


def holdout_split(
    data: PhaselessDataset, fraction: float, rng: RandomStream
) -> Tuple[PhaselessDataset, PhaselessDataset]:
    """Randomly partitions the rows into training and validation parts. Each part keeps row order."""

    train_size: int
    (train_size, _) = holdout_sizes(data.m, fraction)
    permutation: np.ndarray = rng.child("holdout").generator.permutation(data.m)
    train_rows: np.ndarray = np.sort(permutation[:train_size])
    validation_rows: np.ndarray = np.sort(permutation[train_size:])
    return (data.subset(train_rows), data.subset(validation_rows))


def off_support_mass(x: np.ndarray, support: np.ndarray) -> float:
    """||x_{S^c}||_1."""

    vector: np.ndarray = np.asarray(x, dtype=np.float64)
    indices: np.ndarray = np.asarray(support, dtype=np.int64)
    if indices.size and ((indices.min() < 0) or (indices.max() >= vector.size)):
        raise InvalidParameterError(f"Support index out of range for length {vector.size}.")

    mask: np.ndarray = np.ones(vector.size, dtype=bool)
    mask[indices] = False
    return float(np.sum(np.abs(vector[mask])))


def window(trajectory: Trajectory, t_from: int, t_to: int) -> Tuple[np.ndarray, np.ndarray]:
    """Recorded times and dist_phi values with t_from <= t <= t_to."""

    if not trajectory.has("dist_phi"):
        raise InvalidParameterError("The diagnostic needs dist_phi in every record.")
    times: np.ndarray = trajectory.times
    selected: np.ndarray = (times >= t_from) & (times <= t_to)
    return (times[selected], trajectory.column("dist_phi")[selected])


def contraction_rate(trajectory: Trajectory, t_from: int, t_to: int) -> float:
    """
    Per-step geometric factor of dist_phi over [t_from, t_to]:
    exp of the least squares slope of log dist_phi against t.
    """

    times: np.ndarray
    values: np.ndarray
    (times, values) = window(trajectory, t_from, t_to)
    positive: np.ndarray = values > 0
    if np.count_nonzero(positive) < 2:
        raise InvalidParameterError("Fewer than two positive dist_phi records in the window.")

    slope: float = float(np.polyfit(times[positive].astype(np.float64), np.log(values[positive]), 1)[0])
    return math.exp(slope)


def monotone_fraction(trajectory: Trajectory, t_from: int, t_to: int) -> float:
    """Fraction of consecutive recorded steps in [t_from, t_to] at which dist_phi doesn't increase."""

    values: np.ndarray
    (_, values) = window(trajectory, t_from, t_to)
    if values.size < 2:
        raise InvalidParameterError("Fewer than two records in the window.")
    return float(np.mean(values[1:] <= values[:-1]))


def stopping_summary(
    trajectory: Trajectory,
    xstar: Optional[SparseSignal] = None,
    t_warmup: Optional[int] = None,
) -> Dict[str, Any]:
    """
    The stopping block of a run report.
    Keys: t_stop_oracle, t_stop_holdout, t_warmup, min_rel_error, holdout_rel_error.
    Values which need a missing ground truth or validation set are None.
    """

    summary: Dict[str, Any] = {
        "t_stop_oracle": None,
        "t_stop_holdout": None,
        "t_warmup": t_warmup,
        "min_rel_error": None,
        "holdout_rel_error": None,
    }

    oracle_ready: bool = (xstar is not None) and trajectory.has("dist")
    if oracle_ready:
        assert xstar is not None
        oracle: OracleStop = oracle_stop(trajectory, xstar)
        summary["t_stop_oracle"] = oracle.t_star
        summary["min_rel_error"] = oracle.min_rel_error

    if trajectory.has("holdout_risk"):
        holdout: HoldoutStop = holdout_stop(trajectory)
        summary["t_stop_holdout"] = holdout.t_stop
        if oracle_ready:
            assert xstar is not None
            times: List[int] = [record.t for record in trajectory.records]
            dist: Optional[float] = trajectory.records[times.index(holdout.t_stop)].dist
            assert dist is not None
            summary["holdout_rel_error"] = dist / xstar.norm2

    return summary


def convergence_summary(
    trajectory: Trajectory, t_warmup: Optional[int], t_stop: Optional[int]
) -> Dict[str, Any]:
    """
    monotone_fraction and contraction_rate of dist_phi between the warm-up and the stop.
    A value is None when the window is missing or holds too few records.
    """

    summary: Dict[str, Any] = {"monotone_fraction": None, "contraction_rate": None}
    if (t_warmup is None) or (t_stop is None) or (t_stop <= t_warmup) or (not trajectory.has("dist_phi")):
        return summary

    try:
        summary["monotone_fraction"] = monotone_fraction(trajectory, t_warmup, t_stop)
        summary["contraction_rate"] = contraction_rate(trajectory, t_warmup, t_stop)
    except InvalidParameterError:
        pass
    return summary
