"""Trajectories, stopping rules, and run diagnostics."""

from mirrorphase.classes.diagnostics.trajectory import (
    TRAJECTORY_COLUMNS,
    RunStatus,
    Trajectory,
    TrajectoryRecord,
)
from mirrorphase.classes.diagnostics.stopping import (
    DEFAULT_HOLDOUT_FRACTION,
    HoldoutStop,
    OracleStop,
    WarmupTracker,
    contraction_rate,
    convergence_summary,
    holdout_split,
    holdout_stop,
    monotone_fraction,
    off_support_mass,
    oracle_stop,
    stopping_summary,
    warmup_time,
)

__all__ = [
    "TRAJECTORY_COLUMNS",
    "RunStatus",
    "Trajectory",
    "TrajectoryRecord",
    "DEFAULT_HOLDOUT_FRACTION",
    "HoldoutStop",
    "OracleStop",
    "WarmupTracker",
    "contraction_rate",
    "convergence_summary",
    "holdout_split",
    "holdout_stop",
    "monotone_fraction",
    "off_support_mass",
    "oracle_stop",
    "stopping_summary",
    "warmup_time",
]
