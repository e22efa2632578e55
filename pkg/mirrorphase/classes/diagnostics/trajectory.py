"""Trajectory and TrajectoryRecord classes."""

# Types.
from typing import Dict, List, Optional, Any

# Enum class.
from enum import Enum

# CSV standard lib.
import csv

# Path standard class.
from pathlib import Path

import numpy as np

# Errors.
from mirrorphase.lib.errors import InvalidParameterError

# Float formatting.
from mirrorphase.lib.serialization import format_float, parse_float

# CSV columns, in order.
TRAJECTORY_COLUMNS: List[str] = [
    "t",
    "risk",
    "dist",
    "dist_phi",
    "off_support_l1",
    "coherence",
    "holdout_risk",
    "coherence_sign",
]

# Columns which hold optional reals.
OPTIONAL_COLUMNS: List[str] = TRAJECTORY_COLUMNS[2:7]


class RunStatus(Enum):
    """How a run ended."""

    Completed = "completed"
    Diverged = "diverged"


class TrajectoryRecord:
    """
    TrajectoryRecord class.
    Metrics at one recorded iteration. Oracle metrics are None without a ground truth;
    holdout_risk is None without a validation set.
    """

    def __init__(
        self,
        t: int,
        risk: float,
        dist: Optional[float] = None,
        dist_phi: Optional[float] = None,
        off_support_l1: Optional[float] = None,
        coherence: Optional[float] = None,
        holdout_risk: Optional[float] = None,
        coherence_sign: Optional[int] = None,
        iterate: Optional[np.ndarray] = None,
    ) -> None:
        """Constructor."""

        if t < 0:
            raise InvalidParameterError(f"Record at negative iteration {t}.")
        if not risk >= 0:
            raise InvalidParameterError(f"Risk {risk} at iteration {t} is negative.")
        if (holdout_risk is not None) and (not holdout_risk >= 0):
            raise InvalidParameterError(f"Hold-out risk {holdout_risk} at iteration {t} is negative.")

        self.t: int = t
        self.risk: float = risk
        self.dist: Optional[float] = dist
        self.dist_phi: Optional[float] = dist_phi
        self.off_support_l1: Optional[float] = off_support_l1
        self.coherence: Optional[float] = coherence
        self.holdout_risk: Optional[float] = holdout_risk
        self.coherence_sign: Optional[int] = coherence_sign
        self.iterate: Optional[np.ndarray] = iterate

    def row(self) -> List[str]:
        """CSV row."""

        return [
            str(self.t),
            format_float(self.risk),
            format_float(self.dist),
            format_float(self.dist_phi),
            format_float(self.off_support_l1),
            format_float(self.coherence),
            format_float(self.holdout_risk),
            "" if self.coherence_sign is None else str(self.coherence_sign),
        ]

    @staticmethod
    def from_row(row: List[str]) -> "TrajectoryRecord":
        """Parse a CSV row written by row()."""

        risk: Optional[float] = parse_float(row[1])
        if risk is None:
            raise InvalidParameterError("Trajectory row without a risk.")
        return TrajectoryRecord(
            int(row[0]),
            risk,
            parse_float(row[2]),
            parse_float(row[3]),
            parse_float(row[4]),
            parse_float(row[5]),
            parse_float(row[6]),
            None if row[7] == "" else int(row[7]),
        )

    def __eq__(self, other: Any) -> bool:
        """Compare two TrajectoryRecords, ignoring stored iterates."""

        return isinstance(other, TrajectoryRecord) and (self.row() == other.row())


class Trajectory:
    """
    Trajectory class.
    Ordered records of a run, the configuration that produced it, and how it ended.
    """

    def __init__(self, config: Dict[str, Any], eta: float) -> None:
        """Constructor."""

        self.config: Dict[str, Any] = config
        self.eta: float = eta
        self.records: List[TrajectoryRecord] = []
        self.status: RunStatus = RunStatus.Completed
        self.diverged_at: Optional[int] = None
        self.final: Optional[np.ndarray] = None

    def append(self, record: TrajectoryRecord) -> None:
        """Appends a record. Iteration indices must strictly increase."""

        if self.records and (record.t <= self.records[-1].t):
            raise InvalidParameterError(
                f"Record at t={record.t} doesn't follow the record at t={self.records[-1].t}."
            )
        self.records.append(record)

    def mark_diverged(self, t: int) -> None:
        self.status = RunStatus.Diverged
        self.diverged_at = t

    @property
    def times(self) -> np.ndarray:
        """Recorded iteration indices."""

        return np.array([record.t for record in self.records], dtype=np.int64)

    def column(self, name: str) -> np.ndarray:
        """A metric across records as floats. Absent values are nan."""

        if name not in TRAJECTORY_COLUMNS:
            raise InvalidParameterError(f"Unknown trajectory column {name}.")
        values: List[float] = []
        for record in self.records:
            value: Optional[float] = getattr(record, name)
            values.append(np.nan if value is None else float(value))
        return np.array(values, dtype=np.float64)

    def has(self, name: str) -> bool:
        """Whether every record carries the given optional metric."""

        return bool(self.records) and all(
            getattr(record, name) is not None for record in self.records
        )

    def __len__(self) -> int:
        return len(self.records)

    def to_csv(self, path: Path) -> None:
        """Write the records as CSV."""

        with open(path, "w", newline="", encoding="utf-8") as file:
            writer: Any = csv.writer(file, lineterminator="\n")
            writer.writerow(TRAJECTORY_COLUMNS)
            for record in self.records:
                writer.writerow(record.row())

    @staticmethod
    def read_records(path: Path) -> List[TrajectoryRecord]:
        """Read the records of a trajectory CSV."""

        with open(path, "r", newline="", encoding="utf-8") as file:
            rows: List[List[str]] = list(csv.reader(file))
        if (not rows) or (rows[0] != TRAJECTORY_COLUMNS):
            raise InvalidParameterError(f"{path} is not a trajectory CSV.")
        return [TrajectoryRecord.from_row(row) for row in rows[1:]]

    def to_json(self) -> Dict[str, Any]:
        """Convert a Trajectory's metadata to a transmittable format. Records go to CSV."""

        return {
            "config": self.config,
            "eta": self.eta,
            "status": self.status.value,
            "diverged_at": self.diverged_at,
            "records": len(self.records),
        }
