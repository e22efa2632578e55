"""Signal model: sparse signals, Gaussian sensing, noisy phaseless observations."""

# SparseSignal class and generation.
from mirrorphase.classes.signal.signal import (
    DEFAULT_MAGNITUDE_RANGE,
    AssumptionReport,
    SparseSignal,
    assumption_report,
    psi1_norm,
    sample_signal,
)

# PhaselessDataset class and generation.
from mirrorphase.classes.signal.dataset import (
    PhaselessDataset,
    magnitude_estimate,
    observation_summary,
    regenerate_sensing,
    sample_dataset,
)

__all__ = [
    "DEFAULT_MAGNITUDE_RANGE",
    "AssumptionReport",
    "SparseSignal",
    "assumption_report",
    "psi1_norm",
    "sample_signal",
    "PhaselessDataset",
    "magnitude_estimate",
    "observation_summary",
    "regenerate_sensing",
    "sample_dataset",
]
