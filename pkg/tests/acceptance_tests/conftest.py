# Types.
from typing import List, NamedTuple, Optional

# pytest lib.
import pytest

# RandomStream class.
from mirrorphase.lib.seeding import RandomStream

# Signal model.
from mirrorphase.classes.signal.signal import SparseSignal, sample_signal
from mirrorphase.classes.signal.dataset import PhaselessDataset, sample_dataset

# Solver.
from mirrorphase.classes.solver.state import SolverConfig
from mirrorphase.classes.solver.runner import run

# Diagnostics.
from mirrorphase.classes.diagnostics.trajectory import Trajectory
from mirrorphase.classes.diagnostics.stopping import WarmupTracker

# Noiseless recovery setting.
RECOVERY_N: int = 500
RECOVERY_M: int = 800
RECOVERY_K: int = 5
RECOVERY_BETA: float = 1e-12
RECOVERY_ITERS: int = 3000
RECOVERY_SEEDS: int = 20

# Workers used by the Monte Carlo sweeps. Results don't depend on it.
SWEEP_THREADS: int = 2


class RecoveryRun(NamedTuple):
    signal: SparseSignal
    data: PhaselessDataset
    trajectory: Trajectory
    t_warmup: Optional[int]


class Harness:
    def __init__(self) -> None:
        """Construct a new test environment."""

        self.recovery: Optional[List[RecoveryRun]] = None

    def recovery_runs(self) -> List[RecoveryRun]:
        """The noiseless desk runs, one per seed, recorded at every iteration. Computed once."""

        if self.recovery is None:
            self.recovery = []
            for seed in range(RECOVERY_SEEDS):
                rng: RandomStream = RandomStream(seed)
                signal: SparseSignal = sample_signal(RECOVERY_N, RECOVERY_K, rng)
                data: PhaselessDataset = sample_dataset(signal, RECOVERY_M, 0.0, rng)
                tracker: WarmupTracker = WarmupTracker(signal)
                trajectory: Trajectory = run(
                    data, SolverConfig(RECOVERY_BETA, None, RECOVERY_ITERS), signal, hooks=[tracker]
                )
                self.recovery.append(RecoveryRun(signal, data, trajectory, tracker.t_warmup))
        return self.recovery


@pytest.fixture(scope="session")
def harness() -> Harness:
    return Harness()
