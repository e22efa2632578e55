"""DualMirrorDescent class file."""

import numpy as np

# MirrorDescent classes.
from mirrorphase.classes.signal.dataset import PhaselessDataset
from mirrorphase.classes.solver.state import MirrorState
from mirrorphase.classes.solver.mirror_descent import MirrorDescent, initialize, md_step


class DualMirrorDescent(MirrorDescent):
    """DualMirrorDescent class. Iterates on the dual vector s = grad Phi(X)."""

    def __init__(self, data: PhaselessDataset, beta: float, eta: float) -> None:
        """Constructor."""

        MirrorDescent.__init__(self, data, beta, eta)
        self.state: MirrorState = initialize(data, beta)

    @property
    def primal(self) -> np.ndarray:
        return self.state.primal

    @property
    def iteration(self) -> int:
        return self.state.iteration

    def initialize(self) -> None:
        self.state = initialize(self.data, self.beta)

    def step(self, gradient: np.ndarray) -> None:
        self.state = md_step(self.state, gradient, self.eta, self.beta)
