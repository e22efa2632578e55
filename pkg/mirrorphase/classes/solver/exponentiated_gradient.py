"""ExponentiatedGradient class file."""

import numpy as np

# MirrorDescent classes.
from mirrorphase.classes.signal.dataset import PhaselessDataset
from mirrorphase.classes.solver.state import EgState
from mirrorphase.classes.solver.mirror_descent import MirrorDescent, eg_initialize, eg_step


class ExponentiatedGradient(MirrorDescent):
    """
    ExponentiatedGradient class.
    EG without normalization on the weight pair (u, v).
    Equivalent to DualMirrorDescent in exact arithmetic. For beta below about 1e-8 the
    weights approach the double underflow range and the dual engine should be used.
    """

    def __init__(self, data: PhaselessDataset, beta: float, eta: float) -> None:
        """Constructor."""

        MirrorDescent.__init__(self, data, beta, eta)
        self.state: EgState = eg_initialize(data, beta)

    @property
    def primal(self) -> np.ndarray:
        return self.state.primal

    @property
    def iteration(self) -> int:
        return self.state.iteration

    def initialize(self) -> None:
        self.state = eg_initialize(self.data, self.beta)

    def step(self, gradient: np.ndarray) -> None:
        self.state = eg_step(self.state, gradient, self.eta)
