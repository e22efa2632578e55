"""
Runs mirror descent from the data-driven initialization and records its trajectory.

At each t = 0, 1, ..., max_iters the runner evaluates the risk and gradient at X^t once,
hands (t, X^t) to every hook, records when t is a multiple of record_every or the final
iteration, then steps. Recording never touches the iterate, so the recorded cadence
doesn't change the dynamics.
"""

# Types.
from typing import Callable, Dict, Sequence, NamedTuple, Optional, Any

# Logging standard lib.
import logging

# math standard lib.
import math

import numpy as np

# Errors.
from mirrorphase.lib.errors import DivergedError, InvalidParameterError

# Signal model.
from mirrorphase.classes.signal.signal import SparseSignal
from mirrorphase.classes.signal.dataset import PhaselessDataset

# Geometry.
from mirrorphase.classes.geometry.mirror_map import HyperbolicMirrorMap
from mirrorphase.classes.geometry.distance import dist_signset, dist_phi_signset

# Risk.
from mirrorphase.classes.risk.empirical import (
    RiskEvaluation,
    Coherence,
    coherence_with_gradient,
    evaluate,
    risk,
)

# Diagnostics.
from mirrorphase.classes.diagnostics.trajectory import Trajectory, TrajectoryRecord
from mirrorphase.classes.diagnostics.stopping import off_support_mass

# Solver.
from mirrorphase.classes.solver.state import Engine, SolverConfig
from mirrorphase.classes.solver.mirror_descent import (
    MirrorDescent,
    default_step_size,
    select_coordinate,
)
from mirrorphase.classes.solver.dual_mirror_descent import DualMirrorDescent
from mirrorphase.classes.solver.exponentiated_gradient import ExponentiatedGradient

logger: logging.Logger = logging.getLogger(__name__)

# Called with (t, X^t) before X^t is recorded or stepped.
StepHook = Callable[[int, np.ndarray], None]

ENGINES: Dict[Engine, Any] = {
    Engine.Dual: DualMirrorDescent,
    Engine.ExponentiatedGradient: ExponentiatedGradient,
}


def create_engine(engine: Engine, data: PhaselessDataset, beta: float, eta: float) -> MirrorDescent:
    """Instantiates the iteration engine at its initial point."""

    return ENGINES[engine](data, beta, eta)


def resolve_step_size(config: SolverConfig, data: PhaselessDataset) -> float:
    """The configured step size, or the data-driven default."""

    if config.eta is not None:
        return config.eta
    return default_step_size(data)


def record_at(
    t: int,
    primal: np.ndarray,
    evaluation: RiskEvaluation,
    mirror_map: HyperbolicMirrorMap,
    xstar: Optional[SparseSignal],
    holdout: Optional[PhaselessDataset],
    keep_iterate: bool,
) -> TrajectoryRecord:
    """Builds the record of iteration t."""

    record: TrajectoryRecord = TrajectoryRecord(t, evaluation.value)
    if xstar is not None:
        assert evaluation.gradient is not None
        coherence: Coherence = coherence_with_gradient(evaluation.gradient, primal, xstar)
        record.dist = dist_signset(xstar, primal)
        record.dist_phi = dist_phi_signset(xstar, primal, mirror_map)
        record.off_support_l1 = off_support_mass(primal, xstar.support)
        record.coherence = coherence.value
        record.coherence_sign = coherence.sign
    if holdout is not None:
        record.holdout_risk = risk(primal, holdout)
    if keep_iterate:
        record.iterate = primal.copy()
    return record


def run(
    data: PhaselessDataset,
    config: SolverConfig,
    xstar: Optional[SparseSignal] = None,
    holdout: Optional[PhaselessDataset] = None,
    hooks: Sequence[StepHook] = (),
    until: Optional[Callable[[int], bool]] = None,
) -> Trajectory:
    """
    Runs config.max_iters mirror descent steps on data.
    Oracle metrics are recorded when xstar is given; hold-out risk when holdout is given.
    If until(t) returns True after the hooks saw iteration t, t is recorded and the run ends there.
    Raises DivergedError with the partial trajectory attached.
    """

    if (xstar is not None) and (xstar.n != data.n):
        raise InvalidParameterError(f"Signal dimension {xstar.n} doesn't match data dimension {data.n}.")
    if (holdout is not None) and (holdout.n != data.n):
        raise InvalidParameterError(
            f"Hold-out dimension {holdout.n} doesn't match data dimension {data.n}."
        )

    eta: float = resolve_step_size(config, data)
    mirror_map: HyperbolicMirrorMap = HyperbolicMirrorMap(config.beta)
    engine: MirrorDescent = create_engine(config.engine, data, config.beta, eta)
    trajectory: Trajectory = Trajectory(config.to_json(), eta)

    t: int = 0
    while True:
        primal: np.ndarray = engine.primal
        with np.errstate(over="ignore", invalid="ignore"):
            evaluation: RiskEvaluation = evaluate(primal, data)
        for hook in hooks:
            hook(t, primal)

        last: bool = (t == config.max_iters) or ((until is not None) and until(t))
        if (t % config.record_every == 0) or last:
            trajectory.append(
                record_at(
                    t, primal, evaluation, mirror_map, xstar, holdout, config.record_full_iterates
                )
            )
        if last:
            break

        assert evaluation.gradient is not None
        try:
            engine.step(evaluation.gradient)
        except DivergedError as e:
            trajectory.mark_diverged(e.iteration)
            trajectory.final = primal.copy()
            e.trajectory = trajectory
            logger.warning(
                "Run diverged at iteration %d (coordinate %d), %d records kept.",
                e.iteration,
                e.coordinate,
                len(trajectory),
            )
            raise
        t += 1

    trajectory.final = engine.primal.copy()
    logger.debug("Run completed %d iterations with eta=%r.", t, eta)
    return trajectory


class TheoryReference(NamedTuple):
    """
    Reference quantities of the convergence guarantee, with all unknown constants set to 1.
    delta: sqrt(n beta / ||x*||), off_support_bound: delta ||x*||,
    statistical_rate: sigma / ||x*||^2 sqrt(k log n / m),
    warmup_reference: k L log(k L) / (eta ||x*||^3) with L = log(||x*|| / beta),
    contraction: 1 - c* eta ||x*||^3 / (8 sqrt(k)), beta_ceiling: ||x*|| / n^3.
    """

    delta: float
    off_support_bound: float
    statistical_rate: float
    warmup_reference: float
    contraction: float
    beta_ceiling: float

    def to_json(self) -> Dict[str, Any]:
        """Convert a TheoryReference to a transmittable format."""

        return dict(self._asdict())


def theory_reference(signal: SparseSignal, m: int, sigma: float, beta: float, eta: float) -> TheoryReference:
    """Computes the reference quantities for an instance."""

    if signal.k == 0:
        raise InvalidParameterError("The zero signal has no theory reference.")

    norm: float = signal.norm2
    delta: float = math.sqrt(signal.n * beta / norm)
    log_n: float = math.log(max(signal.n, 2))
    log_ratio: float = max(math.log(norm / beta), 1.0)
    k_log: float = signal.k * log_ratio
    x_min: float = float(np.min(np.abs(signal.values[signal.support]))) / norm
    c_star: float = math.sqrt(signal.k) * x_min

    return TheoryReference(
        delta=delta,
        off_support_bound=delta * norm,
        statistical_rate=(sigma / norm ** 2) * math.sqrt(signal.k * log_n / m),
        warmup_reference=k_log * math.log(max(k_log, math.e)) / (eta * norm ** 3),
        contraction=1.0 - c_star * eta * norm ** 3 / (8.0 * math.sqrt(signal.k)),
        beta_ceiling=norm / signal.n ** 3,
    )


class InitializationQuality(NamedTuple):
    """
    Whether the initial coordinate I0 lands on the support, and whether it is strong:
    |x*_I0| >= max_i |x*_i| / 2.
    """

    i0: int
    on_support: bool
    strong: bool

    def to_json(self) -> Dict[str, Any]:
        """Convert an InitializationQuality to a transmittable format."""

        return dict(self._asdict())


def initialization_quality(signal: SparseSignal, data: PhaselessDataset) -> InitializationQuality:
    i0: int = select_coordinate(data)
    magnitude: float = abs(float(signal.values[i0]))
    largest: float = float(np.max(np.abs(signal.values)))
    return InitializationQuality(i0, magnitude > 0, (magnitude > 0) and (magnitude >= 0.5 * largest))
