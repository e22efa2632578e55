"""Mirror descent engines, initialization, and the run loop."""

from mirrorphase.classes.solver.state import (
    DEFAULT_BETA,
    DEFAULT_MAX_ITERS,
    Engine,
    EgState,
    MirrorState,
    SolverConfig,
)
from mirrorphase.classes.solver.mirror_descent import (
    MirrorDescent,
    default_step_size,
    eg_initial_pair,
    eg_initialize,
    eg_step,
    initialize,
    md_step,
    select_coordinate,
)
from mirrorphase.classes.solver.dual_mirror_descent import DualMirrorDescent
from mirrorphase.classes.solver.exponentiated_gradient import ExponentiatedGradient
from mirrorphase.classes.solver.runner import (
    InitializationQuality,
    StepHook,
    TheoryReference,
    create_engine,
    initialization_quality,
    run,
    theory_reference,
)

__all__ = [
    "DEFAULT_BETA",
    "DEFAULT_MAX_ITERS",
    "Engine",
    "EgState",
    "MirrorState",
    "SolverConfig",
    "MirrorDescent",
    "default_step_size",
    "eg_initial_pair",
    "eg_initialize",
    "eg_step",
    "initialize",
    "md_step",
    "select_coordinate",
    "DualMirrorDescent",
    "ExponentiatedGradient",
    "InitializationQuality",
    "StepHook",
    "TheoryReference",
    "create_engine",
    "initialization_quality",
    "run",
    "theory_reference",
]
