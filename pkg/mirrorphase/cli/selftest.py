"""
Fast invariant checks run by `mirrorphase selftest`.

Each check returns (passed, detail). Checks call the library through this module's
namespace, so a faulty implementation swapped in here makes the matching check fail.
"""

# Types.
from typing import Callable, List, Tuple

# math standard lib.
import math

import numpy as np

# Seeding.
from mirrorphase.lib.seeding import RandomStream

# Gradient checks.
from mirrorphase.lib.gradcheck import central_difference, gradient_error, relative_error

# Signal model.
from mirrorphase.classes.signal.signal import SparseSignal, sample_signal
from mirrorphase.classes.signal.dataset import PhaselessDataset, sample_dataset

# Geometry.
from mirrorphase.classes.geometry.mirror_map import HyperbolicMirrorMap
from mirrorphase.classes.geometry.distance import LemmaTwoCheck, lemma2_bounds

# Risk.
from mirrorphase.classes.risk.empirical import grad_risk, population_grad, risk

# Solver.
from mirrorphase.classes.solver.state import EgState, MirrorState
from mirrorphase.classes.solver.mirror_descent import (
    default_step_size,
    eg_initialize,
    eg_step,
    initialize,
    md_step,
)

CheckResult = Tuple[bool, str]

# Seed of every self-test draw.
SELFTEST_SEED: int = 20210


def instance(n: int, k: int, m: int, sigma: float, label: str) -> Tuple[SparseSignal, PhaselessDataset]:
    rng: RandomStream = RandomStream(SELFTEST_SEED).child(label)
    signal: SparseSignal = sample_signal(n, k, rng)
    return (signal, sample_dataset(signal, m, sigma, rng))


def check_risk_gradient() -> CheckResult:
    """grad_risk against central differences of risk."""

    (_, data) = instance(15, 3, 40, 0.1, "gradient")
    generator: np.random.Generator = RandomStream(SELFTEST_SEED).child("gradient-points").generator
    worst: float = 0.0
    for _ in range(10):
        x: np.ndarray = generator.standard_normal(data.n)
        worst = max(
            worst,
            gradient_error(lambda point: risk(point, data), lambda point: grad_risk(point, data), x),
        )
    return (worst <= 1e-6, f"worst relative error {worst:.3e}")


def check_mirror_gradient() -> CheckResult:
    """grad_phi against central differences of phi."""

    generator: np.random.Generator = RandomStream(SELFTEST_SEED).child("mirror").generator
    worst: float = 0.0
    for beta in (1e-2, 1e-6):
        mirror_map: HyperbolicMirrorMap = HyperbolicMirrorMap(beta)
        for _ in range(10):
            x: np.ndarray = generator.uniform(0.05, 3.0, 8) * generator.choice([-1.0, 1.0], 8)
            worst = max(worst, gradient_error(mirror_map.phi, mirror_map.grad_phi, x))
    return (worst <= 1e-6, f"worst relative error {worst:.3e}")


def check_inverse_round_trip() -> CheckResult:
    """grad_phi_inverse(grad_phi(x)) = x."""

    beta: float = 1e-8
    mirror_map: HyperbolicMirrorMap = HyperbolicMirrorMap(beta)
    generator: np.random.Generator = RandomStream(SELFTEST_SEED).child("round-trip").generator
    x: np.ndarray = generator.uniform(-1e10, 1e10, 1000) * beta
    worst: float = float(np.max(np.abs(mirror_map.grad_phi_inverse(mirror_map.grad_phi(x)) - x) / np.abs(x)))
    return (worst <= 1e-9, f"worst relative error {worst:.3e}")


def check_engine_equivalence() -> CheckResult:
    """The dual update and EG update agree on the primal iterate."""

    beta: float = 1e-6
    (_, data) = instance(30, 3, 80, 0.0, "equivalence")
    eta: float = default_step_size(data)
    dual: MirrorState = initialize(data, beta)
    weights: EgState = eg_initialize(data, beta)

    worst: float = relative_error(dual.primal, weights.primal)
    for _ in range(200):
        gradient: np.ndarray = grad_risk(dual.primal, data)
        dual = md_step(dual, gradient, eta, beta)
        weights = eg_step(weights, gradient, eta)
        worst = max(worst, relative_error(dual.primal, weights.primal))
    return (worst <= 1e-9, f"worst relative difference {worst:.3e}")


def check_bregman_identity() -> CheckResult:
    """D(a, X') - D(a, X) = -eta <grad, X - a> + D(X, X') along a run."""

    beta: float = 1e-6
    mirror_map: HyperbolicMirrorMap = HyperbolicMirrorMap(beta)
    (signal, data) = instance(30, 3, 80, 0.0, "bregman")
    eta: float = default_step_size(data)
    state: MirrorState = initialize(data, beta)

    worst: float = 0.0
    for _ in range(100):
        gradient: np.ndarray = grad_risk(state.primal, data)
        following: MirrorState = md_step(state, gradient, eta, beta)
        before: float = mirror_map.bregman(signal.values, state.primal)
        after: float = mirror_map.bregman(signal.values, following.primal)
        descent: float = -eta * float(gradient @ (state.primal - signal.values))
        gap: float = mirror_map.bregman(state.primal, following.primal)
        scale: float = max(before, after, abs(descent), gap, 1e-300)
        worst = max(worst, abs((after - before) - (descent + gap)) / scale)
        state = following
    return (worst <= 1e-8, f"worst relative residual {worst:.3e}")


def check_lemma_two() -> CheckResult:
    """Both Bregman sandwich bounds on random pairs."""

    generator: np.random.Generator = RandomStream(SELFTEST_SEED).child("lemma-two").generator
    failures: int = 0
    for beta in (1e-2, 1e-6):
        mirror_map: HyperbolicMirrorMap = HyperbolicMirrorMap(beta)
        for i in range(500):
            signal: SparseSignal = sample_signal(20, 4, RandomStream(SELFTEST_SEED).child(f"lemma-{i}"))
            x: np.ndarray = signal.values * generator.uniform(0.5, 2.0, 20) + generator.normal(0, 1e-3, 20) * (
                signal.values == 0
            )
            check: LemmaTwoCheck = lemma2_bounds(signal, x, mirror_map)
            if not (check.lower_ok and check.upper_ok):
                failures += 1
    return (failures == 0, f"{failures} violations")


def check_population_gradient() -> CheckResult:
    """The population gradient vanishes on the solution set."""

    rng: RandomStream = RandomStream(SELFTEST_SEED).child("population")
    signal: SparseSignal = sample_signal(10, 3, rng)
    largest: float = max(
        float(np.max(np.abs(population_grad(signal.values, signal)))),
        float(np.max(np.abs(population_grad(-signal.values, signal)))),
    )
    return (largest <= 1e-12, f"largest component {largest:.3e}")


def check_finite_difference_sensitivity() -> CheckResult:
    """The finite difference checker rejects a wrong gradient."""

    x: np.ndarray = np.array([0.3, -1.2, 2.0])
    estimate: np.ndarray = central_difference(lambda point: float(np.sum(point ** 3)), x)
    error: float = relative_error(estimate, -3.0 * x ** 2)
    return (error > 1.0 and math.isfinite(error), f"relative error of a sign-flipped gradient {error:.3e}")


def check_determinism() -> CheckResult:
    """Equal seeds draw equal datasets."""

    (_, first) = instance(20, 3, 30, 0.5, "determinism")
    (_, second) = instance(20, 3, 30, 0.5, "determinism")
    same: bool = np.array_equal(first.sensing, second.sensing) and np.array_equal(
        first.observations, second.observations
    )
    return (same, "identical" if same else "datasets differ")


SELF_CHECKS: List[Tuple[str, Callable[[], CheckResult]]] = [
    ("risk-gradient", check_risk_gradient),
    ("mirror-gradient", check_mirror_gradient),
    ("inverse-round-trip", check_inverse_round_trip),
    ("engine-equivalence", check_engine_equivalence),
    ("bregman-identity", check_bregman_identity),
    ("bregman-sandwich", check_lemma_two),
    ("population-gradient", check_population_gradient),
    ("finite-difference-sensitivity", check_finite_difference_sensitivity),
    ("determinism", check_determinism),
]


def run_selftest() -> List[Tuple[str, bool, str]]:
    """Runs every check. A check raising counts as a failure."""

    results: List[Tuple[str, bool, str]] = []
    for (name, check) in SELF_CHECKS:
        try:
            (passed, detail) = check()
        except Exception as e:
            (passed, detail) = (False, f"{type(e).__name__}: {e}")
        results.append((name, passed, detail))
    return results
