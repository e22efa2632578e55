# Types.
from typing import List

# math standard lib.
import math

# pytest lib.
import pytest

import numpy as np

# Errors.
from mirrorphase.lib.errors import (
    DegenerateDataError,
    DivergedError,
    InvalidParameterError,
)

# RandomStream class.
from mirrorphase.lib.seeding import RandomStream

# Gradient checks.
from mirrorphase.lib.gradcheck import relative_error

# Signal classes.
from mirrorphase.classes.signal.signal import SparseSignal
from mirrorphase.classes.signal.dataset import PhaselessDataset, magnitude_estimate, sample_dataset

# Geometry.
from mirrorphase.classes.geometry.mirror_map import HyperbolicMirrorMap

# Risk.
from mirrorphase.classes.risk.empirical import grad_risk

# Solver.
from mirrorphase.classes.solver.state import Engine, EgState, MirrorState, SolverConfig
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
from mirrorphase.classes.solver.runner import (
    InitializationQuality,
    create_engine,
    TheoryReference,
    initialization_quality,
    run,
    theory_reference,
)

# Diagnostics.
from mirrorphase.classes.diagnostics.trajectory import RunStatus, Trajectory

# Test fixtures.
from tests.unit_tests.conftest import Instance, make_instance


def constant_dataset(mean: float) -> PhaselessDataset:
    return PhaselessDataset(np.ones((4, 3)), np.full(4, mean), 0.0, 0)


def default_step_size_test() -> None:
    assert default_step_size(constant_dataset(1.0)) == pytest.approx(0.3)
    assert default_step_size(constant_dataset(4.0)) == pytest.approx(0.0375)
    for mean in (0.0, -1.0):
        with pytest.raises(DegenerateDataError):
            default_step_size(constant_dataset(mean))


# Test the step size on unit-norm signals.
def default_step_size_unit_test() -> None:
    values: np.ndarray = np.zeros(20)
    values[[2, 5]] = [0.6, 0.8]
    large: PhaselessDataset = sample_dataset(SparseSignal(values), 100000, 0.0, RandomStream(1))
    assert default_step_size(large) == pytest.approx(0.3, rel=0.03)


# Test the initialization on a hand example.
def initialize_test() -> None:
    data: PhaselessDataset = PhaselessDataset(np.array([[2.0, 1.0]]), np.array([4.0]), 0.0, 0)
    assert select_coordinate(data) == 0

    beta: float = 1e-3
    state: MirrorState = initialize(data, beta)
    assert state.iteration == 0
    assert state.primal[0] == pytest.approx(2 / math.sqrt(3))
    assert state.primal[1] == 0
    assert np.allclose(state.dual, HyperbolicMirrorMap(beta).grad_phi(state.primal), rtol=1e-15, atol=0)


# Test ties go to the smallest index.
def initialize_tie_test() -> None:
    data: PhaselessDataset = PhaselessDataset(np.ones((5, 4)), np.full(5, 2.0), 0.0, 0)
    assert select_coordinate(data) == 0
    assert initialize(data, 1e-5).primal[0] > 0


def initialize_degenerate_test() -> None:
    with pytest.raises(DegenerateDataError):
        initialize(constant_dataset(0.0), 1e-5)
    with pytest.raises(DegenerateDataError):
        eg_initialize(constant_dataset(-1.0), 1e-5)


# Test the EG initial pair.
def eg_initialize_test(noisy: Instance) -> None:
    assert eg_initial_pair(0.0, 2.0) == (1.0, 1.0)

    (_, data) = noisy
    for beta in (1e-2, 1e-8, 1e-20):
        state: EgState = eg_initialize(data, beta)
        assert np.allclose(state.u * state.v, beta ** 2 / 4, rtol=1e-14, atol=0)
        assert np.max(np.abs(state.primal - initialize(data, beta).primal)) <= 1e-12
        assert np.all(state.u > 0) and np.all(state.v > 0)

    theta: float = magnitude_estimate(data)
    (u, v) = eg_initial_pair(theta, 1e-4)
    a: float = theta / (2 * math.sqrt(3))
    assert u - v == pytest.approx(2 * a, rel=1e-14)
    assert u * v == pytest.approx(1e-8 / 4, rel=1e-14)


# Test single mirror descent steps.
def md_step_test() -> None:
    beta: float = 1e-3
    state: MirrorState = MirrorState.from_dual(np.array([0.0, 1.5]), beta)

    unchanged: MirrorState = md_step(state, np.zeros(2), 0.1, beta)
    assert unchanged.iteration == 1
    assert np.array_equal(unchanged.dual, state.dual)
    assert np.allclose(unchanged.primal, state.primal, rtol=1e-15)

    moved: MirrorState = md_step(MirrorState.from_dual(np.zeros(1), beta), np.array([-math.asinh(1)]), 1.0, beta)
    assert moved.primal[0] == pytest.approx(beta, rel=1e-14)

    with pytest.raises(InvalidParameterError):
        md_step(state, np.zeros(3), 0.1, beta)
    with pytest.raises(InvalidParameterError):
        md_step(state, np.zeros(2), 0.0, beta)


# Test divergence is reported with the iteration and coordinate.
def md_step_diverged_test() -> None:
    state: MirrorState = MirrorState.from_dual(np.array([0.0, 0.0, 10.0]), 1e-20, 4)
    with pytest.raises(DivergedError) as error:
        md_step(state, np.array([0.0, 0.0, -1e4]), 1.0, 1e-20)
    assert error.value.iteration == 5
    assert error.value.coordinate == 2

    with pytest.raises(DivergedError):
        md_step(state, np.array([np.nan, 0.0, 0.0]), 1.0, 1e-20)


# Test single EG steps.
def eg_step_test() -> None:
    generator: np.random.Generator = RandomStream(5).generator
    u: np.ndarray = np.full(4, 0.25)
    gradient: np.ndarray = generator.standard_normal(4)
    eta: float = 0.3

    assert np.array_equal(eg_step(EgState(u, u), np.zeros(4), eta).primal, np.zeros(4))

    stepped: EgState = eg_step(EgState(u, u), gradient, eta)
    assert np.allclose(stepped.primal, -2 * u * np.sinh(eta * gradient), rtol=1e-13)

    state: EgState = EgState(generator.uniform(0.1, 1, 4), generator.uniform(0.1, 1, 4))
    products: np.ndarray = state.u * state.v
    for _ in range(1000):
        state = eg_step(state, 0.1 * generator.standard_normal(4), eta)
    assert np.allclose(state.u * state.v, products, rtol=1e-12, atol=0)

    with pytest.raises(DivergedError):
        eg_step(EgState(u, u), np.array([1e4, 0, 0, 0]), 1.0)


# Test the dual and EG updates agree when fed the same gradients.
def update_equivalence_test() -> None:
    beta: float = 1e-6
    for seed in range(10):
        (_, data) = make_instance(40, 4, 150, 0.05, seed)
        eta: float = default_step_size(data)
        dual: MirrorState = initialize(data, beta)
        weights: EgState = eg_initialize(data, beta)
        for _ in range(200):
            gradient: np.ndarray = grad_risk(dual.primal, data)
            dual = md_step(dual, gradient, eta, beta)
            weights = eg_step(weights, gradient, eta)
            assert relative_error(dual.primal, weights.primal) <= 1e-9


def solver_config_test() -> None:
    config: SolverConfig = SolverConfig(1e-12, None, 100, 5, False, Engine.ExponentiatedGradient)
    assert SolverConfig.from_json(config.to_json()) == config
    assert config.to_json()["eta"] == "auto"

    for kwargs in ({"max_iters": 0}, {"beta": 0.0}, {"record_every": 0}, {"eta": -1.0}):
        with pytest.raises(InvalidParameterError):
            SolverConfig(**kwargs)  # type: ignore


def state_json_test() -> None:
    state: MirrorState = MirrorState.from_dual(np.array([0.5, -3.0]), 1e-4, 7)
    loaded: MirrorState = MirrorState.from_json(state.to_json())
    assert np.array_equal(loaded.dual, state.dual)
    assert loaded.iteration == 7

    weights: EgState = EgState(np.array([1.0, 2.0]), np.array([3.0, 4.0]), 2)
    assert np.array_equal(EgState.from_json(weights.to_json()).primal, weights.primal)
    with pytest.raises(InvalidParameterError):
        EgState(np.array([1.0]), np.array([0.0]))


# Test a run records oracle and hold-out metrics.
def run_test(noiseless: Instance) -> None:
    (signal, data) = noiseless
    train: PhaselessDataset = data.subset(np.arange(100))
    validation: PhaselessDataset = data.subset(np.arange(100, 120))
    seen: List[int] = []

    trajectory: Trajectory = run(
        train,
        SolverConfig(1e-8, None, 50, 7),
        signal,
        validation,
        [lambda t, _: seen.append(t)],
    )
    assert trajectory.status == RunStatus.Completed
    assert seen == list(range(51))
    assert list(trajectory.times) == [0, 7, 14, 21, 28, 35, 42, 49, 50]
    assert trajectory.eta == default_step_size(train)
    for record in trajectory.records:
        assert record.dist is not None
        assert record.dist_phi is not None
        assert record.off_support_l1 is not None
        assert record.coherence is not None
        assert record.holdout_risk is not None
        assert record.risk >= 0

    bare: Trajectory = run(train, SolverConfig(1e-8, None, 10))
    assert all(record.dist is None and record.holdout_risk is None for record in bare.records)


# Test the recording cadence doesn't touch the dynamics.
def record_every_test(noisy: Instance) -> None:
    (signal, data) = noisy
    dense: Trajectory = run(data, SolverConfig(1e-10, None, 60, 1, True), signal)
    sparse: Trajectory = run(data, SolverConfig(1e-10, None, 60, 10, True), signal)
    for record in sparse.records:
        same = dense.records[record.t]
        assert same.t == record.t
        assert np.array_equal(same.iterate, record.iterate)
        assert same.dist == record.dist


# Test both engines through the run loop.
def engine_run_test(noisy: Instance) -> None:
    (signal, data) = noisy
    dual: Trajectory = run(data, SolverConfig(1e-5, None, 100, 10), signal)
    eg: Trajectory = run(data, SolverConfig(1e-5, None, 100, 10, False, Engine.ExponentiatedGradient), signal)
    assert dual.final is not None and eg.final is not None
    assert relative_error(dual.final, eg.final) <= 1e-6


# Test early termination.
def until_test(noisy: Instance) -> None:
    (_, data) = noisy
    trajectory: Trajectory = run(data, SolverConfig(1e-10, None, 100, 7), until=lambda t: t == 10)
    assert list(trajectory.times) == [0, 7, 10]


# Test divergence carries the partial trajectory.
def run_diverged_test(noisy: Instance) -> None:
    (signal, data) = noisy
    with pytest.raises(DivergedError) as error:
        run(data, SolverConfig(1e-10, 1e3, 100), signal)
    partial = error.value.trajectory
    assert isinstance(partial, Trajectory)
    assert partial.status == RunStatus.Diverged
    assert partial.diverged_at == error.value.iteration
    assert len(partial) == error.value.iteration


def run_mismatch_test(noisy: Instance) -> None:
    (_, data) = noisy
    with pytest.raises(InvalidParameterError):
        run(data, SolverConfig(), SparseSignal(np.ones(data.n + 1)))


def initialization_quality_test() -> None:
    values: np.ndarray = np.array([0.0, 1.0, 0.4])
    data: PhaselessDataset = PhaselessDataset(np.diag([1.0, 3.0, 2.0]), np.array([1.0, 1.0, 1.0]), 0.0, 0)
    quality: InitializationQuality = initialization_quality(SparseSignal(values), data)
    assert quality == InitializationQuality(1, True, True)

    off: PhaselessDataset = PhaselessDataset(np.diag([3.0, 1.0, 2.0]), np.array([1.0, 1.0, 1.0]), 0.0, 0)
    assert initialization_quality(SparseSignal(values), off) == InitializationQuality(0, False, False)

    weak: PhaselessDataset = PhaselessDataset(np.diag([1.0, 1.0, 3.0]), np.array([1.0, 1.0, 1.0]), 0.0, 0)
    assert initialization_quality(SparseSignal(values), weak) == InitializationQuality(2, True, False)


def theory_reference_test() -> None:
    values: np.ndarray = np.zeros(100)
    values[[1, 2]] = [0.6, 0.8]
    reference: TheoryReference = theory_reference(SparseSignal(values), 400, 0.1, 1e-6, 0.3)
    assert reference.delta == pytest.approx(math.sqrt(100 * 1e-6))
    assert reference.off_support_bound == pytest.approx(reference.delta)
    assert reference.statistical_rate == pytest.approx(0.1 * math.sqrt(2 * math.log(100) / 400))
    assert reference.beta_ceiling == pytest.approx(1e-6)
    assert 0 < reference.contraction < 1
    assert reference.warmup_reference > 0


# Test the engines step and reset through the abstract interface.
def engine_test(noisy: Instance) -> None:
    (_, data) = noisy
    for engine in Engine:
        solver: MirrorDescent = create_engine(engine, data, 1e-6, default_step_size(data))
        start: np.ndarray = solver.primal.copy()
        solver.step(grad_risk(solver.primal, data))
        assert solver.iteration == 1
        assert not np.array_equal(solver.primal, start)
        solver.initialize()
        assert solver.iteration == 0
        assert np.allclose(solver.primal, start, rtol=1e-15, atol=1e-300)
