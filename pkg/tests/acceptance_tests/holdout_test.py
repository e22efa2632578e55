# pytest lib.
import pytest

# Sweeps.
from mirrorphase.experiments.sweep import (
    Axis,
    Metric,
    SweepResult,
    SweepSpec,
    TrialStatus,
    run_sweep,
)

# Test fixtures.
from tests.acceptance_tests.conftest import SWEEP_THREADS


# Test the hold-out rule tracks the oracle rule.
@pytest.mark.second_to_last
def holdout_versus_oracle_test() -> None:
    spec: SweepSpec = SweepSpec(
        Axis.NoiseRatio,
        [0.2],
        n=500,
        m=800,
        k=5,
        beta=1e-10,
        t_max=3000,
        trials=20,
        seed=12,
        metrics=[Metric.Oracle, Metric.Holdout],
        record_every=5,
    )
    result: SweepResult = run_sweep(spec, SWEEP_THREADS)
    for outcome in result.outcomes:
        if outcome.status == TrialStatus.Completed:
            assert outcome.metric_oracle is not None and outcome.metric_holdout is not None
            assert outcome.metric_oracle <= outcome.metric_holdout

    oracle: float = result.means(Metric.Oracle)[0]
    holdout: float = result.means(Metric.Holdout)[0]
    assert oracle <= holdout <= 3 * oracle
