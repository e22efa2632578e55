"""Empirical risk, gradients, and the coherence diagnostic."""

from mirrorphase.classes.risk.empirical import (
    Coherence,
    RiskEvaluation,
    coherence_inner_product,
    coherence_with_gradient,
    evaluate,
    grad_risk,
    population_grad,
    risk,
)

__all__ = [
    "Coherence",
    "RiskEvaluation",
    "coherence_inner_product",
    "coherence_with_gradient",
    "evaluate",
    "grad_risk",
    "population_grad",
    "risk",
]
