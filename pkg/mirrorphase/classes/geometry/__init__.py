"""Mirror geometry: the hyperbolic entropy mirror map and sign-invariant distances."""

# HyperbolicMirrorMap class.
from mirrorphase.classes.geometry.mirror_map import MIN_BETA, HyperbolicMirrorMap

# Distances.
from mirrorphase.classes.geometry.distance import (
    LemmaTwoCheck,
    dist_phi_signset,
    dist_signset,
    lemma2_bounds,
    nearest_sign,
)

__all__ = [
    "MIN_BETA",
    "HyperbolicMirrorMap",
    "LemmaTwoCheck",
    "dist_phi_signset",
    "dist_signset",
    "lemma2_bounds",
    "nearest_sign",
]
