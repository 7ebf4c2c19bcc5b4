"""Exact weight geometry of torus modules."""

from .geometry import (
    ChamberCertificate,
    ModularityProfile,
    NotComputedError,
    SliceDescriptor,
    chambers,
    flats,
    has_fpig,
    is_stable,
    is_unstable,
    isotropy_subtori,
    m0,
    m0_orthogonal_formula,
    modularity_profile,
    null_cone_dim,
    torus_slice_reps,
)

__all__ = [
    "ChamberCertificate",
    "ModularityProfile",
    "NotComputedError",
    "SliceDescriptor",
    "chambers",
    "flats",
    "has_fpig",
    "is_stable",
    "is_unstable",
    "isotropy_subtori",
    "m0",
    "m0_orthogonal_formula",
    "modularity_profile",
    "null_cone_dim",
    "torus_slice_reps",
]
