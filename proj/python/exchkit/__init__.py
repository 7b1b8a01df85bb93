"""Exact computations for weighted exchangeable sequences on finite alphabets."""

from ._core import (
    FalsificationError,
    Instance,
    InputError,
    TupleDistribution,
    bound_finite,
    bound_general,
    build_model,
    decode_tuple,
    decompose,
    encode_tuple,
    freedman_gap,
    is_weighted_exchangeable,
    lp_project,
    marginal,
    permanent,
    random_instance,
    sample_urn_conditional,
    tv_decay,
    tv_distance,
    urn_conditional,
    urn_weighted_iid,
    verify,
)

__all__ = [
    "FalsificationError",
    "Instance",
    "InputError",
    "TupleDistribution",
    "bound_finite",
    "bound_general",
    "build_model",
    "decode_tuple",
    "decompose",
    "encode_tuple",
    "freedman_gap",
    "is_weighted_exchangeable",
    "lp_project",
    "marginal",
    "permanent",
    "random_instance",
    "sample_urn_conditional",
    "tv_decay",
    "tv_distance",
    "urn_conditional",
    "urn_weighted_iid",
    "verify",
]
