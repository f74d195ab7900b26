"""Sharp pre-Schwarzian norm bounds for the exponential and lemniscate-type
starlike and convex classes, with numerical verification."""

from ._core import (
    alpha_root,
    aux_catalog,
    aux_eval,
    certify,
    estimate_extremal,
    estimate_koebe,
    norm_bound,
    radial_profile,
    verify,
)

__all__ = [
    "alpha_root",
    "aux_catalog",
    "aux_eval",
    "certify",
    "estimate_extremal",
    "estimate_koebe",
    "norm_bound",
    "radial_profile",
    "verify",
]
