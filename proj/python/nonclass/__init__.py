"""Local-unitary non-classicality measure D(rho) for bipartite density matrices.

Matrices are complex numpy arrays of shape (M*N, M*N) with A as the leading
tensor factor.
"""

from ._core import (
    DimensionMismatch,
    InvalidState,
    bell_state,
    bounds_2xN,
    classify,
    d_closed_2xN,
    d_given_u,
    discord,
    fano_decompose,
    horodecki_m,
    minimize_d,
    partial_trace,
    random_density,
    random_unitary,
    schmidt_pure_state,
    validate,
    werner_d,
    werner_discord,
    werner_state,
)

__all__ = [
    "DimensionMismatch",
    "InvalidState",
    "bell_state",
    "bounds_2xN",
    "classify",
    "d_closed_2xN",
    "d_given_u",
    "discord",
    "fano_decompose",
    "horodecki_m",
    "minimize_d",
    "partial_trace",
    "random_density",
    "random_unitary",
    "schmidt_pure_state",
    "validate",
    "werner_d",
    "werner_discord",
    "werner_state",
]
