"""Sparse-projection changepoint detection for high-dimensional time series.

Arrays are p x n (rows are coordinates, columns are time). Changepoints are
1-based: a changepoint z is the last time index of its left segment.
"""

from ._core import (
    Error,
    InvalidInput,
    NoDirection,
    __version__,
    adjusted_rand_index,
    admm_solve,
    calibrate,
    closed_form_s2,
    cusum_transform,
    default_lambda,
    estimate_noise,
    hausdorff,
    inspect,
    inspect_single,
    inspect_spatial,
    normalize,
    project_nuclear_ball,
    project_simplex,
    simulate,
    soft_threshold,
    wasserstein1,
)

__all__ = [
    "Error",
    "InvalidInput",
    "NoDirection",
    "__version__",
    "adjusted_rand_index",
    "admm_solve",
    "calibrate",
    "closed_form_s2",
    "cusum_transform",
    "default_lambda",
    "estimate_noise",
    "hausdorff",
    "inspect",
    "inspect_single",
    "inspect_spatial",
    "normalize",
    "project_nuclear_ball",
    "project_simplex",
    "simulate",
    "soft_threshold",
    "wasserstein1",
]
