"""Siegel-Jacobi ball geometry engine."""

import json

from ._core import (
    SjkError,
    curvature,
    epsilon,
    kahler_potential,
    kernel,
    laplacian,
    metric,
    metric_det,
    metric_inverse,
    normalization_constant,
    parseval_n1,
    partial_cayley,
    partial_cayley_inverse,
    run_cli,
    sample_jacobi_ball,
)
from ._core import verify_json as _verify_json


def verify(category="all", n=2, k=4.0, mu=1.0, trials=50, seed=7):
    """Run the property suite and return the report as a dict."""
    return json.loads(_verify_json(category, n, k, mu, trials, seed))


__all__ = [
    "SjkError",
    "curvature",
    "epsilon",
    "kahler_potential",
    "kernel",
    "laplacian",
    "metric",
    "metric_det",
    "metric_inverse",
    "normalization_constant",
    "parseval_n1",
    "partial_cayley",
    "partial_cayley_inverse",
    "run_cli",
    "sample_jacobi_ball",
    "verify",
]
