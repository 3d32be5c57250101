"""Discrete diagnostics for the compactness of the Cauchy transform."""

import json as _json

from ._core import (  # noqa: F401
    CauchylabError,
    Measure,
    cantor_theta_series,
    circumradius,
    curvature_ratio_scan,
    density_profile,
    generate_cantor,
    generate_circle,
    generate_disc,
    generate_segment,
    growth_constant,
    hilbert_fk,
    kernel_eval,
    menger_c2,
    menger_c2_point,
    num_threads,
    operator_norm,
    set_num_threads,
    theta,
    truncation_gap,
    tv_identity_residual,
)
from ._core import compactness_verdict_json as _verdict_json


def compactness_verdict(mu, scales, eps_ladder, **kwargs):
    """Report as a dict; numbers are 17-digit decimal strings."""
    return _json.loads(_verdict_json(mu, list(scales), list(eps_ladder), **kwargs))


__version__ = "0.1.0"
