"""
Stationarity of the quadrant models under their boundary laws.
"""

import logging
from typing import Dict

import numpy as np

from ..base import InvalidParams
from ..rng import RNGStream
from ..stochastic import InhomogeneousSetup, QuadrantSetup
from .report import DEFAULT_ALPHA, TestReport, report_from_p_values
from .stats import chi2_independence, independence_bins, marginal_p_value

QUADRANT_STATIONARITY = "increments on a down-right path are independent with the boundary laws"
INHOMOGENEOUS = "row and column outputs keep their boundary laws"


def check_quadrant_stationarity(
    setup: QuadrantSetup,
    replicas: int,
    n: int,
    m: int,
    rng: RNGStream,
    alpha: float = DEFAULT_ALPHA,
    bins: int = 8,
) -> TestReport:
    """
    Fills independent quadrants and tests the increments on the middle anti-diagonal.

    The U increments on the anti-diagonal are tested against the law of the left boundary, the
    V increments against the law of the bottom boundary. Independence is tested between U and V
    of the middle cell and between U of the middle cell and U of its lower-right neighbour.
    """

    if replicas < 1:
        raise InvalidParams(f"number of replicas must be positive: {replicas}")
    d = (n + m) // 2 + 1
    field = setup.run(n, m, rng, replicas)
    u, v = field.anti_diagonal(d)
    if u.shape[-1] < 2:
        raise InvalidParams(f"anti-diagonal {d} of a {n} x {m} quadrant has fewer than two cells")
    j = u.shape[-1] // 2 - 1

    p_values: Dict[str, float] = {
        "marginal_u": marginal_p_value(u.ravel(), setup.boundary_x),
        "marginal_v": marginal_p_value(v.ravel(), setup.boundary_u),
    }
    for name, first, second in (("independence_uv", u[:, j], v[:, j]), ("independence_uu", u[:, j], u[:, j + 1])):
        pairs = np.column_stack([first, second])
        p_values[name] = chi2_independence(pairs, independence_bins(len(pairs), bins))[1]

    logging.debug("stationarity of %s on anti-diagonal %d: %s", setup.model, d, p_values)
    return report_from_p_values(
        "stochastic_quadrant",
        QUADRANT_STATIONARITY,
        str(setup.model),
        p_values,
        alpha,
        replicas,
        rng.seed,
        {"anti_diagonal": d, "cells": int(u.shape[-1])},
    )


def check_inhomogeneous(
    setup: InhomogeneousSetup,
    replicas: int,
    rng: RNGStream,
    alpha: float = DEFAULT_ALPHA,
) -> TestReport:
    "Tests the output U_{n,M} of every row against its row law and V_{N,t} of every column against its column law."

    if replicas < 1:
        raise InvalidParams(f"number of replicas must be positive: {replicas}")
    field = setup.run(rng, replicas)
    n, m = field.n_max, field.m_max

    p_values: Dict[str, float] = {}
    for k, spec in enumerate(setup.boundary_x):
        p_values[f"row_{k + 1}"] = marginal_p_value(field.U[:, k, m], spec)
    for t, spec in enumerate(setup.boundary_u):
        p_values[f"column_{t + 1}"] = marginal_p_value(field.V[:, n, t], spec)

    return report_from_p_values(
        "inhomogeneous",
        INHOMOGENEOUS,
        str(field.model),
        p_values,
        alpha,
        replicas,
        rng.seed,
    )
