"""
Exact product tables and their pushforwards, and the carrier law that pairs
with a configuration law in a detailed-balance solution.
"""

import itertools
import logging
import math
from collections import defaultdict
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..base import DomainError, InvalidParams, NotConverged, PrecheckFailed, UnsupportedFamily
from ..distributions import (
    DistributionSpec,
    Family,
    dirac,
    exact_pmf_table,
    gamma_law,
    gig,
    inv_gamma,
    s_exp,
    ss_geo,
    sstb_geo,
    st_exp,
)
from ..maps import LocalMap, MapFamily, MapKind

Table = Dict[Tuple[float, ...], float]

# largest probability mass the truncated carrier chain may leave at its top state
MASS_DEFECT = 1e-12

MAX_ITERATIONS = 100000


def _key(values) -> Tuple[float, ...]:
    # adding 0.0 turns -0.0 into 0.0
    return tuple(float(v) + 0.0 for v in values)


def product_table(*specs: DistributionSpec) -> Table:
    "The product of finitely supported laws, keyed by tuples of support points."

    tables = [exact_pmf_table(spec) for spec in specs]
    product = {}
    for combination in itertools.product(*(table.items() for table in tables)):
        key = _key(x for x, _ in combination)
        product[key] = math.prod(p for _, p in combination)
    return product


def pushforward_table(local_map: LocalMap, *specs: DistributionSpec) -> Table:
    "The image of the product of finitely supported laws under a map, by enumeration."

    masses: Dict[Tuple[float, ...], List[float]] = defaultdict(list)
    for point, p in product_table(*specs).items():
        masses[_key(local_map(*point))].append(p)
    return {key: math.fsum(values) for key, values in masses.items()}


def _same(a: float, b: float) -> bool:
    return a == b or math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12)


def _udkdv_carrier(model: LocalMap, mu: DistributionSpec) -> DistributionSpec:
    J, K = model["J"], model["K"]
    family = mu.family

    if family in (Family.ST_EXP, Family.S_EXP):
        lam = mu["lambda"]
        c = mu["c1"] if family is Family.ST_EXP else mu["c"]
        upper = mu["c2"] if family is Family.ST_EXP else math.inf
        if not _same(upper, J - c):
            raise UnsupportedFamily(f"{mu} is not of the form stExp(lambda, c, J - c) for J = {J}")
        if math.isinf(K):
            return s_exp(lam, c)
        return st_exp(lam, c, K - c)

    if family in (Family.SSTB_GEO, Family.SS_GEO):
        theta, M, m = mu["theta"], mu["M"], mu["m"]
        N = mu["N"] if family is Family.SSTB_GEO else math.inf
        kappa = mu.get("kappa", 1.0)
        if not _same(N * m, J - M * m):
            raise UnsupportedFamily(f"{mu} is not of the form sstbGeo(theta, c/m, (J - c)/m) for J = {J}")
        if math.isinf(K):
            return sstb_geo(theta, M, math.inf, kappa, m)
        return sstb_geo(theta, M, (K - M * m) / m, kappa, m)

    if family is Family.DIRAC and J < K:
        if mu["x"] < J / 2.0:
            return mu
        raise PrecheckFailed(f"the carrier law paired with {mu} is not unique for J = {J}")

    raise UnsupportedFamily(f"no detailed-balance carrier law known for {mu} under {model}")


def _dkdv_carrier(model: LocalMap, mu: DistributionSpec) -> DistributionSpec:
    alpha, beta = model["alpha"], model["beta"]
    if mu.family is Family.GIG:
        lam, c1, c = mu["lambda"], mu["c1"], mu["c2"]
    elif mu.family is Family.IG:
        lam, c1, c = mu["lambda"], 0.0, mu["c"]
    else:
        raise UnsupportedFamily(f"no detailed-balance carrier law known for {mu} under {model}")
    if not _same(c1, c * alpha):
        raise UnsupportedFamily(f"{mu} is not of the form GIG(lambda, c alpha, c) for alpha = {alpha}")
    if beta == 0.0:
        return inv_gamma(lam, c)
    return gig(lam, c * beta, c)


def _toda_carrier(model: LocalMap, mu: DistributionSpec, mu_tilde: DistributionSpec) -> DistributionSpec:
    ultra = model.family is MapFamily.UDTODA
    if mu.family is not mu_tilde.family:
        raise UnsupportedFamily(f"laws {mu_tilde} and {mu} belong to different families")

    if mu.family is Family.DIRAC:
        if ultra and mu_tilde["x"] < mu["x"]:
            return mu_tilde
        if not ultra and mu_tilde["x"] > mu["x"]:
            return dirac(mu_tilde["x"] - mu["x"])
        raise PrecheckFailed(f"no unique carrier law pairs {mu_tilde} with {mu} under {model}")

    if ultra and mu.family is Family.S_EXP and _same(mu["c"], mu_tilde["c"]):
        rate = mu_tilde["lambda"] - mu["lambda"]
        if rate > 0:
            return s_exp(rate, mu["c"])
    if ultra and mu.family is Family.SS_GEO and mu["M"] == mu_tilde["M"] and mu["m"] == mu_tilde["m"]:
        ratio = mu_tilde["theta"] / mu["theta"]
        if 0 < ratio < 1:
            return ss_geo(ratio, int(mu["M"]), mu["m"])
    if not ultra and mu.family is Family.GAM and _same(mu["c"], mu_tilde["c"]):
        shape = mu_tilde["lambda"] - mu["lambda"]
        if shape > 0:
            return gamma_law(shape, mu["c"])

    raise UnsupportedFamily(f"no detailed-balance carrier law known for {mu_tilde} x {mu} under {model}")


def predicted_carrier(
    model: LocalMap, mu: DistributionSpec, mu_tilde: Optional[DistributionSpec] = None
) -> DistributionSpec:
    """
    The carrier law nu paired with the configuration law in a detailed-balance solution.

    For type II models the configuration law is the product mu_tilde x mu of the slots (Q, E),
    respectively (I, J).

    :raises UnsupportedFamily: The pair is not one of the known solution families.
    :raises PrecheckFailed: The carrier law is not determined by the configuration law.
    """

    family = model.family
    if family is MapFamily.UDKDV:
        if model["J"] == model["K"]:
            return mu
        return _udkdv_carrier(model, mu)
    if family is MapFamily.DKDV:
        if model["alpha"] == model["beta"]:
            return mu
        return _dkdv_carrier(model, mu)
    if family in (MapFamily.UDTODA, MapFamily.DTODA):
        if mu_tilde is None:
            raise InvalidParams(f"type II model {model} needs the law of both slots")
        return _toda_carrier(model, mu, mu_tilde)
    raise UnsupportedFamily(f"no detailed-balance solutions known for {model}")


def carrier_fixed_point(
    model: LocalMap, mu: DistributionSpec, truncation: int = 64
) -> Dict[float, float]:
    """
    The stationary law of the carrier chain u_n = F^(2)(x_n, u_{n-1}) driven by i.i.d. x_n ~ mu.

    The chain lives on the lattice lower + m k, k = 0..truncation, where lower is the least
    support point of mu and m its spacing; transitions beyond the top state stop there.

    :raises InfiniteSupport: mu is not finitely supported.
    :raises DomainError: The carrier leaves the lattice.
    """

    if model.kind is not MapKind.TYPE_I:
        raise UnsupportedFamily(f"carrier chain needs a type I map: {model}")
    if truncation < 1:
        raise InvalidParams(f"truncation must be positive: {truncation}")

    table = exact_pmf_table(mu)
    m = mu.get("m", 1.0)
    lower = min(table)
    states = lower + m * np.arange(truncation + 1)

    transition = np.zeros((truncation + 1, truncation + 1))
    for x, p in table.items():
        following = np.asarray(model(np.full(states.shape, x), states)[1], dtype=float)
        steps = (following - lower) / m
        index = np.rint(steps)
        if np.any(np.abs(steps - index) > 1e-9) or np.any(index < 0):
            raise DomainError(f"carrier of {model} leaves the lattice {lower} + {m} k")
        index = np.minimum(index, truncation).astype(int)
        np.add.at(transition, (np.arange(truncation + 1), index), p)

    # the lazy chain has the same stationary law and is aperiodic
    lazy = 0.5 * (transition + np.eye(truncation + 1))
    pi = np.full(truncation + 1, 1.0 / (truncation + 1))
    for iteration in range(MAX_ITERATIONS):
        following = pi @ lazy
        change = float(np.abs(following - pi).sum())
        pi = following
        if change < 1e-14:
            break
    else:
        raise NotConverged(f"carrier chain of {model} did not settle in {MAX_ITERATIONS} steps")

    logging.debug("carrier chain settled after %d steps", iteration + 1)
    if pi[-1] > MASS_DEFECT:
        logging.warning(
            "carrier law of %s puts mass %g on the truncation state %g", model, pi[-1], states[-1]
        )
    return {float(s): float(p) for s, p in zip(states, pi)}
