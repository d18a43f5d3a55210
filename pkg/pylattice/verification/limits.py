"""
Limits in the parameter schedule: ultra-discretization of the discrete laws to
their piecewise-linear counterparts, and the conditioning that turns an
invariant Toda triple into an invariant KdV pair.
"""

import enum
import logging
import math
from typing import Any, Callable, List, Mapping, Sequence, Tuple

import numpy as np
import scipy.stats
from scipy.stats.sampling import NumericalInversePolynomial

from ..base import InvalidParams, RejectionStarved, SamplerOverflow, relative_error
from ..distributions import DistributionSpec, gamma_law, gig, s_exp, sample, st_exp
from ..maps import LocalMap, MapFamily, conjugated_kdv, dkdv, udkdv
from ..rng import RNGStream
from .report import TestReport
from .stats import ks_one_sample

ULTRADISCRETIZATION = "-eps log X(eps) converges in distribution to the piecewise-linear law"
CORRESPONDENCE = "the Toda triple conditioned on the KdV slice converges to the KdV pair"

# largest exponent c/eps for which e^(c/eps) is a finite double
MAX_EXPONENT = 700.0

ULTRADISCRETIZATION_KS = 0.02
CORRESPONDENCE_KS = 0.03

# one increase of the KS curve up to this size is tolerated
KS_INVERSION = 0.005

MIN_ACCEPTANCE = 1e-4
CONJUGATION_POINTS = 10000
CONJUGATION_ERROR = 1e-12

DEFAULT_EPS = (0.2, 0.1, 0.05, 0.02)


class LimitTarget(enum.Enum):
    "The limit law of an ultra-discretization."

    ST_EXP_FROM_GIG = "stExp_from_GIG"
    S_EXP_FROM_GAM = "sExp_from_Gam"


class CorrespondenceSide(enum.Enum):
    "Whether the correspondence is taken between the ultra-discrete or the discrete systems."

    ULTRA = "ultra"
    DISCRETE = "discrete"


class _LogGIGDensity:
    """
    Unnormalized density of Y = eps log X for X ~ GIG(lambda eps, e^((c-L)/eps), e^(c/eps)),
    proportional to exp(-lambda y - e^((y-L+c)/eps) - e^((c-y)/eps)).
    """

    def __init__(self, lam: float, c: float, L: float, eps: float):
        self.lam = lam
        self.c = c
        self.L = L
        self.eps = eps

    def logpdf(self, y: float) -> float:
        return -self.lam * y - math.exp((y - self.L + self.c) / self.eps) - math.exp((self.c - y) / self.eps)

    def pdf(self, y: float) -> float:
        return math.exp(self.logpdf(y))


def _param(params: Mapping[str, Any], name: str, default: Any = None) -> float:
    value = params.get(name, default)
    if value is None:
        raise InvalidParams(f"missing parameter: {name}")
    return float(value)


def _check_schedule(eps_list: Sequence[float]) -> List[float]:
    schedule = [float(e) for e in eps_list]
    if not schedule:
        raise InvalidParams("empty eps schedule")
    if any(e <= 0 for e in schedule):
        raise InvalidParams(f"eps values must be positive: {schedule}")
    if any(b > a for a, b in zip(schedule, schedule[1:])):
        raise InvalidParams(f"eps schedule must be nonincreasing: {schedule}")
    return schedule


def _check_exponent(exponent: float, eps: float) -> None:
    if abs(exponent) / eps > MAX_EXPONENT:
        raise SamplerOverflow(f"e^({exponent}/{eps}) exceeds the floating-point range")


def monotone_ks(ks: Sequence[float]) -> Tuple[bool, int]:
    """
    Whether a KS curve decreases along the schedule, up to one increase of at most 0.005.

    :returns: The verdict and the number of increases.
    """

    increases = [b - a for a, b in zip(ks, ks[1:]) if b > a]
    monotone = len(increases) <= 1 and all(step <= KS_INVERSION for step in increases)
    return monotone, len(increases)


def _limit_report(
    name: str,
    anchor: str,
    model: str,
    schedule: Sequence[float],
    ks: Sequence[float],
    threshold: float,
    n: int,
    seed: int,
    **extra: Any,
) -> TestReport:
    monotone, inversions = monotone_ks(ks)
    statistic = ks[-1] if monotone else math.inf
    details = {"eps": list(schedule), "ks": list(ks), "monotone": monotone, "inversions": inversions}
    details.update(extra)
    return TestReport(name, anchor, model, "final_ks", statistic, threshold, n, seed, details)


def sample_s_exp_from_gam(lam: float, c: float, eps: float, n: int, rng: RNGStream) -> np.ndarray:
    """
    Draws -eps log X for X ~ Gam(lambda eps, e^(c/eps)).

    With X = G e^(-c/eps) and G ~ Gam(lambda eps, 1), the sample is c - eps log G; log G is drawn
    directly so that small shapes do not underflow.
    """

    _check_exponent(c, eps)
    log_g = scipy.stats.loggamma(c=lam * eps).rvs(size=n, random_state=rng.generator)
    return c - eps * log_g


def sample_st_exp_from_gig(lam: float, c: float, L: float, eps: float, n: int, rng: RNGStream) -> np.ndarray:
    "Draws eps log X for X ~ GIG(lambda eps, e^((c-L)/eps), e^(c/eps)) by numerical inversion."

    if not c < L / 2.0:
        raise InvalidParams(f"stExp limit needs c < L/2: c = {c}, L = {L}")
    _check_exponent(max(abs(c), abs(L - c)), eps)
    density = _LogGIGDensity(lam, c, L, eps)
    sampler = NumericalInversePolynomial(
        density,
        domain=(c - 5.0 * eps, L - c + 5.0 * eps),
        center=L / 2.0,
        random_state=rng.generator,
    )
    return np.asarray(sampler.rvs(size=n), dtype=float)


def ultradiscretization_limit(target: LimitTarget, params: Mapping[str, Any]) -> DistributionSpec:
    lam = _param(params, "lambda")
    c = _param(params, "c")
    if target is LimitTarget.S_EXP_FROM_GAM:
        return s_exp(lam, c)
    L = _param(params, "L")
    return st_exp(lam, c, L - c)


def check_ultradiscretization(
    target: LimitTarget,
    params: Mapping[str, Any],
    eps_list: Sequence[float],
    n: int,
    rng: RNGStream,
) -> TestReport:
    """
    Tests the convergence of a discrete law to its ultra-discrete limit along a schedule of eps.

    The KS distance to the limit law is computed at every eps; the report passes when the curve
    decreases (one small increase tolerated) and its final value is below 0.02.

    :param params: lambda and c, and L for the stExp target.
    :raises SamplerOverflow: Some e^(c/eps) is not a finite double.
    """

    schedule = _check_schedule(eps_list)
    limit = ultradiscretization_limit(target, params)
    lam, c = _param(params, "lambda"), _param(params, "c")

    ks = []
    for i, eps in enumerate(schedule):
        if target is LimitTarget.S_EXP_FROM_GAM:
            samples = sample_s_exp_from_gam(lam, c, eps, n, rng.child(i))
        else:
            samples = sample_st_exp_from_gig(lam, c, _param(params, "L"), eps, n, rng.child(i))
        distance, _ = ks_one_sample(samples, limit)
        logging.debug("%s at eps=%g: ks=%g", target.value, eps, distance)
        ks.append(distance)

    return _limit_report(
        "ultradiscretization",
        ULTRADISCRETIZATION,
        target.value,
        schedule,
        ks,
        ULTRADISCRETIZATION_KS,
        n,
        rng.seed,
        limit=str(limit),
    )


def _conditioned_triples(
    laws: Tuple[DistributionSpec, DistributionSpec, DistributionSpec],
    accept: Callable[[np.ndarray, np.ndarray], np.ndarray],
    n: int,
    rng: RNGStream,
) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    Samples (A, B, C) from a product law in batches until n triples satisfy the condition.

    :returns: The accepted B and C values and the acceptance rate.
    :raises RejectionStarved: Fewer than one triple in 10^4 is accepted.
    """

    batch = max(n, 100000)
    accepted_b: List[np.ndarray] = []
    accepted_c: List[np.ndarray] = []
    count = 0
    drawn = 0
    index = 0
    while count < n:
        stream = rng.child(index)
        a = sample(laws[0], stream.child(0), batch)
        b = sample(laws[1], stream.child(1), batch)
        c = sample(laws[2], stream.child(2), batch)
        mask = accept(a, b)
        accepted_b.append(b[mask])
        accepted_c.append(c[mask])
        count += int(mask.sum())
        drawn += batch
        index += 1
        if count / drawn < MIN_ACCEPTANCE:
            raise RejectionStarved(f"accepted {count} of {drawn} triples")
    return np.concatenate(accepted_b)[:n], np.concatenate(accepted_c)[:n], count / drawn


def conjugation_error(local_map: LocalMap, rng: RNGStream, points: int = CONJUGATION_POINTS) -> float:
    "Largest relative deviation of the Toda slice map conjugated to KdV coordinates from the KdV map."

    generator = rng.generator
    if local_map.family is MapFamily.UDKDV:
        J = local_map["J"]
        x = generator.uniform(-2.0 - J, 2.0 + 2.0 * J, points)
        u = generator.uniform(-2.0 - J, 2.0 + 2.0 * J, points)
    else:
        x = np.exp(generator.uniform(-3.0, 3.0, points))
        u = np.exp(generator.uniform(-3.0, 3.0, points))
    expected = local_map(x, u)
    actual = conjugated_kdv(local_map, x, u)
    return max(relative_error(actual[0], expected[0]), relative_error(actual[1], expected[1]))


def check_correspondence(
    side: CorrespondenceSide,
    params: Mapping[str, Any],
    n: int,
    eps_list: Sequence[float],
    rng: RNGStream,
) -> TestReport:
    """
    Tests the correspondence between the Toda and KdV systems.

    The conjugation identity is evaluated on 10^4 random points. Then A, B, C are drawn from the
    invariant triple and conditioned on the KdV slice: on the ultra side
    A ~ sExp(lambda1 + lambda2, c), B ~ sExp(lambda1, c), C ~ sExp(lambda2, c) are conditioned on
    |A + B| <= eps, and B and C converge to stExp(-lambda2, c, -c) and sExp(lambda2, c); on the
    discrete side A ~ Gam(lambda1 + lambda2, c), B ~ Gam(lambda1, c), C ~ Gam(lambda2, c) are
    conditioned on |AB - 1| <= eps, and B and C converge to GIG(lambda2, c, c) and Gam(lambda2, c).

    The KS curve is that of B, whose conditional law changes in the limit. The report passes when
    the conjugation identity holds, the curve decreases, and the final KS distances of B and C are
    below 0.03.

    :param params: lambda1, lambda2 and c, and J (ultra side) or alpha (discrete side) of the
        conjugated map, both defaulting to 1.
    :param n: Number of accepted triples per eps.
    """

    schedule = _check_schedule(eps_list)
    lambda1, lambda2, c = _param(params, "lambda1"), _param(params, "lambda2"), _param(params, "c")

    if side is CorrespondenceSide.ULTRA:
        if not c < 0:
            raise InvalidParams(f"ultra correspondence needs c < 0: {c}")
        local_map = udkdv(_param(params, "J", 1.0), math.inf)
        laws = (s_exp(lambda1 + lambda2, c), s_exp(lambda1, c), s_exp(lambda2, c))
        limits = (st_exp(-lambda2, c, -c), s_exp(lambda2, c))

        def slice_condition(eps: float) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
            return lambda a, b: np.abs(a + b) <= eps

    else:
        if not c > 0:
            raise InvalidParams(f"discrete correspondence needs c > 0: {c}")
        local_map = dkdv(_param(params, "alpha", 1.0), 0.0)
        laws = (gamma_law(lambda1 + lambda2, c), gamma_law(lambda1, c), gamma_law(lambda2, c))
        limits = (gig(lambda2, c, c), gamma_law(lambda2, c))

        def slice_condition(eps: float) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
            return lambda a, b: np.abs(a * b - 1.0) <= eps

    error = conjugation_error(local_map, rng.child(0))
    logging.debug("conjugation identity of %s holds up to %g", local_map, error)

    ks = []
    ks_c = []
    rates = []
    for i, eps in enumerate(schedule):
        b, c_values, rate = _conditioned_triples(laws, slice_condition(eps), n, rng.child(i + 1))
        distance = ks_one_sample(b, limits[0])[0]
        ks_c.append(ks_one_sample(c_values, limits[1])[0])
        logging.debug("%s correspondence at eps=%g: ks=%g, acceptance=%g", side.value, eps, distance, rate)
        ks.append(distance)
        rates.append(rate)

    report = _limit_report(
        "correspondence",
        CORRESPONDENCE,
        str(local_map),
        schedule,
        ks,
        CORRESPONDENCE_KS,
        n,
        rng.seed,
        ks_c=ks_c,
        conjugation_error=error,
        acceptance=rates,
        limit=[str(law) for law in limits],
    )
    if not error < CONJUGATION_ERROR:
        report.statistic = math.inf
    else:
        report.statistic = max(report.statistic, ks_c[-1])
    return report
