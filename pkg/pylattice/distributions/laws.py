"""
Concrete probability laws behind a DistributionSpec: sampling, densities,
distribution functions, moments and exact tables.
"""

from __future__ import annotations

import logging
import math
import threading
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np
import scipy.integrate
import scipy.stats

from ..base import InfiniteSupport, InvalidParams
from ..rng import RNGStream
from .qseries import qnb_normalizer, qnb_weights
from .spec import DistributionSpec, Family, qnb_b, qnb_bound, validate

# tail mass dropped when tabulating a lattice law with infinite support
TAIL_MASS = 1e-15

# cumulative level at which qNB tables are capped
QNB_CAP = 1.0 - 1e-12

# slack for support membership of continuous laws
SUPPORT_SLACK = 1e-12


class ContinuousLaw:
    """
    A frozen scipy distribution of Y together with the affine map X = shift + sign * Y.

    A sign of -1 reflects a law, e.g. stExp with negative rate is the mirror
    image of a truncated exponential with positive rate.
    """

    base: scipy.stats.rv_continuous
    shift: float
    sign: float
    lower: float
    upper: float

    def __init__(self, base, lower: float, upper: float, shift: float = 0.0, sign: float = 1.0):
        self.base = base
        self.shift = shift
        self.sign = sign
        self.lower = lower
        self.upper = upper

    def _to_base(self, x):
        return self.sign * (np.asarray(x, dtype=float) - self.shift)

    def pdf(self, x) -> np.ndarray:
        return self.base.pdf(self._to_base(x))

    def cdf(self, x) -> np.ndarray:
        if self.sign > 0:
            return self.base.cdf(self._to_base(x))
        else:
            return self.base.sf(self._to_base(x))

    def ppf(self, level) -> np.ndarray:
        if self.sign > 0:
            return self.shift + self.base.ppf(level)
        else:
            return self.shift - self.base.ppf(1.0 - np.asarray(level))

    def sample(self, rng: RNGStream, n: int) -> np.ndarray:
        draws = self.base.rvs(size=n, random_state=rng.generator)
        return self.shift + self.sign * np.asarray(draws, dtype=float)

    def mean(self) -> float:
        return float(self.shift + self.sign * self.base.mean())

    def expect(self, func: Callable[[np.ndarray], np.ndarray]) -> float:
        return float(self.base.expect(lambda y: func(self.shift + self.sign * y)))

    def in_support(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (x >= self.lower - SUPPORT_SLACK) & (x <= self.upper + SUPPORT_SLACK)


class LatticeLaw:
    "A law on a finite or truncated set of points with a cumulative table for inversion."

    points: np.ndarray
    probs: np.ndarray
    cumulative: np.ndarray
    finite: bool

    def __init__(self, points: np.ndarray, weights: np.ndarray, finite: bool, total: Optional[float] = None):
        weights = np.asarray(weights, dtype=float)
        if total is None:
            total = math.fsum(weights)
        order = np.argsort(points, kind="stable")
        self.points = np.asarray(points, dtype=float)[order]
        self.probs = weights[order] / total
        if not finite:
            # the truncated table is renormalized for sampling only
            self.probs = self.probs / math.fsum(self.probs)
        self.cumulative = np.cumsum(self.probs)
        self.finite = finite
        self.total = total
        self._exact_weights = dict(zip(self.points.tolist(), (weights[order] / total).tolist()))

    def pmf(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        index = np.searchsorted(self.points, x)
        index = np.clip(index, 0, len(self.points) - 1)
        hit = np.isclose(self.points[index], x, rtol=0.0, atol=1e-9)
        values = np.array([self._exact_weights[p] for p in self.points[index].tolist()])
        return np.where(hit, values, 0.0)

    def cdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        index = np.searchsorted(self.points, x + 1e-9, side="right")
        padded = np.concatenate([[0.0], self.cumulative])
        return np.minimum(padded[index], 1.0)

    def ppf(self, level) -> np.ndarray:
        index = np.searchsorted(self.cumulative, np.asarray(level, dtype=float), side="left")
        return self.points[np.clip(index, 0, len(self.points) - 1)]

    def sample(self, rng: RNGStream, n: int) -> np.ndarray:
        return rng.generator.choice(self.points, size=n, p=self.probs)

    def mean(self) -> float:
        return float(np.dot(self.points, self.probs))

    def expect(self, func: Callable[[np.ndarray], np.ndarray]) -> float:
        return float(np.dot(func(self.points), self.probs))

    def in_support(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        index = np.clip(np.searchsorted(self.points, x), 0, len(self.points) - 1)
        # points beyond a truncated table carry less than TAIL_MASS in total
        return np.isclose(self.points[index], x, rtol=0.0, atol=1e-9)

    def table(self) -> Dict[float, float]:
        return dict(self._exact_weights)


class PointMass:
    "A Dirac law."

    def __init__(self, x: float):
        self.x = x

    def pmf(self, x) -> np.ndarray:
        return np.where(np.asarray(x, dtype=float) == self.x, 1.0, 0.0)

    def cdf(self, x) -> np.ndarray:
        return np.where(np.asarray(x, dtype=float) >= self.x, 1.0, 0.0)

    def ppf(self, level) -> np.ndarray:
        return np.full_like(np.asarray(level, dtype=float), self.x)

    def sample(self, rng: RNGStream, n: int) -> np.ndarray:
        return np.full(n, self.x, dtype=float)

    def mean(self) -> float:
        return self.x

    def expect(self, func: Callable[[np.ndarray], np.ndarray]) -> float:
        return float(func(np.array([self.x]))[0])

    def in_support(self, x) -> np.ndarray:
        return np.asarray(x, dtype=float) == self.x

    def table(self) -> Dict[float, float]:
        return {self.x: 1.0}


Law = Union[ContinuousLaw, LatticeLaw, PointMass]


def _st_exp_law(spec: DistributionSpec) -> ContinuousLaw:
    lam, c1, c2 = spec["lambda"], spec["c1"], spec["c2"]
    if math.isinf(c2):
        return ContinuousLaw(scipy.stats.expon(loc=c1, scale=1.0 / lam), c1, math.inf)
    if lam == 0.0:
        return ContinuousLaw(scipy.stats.uniform(loc=c1, scale=c2 - c1), c1, c2)
    rate = abs(lam)
    base = scipy.stats.truncexpon(b=rate * (c2 - c1), loc=c1, scale=1.0 / rate)
    if lam > 0:
        return ContinuousLaw(base, c1, c2)
    else:
        return ContinuousLaw(base, c1, c2, shift=c1 + c2, sign=-1.0)


def _continuous_law(spec: DistributionSpec) -> ContinuousLaw:
    family = spec.family
    if family is Family.ST_EXP:
        return _st_exp_law(spec)
    if family is Family.S_EXP:
        lam, c = spec["lambda"], spec["c"]
        return ContinuousLaw(scipy.stats.expon(loc=c, scale=1.0 / lam), c, math.inf)
    if family is Family.AL:
        l1, l2 = spec["lambda1"], spec["lambda2"]
        base = scipy.stats.laplace_asymmetric(kappa=math.sqrt(l1 / l2), scale=1.0 / math.sqrt(l1 * l2))
        return ContinuousLaw(base, -math.inf, math.inf)
    if family is Family.GAM:
        base = scipy.stats.gamma(a=spec["lambda"], scale=1.0 / spec["c"])
        return ContinuousLaw(base, 0.0, math.inf)
    if family is Family.IG:
        base = scipy.stats.invgamma(a=spec["lambda"], scale=spec["c"])
        return ContinuousLaw(base, 0.0, math.inf)
    if family is Family.GIG:
        lam, c1, c2 = spec["lambda"], spec["c1"], spec["c2"]
        if c1 == 0.0:
            return ContinuousLaw(scipy.stats.invgamma(a=lam, scale=c2), 0.0, math.inf)
        # x^(-lambda-1) exp(-c1 x - c2/x) is geninvgauss(p=-lambda, b=2 sqrt(c1 c2)) scaled by sqrt(c2/c1)
        base = scipy.stats.geninvgauss(p=-lam, b=2.0 * math.sqrt(c1 * c2), scale=math.sqrt(c2 / c1))
        return ContinuousLaw(base, 0.0, math.inf)
    if family is Family.BETA:
        base = scipy.stats.beta(a=spec["lambda1"], b=spec["lambda2"])
        return ContinuousLaw(base, 0.0, 1.0)
    if family is Family.UNIFORM01:
        return ContinuousLaw(scipy.stats.uniform(loc=0.0, scale=1.0), 0.0, 1.0)
    raise InvalidParams(f"not a continuous family: {family.value}")


def _tail_length(ratio: float) -> int:
    "Number of terms of a geometric series with the given ratio until the tail drops below TAIL_MASS."

    if ratio <= 0.0:
        return 1
    return int(math.ceil(math.log(TAIL_MASS * (1.0 - ratio)) / math.log(ratio))) + 2


def _sstb_geo_law(spec: DistributionSpec) -> LatticeLaw:
    theta, M = spec["theta"], int(spec["M"])
    N = spec.get("N", math.inf) if spec.family is Family.SSTB_GEO else math.inf
    kappa, m = spec.get("kappa", 1.0), spec["m"]

    finite = not math.isinf(N)
    last = int(N) if finite else M + _tail_length(theta)
    ks = np.arange(M, last + 1)
    weights = theta ** (ks - M).astype(float) * np.where(ks % 2 == 1, kappa, 1.0)
    if not np.all(np.isfinite(weights)):
        raise InvalidParams(f"weights of {spec} overflow")

    total = None
    if not finite:
        # sum over x >= M of theta^(x-M) kappa^iota(x)
        k0 = kappa if M % 2 == 1 else 1.0
        k1 = kappa if (M + 1) % 2 == 1 else 1.0
        total = (k0 + theta * k1) / (1.0 - theta * theta)
    return LatticeLaw(m * ks, weights, finite=finite, total=total)


def _sd_al_law(spec: DistributionSpec) -> LatticeLaw:
    t1, t2, m = spec["theta1"], spec["theta2"], spec["m"]
    n1 = _tail_length(t1)
    n2 = _tail_length(t2)
    positive = np.arange(0, n1)
    negative = np.arange(-n2, 0)
    ks = np.concatenate([negative, positive])
    weights = np.concatenate([t2 ** (-negative).astype(float), t1 ** positive.astype(float)])
    total = 1.0 / (1.0 - t1) + t2 / (1.0 - t2)
    return LatticeLaw(m * ks, weights, finite=False, total=total)


def _qnb_law(spec: DistributionSpec) -> LatticeLaw:
    q, p = spec["q"], spec["p"]
    b = qnb_b(spec)
    bound = qnb_bound(spec)
    if bound is not None:
        weights = np.array(qnb_weights(q, p, b, bound + 1))
        # exact zeros beyond L; signs of the running product are positive on 0..L
        weights = np.abs(weights)
        return LatticeLaw(np.arange(bound + 1), weights, finite=True)

    total = qnb_normalizer(q, p, b)
    weights = [1.0]
    w = 1.0
    acc = 1.0
    n = 0
    while acc / total < QNB_CAP and n < 100000:
        w *= p * (1.0 - b * q**n) / (1.0 - q ** (n + 1))
        n += 1
        weights.append(w)
        acc += w
        if w == 0.0:
            break
    return LatticeLaw(np.arange(len(weights)), np.array(weights), finite=False, total=total)


_CACHE: Dict[Tuple, Law] = {}
# guards _CACHE and _NORMALIZERS
_CACHE_LOCK = threading.Lock()


def law_of(spec: DistributionSpec) -> Law:
    "The concrete law for a spec; built once per distinct spec."

    key = spec.key()
    with _CACHE_LOCK:
        law = _CACHE.get(key)
    if law is not None:
        return law

    validate(spec)
    family = spec.family
    if family is Family.DIRAC:
        law = PointMass(spec["x"])
    elif family in (Family.SSTB_GEO, Family.SS_GEO):
        law = _sstb_geo_law(spec)
    elif family is Family.SD_AL:
        law = _sd_al_law(spec)
    elif family is Family.QNB:
        law = _qnb_law(spec)
    else:
        law = _continuous_law(spec)

    logging.debug("built law for %s", spec)
    with _CACHE_LOCK:
        return _CACHE.setdefault(key, law)


def sample(spec: DistributionSpec, rng: RNGStream, n: int) -> np.ndarray:
    "n independent draws from spec."

    if n < 1:
        raise InvalidParams(f"sample size must be positive: {n}")
    return law_of(spec).sample(rng, n)


def density(spec: DistributionSpec, x) -> Union[float, np.ndarray]:
    "Density of a continuous law, or probability mass of a discrete law, at x."

    law = law_of(spec)
    if isinstance(law, ContinuousLaw):
        values = law.pdf(x)
    else:
        values = law.pmf(x)
    values = np.where(law.in_support(x), values, 0.0)
    if np.ndim(x) == 0:
        return float(np.asarray(values).reshape(-1)[0])
    return values


def cdf(spec: DistributionSpec, x) -> Union[float, np.ndarray]:
    values = law_of(spec).cdf(x)
    if np.ndim(x) == 0:
        return float(np.asarray(values).reshape(-1)[0])
    return values


def quantile(spec: DistributionSpec, level: float) -> float:
    return float(np.asarray(law_of(spec).ppf(level)).reshape(-1)[0])


def mean(spec: DistributionSpec) -> float:
    return law_of(spec).mean()


def mean_log(spec: DistributionSpec) -> float:
    "E[log X] for a law on (0, inf)."

    law = law_of(spec)
    if isinstance(law, PointMass):
        if law.x <= 0:
            raise InvalidParams(f"log-moment requires a positive point mass: {spec}")
        return math.log(law.x)
    if not isinstance(law, ContinuousLaw) or law.lower < 0:
        raise InvalidParams(f"log-moment requires a law on (0,inf): {spec}")
    return law.expect(np.log)


def _log_weight_in_log_variable(spec: DistributionSpec) -> Callable[[float], float]:
    "log of f(e^t) e^t for the laws on (0, inf) with unnormalized density f."

    family = spec.family
    if family is Family.GAM:
        lam, c = spec["lambda"], spec["c"]
        return lambda t: lam * t - c * np.exp(t)
    if family is Family.IG or (family is Family.GIG and spec["c1"] == 0.0):
        lam = spec["lambda"]
        c = spec["c"] if family is Family.IG else spec["c2"]
        return lambda t: -lam * t - c * np.exp(-t)
    if family is Family.GIG:
        lam, c1, c2 = spec["lambda"], spec["c1"], spec["c2"]
        return lambda t: -lam * t - c1 * np.exp(t) - c2 * np.exp(-t)
    raise InvalidParams(f"no log-variable density for family {family.value}")


def _unnormalized(spec: DistributionSpec) -> Callable[[float], float]:
    family = spec.family
    if family in (Family.ST_EXP, Family.S_EXP):
        lam = spec["lambda"]
        return lambda x: math.exp(-lam * x)
    if family is Family.AL:
        l1, l2 = spec["lambda1"], spec["lambda2"]
        return lambda x: math.exp(-l1 * x) if x >= 0 else math.exp(l2 * x)
    if family is Family.UNIFORM01:
        return lambda x: 1.0
    raise InvalidParams(f"no density for family {family.value}")


_NORMALIZERS: Dict[Tuple, float] = {}

_QUAD_OPTIONS = dict(epsabs=0.0, epsrel=1e-10, limit=500)


def normalizer(spec: DistributionSpec) -> float:
    """
    The normalizing constant Z of the unnormalized density or weights of spec.

    Laws on (0, inf) are integrated in the variable t = log x; beta laws use
    algebraic endpoint weights.
    """

    key = spec.key()
    with _CACHE_LOCK:
        z = _NORMALIZERS.get(key)
    if z is not None:
        return z

    law = law_of(spec)
    family = spec.family
    if isinstance(law, PointMass):
        z = 1.0
    elif isinstance(law, LatticeLaw):
        if family is Family.QNB and qnb_bound(spec) is None:
            z = qnb_normalizer(spec["q"], spec["p"], qnb_b(spec))
        else:
            z = law.total
    elif family in (Family.GAM, Family.IG, Family.GIG):
        g = _log_weight_in_log_variable(spec)

        def integrand(t: float) -> float:
            with np.errstate(over="ignore"):
                return float(np.exp(g(t)))

        z, _ = scipy.integrate.quad(integrand, -math.inf, math.inf, **_QUAD_OPTIONS)
    elif family is Family.BETA:
        z, _ = scipy.integrate.quad(
            lambda x: 1.0,
            0.0,
            1.0,
            weight="alg",
            wvar=(spec["lambda1"] - 1.0, spec["lambda2"] - 1.0),
        )
    else:
        f = _unnormalized(spec)
        lower, upper = law.lower, law.upper
        if math.isinf(lower) and math.isinf(upper):
            left, _ = scipy.integrate.quad(f, -math.inf, 0.0, **_QUAD_OPTIONS)
            right, _ = scipy.integrate.quad(f, 0.0, math.inf, **_QUAD_OPTIONS)
            z = left + right
        else:
            z, _ = scipy.integrate.quad(f, lower, upper, **_QUAD_OPTIONS)

    with _CACHE_LOCK:
        return _NORMALIZERS.setdefault(key, z)


def exact_pmf_table(spec: DistributionSpec) -> Dict[float, float]:
    "Support point to probability for a finitely supported discrete law."

    law = law_of(spec)
    if isinstance(law, PointMass):
        return law.table()
    if isinstance(law, LatticeLaw) and law.finite:
        table = law.table()
        total = math.fsum(table.values())
        return {x: p / total for x, p in table.items()}
    raise InfiniteSupport(f"support of {spec} is not finite")


def truncated_table(spec: DistributionSpec, mass: float = 1.0 - 1e-12) -> Dict[float, float]:
    "Support points of a discrete law carrying at least the given probability mass."

    law = law_of(spec)
    if isinstance(law, PointMass) or (isinstance(law, LatticeLaw) and law.finite):
        return exact_pmf_table(spec)
    if not isinstance(law, LatticeLaw):
        raise InfiniteSupport(f"{spec} is not a discrete law")
    index = int(np.searchsorted(law.cumulative, mass)) + 1
    return dict(zip(law.points[:index].tolist(), law.probs[:index].tolist()))
