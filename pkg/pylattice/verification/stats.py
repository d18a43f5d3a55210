"""
Two-sample, one-sample and independence tests, and exact distances between
finite probability tables.
"""

import logging
import math
from typing import Dict, Hashable, Sequence, Tuple

import numpy as np
import scipy.stats

from ..base import EmptySample, TooFewSamples
from ..distributions import DistributionSpec, cdf, law_of, truncated_table
from ..distributions.laws import ContinuousLaw, PointMass

# smallest expected count of a goodness-of-fit cell
MIN_EXPECTED = 5.0

# expected count per cell required by the independence test
MIN_CELL_COUNT = 25

DEFAULT_GOF_BINS = 20

TestResult = Tuple[float, float]


def _sample_array(values: Sequence[float], what: str = "sample") -> np.ndarray:
    array = np.asarray(values, dtype=float).ravel()
    if array.size == 0:
        raise EmptySample(f"{what} is empty")
    return array


def ks_two_sample(a: Sequence[float], b: Sequence[float]) -> TestResult:
    "The two-sample statistic sup|F_a - F_b| with its asymptotic p-value."

    a = _sample_array(a, "first sample")
    b = _sample_array(b, "second sample")
    result = scipy.stats.ks_2samp(a, b, method="asymp")
    return float(result.statistic), float(result.pvalue)


def ks_one_sample(samples: Sequence[float], spec: DistributionSpec) -> TestResult:
    "Kolmogorov-Smirnov test of samples against a continuous law."

    x = _sample_array(samples)
    if not spec.is_continuous:
        raise TypeError(f"KS test needs a continuous law, use chi2_goodness_of_fit for {spec}")
    result = scipy.stats.kstest(x, lambda v: cdf(spec, v))
    return float(result.statistic), float(result.pvalue)


def _lattice_cells(points: np.ndarray, probs: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray]:
    "Merges consecutive support points into cells with expected count at least MIN_EXPECTED."

    starts = []
    masses = []
    acc = 0.0
    start = 0
    for i, p in enumerate(probs):
        acc += p
        if acc * n >= MIN_EXPECTED:
            starts.append(start)
            masses.append(acc)
            acc = 0.0
            start = i + 1
    if start < len(points):
        if masses:
            masses[-1] += acc
        else:
            starts.append(0)
            masses.append(acc)
    # the last cell is open to the right and takes the truncated tail
    masses[-1] += max(0.0, 1.0 - math.fsum(masses))
    return points[np.array(starts)], np.array(masses)


def chi2_goodness_of_fit(
    samples: Sequence[float], spec: DistributionSpec, bins: int = DEFAULT_GOF_BINS
) -> TestResult:
    """
    Pearson chi-square test of samples against a law.

    Discrete laws are binned on their support points, merged until every cell expects at least
    five counts; continuous laws are binned at `bins` equiprobable quantiles.
    """

    x = _sample_array(samples)
    n = x.size
    law = law_of(spec)

    if isinstance(law, PointMass):
        if np.all(x == law.x):
            return 0.0, 1.0
        return math.inf, 0.0

    if isinstance(law, ContinuousLaw):
        levels = np.arange(1, bins) / bins
        edges = np.asarray(law.ppf(levels), dtype=float)
        observed = np.bincount(np.searchsorted(edges, x, side="right"), minlength=bins)
        expected = np.full(bins, n / bins)
    else:
        # values beyond a truncated table fall into the open last cell
        tabulated = x <= law.points[-1] + 1e-9
        if not np.all(law.in_support(x[tabulated])) or (law.finite and not np.all(tabulated)):
            return math.inf, 0.0
        table = truncated_table(spec)
        points = np.array(sorted(table))
        probs = np.array([table[p] for p in points])
        lower, masses = _lattice_cells(points, probs, n)
        if len(lower) < 2:
            return 0.0, 1.0
        index = np.searchsorted(lower, x, side="right") - 1
        observed = np.bincount(index, minlength=len(lower))
        expected = masses / masses.sum() * n

    result = scipy.stats.chisquare(observed, expected)
    return float(result.statistic), float(result.pvalue)


def marginal_p_value(samples: Sequence[float], spec: DistributionSpec) -> float:
    "p-value of the one-sample test suited to the law: KS for continuous laws, chi-square otherwise."

    if spec.is_continuous:
        return ks_one_sample(samples, spec)[1]
    return chi2_goodness_of_fit(samples, spec)[1]


def _quantile_bins(values: np.ndarray, bins: int) -> np.ndarray:
    "Bin labels of values; a variable with at most `bins` distinct values is binned by value."

    distinct = np.unique(values)
    if distinct.size <= bins:
        return np.searchsorted(distinct, values)
    edges = np.unique(np.quantile(values, np.arange(1, bins) / bins))
    return np.searchsorted(edges, values, side="right")


def chi2_independence(pairs: Sequence[Tuple[float, float]], bins: int = 8) -> TestResult:
    """
    Pearson chi-square test of independence on the quantile-binned contingency table.

    :param pairs: Samples of a pair, as an array of shape (n, 2).
    :raises TooFewSamples: Fewer than 25 bins^2 samples are given.
    """

    data = np.asarray(pairs, dtype=float)
    if data.size == 0:
        raise EmptySample("no pairs given")
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError(f"pairs must have shape (n, 2): {data.shape}")
    n = data.shape[0]
    if n < MIN_CELL_COUNT * bins * bins:
        raise TooFewSamples(f"{n} pairs for {bins} bins; need at least {MIN_CELL_COUNT * bins * bins}")

    rows = _quantile_bins(data[:, 0], bins)
    columns = _quantile_bins(data[:, 1], bins)
    table = np.zeros((rows.max() + 1, columns.max() + 1))
    np.add.at(table, (rows, columns), 1.0)
    table = table[table.sum(axis=1) > 0][:, table.sum(axis=0) > 0]
    if table.shape[0] < 2 or table.shape[1] < 2:
        # a constant coordinate is independent of anything
        return 0.0, 1.0

    statistic, p, _, _ = scipy.stats.chi2_contingency(table, correction=False)
    return float(statistic), float(p)


def independence_bins(n: int, bins: int) -> int:
    "The largest number of bins not above `bins` that n pairs support."

    supported = int(math.isqrt(n // MIN_CELL_COUNT))
    if supported < 2:
        raise TooFewSamples(f"{n} pairs are too few for an independence test")
    return min(bins, supported)


def tv_distance_exact(p: Dict[Hashable, float], q: Dict[Hashable, float]) -> float:
    "Total variation distance (1/2) sum |p - q| over the union of supports."

    keys = set(p) | set(q)
    return 0.5 * math.fsum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def autocorrelation(series: Sequence[float], lags: Sequence[int], period: int = 1) -> np.ndarray:
    """
    Sample autocorrelations of a series at the given lags.

    With period > 1 each residue class of the time index is centered by its own mean, which
    suits sequences whose law alternates with the index.
    """

    x = _sample_array(series, "series").copy()
    for r in range(period):
        x[r::period] -= x[r::period].mean()
    denominator = float(np.dot(x, x))
    if denominator == 0.0:
        return np.zeros(len(lags))
    values = []
    for k in lags:
        if not 0 < k < x.size:
            raise ValueError(f"lag {k} out of range for a series of length {x.size}")
        values.append(float(np.dot(x[:-k], x[k:])) / denominator)
    logging.debug("autocorrelations %s at lags %s", values, list(lags))
    return np.array(values)


def autocorrelation_p_value(r: float, n: int) -> float:
    "Two-sided p-value of a sample autocorrelation of a series of n independent values."

    return float(2.0 * scipy.stats.norm.sf(abs(r) * math.sqrt(n)))
