"""
Checks of the lattice dynamics: invariance of product laws under the time
evolution, Burke's property of the stationary space-time field, and
reconstruction of a configuration column from the carrier it emits.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..base import CoverageError, InvalidParams, NotSynchronized, UnsupportedFamily, relative_error
from ..carrier import (
    default_seeds,
    default_tolerance,
    evolve_one_step,
    reconstruct_from_carrier,
    sample_window,
    solve_carrier,
)
from ..distributions import DistributionSpec, sample
from ..maps import LocalMap, MapFamily, MapKind, plain, rpe_star
from ..rng import RNGStream
from ..stochastic import quadrant_from_kernel
from .measures import predicted_carrier
from .prechecks import precheck_ergodicity, precheck_invariance
from .report import DEFAULT_ALPHA, TestReport, report_from_p_values
from .stats import (
    autocorrelation,
    autocorrelation_p_value,
    chi2_independence,
    independence_bins,
    marginal_p_value,
)

INVARIANCE = "T mu^Z = mu^Z, and nu is the law of the carrier"
BURKE = "boundary configuration and carrier sequences are i.i.d. and independent of each other"
ERGODICITY = "the configuration column is a function of the carrier column"

# carrier values are thinned to every STRIDE-th site before testing their marginal
CARRIER_STRIDE = 64

AUTOCORRELATION_LAGS = (1, 2, 3, 4)

_SLOT_NAMES = {MapFamily.UDTODA: ("Q", "E"), MapFamily.DTODA: ("I", "J"), MapFamily.RPE: ("first", "second")}

_STARS: Dict[MapFamily, Callable[[LocalMap], LocalMap]] = {
    MapFamily.UDTODA: lambda model: plain(MapFamily.UDTODA_STAR),
    MapFamily.DTODA: lambda model: plain(MapFamily.DTODA_STAR),
    MapFamily.RPE: lambda model: rpe_star(model["A"], model["B"]),
}


def check_invariance(
    model: LocalMap,
    mu: DistributionSpec,
    window: int,
    margin: int,
    n_fields: int,
    rng: RNGStream,
    mu_tilde: Optional[DistributionSpec] = None,
    nu: Optional[DistributionSpec] = None,
    alpha: float = DEFAULT_ALPHA,
) -> TestReport:
    """
    Evolves windows drawn from the product law by one time step and tests the central region.

    A type I configuration is tested against mu; a type II configuration is tested slotwise
    against mu_tilde and mu. The carrier on the central region, thinned to every 64th site, is
    tested against nu, which defaults to the carrier law of the detailed-balance solution.

    :raises NotSynchronized: Some fields could not be evolved on their central region; the
        message states the fraction.
    """

    if model.kind not in (MapKind.TYPE_I, MapKind.TYPE_II):
        raise UnsupportedFamily(f"invariance needs a type I or type II model: {model}")
    if window <= 2 * margin:
        raise InvalidParams(f"window of {window} sites leaves no central region with margin {margin}")
    if n_fields < 1:
        raise InvalidParams(f"number of fields must be positive: {n_fields}")

    precheck_invariance(model, mu, mu_tilde)
    if nu is None:
        nu = predicted_carrier(model, mu, mu_tilde)

    start, stop = margin, window - margin
    configurations: List[np.ndarray] = []
    carriers: List[np.ndarray] = []
    failed = 0
    for i in range(n_fields):
        lattice = sample_window(model, mu, window, rng.child(i), mu_tilde)
        try:
            carrier = solve_carrier(lattice, nu=nu)
            evolved = evolve_one_step(lattice, carrier, start, stop).crop(start, stop)
        except (NotSynchronized, CoverageError) as e:
            logging.warning("field %d of %s failed: %s", i, model, e)
            failed += 1
            continue
        configurations.append(evolved.values)
        carriers.append(carrier.at(start, stop)[::CARRIER_STRIDE])

    if failed:
        raise NotSynchronized(
            f"{failed} of {n_fields} fields ({failed / n_fields:.1%}) could not be evolved on [{start}, {stop})"
        )

    evolved = np.concatenate(configurations)
    carrier_values = np.concatenate(carriers)
    if model.kind is MapKind.TYPE_I:
        p_values = {"configuration": marginal_p_value(evolved, mu)}
    else:
        first, second = _SLOT_NAMES[model.family]
        p_values = {
            first: marginal_p_value(evolved[:, 0], mu_tilde),
            second: marginal_p_value(evolved[:, 1], mu),
        }
    p_values["carrier"] = marginal_p_value(carrier_values, nu)

    return report_from_p_values(
        "invariance",
        INVARIANCE,
        str(model),
        p_values,
        alpha,
        n_fields * (stop - start),
        rng.seed,
        {"nu": str(nu), "carrier_samples": len(carrier_values)},
    )


@dataclass
class BurkeField:
    """
    A space-time field filled from i.i.d. boundary data.

    rows[t, k] is the configuration at unfolded site k + 1 and time t, and carriers[k, t] the
    carrier leaving site k at time t, with carriers[0, :] the boundary input.
    """

    rows: np.ndarray
    carriers: np.ndarray
    x_law: Callable[[int], DistributionSpec]
    u_law: Callable[[int], DistributionSpec]
    period: int


def _star_of(model: LocalMap) -> LocalMap:
    if model.kind is MapKind.STAR:
        return model
    if model.family in _STARS:
        return _STARS[model.family](model)
    raise UnsupportedFamily(f"no star bijection underlies {model}")


def _alternating_field(
    star: LocalMap,
    mu: DistributionSpec,
    nu: DistributionSpec,
    mu_tilde: DistributionSpec,
    nu_tilde: DistributionSpec,
    width: int,
    t_steps: int,
    rng: RNGStream,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Fills the unfolded type II lattice where cell (k, t) applies F_* when k + t is even and
    F_*^-1 otherwise.

    Cells on one anti-diagonal k + t = d share their map and are evaluated together.
    """

    x = np.zeros((width, t_steps + 1))
    u = np.zeros((width + 1, t_steps))
    even_sites = np.arange(0, width, 2)
    odd_sites = np.arange(1, width, 2)
    x[even_sites, 0] = sample(mu, rng.child(0), len(even_sites))
    if len(odd_sites):
        x[odd_sites, 0] = sample(mu_tilde, rng.child(1), len(odd_sites))
    even_times = np.arange(0, t_steps, 2)
    odd_times = np.arange(1, t_steps, 2)
    u[0, even_times] = sample(nu, rng.child(2), len(even_times))
    if len(odd_times):
        u[0, odd_times] = sample(nu_tilde, rng.child(3), len(odd_times))

    for d in range(width + t_steps - 1):
        t = np.arange(max(0, d - width + 1), min(d, t_steps - 1) + 1)
        k = d - t
        evaluate = star if d % 2 == 0 else star.inverse
        x[k, t + 1], u[k + 1, t] = evaluate(x[k, t], u[k, t])
    return x, u


def burke_field(
    model: LocalMap,
    mu: DistributionSpec,
    nu: DistributionSpec,
    width: int,
    t_steps: int,
    rng: RNGStream,
    mu_tilde: Optional[DistributionSpec] = None,
    nu_tilde: Optional[DistributionSpec] = None,
) -> BurkeField:
    """
    The space-time field driven by x_n^0 ~ mu and u_0^t ~ nu.

    Type II models and star bijections are unfolded into alternating applications of F_* and
    its inverse, whose inputs alternate between mu x nu and mu_tilde x nu_tilde.
    """

    if width < 2 or t_steps < 2:
        raise InvalidParams(f"field needs at least two sites and two steps: {width} x {t_steps}")

    if model.kind is MapKind.TYPE_I:
        field = quadrant_from_kernel(model, mu, nu, width, t_steps, rng)
        return BurkeField(field.U.T, field.V, lambda parity: mu, lambda parity: nu, 1)

    if mu_tilde is None or nu_tilde is None:
        raise InvalidParams(f"Burke field of {model} needs mu_tilde and nu_tilde")
    star = _star_of(model)
    rows, carriers = _alternating_field(star, mu, nu, mu_tilde, nu_tilde, width, t_steps, rng)
    return BurkeField(
        rows.T,
        carriers,
        lambda parity: mu if parity == 0 else mu_tilde,
        lambda parity: nu if parity == 0 else nu_tilde,
        2,
    )


def _independence(first: np.ndarray, second: np.ndarray, bins: int) -> float:
    pairs = np.column_stack([first, second])
    return chi2_independence(pairs, independence_bins(len(pairs), bins))[1]


def check_burke(
    model: LocalMap,
    mu: DistributionSpec,
    nu: DistributionSpec,
    width: int,
    t_steps: int,
    rng: RNGStream,
    mu_tilde: Optional[DistributionSpec] = None,
    nu_tilde: Optional[DistributionSpec] = None,
    alpha: float = DEFAULT_ALPHA,
    bins: int = 8,
) -> TestReport:
    """
    Tests Burke's property of the field built from i.i.d. boundary data.

    The middle and final rows are tested against mu (slotwise for type II), the middle and last
    carrier columns against nu together with their autocorrelations at lags 1 to 4. Pairwise
    independence is tested between neighbours of the final row, between neighbours of the last
    carrier column, and between the final row and the last carrier column.

    The report also fails when the largest autocorrelation exceeds 3 / sqrt(t_steps) in
    absolute value, whatever the p-values.
    """

    field = burke_field(model, mu, nu, width, t_steps, rng, mu_tilde, nu_tilde)
    period = field.period
    p_values: Dict[str, float] = {}

    for t in sorted({t_steps // 2, t_steps}):
        row = field.rows[t]
        for parity in range(period):
            sites = np.arange(len(row))
            values = row[(sites + t) % period == parity]
            p_values[f"row_{t}_slot_{parity}"] = marginal_p_value(values, field.x_law(parity))

    largest = 0.0
    for n in sorted({width // 2, width}):
        column = field.carriers[n]
        times = np.arange(len(column))
        for parity in range(period):
            values = column[(times + n) % period == parity]
            p_values[f"column_{n}_slot_{parity}"] = marginal_p_value(values, field.u_law(parity))
        for lag, r in zip(AUTOCORRELATION_LAGS, autocorrelation(column, AUTOCORRELATION_LAGS, period)):
            p_values[f"column_{n}_lag_{lag}"] = autocorrelation_p_value(r, t_steps)
            largest = max(largest, abs(r))

    top = field.rows[t_steps]
    right = field.carriers[width]
    pairs = len(top) // 2
    p_values["row_neighbours"] = _independence(top[0 : 2 * pairs : 2], top[1 : 2 * pairs : 2], bins)
    pairs = len(right) // 2
    p_values["column_neighbours"] = _independence(right[0 : 2 * pairs : 2], right[1 : 2 * pairs : 2], bins)
    common = min(len(top), len(right))
    p_values["row_column"] = _independence(top[:common], right[:common], bins)

    bound = 3.0 / math.sqrt(t_steps)
    report = report_from_p_values(
        "burke",
        BURKE,
        str(model),
        p_values,
        alpha,
        width * t_steps,
        rng.seed,
        {"max_autocorrelation": largest, "autocorrelation_bound": bound},
    )
    if largest > bound:
        logging.debug("carrier autocorrelation %g exceeds %g", largest, bound)
        report.statistic = math.inf
    return report


def check_ergodicity_reconstruction(
    model: LocalMap,
    mu: DistributionSpec,
    nu: DistributionSpec,
    width: int,
    t_steps: int,
    rng: RNGStream,
    samples: int = 100,
    required: float = 0.99,
    match_tol: float = 1e-8,
) -> TestReport:
    """
    Reconstructs the configuration column at site n + 1 of stationary fields from the carrier
    column at site n, with n = width // 2.

    The statistic is the fraction of samples that fail to synchronize or to match the true column
    within relative error match_tol; the threshold is 1 - required.
    """

    precheck_ergodicity(model, mu, nu)
    if samples < 1:
        raise InvalidParams(f"number of samples must be positive: {samples}")

    field = quadrant_from_kernel(model, mu, nu, width, t_steps, rng, replicas=samples)
    site = width // 2
    seeds = default_seeds(model, mu)
    tol = default_tolerance(model)

    synchronized = 0
    matched = 0
    sync_times = []
    residual = 0.0
    for r in range(samples):
        try:
            path = reconstruct_from_carrier(field.V[r, site], model, seeds, tol)
        except NotSynchronized:
            continue
        synchronized += 1
        sync_times.append(path.offset)
        residual = max(residual, path.residual)
        truth = field.U[r, site, path.offset :]
        if relative_error(path.values, truth) <= match_tol:
            matched += 1

    logging.debug("reconstruction matched %d of %d columns of %s", matched, samples, model)
    return TestReport(
        "ergodicity_reconstruction",
        ERGODICITY,
        str(model),
        "mismatch_fraction",
        (samples - matched) / samples,
        1.0 - required,
        samples,
        rng.seed,
        {
            "synchronized": synchronized,
            "matched": matched,
            "mean_sync_time": float(np.mean(sync_times)) if sync_times else None,
            "max_residual": residual,
        },
    )
