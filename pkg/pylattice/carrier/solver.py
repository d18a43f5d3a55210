"""
Carrier processes of type I and type II models on finite windows.

A type I carrier follows u_n = F^(2)(x_n, u_{n-1}); a type II carrier follows
U_{n+1} = F^(3)(Q_{n+1}, E_n, U_n). Both are solved by running the recursion from
two seeds at the left edge of the window until the two paths coalesce.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from ..base import (
    CoverageError,
    InvalidParams,
    NotConverged,
    NotSynchronized,
    UnsupportedFamily,
    UnsupportedRegime,
)
from ..distributions import DistributionSpec, law_of, quantile
from ..distributions.laws import ContinuousLaw, LatticeLaw
from ..maps import LocalMap, MapFamily, MapKind
from .window import POSITIVE_FAMILIES, CarrierPath, LatticeWindow

# families evaluated with max-plus arithmetic only, which is exact on dyadic inputs
MAX_PLUS_FAMILIES = frozenset([MapFamily.UDKDV, MapFamily.UDTODA, MapFamily.K_UDT, MapFamily.R_DLPP])

RATIONAL_TOLERANCE = 1e-10

# quantile levels of the carrier law used as extreme seeds
SEED_LEVEL = 1e-9


def default_tolerance(model: LocalMap) -> float:
    "Coupling tolerance: exact agreement for max-plus maps, 1e-10 for rational maps."

    if model.family in MAX_PLUS_FAMILIES:
        return 0.0
    return RATIONAL_TOLERANCE


def default_seeds(model: LocalMap, nu: Optional[DistributionSpec] = None) -> Tuple[float, float]:
    """
    Extreme seeds for the coupled solver.

    When the carrier law nu is known, the seeds are the lower end of its support and a high
    quantile; otherwise (0, 1), or (1e-8, 1e8) for maps acting on positive reals.
    """

    positive = model.family in POSITIVE_FAMILIES
    if nu is None:
        return (1e-8, 1e8) if positive else (0.0, 1.0)

    law = law_of(nu)
    if isinstance(law, ContinuousLaw):
        lower = law.lower
    elif isinstance(law, LatticeLaw):
        lower = float(law.points[0])
    else:
        lower = law.x
    if not math.isfinite(lower) or (positive and lower <= 0):
        lower = quantile(nu, SEED_LEVEL)
    upper = quantile(nu, 1.0 - SEED_LEVEL)
    if not upper > lower:
        upper = lower + 1.0
    return (float(lower), float(upper))


def _check_regime(model: LocalMap) -> None:
    if model.family is MapFamily.DKDV:
        alpha, beta = model["alpha"], model["beta"]
        if alpha > 0 and beta > 0 and alpha != beta:
            raise UnsupportedRegime(
                f"no carrier solver for dKdV with distinct positive alpha, beta: {model}"
            )


def _carrier_step(window: LatticeWindow):
    "The carrier recursion as a function of the position k within the window."

    model = window.model
    values = window.values
    if window.kind is MapKind.TYPE_I:
        return lambda k, u: model(values[k], u)[1]
    return lambda k, u: model(values[k + 1, 0], values[k, 1], u)[2]


def _path_residual(window: LatticeWindow, path: CarrierPath) -> float:
    "Largest deviation of the path from the carrier recursion, evaluated in one vectorized pass."

    if len(path) < 2:
        return 0.0
    model = window.model
    first = path.offset - window.offset
    u_prev = path.values[:-1]
    if window.kind is MapKind.TYPE_I:
        x = window.values[first + 1 : first + len(path)]
        expected = model(x, u_prev)[1]
    else:
        q_next = window.values[first + 1 : first + len(path), 0]
        e = window.values[first : first + len(path) - 1, 1]
        expected = model(q_next, e, u_prev)[2]
    return float(np.max(np.abs(np.asarray(expected) - path.values[1:])))


def solve_carrier_coupled(
    window: LatticeWindow, seeds: Tuple[float, float], tol: float
) -> CarrierPath:
    """
    Solves the carrier by coupling two seeds from the left edge of the window.

    For a type I window the seeds stand for u_{offset-1}; for a type II window they stand for
    the carrier U_offset at the first site.

    :param seeds: Two distinct starting values.
    :param tol: Paths closer than tol are taken to have coalesced.
    :returns: The carrier on the indices from the synchronization index to the right edge.
    :raises NotSynchronized: The seeds did not coalesce within the window.
    """

    if len(window) < 2:
        raise InvalidParams(f"carrier window needs at least two sites but has {len(window)}")
    lo, hi = seeds
    if lo == hi:
        raise InvalidParams(f"seeds must be distinct: {seeds}")
    _check_regime(window.model)

    step = _carrier_step(window)
    u = np.array([lo, hi], dtype=float)

    if window.kind is MapKind.TYPE_I:
        # u holds u_{offset-1+k}; the step at position k yields u_{offset+k}
        positions = range(len(window))
        index_of = lambda k: window.offset + k
    else:
        # u holds U_{offset+k}; the step at position k yields U_{offset+k+1}
        positions = range(len(window) - 1)
        index_of = lambda k: window.offset + k + 1

    sync_position = None
    for k in positions:
        u = np.asarray(step(k, u), dtype=float)
        if abs(u[0] - u[1]) <= tol:
            sync_position = k
            break
    if sync_position is None:
        raise NotSynchronized(
            f"seeds {seeds} did not coalesce on [{window.offset}, {window.end}) for {window.model}"
        )

    sync_index = index_of(sync_position)
    values = [float(u[0])]
    current = float(u[0])
    for k in positions[sync_position + 1 :]:
        current = float(step(k, current))
        values.append(current)

    if sync_index - window.offset > len(window) // 2:
        logging.warning(
            "carrier synchronized late at index %d of window [%d, %d)",
            sync_index,
            window.offset,
            window.end,
        )

    path = CarrierPath(sync_index, np.array(values), sync_index)
    path.residual = _path_residual(window, path)
    return path


def solve_carrier_contfrac(window: LatticeWindow, depth: int, tol: float) -> CarrierPath:
    """
    Solves the dKdV(0, beta) carrier u_n = x_n / (1 + beta x_n u_{n-1}) by its continued fraction.

    The value at each index is the fraction truncated after `depth + 8` levels; indices with
    fewer levels available to their left are not emitted.

    :raises NotConverged: Deepening from depth to depth + 8 levels moves a value by more than tol.
    """

    model = window.model
    if model.family is not MapFamily.DKDV:
        raise UnsupportedFamily(f"continued fraction carrier is defined for dKdV only: {model}")
    beta = model["beta"]
    if not (model["alpha"] == 0 and beta > 0):
        raise UnsupportedRegime(f"continued fraction carrier needs alpha = 0 and beta > 0: {model}")
    if depth < 2:
        raise InvalidParams(f"depth must be at least 2: {depth}")

    deep = depth + 8
    x = window.values
    positions = np.arange(deep - 1, len(window))
    if positions.size == 0:
        raise CoverageError(f"window of {len(window)} sites is shorter than {deep} levels")

    def truncated(levels: int) -> np.ndarray:
        u = np.zeros(positions.size)
        for level in range(levels):
            xs = x[positions - levels + 1 + level]
            u = xs / (1.0 + beta * xs * u)
        return u

    shallow = truncated(depth)
    values = truncated(deep)
    change = float(np.max(np.abs(values - shallow)))
    if change > tol:
        raise NotConverged(
            f"continued fraction moved by {change} > {tol} from depth {depth} to {deep}"
        )

    offset = window.offset + deep - 1
    path = CarrierPath(offset, values, offset)
    path.residual = _path_residual(window, path)
    logging.debug("continued fraction carrier on %d sites, residual %g", len(path), path.residual)
    return path


def solve_carrier_udtoda(window: LatticeWindow) -> CarrierPath:
    """
    The udToda carrier in closed form, U_n = Q_n + max{0, theta_1, theta_1 + theta_2, ...}.

    Here theta_i = Q_{n-i} - E_{n-i}, and the running maximum is truncated at the left edge.
    """

    if window.model.family is not MapFamily.UDTODA:
        raise UnsupportedFamily(f"closed form carrier is defined for udToda only: {window.model}")

    q, e = window.values[:, 0], window.values[:, 1]
    partial = np.concatenate([[0.0], np.cumsum(q - e)])[: len(window)]
    values = q + (partial - np.minimum.accumulate(partial))
    path = CarrierPath(window.offset, values, window.offset)
    path.residual = _path_residual(window, path)
    return path


def solve_carrier_dtoda(window: LatticeWindow, seeds: Tuple[float, float], tol: float) -> CarrierPath:
    "Couples the dToda carrier U_{n+1} = I_{n+1} U_n / (J_n + U_n) from two seeds."

    if window.model.family is not MapFamily.DTODA:
        raise UnsupportedFamily(f"expected a dToda window: {window.model}")
    if min(seeds) <= 0:
        raise InvalidParams(f"dToda seeds must be positive: {seeds}")
    return solve_carrier_coupled(window, seeds, tol)


def carrier_from_boundary(window: LatticeWindow, u_in: float) -> CarrierPath:
    """
    Runs the carrier recursion from a known boundary value.

    For a type I window u_in is u_{offset-1} and the path starts at offset - 1; for a type II
    window u_in is U_offset.
    """

    _check_regime(window.model)
    step = _carrier_step(window)
    values = [float(u_in)]
    current = float(u_in)
    if window.kind is MapKind.TYPE_I:
        offset = window.offset - 1
        positions = range(len(window))
    else:
        offset = window.offset
        positions = range(len(window) - 1)
    for k in positions:
        current = float(step(k, current))
        values.append(current)
    return CarrierPath(offset, np.array(values), None, 0.0)


def solve_carrier(
    window: LatticeWindow,
    seeds: Optional[Tuple[float, float]] = None,
    tol: Optional[float] = None,
    nu: Optional[DistributionSpec] = None,
) -> CarrierPath:
    "Solves the carrier with the method suited to the model: closed form for udToda, coupling otherwise."

    model = window.model
    if model.family is MapFamily.UDTODA:
        return solve_carrier_udtoda(window)
    if seeds is None:
        seeds = default_seeds(model, nu)
    if tol is None:
        tol = default_tolerance(model)
    if model.family is MapFamily.DTODA:
        return solve_carrier_dtoda(window, seeds, tol)
    return solve_carrier_coupled(window, seeds, tol)
