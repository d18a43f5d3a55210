"""
Time evolution of lattice windows by the carrier dynamics, its inverse, and the
reconstruction of a configuration column from the carrier seen at the origin.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from ..base import CoverageError, InvalidParams, NotSynchronized, UnsupportedFamily, relative_error
from ..distributions import DistributionSpec
from ..maps import LocalMap, MapKind
from .solver import carrier_from_boundary, solve_carrier
from .window import CarrierPath, LatticeWindow, SpaceTimeField


def default_margin(sites: int) -> int:
    "Erosion margin of multi-step evolution on a window of the given width: max(256, sites / 8)."

    return max(256, sites // 8)


def evolve_one_step(
    window: LatticeWindow,
    carrier: CarrierPath,
    start: Optional[int] = None,
    stop: Optional[int] = None,
) -> LatticeWindow:
    """
    Applies the one time-step dynamics to a window given its carrier.

    A type I site evolves by x'_n = F^(1)(x_n, u_{n-1}). A type II site n evolves by the first
    two components of F(Q_{n+1}, E_n, U_n), so that each pair slot maps to the same slot.

    :param start: First lattice index that must be emitted, if any.
    :param stop: One past the last lattice index that must be emitted, if any.
    :returns: The configuration at the next time on every index the carrier determines.
    """

    model = window.model
    if model.kind is MapKind.TYPE_I:
        lo = max(window.offset, carrier.offset + 1)
        hi = min(window.end, carrier.end + 1)
    else:
        lo = max(window.offset, carrier.offset)
        hi = min(window.end - 1, carrier.end)

    if lo >= hi:
        raise CoverageError(
            f"carrier [{carrier.offset}, {carrier.end}) determines no site of window [{window.offset}, {window.end})"
        )
    if start is not None and start < lo or stop is not None and stop > hi:
        raise CoverageError(f"carrier determines [{lo}, {hi}) but [{start}, {stop}) was requested")

    if model.kind is MapKind.TYPE_I:
        x = window.values[lo - window.offset : hi - window.offset]
        values, _ = model(x, carrier.at(lo - 1, hi - 1))
    else:
        q_next = window.values[lo + 1 - window.offset : hi + 1 - window.offset, 0]
        e = window.values[lo - window.offset : hi - window.offset, 1]
        first, second, _ = model(q_next, e, carrier.at(lo, hi))
        values = np.column_stack([first, second])

    return LatticeWindow(model, np.asarray(values, dtype=float), lo)


def evolve_multi(
    window: LatticeWindow,
    t_steps: int,
    margin: Optional[int] = None,
    seeds: Optional[Tuple[float, float]] = None,
    tol: Optional[float] = None,
    nu: Optional[DistributionSpec] = None,
    boundary: Optional[Sequence[float]] = None,
) -> SpaceTimeField:
    """
    Evolves a window over t_steps time steps.

    Each step solves the carrier on the current row, unless boundary values u_{offset-1}^t
    are given, in which case the carrier is run from them.

    :param margin: Largest number of sites the rows may lose on the left; default_margin of the
        window width if None.
    :returns: The field restricted to the index range surviving every step.
    :raises CoverageError: Erosion exceeded the margin or exhausted the window.
    """

    if t_steps < 0:
        raise InvalidParams(f"number of time steps must be nonnegative: {t_steps}")
    if boundary is not None and len(boundary) < t_steps:
        raise CoverageError(f"{len(boundary)} boundary values given for {t_steps} steps")
    if margin is None:
        margin = default_margin(len(window))

    windows = [window]
    carriers = []
    current = window
    for t in range(t_steps):
        if len(current) < 2:
            raise CoverageError(f"window exhausted after {t} of {t_steps} steps")
        if boundary is not None:
            carrier = carrier_from_boundary(current, boundary[t])
        else:
            carrier = solve_carrier(current, seeds, tol, nu)
        following = evolve_one_step(current, carrier)
        if following.offset - window.offset > margin:
            raise CoverageError(
                f"erosion of {following.offset - window.offset} sites after {t + 1} steps exceeds margin {margin}"
            )
        carriers.append(carrier)
        windows.append(following)
        current = following

    logging.debug(
        "evolved %d steps, surviving range [%d, %d)", t_steps, current.offset, current.end
    )
    return SpaceTimeField(window.model, windows, carriers).crop(current.offset, current.end)


def evolve_reverse(
    window: LatticeWindow,
    seeds: Optional[Tuple[float, float]] = None,
    tol: Optional[float] = None,
    nu: Optional[DistributionSpec] = None,
) -> LatticeWindow:
    "One step of the inverse dynamics, obtained as the reflection of the forward step of the reflected window."

    reflected = window.reflect()
    carrier = solve_carrier(reflected, seeds, tol, nu)
    return evolve_one_step(reflected, carrier).reflect()


def reconstruct_from_carrier(
    carrier_column: Sequence[float],
    model: LocalMap,
    seeds: Tuple[float, float],
    tol: float,
) -> CarrierPath:
    """
    Recovers the configuration column (x_1^t)_t from the carrier column (u_0^t)_t of a type I model.

    Two seeds for x_1^0 are driven through x^{t+1} = F^(1)(x^t, u_0^t) over the whole column and
    the reconstruction starts where they first agree within tol. The residual is the larger of the
    disagreement of the two seeds from then on and the error with which applying F to the emitted
    pairs (x^{t+1}, u_1^t) gives back the carrier column.

    :returns: Values x_1^t indexed by time, starting at the synchronization time.
    :raises NotSynchronized: The seeds did not coalesce over the column.
    """

    if model.kind is not MapKind.TYPE_I:
        raise UnsupportedFamily(f"reconstruction needs a type I map: {model}")
    column = np.asarray(carrier_column, dtype=float)
    lo, hi = seeds
    if lo == hi:
        raise InvalidParams(f"seeds must be distinct: {seeds}")

    paths = np.empty((len(column) + 1, 2))
    paths[0] = (lo, hi)
    for t in range(len(column)):
        paths[t + 1] = model(paths[t], column[t])[0]

    gaps = np.abs(paths[:, 0] - paths[:, 1])
    synchronized = np.flatnonzero(gaps[1:] <= tol)
    if synchronized.size == 0:
        raise NotSynchronized(
            f"seeds {seeds} did not coalesce over {len(column)} carrier values of {model}"
        )
    sync_time = int(synchronized[0]) + 1
    values = paths[sync_time:, 0].copy()

    residual = float(np.max(gaps[sync_time:]))
    if len(values) > 1:
        carrier = column[sync_time:]
        following, emitted = model(values[:-1], carrier)
        _, returned = model(following, emitted)
        residual = max(residual, relative_error(returned, carrier))
    return CarrierPath(sync_time, values, sync_time, residual)
