"""
Kernels R(a, b, c) of the stochastic quadrant models, mapping
(driving variable, state, incoming carrier) to (next state, outgoing carrier).
"""

from typing import Tuple

import numpy as np

from ..base import ArrayLike, DomainError, UnsupportedFamily
from .local_map import LocalMap, MapFamily, MapKind, register

Pair = Tuple[ArrayLike, ArrayLike]


def r_dlpp(a: ArrayLike, b: ArrayLike, c: ArrayLike) -> Pair:
    "Last passage percolation: R(X_{n,m}, U_{n,m-1}, V_{n-1,m}) = (U_{n,m}, V_{n,m})."

    m = np.minimum(b, c)
    return (np.add(a, b) - m, np.add(a, c) - m)


def _require_positive(*values: ArrayLike) -> None:
    for value in values:
        if np.any(np.asarray(value) <= 0):
            raise DomainError("polymer weights and increments must be positive")


def r_rps(a: ArrayLike, b: ArrayLike, c: ArrayLike) -> Pair:
    "Site polymer in inverse variables: R(1/X, 1/U_{n,m-1}, 1/V_{n-1,m}) = (1/U_{n,m}, 1/V_{n,m})."

    _require_positive(a, b, c)
    s = np.add(b, c)
    return (a * b / s, a * c / s)


def r_rpe(A: float, B: float, a: ArrayLike, b: ArrayLike, c: ArrayLike) -> Pair:
    "Edge polymer with h(x) = Ax + B: R(X, U_{n,m-1}, V_{n-1,m}) = (U_{n,m}, V_{n,m})."

    _require_positive(a, b, c)
    ha = A * np.asarray(a) + B
    if np.any(ha <= 0):
        raise DomainError("edge weight h(x) = Ax + B must be positive on the bulk weights")
    return (a + ha * b / c, ha + a * c / b)


def hsv_thresholds(alpha: float, nu: float, q: float, i: ArrayLike, j: ArrayLike) -> np.ndarray:
    "c_{i,0} = (1 + alpha q^i)/(1 + alpha) and c_{i,1} = (1 - nu q^i)/(1 + alpha)."

    qi = np.power(q, np.asarray(i, dtype=float))
    return np.where(
        np.asarray(j) == 0,
        (1.0 + alpha * qi) / (1.0 + alpha),
        (1.0 - nu * qi) / (1.0 + alpha),
    )


def r_hsv(alpha: float, nu: float, q: float, u: ArrayLike, i: ArrayLike, j: ArrayLike) -> Pair:
    """
    The spin-1/2 stochastic higher spin vertex kernel driven by a uniform variable u.

    A state (i, j) flips to (i + j - 1, 1) when u >= c_{i,j} and to (i + j, 0) otherwise.
    """

    i = np.asarray(i)
    j = np.asarray(j)
    if np.any((j != 0) & (j != 1)):
        raise DomainError("carrier occupation must be 0 or 1")
    if np.any(i < 0):
        raise DomainError("state occupation must be nonnegative")
    flip = (np.asarray(u) >= hsv_thresholds(alpha, nu, q, i, j)).astype(i.dtype)
    return (i + j - flip, flip)


def quadrant_kernel(model: LocalMap, tilde_x: ArrayLike, x: ArrayLike, u: ArrayLike) -> Pair:
    """
    Evaluates one step (X^{t+1}_n, U^t_n) = R(tilde X^t_n, X^t_n, U^t_{n-1}) of a quadrant model.

    Deterministic type I maps act as kernels that ignore the driving variable.
    """

    if model.kind is MapKind.TYPE_I:
        return model(x, u)
    if model.kind is not MapKind.QUADRANT:
        raise UnsupportedFamily(f"not a quadrant kernel: {model}")
    return model(tilde_x, x, u)


register(MapFamily.R_DLPP, lambda p, a, b, c: r_dlpp(a, b, c))
register(MapFamily.R_RPS, lambda p, a, b, c: r_rps(a, b, c))
register(MapFamily.R_RPE, lambda p, a, b, c: r_rpe(p["A"], p["B"], a, b, c))
register(MapFamily.R_HSV, lambda p, u, i, j: r_hsv(p["alpha"], p["nu"], p["q"], u, i, j))
