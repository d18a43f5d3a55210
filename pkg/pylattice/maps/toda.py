"""
Toda-type maps: the star bijections F_*, their inverses, and the three-point
involutions F(a, b, c) = (F_*^(1)(b, c), F_*^-1(a, F_*^(2)(b, c))) built from them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..base import ArrayLike, DomainError, NotInvertible
from .local_map import THREE_POINT_FAMILY, LocalMap, MapFamily, register

Pair = Tuple[ArrayLike, ArrayLike]
Triple = Tuple[ArrayLike, ArrayLike, ArrayLike]


def _require_positive(*values: ArrayLike) -> None:
    for value in values:
        if np.any(np.asarray(value) <= 0):
            raise DomainError("arguments must be positive")


def udtoda_star(x: ArrayLike, u: ArrayLike) -> Pair:
    return (np.minimum(x, u), np.subtract(x, u))


def udtoda_star_inv(x: ArrayLike, u: ArrayLike) -> Pair:
    return (np.add(x, np.maximum(u, 0.0)), np.subtract(x, np.minimum(u, 0.0)))


def udtoda_map(a: ArrayLike, b: ArrayLike, c: ArrayLike) -> Triple:
    """
    The ultra-discrete Toda map.

    :param a: Q_{n+1}^t
    :param b: E_n^t
    :param c: U_n^t, the incoming carrier.
    :returns: (Q_{n+1}^{t+1}, E_n^{t+1}, U_{n+1}^t)
    """

    m = np.minimum(c, b)
    return (m, np.add(a, b) - m, np.add(c, a) - m)


def dtoda_star(x: ArrayLike, u: ArrayLike) -> Pair:
    _require_positive(x, u)
    s = np.add(x, u)
    return (s, x / s)


def dtoda_star_inv(x: ArrayLike, u: ArrayLike) -> Pair:
    _require_positive(x)
    u = np.asarray(u)
    if np.any((u <= 0) | (u >= 1)):
        raise DomainError("second argument of the inverse must lie in (0,1)")
    return (x * u, x * (1.0 - u))


def dtoda_map(a: ArrayLike, b: ArrayLike, c: ArrayLike) -> Triple:
    "The discrete Toda map with argument order (I_{n+1}^t, J_n^t, U_n^t)."

    _require_positive(a, b, c)
    s = np.add(b, c)
    return (s, a * b / s, a * c / s)


def _h(A: float, B: float, x: ArrayLike) -> ArrayLike:
    return A * np.asarray(x) + B


def rpe_star_map(A: float, B: float, x: ArrayLike, u: ArrayLike) -> Pair:
    "The edge-polymer star map R*(x, u) = (x(u-B)/(u+Ax), u/x) for h(x) = Ax + B."

    _require_positive(x, u)
    return (x * (u - B) / (u + A * x), u / x)


def rpe_star_inv(A: float, B: float, x: ArrayLike, u: ArrayLike) -> Pair:
    _require_positive(u)
    hx = _h(A, B, x)
    return (x + hx / u, hx + x * u)


@dataclass(frozen=True, repr=False, eq=False)
class InvolutionMap(LocalMap):
    "A three-point map evaluated by composing a star bijection with its inverse."

    star: Optional[LocalMap] = None

    def __call__(self, a, b, c):
        first, second = self.star(b, c)
        return (first, *self.star.inverse(a, second))


def three_point_involution(star: LocalMap) -> LocalMap:
    "Builds F(a, b, c) = (star^(1)(b, c), star^-1(a, star^(2)(b, c)))."

    if not star.has_inverse or star.family not in THREE_POINT_FAMILY:
        raise NotInvertible(f"no registered inverse for {star.family.value}")
    return InvolutionMap(THREE_POINT_FAMILY[star.family], dict(star.params), star)


def rpe_map(A: float, B: float, a: ArrayLike, b: ArrayLike, c: ArrayLike) -> Triple:
    "The edge-polymer three-point map; components 2 and 3 are the polymer kernel R_RPe."

    first, second = rpe_star_map(A, B, b, c)
    return (first, *rpe_star_inv(A, B, a, second))


register(
    MapFamily.UDTODA_STAR,
    lambda p, x, u: udtoda_star(x, u),
    lambda p, x, u: udtoda_star_inv(x, u),
)
register(
    MapFamily.DTODA_STAR,
    lambda p, x, u: dtoda_star(x, u),
    lambda p, x, u: dtoda_star_inv(x, u),
)
register(
    MapFamily.RPE_STAR,
    lambda p, x, u: rpe_star_map(p["A"], p["B"], x, u),
    lambda p, x, u: rpe_star_inv(p["A"], p["B"], x, u),
)
register(MapFamily.UDTODA, lambda p, a, b, c: udtoda_map(a, b, c))
register(MapFamily.DTODA, lambda p, a, b, c: dtoda_map(a, b, c))
register(MapFamily.RPE, lambda p, a, b, c: rpe_map(p["A"], p["B"], a, b, c))
