"""
The ultra-discrete and discrete KdV maps, their symmetries, duals and the
conjugations relating them to the Toda maps on a symmetry slice.

All evaluations are elementwise, so scalars and numpy arrays are accepted alike.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from strong_typing.auxiliary import CompactDataClass

from ..base import ArrayLike, DomainError, UnsupportedFamily, UnsupportedRegime, positive_part
from .local_map import LocalMap, MapFamily, register

Pair = Tuple[ArrayLike, ArrayLike]


def udkdv_map(J: float, K: float, x: ArrayLike, u: ArrayLike) -> Pair:
    "The box-ball map with box capacity J and carrier capacity K."

    s = np.add(x, u)
    through_box = positive_part(s - J)
    through_carrier = positive_part(s - K)
    return (
        u - through_box + through_carrier,
        x - through_carrier + through_box,
    )


def _require_positive(*values: ArrayLike) -> None:
    for value in values:
        if np.any(np.asarray(value) <= 0):
            raise DomainError("arguments must be positive")


def dkdv_map(alpha: float, beta: float, x: ArrayLike, u: ArrayLike) -> Pair:
    """
    The discrete KdV map (x, u) -> (u(1+beta xu)/(1+alpha xu), x(1+alpha xu)/(1+beta xu)).

    For large xu the ratio is evaluated as (beta + 1/(xu)) / (alpha + 1/(xu)).
    """

    _require_positive(x, u)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        s = np.multiply(x, u)
        w = 1.0 / s
        ratio = np.where(
            s > 1.0,
            (beta + w) / (alpha + w),
            (1.0 + beta * s) / (1.0 + alpha * s),
        )
    if np.ndim(ratio) == 0:
        ratio = float(ratio)
    return (u * ratio, x / ratio)


def k_udt_map(a: ArrayLike, b: ArrayLike) -> Pair:
    "Restriction of the ultra-discrete Toda map to the slice where it reduces to a KdV map."

    m = np.minimum(a, b)
    return (-m, b - a - m)


def k_dt_map(a: ArrayLike, b: ArrayLike) -> Pair:
    "Restriction of the discrete Toda map to the slice where it reduces to a KdV map."

    _require_positive(a, b)
    s = np.add(a, b)
    return (1.0 / s, b / (a * s))


def a_udt(J: float, x: ArrayLike, u: ArrayLike) -> Pair:
    return (J / 2.0 - np.asarray(x), np.asarray(u) - J / 2.0)


def a_udt_inv(J: float, a: ArrayLike, b: ArrayLike) -> Pair:
    return (J / 2.0 - np.asarray(a), np.asarray(b) + J / 2.0)


def a_dt(alpha: float, x: ArrayLike, u: ArrayLike) -> Pair:
    root = math.sqrt(alpha)
    return (np.asarray(x) * root, 1.0 / (np.asarray(u) * root))


def a_dt_inv(alpha: float, a: ArrayLike, b: ArrayLike) -> Pair:
    root = math.sqrt(alpha)
    return (np.asarray(a) / root, 1.0 / (np.asarray(b) * root))


def conjugated_kdv(local_map: LocalMap, x: ArrayLike, u: ArrayLike) -> Pair:
    """
    Evaluates A^-1 . K . A, the Toda slice map conjugated back to KdV coordinates.

    Defined for udKdV(J, inf) with K = K_udT and for dKdV(alpha, 0) with K = K_dT;
    the result equals the KdV map itself.
    """

    if local_map.family is MapFamily.UDKDV:
        J, K = local_map["J"], local_map["K"]
        if not (math.isfinite(J) and math.isinf(K)):
            raise UnsupportedRegime(f"conjugation needs finite J and K = inf: {local_map}")
        return a_udt_inv(J, *k_udt_map(*a_udt(J, x, u)))
    if local_map.family is MapFamily.DKDV:
        alpha, beta = local_map["alpha"], local_map["beta"]
        if not (alpha > 0 and beta == 0):
            raise UnsupportedRegime(f"conjugation needs alpha > 0 and beta = 0: {local_map}")
        _require_positive(x, u)
        return a_dt_inv(alpha, *k_dt_map(*a_dt(alpha, x, u)))
    raise UnsupportedFamily(f"no Toda conjugation for {local_map.family.value}")


def dual_map(local_map: LocalMap) -> LocalMap:
    "The configuration-carrier dual pi . F . pi, where pi swaps the two arguments."

    if local_map.family is MapFamily.UDKDV:
        return local_map.with_params(J=local_map["K"], K=local_map["J"])
    if local_map.family is MapFamily.DKDV:
        return local_map.with_params(alpha=local_map["beta"], beta=local_map["alpha"])
    raise UnsupportedFamily(f"dual map is defined for two-argument KdV maps only: {local_map}")


class SymmetryKind(enum.Enum):
    SHIFT = "shift"
    SCALE = "scale"
    SPACE_PARTICLE = "space_particle"


@dataclass(frozen=True, repr=False)
class Symmetry(CompactDataClass):
    "A symmetry of the KdV maps: shift by r, scale by lambda, or empty space-particle duality."

    kind: SymmetryKind
    amount: float = 0.0

    @staticmethod
    def shift(r: float) -> Symmetry:
        return Symmetry(SymmetryKind.SHIFT, r)

    @staticmethod
    def scale(factor: float) -> Symmetry:
        return Symmetry(SymmetryKind.SCALE, factor)

    @staticmethod
    def space_particle() -> Symmetry:
        return Symmetry(SymmetryKind.SPACE_PARTICLE)


def _sigma(local_map: LocalMap, x: ArrayLike, u: ArrayLike) -> Pair:
    if local_map.family is MapFamily.UDKDV:
        return (local_map["J"] - np.asarray(x), local_map["K"] - np.asarray(u))
    else:
        return (
            1.0 / (local_map["alpha"] * np.asarray(x)),
            1.0 / (local_map["beta"] * np.asarray(u)),
        )


def apply_symmetry(local_map: LocalMap, sym: Symmetry, x: ArrayLike, u: ArrayLike) -> Pair:
    """
    Evaluates the conjugated map on the left-hand side of a symmetry identity.

    :param local_map: A udKdV or dKdV map.
    :param sym: The symmetry to conjugate with.
    :returns: F^(J-2r,K-2r)(x-r, u-r) for a shift, F^(lambda J, lambda K)(lambda x, lambda u) for a
        scaling (F^(alpha/lambda^2, beta/lambda^2) for dKdV), or sigma . F . sigma for the space-particle duality.
    """

    if local_map.family not in (MapFamily.UDKDV, MapFamily.DKDV):
        raise UnsupportedFamily(f"symmetries are defined for KdV maps only: {local_map}")

    if sym.kind is SymmetryKind.SHIFT:
        if local_map.family is MapFamily.DKDV:
            raise DomainError("shift is not a symmetry of the discrete KdV map")
        r = sym.amount
        J, K = local_map["J"], local_map["K"]
        if r != 0 and (math.isinf(J) or math.isinf(K)):
            raise DomainError(f"shift by {r} is undefined for infinite capacities: {local_map}")
        shifted = local_map.with_params(J=J - 2 * r, K=K - 2 * r)
        return shifted(np.asarray(x) - r, np.asarray(u) - r)

    if sym.kind is SymmetryKind.SCALE:
        factor = sym.amount
        if not factor > 0:
            raise DomainError(f"scale factor must be positive: {factor}")
        if local_map.family is MapFamily.UDKDV:
            scaled = local_map.with_params(J=factor * local_map["J"], K=factor * local_map["K"])
        else:
            scaled = local_map.with_params(
                alpha=local_map["alpha"] / factor**2, beta=local_map["beta"] / factor**2
            )
        return scaled(factor * np.asarray(x), factor * np.asarray(u))

    if local_map.family is MapFamily.UDKDV:
        if math.isinf(local_map["J"]) or math.isinf(local_map["K"]):
            raise DomainError(f"space-particle duality needs finite J and K: {local_map}")
    elif not (local_map["alpha"] > 0 and local_map["beta"] > 0):
        raise DomainError(f"space-particle duality needs alpha, beta > 0: {local_map}")
    return _sigma(local_map, *local_map(*_sigma(local_map, x, u)))


def symmetry_image(local_map: LocalMap, sym: Symmetry, x: ArrayLike, u: ArrayLike) -> Pair:
    "The right-hand side of a symmetry identity, to be compared with apply_symmetry."

    y, v = local_map(x, u)
    if sym.kind is SymmetryKind.SHIFT:
        return (y - sym.amount, v - sym.amount)
    if sym.kind is SymmetryKind.SCALE:
        return (sym.amount * y, sym.amount * v)
    return (y, v)


register(MapFamily.UDKDV, lambda p, x, u: udkdv_map(p["J"], p["K"], x, u))
register(MapFamily.DKDV, lambda p, x, u: dkdv_map(p["alpha"], p["beta"], x, u))
register(MapFamily.K_UDT, lambda p, a, b: k_udt_map(a, b))
register(MapFamily.K_DT, lambda p, a, b: k_dt_map(a, b))
