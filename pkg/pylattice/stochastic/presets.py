"""
Boundary laws under which the quadrant models are stationary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

from strong_typing.auxiliary import CompactDataClass

from ..base import InvalidParams
from ..distributions import DistributionSpec, dirac, gamma_law, inv_gamma, qnb, s_exp, st_exp, uniform01
from ..maps import LocalMap, MapFamily, hsv_kernel, plain, rpe_kernel, udkdv
from ..rng import RNGStream
from .field import QuadrantField
from .quadrant import run_quadrant, run_quadrant_inhomogeneous, run_quadrant_replicas


@dataclass(frozen=True, repr=False)
class QuadrantSetup(CompactDataClass):
    "A kernel together with the laws of its boundary data and bulk variables."

    model: LocalMap
    boundary_x: DistributionSpec
    boundary_u: DistributionSpec
    bulk: DistributionSpec

    def run(self, n: int, m: int, rng: RNGStream, replicas: Optional[int] = None) -> QuadrantField:
        if replicas is None:
            return run_quadrant(self.model, self.boundary_x, self.boundary_u, self.bulk, n, m, rng)
        return run_quadrant_replicas(
            self.model, self.boundary_x, self.boundary_u, self.bulk, n, m, rng, replicas
        )


@dataclass
class InhomogeneousSetup:
    "Cell-dependent kernels with per-row and per-column boundary laws."

    kernels: Callable[[int, int], LocalMap]
    boundary_x: List[DistributionSpec]
    boundary_u: List[DistributionSpec]
    bulk: DistributionSpec

    def run(self, rng: RNGStream, replicas: Optional[int] = None) -> QuadrantField:
        return run_quadrant_inhomogeneous(
            self.kernels,
            self.boundary_x,
            self.boundary_u,
            self.bulk,
            len(self.boundary_x),
            len(self.boundary_u),
            rng,
            replicas,
        )


def _require_rates(lambda1: float, lambda2: float) -> None:
    if not (lambda1 > 0 and lambda2 > 0):
        raise InvalidParams(f"rates must be positive: {lambda1}, {lambda2}")


def stationary_dlpp(lambda1: float, lambda2: float) -> QuadrantSetup:
    "U ~ Exp(lambda1), V ~ Exp(lambda2), X ~ Exp(lambda1 + lambda2)."

    _require_rates(lambda1, lambda2)
    return QuadrantSetup(
        plain(MapFamily.R_DLPP),
        s_exp(lambda1, 0.0),
        s_exp(lambda2, 0.0),
        s_exp(lambda1 + lambda2, 0.0),
    )


def stationary_site_polymer(lambda1: float, lambda2: float, c: float = 1.0) -> QuadrantSetup:
    "Inverse variables U^-1 ~ Gam(lambda1, c), V^-1 ~ Gam(lambda2, c), X^-1 ~ Gam(lambda1 + lambda2, c)."

    _require_rates(lambda1, lambda2)
    return QuadrantSetup(
        plain(MapFamily.R_RPS),
        gamma_law(lambda1, c),
        gamma_law(lambda2, c),
        gamma_law(lambda1 + lambda2, c),
    )


def stationary_edge_polymer(lambda1: float, lambda2: float, c: float = 1.0) -> QuadrantSetup:
    "Edge weights h(x) = x with U ~ IG(lambda1, c), V ~ IG(lambda2, c), X ~ IG(lambda1 + lambda2, c)."

    _require_rates(lambda1, lambda2)
    return QuadrantSetup(
        rpe_kernel(1.0, 0.0),
        inv_gamma(lambda1, c),
        inv_gamma(lambda2, c),
        inv_gamma(lambda1 + lambda2, c),
    )


def stationary_hsv(alpha: float, nu: float, q: float, p: float) -> QuadrantSetup:
    """
    Occupations X ~ qNB(nu, p/alpha) and carriers ~ qNB(q^-1, -qp), which is Bernoulli(p/(1+p)).

    :param p: Density parameter with 0 < p < alpha.
    """

    if not (0 < p < alpha):
        raise InvalidParams(f"stationary vertex model needs 0 < p < alpha: p={p}, alpha={alpha}")
    return QuadrantSetup(
        hsv_kernel(alpha, nu, q),
        qnb(q, p / alpha, b=nu),
        qnb(q, -q * p, L=1),
        uniform01(),
    )


def inhomogeneous_udkdv(
    J: Sequence[float], K: Sequence[float], lam: float, c: float = 0.0
) -> InhomogeneousSetup:
    """
    Box-ball kernels udKdV(J_n, K_t) with mu_n = stExp(lam, c, J_n - c) and nu_t = stExp(lam, c, K_t - c).

    The driving variables are ignored, so the bulk is a point mass.
    """

    J, K = list(J), list(K)
    if any(math.isinf(k) for k in K) and lam <= 0:
        raise InvalidParams(f"infinite carrier capacity needs a positive rate: {lam}")
    return InhomogeneousSetup(
        lambda n, t: udkdv(J[n - 1], K[t - 1]),
        [st_exp(lam, c, j - c) for j in J],
        [st_exp(lam, c, k - c) for k in K],
        dirac(0.0),
    )


def inhomogeneous_hsv(
    s: Sequence[float], xi: Sequence[float], u: Sequence[float], v: float, q: float
) -> InhomogeneousSetup:
    """
    Vertex kernels with alpha = -s_n xi_n u_t and nu = s_n^2.

    The row laws are mu_n = qNB(s_n^2, v/(s_n xi_n)) and the column laws nu_t = qNB(q^-1, q u_t v).
    """

    s, xi, u = list(s), list(xi), list(u)
    if len(s) != len(xi):
        raise InvalidParams(f"need one xi per site: {len(s)} sites and {len(xi)} values")
    for n, (s_n, xi_n) in enumerate(zip(s, xi), start=1):
        for u_t in u:
            if -s_n * xi_n * u_t <= 0:
                raise InvalidParams(f"kernel weight alpha must be positive at row {n}")
        ratio = v / (s_n * xi_n)
        if not (0 < ratio < 1):
            raise InvalidParams(f"row {n} law qNB needs 0 < v/(s xi) < 1 but got {ratio}")
    return InhomogeneousSetup(
        lambda n, t: hsv_kernel(-s[n - 1] * xi[n - 1] * u[t - 1], s[n - 1] ** 2, q),
        [qnb(q, v / (s_n * xi_n), b=s_n**2) for s_n, xi_n in zip(s, xi)],
        [qnb(q, q * u_t * v, L=1) for u_t in u],
        uniform01(),
    )
