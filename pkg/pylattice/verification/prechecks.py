"""
Hypotheses of the invariance and ergodicity statements, checked before any
simulation is spent on them.
"""

import math
from typing import Optional

from ..base import PrecheckFailed, UnsupportedFamily, UnsupportedRegime
from ..distributions import DistributionSpec, Family, cdf, mean, mean_log
from ..maps import LocalMap, MapFamily, MapKind

# distance below a boundary point used to evaluate left limits of distribution functions
LEFT_LIMIT = 1e-6


def _require(condition: bool, reason: str) -> None:
    if not condition:
        raise PrecheckFailed(reason)


def precheck_invariance(
    model: LocalMap, mu: DistributionSpec, mu_tilde: Optional[DistributionSpec] = None
) -> None:
    """
    Checks the moment conditions under which the carrier exists and the product law is invariant.

    - udKdV(J, inf): E[x] < J/2;
    - dKdV(alpha, 0): 2 E[log x] < -log alpha, and dKdV(0, beta): 2 E[log x] < -log beta;
    - udToda: E[Q] < E[E];
    - dToda: E[log J] < E[log I].
    """

    family = model.family
    if family is MapFamily.UDKDV:
        J, K = model["J"], model["K"]
        if math.isinf(K) and math.isfinite(J):
            expected = mean(mu)
            _require(expected < J / 2.0, f"udKdV with K = inf needs E[x] < J/2 but E[x] = {expected}")
    elif family is MapFamily.DKDV:
        alpha, beta = model["alpha"], model["beta"]
        if alpha > 0 and beta == 0:
            moment = 2.0 * mean_log(mu)
            _require(moment < -math.log(alpha), f"2 E[log x] = {moment} is not below -log alpha")
        elif alpha == 0 and beta > 0:
            moment = 2.0 * mean_log(mu)
            _require(moment < -math.log(beta), f"2 E[log x] = {moment} is not below -log beta")
    elif family in (MapFamily.UDTODA, MapFamily.DTODA):
        if mu_tilde is None:
            raise PrecheckFailed(f"type II model {model} needs the law of both slots")
        if family is MapFamily.UDTODA:
            q, e = mean(mu_tilde), mean(mu)
            _require(q < e, f"udToda needs E[Q] < E[E] but got {q} and {e}")
        else:
            i, j = mean_log(mu_tilde), mean_log(mu)
            _require(j < i, f"dToda needs E[log J] < E[log I] but got {j} and {i}")


def precheck_ergodicity(model: LocalMap, mu: DistributionSpec, nu: DistributionSpec) -> None:
    """
    Checks the hypotheses under which the product law is ergodic.

    - udKdV(J, K): mu is not the point mass at J/2 and nu charges (-inf, J/2] or [K - J/2, inf);
    - dKdV(alpha, 0): 2 E_nu[log x] < -log alpha, and dually for dKdV(0, beta) with mu.
    """

    if model.kind is not MapKind.TYPE_I:
        raise UnsupportedFamily(f"ergodicity is checked for type I models only: {model}")

    family = model.family
    if family is MapFamily.UDKDV:
        J, K = model["J"], model["K"]
        _require(
            not (mu.family is Family.DIRAC and mu["x"] == J / 2.0),
            f"the point mass at J/2 = {J / 2.0} is excluded",
        )
        mass = cdf(nu, J / 2.0)
        if math.isfinite(K):
            mass += 1.0 - cdf(nu, K - J / 2.0 - LEFT_LIMIT)
        _require(mass > 0.0, f"{nu} does not charge (-inf, J/2] or [K - J/2, inf)")
    elif family is MapFamily.DKDV:
        alpha, beta = model["alpha"], model["beta"]
        if alpha > 0 and beta == 0:
            moment = 2.0 * mean_log(nu)
            _require(moment < -math.log(alpha), f"2 E_nu[log x] = {moment} is not below -log alpha")
        elif alpha == 0 and beta > 0:
            moment = 2.0 * mean_log(mu)
            _require(moment < -math.log(beta), f"2 E_mu[log x] = {moment} is not below -log beta")
        else:
            raise UnsupportedRegime(f"no ergodicity criterion for {model}")
    else:
        raise UnsupportedFamily(f"no ergodicity criterion for {model}")
