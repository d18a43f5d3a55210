"""
Detailed balance of a local map under a product law, by Monte Carlo or by
exact enumeration when every law is finitely supported.
"""

import logging

import numpy as np

from ..base import InfiniteSupport, InvalidParams, UnsupportedFamily
from ..distributions import DistributionSpec, exact_pmf_table, sample, validate
from ..maps import LocalMap, MapKind, three_point_involution
from ..rng import RNGStream
from .measures import product_table, pushforward_table
from .report import DEFAULT_ALPHA, TestReport, report_from_p_values
from .stats import chi2_independence, independence_bins, marginal_p_value, tv_distance_exact

# largest total variation accepted by an exact check
EXACT_TV = 1e-14

# smallest total variation a perturbed law must show
POWER_TV = 0.01

BALANCE = "F(mu x nu) = mu x nu"
STAR_BALANCE = "F_*(mu x nu) = mu_tilde x nu_tilde"
POWER = "F(mu' x nu) != mu' x nu off the solution manifold"


def _finite(*specs: DistributionSpec) -> bool:
    for spec in specs:
        try:
            exact_pmf_table(spec)
        except InfiniteSupport:
            return False
    return True


def _independence(first: np.ndarray, second: np.ndarray, bins: int) -> float:
    pairs = np.column_stack([first, second])
    return chi2_independence(pairs, independence_bins(len(pairs), bins))[1]


def check_detailed_balance(
    local_map: LocalMap,
    mu: DistributionSpec,
    nu: DistributionSpec,
    n: int,
    rng: RNGStream,
    alpha: float = DEFAULT_ALPHA,
    bins: int = 8,
) -> TestReport:
    """
    Tests F(mu x nu) = mu x nu for a type I map.

    Finitely supported laws are compared exactly in total variation. Otherwise (X, U) ~ mu x nu
    are drawn, mapped to (X', U') = F(X, U), and the marginals of X' and U' and their
    independence are tested.
    """

    if local_map.kind is not MapKind.TYPE_I:
        raise UnsupportedFamily(f"detailed balance of a product law needs a type I map: {local_map}")

    if _finite(mu, nu):
        product = product_table(mu, nu)
        tv = tv_distance_exact(product, pushforward_table(local_map, mu, nu))
        logging.debug("exact pushforward of %s x %s under %s: tv=%g", mu, nu, local_map, tv)
        return TestReport(
            "detailed_balance", BALANCE, str(local_map), "tv", tv, EXACT_TV, len(product), rng.seed, {"mode": "exact"}
        )

    x = sample(mu, rng.child(0), n)
    u = sample(nu, rng.child(1), n)
    x_out, u_out = local_map(x, u)
    p_values = {
        "marginal_x": marginal_p_value(x_out, mu),
        "marginal_u": marginal_p_value(u_out, nu),
        "independence": _independence(x_out, u_out, bins),
    }
    return report_from_p_values(
        "detailed_balance", BALANCE, str(local_map), p_values, alpha, n, rng.seed, {"mode": "monte_carlo"}
    )


def check_detailed_balance_star(
    star: LocalMap,
    mu: DistributionSpec,
    nu: DistributionSpec,
    mu_tilde: DistributionSpec,
    nu_tilde: DistributionSpec,
    n: int,
    rng: RNGStream,
    alpha: float = DEFAULT_ALPHA,
    bins: int = 8,
) -> TestReport:
    """
    Tests F_*(mu x nu) = mu_tilde x nu_tilde together with the equivalent condition that the
    three-point map F built from F_* preserves mu_tilde x mu x nu.
    """

    if star.kind is not MapKind.STAR:
        raise UnsupportedFamily(f"expected a star bijection: {star}")
    involution = three_point_involution(star)

    if _finite(mu, nu, mu_tilde, nu_tilde):
        tv_star = tv_distance_exact(product_table(mu_tilde, nu_tilde), pushforward_table(star, mu, nu))
        product = product_table(mu_tilde, mu, nu)
        tv_three = tv_distance_exact(product, pushforward_table(involution, mu_tilde, mu, nu))
        return TestReport(
            "detailed_balance_star",
            STAR_BALANCE,
            str(star),
            "tv",
            max(tv_star, tv_three),
            EXACT_TV,
            len(product),
            rng.seed,
            {"mode": "exact", "tv_star": tv_star, "tv_three_point": tv_three},
        )

    x = sample(mu, rng.child(0), n)
    u = sample(nu, rng.child(1), n)
    x_out, u_out = star(x, u)

    a = sample(mu_tilde, rng.child(2), n)
    b = sample(mu, rng.child(3), n)
    c = sample(nu, rng.child(4), n)
    a_out, b_out, c_out = involution(a, b, c)

    p_values = {
        "star_marginal_x": marginal_p_value(x_out, mu_tilde),
        "star_marginal_u": marginal_p_value(u_out, nu_tilde),
        "star_independence": _independence(x_out, u_out, bins),
        "three_point_marginal_1": marginal_p_value(a_out, mu_tilde),
        "three_point_marginal_2": marginal_p_value(b_out, mu),
        "three_point_marginal_3": marginal_p_value(c_out, nu),
        "three_point_independence_12": _independence(a_out, b_out, bins),
        "three_point_independence_23": _independence(b_out, c_out, bins),
        "three_point_independence_13": _independence(a_out, c_out, bins),
    }
    return report_from_p_values(
        "detailed_balance_star", STAR_BALANCE, str(star), p_values, alpha, n, rng.seed, {"mode": "monte_carlo"}
    )


def check_power(
    local_map: LocalMap,
    mu: DistributionSpec,
    nu: DistributionSpec,
    shift: float = 0.1,
    seed: int = 0,
) -> TestReport:
    """
    Shifts the ratio parameter theta of mu and reports the total variation between the perturbed
    product law and its pushforward; the report passes when that distance is at least 0.01.
    """

    if "theta" not in mu.params:
        raise InvalidParams(f"no ratio parameter theta to perturb in {mu}")
    perturbed = validate(mu.with_params(theta=mu["theta"] + shift))
    if not _finite(perturbed, nu):
        raise InfiniteSupport(f"power check needs finitely supported laws: {perturbed}, {nu}")

    tv = tv_distance_exact(product_table(perturbed, nu), pushforward_table(local_map, perturbed, nu))
    return TestReport(
        "power",
        POWER,
        str(local_map),
        "negative_tv",
        -tv,
        -POWER_TV,
        0,
        seed,
        {"tv": tv, "perturbed": str(perturbed)},
    )
