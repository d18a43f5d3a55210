"""
Standard maps, measures and inputs shared by the tests.
"""

import math

import numpy as np

from pylattice.distributions import (
    asym_laplace,
    beta_law,
    dirac,
    gamma_law,
    gig,
    inv_gamma,
    s_exp,
    sd_al,
    ss_geo,
    sstb_geo,
    st_exp,
)
from pylattice.maps import MapFamily, dkdv, plain, udkdv
from pylattice.rng import RNGStream

BBS_1_2 = udkdv(1, 2)
BBS_1_INF = udkdv(1, math.inf)
UDKDV_2_4 = udkdv(2, 4)
DKDV_1_0 = dkdv(1.0, 0.0)
UDTODA_STAR = plain(MapFamily.UDTODA_STAR)
DTODA_STAR = plain(MapFamily.DTODA_STAR)
UDTODA = plain(MapFamily.UDTODA)
DTODA = plain(MapFamily.DTODA)

# detailed balance pairs
UDKDV_STEXP = (UDKDV_2_4, st_exp(1.0, 0.0, 2.0), st_exp(1.0, 0.0, 4.0))
BBS_GEO = (BBS_1_2, sstb_geo(0.5, 0, 1), sstb_geo(0.5, 0, 2))
DKDV_GIG = (DKDV_1_0, gig(1.0, 1.0, 1.0), inv_gamma(1.0, 1.0))

# star quadruples (mu, nu, mu_tilde, nu_tilde)
UDTODA_EXP = (s_exp(1.0, 0.0), s_exp(2.0, 0.0), s_exp(3.0, 0.0), asym_laplace(1.0, 2.0))
UDTODA_GEO = (ss_geo(0.5), ss_geo(0.5), ss_geo(0.25), sd_al(0.5, 0.5))
DTODA_GAM = (gamma_law(1.0, 1.0), gamma_law(2.0, 1.0), gamma_law(3.0, 1.0), beta_law(1.0, 2.0))
DIRAC_PAIR = (dirac(2.0), dirac(5.0), dirac(2.0), dirac(-3.0))


def dyadic(rng: RNGStream, n: int, low: float = -4.0, high: float = 4.0, bits: int = 10) -> np.ndarray:
    "Random dyadic rationals k / 2^bits in [low, high], for which sums and differences are exact."

    scale = 2**bits
    k = rng.generator.integers(int(low * scale), int(high * scale) + 1, size=n)
    return k / scale


def positive(rng: RNGStream, n: int, low: float = 0.05, high: float = 20.0) -> np.ndarray:
    "Log-uniform positive reals."

    return np.exp(rng.generator.uniform(math.log(low), math.log(high), size=n))
