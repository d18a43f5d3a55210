"""
q-series helpers for the q-negative binomial law.
"""

import math
from typing import List

import mpmath
import numpy as np

from ..rng import RNGStream


def qpochhammer(a: float, q: float, n: float = math.inf) -> float:
    "The q-Pochhammer symbol (a;q)_n, with n = inf for the infinite product."

    if n == 0:
        return 1.0
    if q == 0.0:
        # (a;0)_n = 1 - a for every n >= 1
        return 1.0 - a
    if math.isinf(n):
        return float(mpmath.qp(a, q))
    return float(mpmath.qp(a, q, int(n)))


def qnb_weights(q: float, p: float, b: float, count: int) -> List[float]:
    "Unnormalized weights p^n (b;q)_n / (q;q)_n for n = 0..count-1 by running product."

    weights = [1.0]
    w = 1.0
    for n in range(count - 1):
        w *= p * (1.0 - b * q**n) / (1.0 - q ** (n + 1))
        weights.append(w)
    return weights


def qnb_normalizer(q: float, p: float, b: float) -> float:
    "Closed form of sum_n p^n (b;q)_n/(q;q)_n = (pb;q)_inf / (p;q)_inf by the q-binomial theorem."

    return qpochhammer(p * b, q) / qpochhammer(p, q)


def bernoulli_sum_qnb(J: int, q: float, p: float, rng: RNGStream, n: int) -> np.ndarray:
    """
    Samples qNB(q^-J, -q^J p) as a sum of J independent Bernoulli variables
    with success probabilities q^(i-1) p / (1 + q^(i-1) p), i = 1..J.
    """

    if J < 0:
        raise ValueError(f"J must be nonnegative: {J}")
    total = np.zeros(n, dtype=np.int64)
    for i in range(1, J + 1):
        r = q ** (i - 1) * p
        total += rng.generator.random(n) < r / (1.0 + r)
    return total
