"""
Point-to-point partition values of last passage percolation and directed polymers,
both by enumeration of all up-right paths from (1, 1) and by the cell recursion.
"""

import enum
import itertools
import math

import numpy as np
from scipy.special import logsumexp

from ..base import DomainError, TooLarge

# largest side of a quadrant whose paths are enumerated
ORACLE_SIZE = 12


class PolymerMode(enum.Enum):
    "Where the polymer weights sit: on the sites visited or on the edges traversed."

    SITE = "site"
    EDGE = "edge"


def _check_size(weights: np.ndarray) -> None:
    if weights.ndim != 2 or weights.size == 0:
        raise ValueError(f"weights must be a nonempty 2-D array: {weights.shape}")
    n, m = weights.shape
    if n > ORACLE_SIZE or m > ORACLE_SIZE:
        raise TooLarge(f"path enumeration is limited to {ORACLE_SIZE}x{ORACLE_SIZE} but got {n}x{m}")


def _paths(n: int, m: int):
    """
    All up-right paths from (0, 0) to (n-1, m-1).

    :returns: Cell rows and columns of shape (P, n+m-1), and a flag of shape (P, n+m-2)
        telling whether each step increments the row.
    """

    steps = n + m - 2
    combos = list(itertools.combinations(range(steps), n - 1))
    chosen = np.array(combos, dtype=np.int64).reshape(len(combos), n - 1)
    down = np.zeros((len(combos), steps), dtype=np.int64)
    np.put_along_axis(down, chosen, 1, axis=1)
    rows = np.concatenate([np.zeros((len(combos), 1), dtype=np.int64), np.cumsum(down, axis=1)], axis=1)
    cols = np.arange(steps + 1) - rows
    return rows, cols, down.astype(bool)


def dlpp_bruteforce(weights: np.ndarray) -> np.ndarray:
    "Z_{n,m} as the maximum over up-right paths from (1, 1) to (n, m) of the weights collected."

    weights = np.asarray(weights, dtype=float)
    _check_size(weights)
    n_max, m_max = weights.shape
    z = np.empty_like(weights)
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            rows, cols, _ = _paths(n, m)
            z[n - 1, m - 1] = np.max(np.sum(weights[rows, cols], axis=1))
    return z


def _edge_weights(weights: np.ndarray, A: float, B: float) -> np.ndarray:
    h = A * weights + B
    if np.any(h <= 0):
        raise DomainError("edge weight h(x) = Ax + B must be positive")
    return h


def polymer_bruteforce(
    weights: np.ndarray, mode: PolymerMode, A: float = -1.0, B: float = 1.0
) -> np.ndarray:
    """
    Polymer partition values Z_{n,m} as sums over up-right paths, accumulated in log-sum-exp form.

    In site mode a path collects the product of X over the cells it visits. In edge mode a
    step into cell (n, m) from (n-1, m) collects X_{n,m} and a step from (n, m-1) collects
    h(X_{n,m}) = A X_{n,m} + B, and Z_{1,1} = 1; the defaults give the beta polymer h(x) = 1 - x.
    """

    weights = np.asarray(weights, dtype=float)
    _check_size(weights)
    if np.any(weights <= 0):
        raise DomainError("polymer weights must be positive")
    log_x = np.log(weights)
    log_h = np.log(_edge_weights(weights, A, B)) if mode is PolymerMode.EDGE else None

    n_max, m_max = weights.shape
    z = np.empty_like(weights)
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            rows, cols, down = _paths(n, m)
            if mode is PolymerMode.SITE:
                log_paths = np.sum(log_x[rows, cols], axis=1)
            else:
                r, c = rows[:, 1:], cols[:, 1:]
                log_paths = np.sum(np.where(down, log_x[r, c], log_h[r, c]), axis=1)
            z[n - 1, m - 1] = math.exp(logsumexp(log_paths))
    return z


def dlpp_recursion(weights: np.ndarray) -> np.ndarray:
    "Z_{n,m} = X_{n,m} + max{Z_{n-1,m}, Z_{n,m-1}} with Z_{1,1} = X_{1,1}."

    weights = np.asarray(weights, dtype=float)
    n_max, m_max = weights.shape
    z = np.full((n_max + 1, m_max + 1), -math.inf)
    z[0, 1] = 0.0
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            z[n, m] = weights[n - 1, m - 1] + max(z[n - 1, m], z[n, m - 1])
    return z[1:, 1:]


def polymer_recursion(
    weights: np.ndarray, mode: PolymerMode, A: float = -1.0, B: float = 1.0
) -> np.ndarray:
    """
    Polymer partition values by the cell recursion in the log domain.

    Site mode: Z_{n,m} = X_{n,m} (Z_{n-1,m} + Z_{n,m-1}). Edge mode:
    Z_{n,m} = X_{n,m} Z_{n-1,m} + h(X_{n,m}) Z_{n,m-1}.
    """

    weights = np.asarray(weights, dtype=float)
    if np.any(weights <= 0):
        raise DomainError("polymer weights must be positive")
    log_x = np.log(weights)
    n_max, m_max = weights.shape
    z = np.full((n_max + 1, m_max + 1), -math.inf)
    if mode is PolymerMode.SITE:
        z[0, 1] = 0.0
        for n in range(1, n_max + 1):
            for m in range(1, m_max + 1):
                z[n, m] = log_x[n - 1, m - 1] + np.logaddexp(z[n - 1, m], z[n, m - 1])
    else:
        log_h = np.log(_edge_weights(weights, A, B))
        for n in range(1, n_max + 1):
            for m in range(1, m_max + 1):
                if n == 1 and m == 1:
                    z[n, m] = 0.0
                    continue
                z[n, m] = np.logaddexp(
                    log_x[n - 1, m - 1] + z[n - 1, m], log_h[n - 1, m - 1] + z[n, m - 1]
                )
    return np.exp(z[1:, 1:])
