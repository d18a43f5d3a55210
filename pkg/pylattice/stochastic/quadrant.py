"""
Filling quadrants of the stochastic lattice models from boundary data.

A kernel R maps (X_{n,m}, U_{n,m-1}, V_{n-1,m}) to (U_{n,m}, V_{n,m}). Cells on one
anti-diagonal n + m = d are independent given the previous anti-diagonal, so each
anti-diagonal is updated in a single vectorized kernel call across all replicas.
"""

import logging
from typing import Callable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..base import DomainError, InvalidParams, UnsupportedFamily
from ..distributions import DistributionSpec, dirac, sample, uniform01
from ..maps import LocalMap, MapFamily, MapKind, quadrant_kernel, validate_map
from ..rng import RNGStream
from .field import QuadrantField

KernelTable = Union[Mapping[Tuple[int, int], LocalMap], Callable[[int, int], LocalMap]]

# families whose partition function is reconstructed from the increments
PARTITION_FAMILIES = frozenset([MapFamily.R_DLPP, MapFamily.R_RPS, MapFamily.R_RPE])


def _check_dimensions(n: int, m: int) -> None:
    if n < 1 or m < 1:
        raise InvalidParams(f"quadrant dimensions must be positive: {n}x{m}")


def _check_kernel(model: LocalMap) -> None:
    if model.kind not in (MapKind.QUADRANT, MapKind.TYPE_I):
        raise UnsupportedFamily(f"not a quadrant kernel: {model}")


def _is_vertex(model: LocalMap) -> bool:
    return model.family is MapFamily.R_HSV


def _occupations(values: np.ndarray, what: str) -> np.ndarray:
    "Casts sampled occupation numbers to integers."

    if np.any(values != np.round(values)) or np.any(values < 0):
        raise DomainError(f"{what} of a vertex model must be nonnegative integers")
    return np.round(values).astype(np.int64)


def _allocate(
    model: LocalMap, replicas: int, n: int, m: int
) -> Tuple[np.ndarray, np.ndarray]:
    dtype = np.int64 if _is_vertex(model) else float
    return np.zeros((replicas, n, m + 1), dtype=dtype), np.zeros((replicas, n + 1, m), dtype=dtype)


def _fill(model: LocalMap, X: np.ndarray, U: np.ndarray, V: np.ndarray) -> None:
    _, n, m = X.shape
    for d in range(2, n + m + 1):
        ns = np.arange(max(1, d - m), min(n, d - 1) + 1)
        ms = d - ns
        out_u, out_v = quadrant_kernel(
            model, X[:, ns - 1, ms - 1], U[:, ns - 1, ms - 1], V[:, ns - 1, ms - 1]
        )
        U[:, ns - 1, ms] = out_u
        V[:, ns, ms - 1] = out_v


def partition_from_increments(model: LocalMap, U: np.ndarray, V: np.ndarray) -> Optional[np.ndarray]:
    """
    Reconstructs Z with Z_{0,0} = 0 from U_{n,m} = Z_{n,m} - Z_{n-1,m} and V_{n,m} = Z_{n,m} - Z_{n,m-1}.

    For polymers the increments are ratios and Z is returned as log Z; site polymer arrays
    hold inverse variables. Returns None for models without a partition function.
    """

    family = model.family
    if family not in PARTITION_FAMILIES:
        return None
    if family is MapFamily.R_DLPP:
        du, dv = U, V
    elif family is MapFamily.R_RPS:
        du, dv = -np.log(U), -np.log(V)
    else:
        du, dv = np.log(U), np.log(V)

    shape = du.shape[:-2] + (du.shape[-2] + 1, du.shape[-1])
    z = np.zeros(shape)
    z[..., 0, 1:] = np.cumsum(dv[..., 0, :], axis=-1)
    z[..., 1:, :] = np.cumsum(du, axis=-2)
    z[..., 1:, :] += z[..., :1, :]
    return z


def run_quadrant_replicas(
    model: LocalMap,
    boundary_x: DistributionSpec,
    boundary_u: DistributionSpec,
    bulk: DistributionSpec,
    n: int,
    m: int,
    rng: RNGStream,
    replicas: int,
) -> QuadrantField:
    """
    Fills `replicas` independent N x M quadrants at once.

    Boundary values U_{n,0} are drawn from boundary_x on child stream 0, V_{0,m} from boundary_u
    on child stream 1, and the bulk from child stream 2.
    """

    _check_dimensions(n, m)
    _check_kernel(model)
    if replicas < 1:
        raise InvalidParams(f"number of replicas must be positive: {replicas}")

    U, V = _allocate(model, replicas, n, m)
    left = sample(boundary_x, rng.child(0), replicas * n).reshape(replicas, n)
    bottom = sample(boundary_u, rng.child(1), replicas * m).reshape(replicas, m)
    if _is_vertex(model):
        left = _occupations(left, "boundary occupations")
        bottom = _occupations(bottom, "boundary carriers")
    U[:, :, 0] = left
    V[:, 0, :] = bottom
    X = sample(bulk, rng.child(2), replicas * n * m).reshape(replicas, n, m)

    logging.debug("filling %d quadrants of %dx%d for %s", replicas, n, m, model)
    _fill(model, X, U, V)
    Z = partition_from_increments(model, U, V)
    return QuadrantField(model, X, U, V, Z, (boundary_x, boundary_u))


def run_quadrant(
    model: LocalMap,
    boundary_x: DistributionSpec,
    boundary_u: DistributionSpec,
    bulk: DistributionSpec,
    n: int,
    m: int,
    rng: RNGStream,
) -> QuadrantField:
    "Fills a single N x M quadrant."

    field = run_quadrant_replicas(model, boundary_x, boundary_u, bulk, n, m, rng, 1)
    return field.replica(0)


def quadrant_from_kernel(
    model: LocalMap,
    boundary_x: DistributionSpec,
    boundary_u: DistributionSpec,
    n: int,
    m: int,
    rng: RNGStream,
    replicas: Optional[int] = None,
) -> QuadrantField:
    """
    Runs a deterministic type I map as a quadrant model.

    Row n holds the configuration x_n^t = U_{n,t} at site n and V_{n,t+1} holds the carrier
    u_n^t, so the field is the space-time picture of the dynamics started from an i.i.d.
    configuration with law boundary_x and fed by i.i.d. carriers with law boundary_u.
    """

    if model.kind is not MapKind.TYPE_I:
        raise UnsupportedFamily(f"expected a type I map: {model}")
    if replicas is None:
        return run_quadrant(model, boundary_x, boundary_u, dirac(0.0), n, m, rng)
    return run_quadrant_replicas(model, boundary_x, boundary_u, dirac(0.0), n, m, rng, replicas)


def hsv_run(
    params: LocalMap,
    boundary_x: DistributionSpec,
    boundary_u: DistributionSpec,
    n: int,
    t: int,
    rng: RNGStream,
    replicas: Optional[int] = None,
) -> QuadrantField:
    """
    Runs the spin-1/2 stochastic higher spin vertex model on n sites for t time steps.

    :param params: An R_HSV kernel.
    :param boundary_x: Law of the initial occupations X_n^0.
    :param boundary_u: Law of the carriers entering at site 1, supported on {0, 1}.
    """

    if params.family is not MapFamily.R_HSV:
        raise UnsupportedFamily(f"expected a vertex kernel: {params}")
    try:
        validate_map(params)
    except InvalidParams as e:
        raise DomainError(f"invalid vertex weights: {e}") from e

    if replicas is None:
        return run_quadrant(params, boundary_x, boundary_u, uniform01(), n, t, rng)
    return run_quadrant_replicas(params, boundary_x, boundary_u, uniform01(), n, t, rng, replicas)


def run_quadrant_inhomogeneous(
    kernels: KernelTable,
    boundary_x: Sequence[DistributionSpec],
    boundary_u: Sequence[DistributionSpec],
    bulk: DistributionSpec,
    n: int,
    m: int,
    rng: RNGStream,
    replicas: Optional[int] = None,
) -> QuadrantField:
    """
    Fills a quadrant whose kernel depends on the cell.

    :param kernels: Kernel of cell (n, m) for 1 <= n <= N, 1 <= m <= M, as a mapping or a callable.
    :param boundary_x: Law of U_{n,0} for each row n = 1..N.
    :param boundary_u: Law of V_{0,m} for each column m = 1..M.
    """

    _check_dimensions(n, m)
    if len(boundary_x) != n or len(boundary_u) != m:
        raise InvalidParams(
            f"expected {n} row and {m} column laws but got {len(boundary_x)} and {len(boundary_u)}"
        )
    kernel_of = kernels if callable(kernels) else lambda k, t: kernels[(k, t)]
    table = [[kernel_of(k, t) for t in range(1, m + 1)] for k in range(1, n + 1)]
    first = table[0][0]
    for row in table:
        for kernel in row:
            _check_kernel(kernel)
            if kernel.family is not first.family:
                raise InvalidParams(
                    f"kernels of one quadrant must share a family: {first.family.value} and {kernel.family.value}"
                )

    count = 1 if replicas is None else replicas
    U, V = _allocate(first, count, n, m)
    vertex = _is_vertex(first)
    rows, columns = rng.child(0), rng.child(1)
    for k, spec in enumerate(boundary_x):
        values = sample(spec, rows.child(k), count)
        U[:, k, 0] = _occupations(values, "boundary occupations") if vertex else values
    for t, spec in enumerate(boundary_u):
        values = sample(spec, columns.child(t), count)
        V[:, 0, t] = _occupations(values, "boundary carriers") if vertex else values
    X = sample(bulk, rng.child(2), count * n * m).reshape(count, n, m)

    for k in range(n):
        for t in range(m):
            U[:, k, t + 1], V[:, k + 1, t] = quadrant_kernel(
                table[k][t], X[:, k, t], U[:, k, t], V[:, k, t]
            )

    logging.debug("filled inhomogeneous %dx%d quadrant of %s kernels", n, m, first.family.value)
    field = QuadrantField(first, X, U, V, None, None, table)
    return field if replicas is not None else field.replica(0)
