"""
Quadrant fields: bulk variables X, increments U and V, and partition values Z
of a stochastic quadrant model on sites 1 <= n <= N and times 1 <= m <= M.
"""

from __future__ import annotations

import json
import os.path
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..base import relative_error
from ..distributions import DistributionSpec, spec_from_json, spec_to_json
from ..maps import LocalMap, MapFamily, map_from_json, map_to_json, quadrant_kernel

ARRAY_NAMES = ("X", "U", "V", "Z")


@dataclass
class QuadrantField:
    """
    Arrays of a filled quadrant, optionally with a leading replica axis.

    With N sites and M times, X has shape (N, M) and X[n-1, m-1] = X_{n,m}. U has shape
    (N, M+1) with U[n-1, m] = U_{n,m}, its column 0 being the boundary data. V has shape
    (N+1, M) with V[n, m-1] = V_{n,m}, its row 0 being the boundary data. Z has shape
    (N+1, M+1) with Z[0, 0] = 0 and holds log partition values for polymers.
    """

    model: LocalMap
    X: np.ndarray
    U: np.ndarray
    V: np.ndarray
    Z: Optional[np.ndarray] = None
    boundary: Optional[Tuple[DistributionSpec, DistributionSpec]] = None
    kernels: Optional[List[List[LocalMap]]] = None

    @property
    def replicas(self) -> Optional[int]:
        "Number of replicas, or None for a single quadrant."

        return self.X.shape[0] if self.X.ndim == 3 else None

    @property
    def n_max(self) -> int:
        return self.X.shape[-2]

    @property
    def m_max(self) -> int:
        return self.X.shape[-1]

    def replica(self, index: int) -> QuadrantField:
        if self.replicas is None:
            raise IndexError("field has no replica axis")
        z = self.Z[index] if self.Z is not None else None
        return QuadrantField(
            self.model, self.X[index], self.U[index], self.V[index], z, self.boundary, self.kernels
        )

    def anti_diagonal(self, d: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Increments on the down-right path through the cells n + m = d.

        :returns: The values U_{n,m} and V_{n,m} for 1 <= n <= N, 1 <= m <= M with n + m = d,
            ordered by increasing n, along the last axis.
        """

        ns = np.arange(max(1, d - self.m_max), min(self.n_max, d - 1) + 1)
        if ns.size == 0:
            raise IndexError(f"no cell of the quadrant lies on anti-diagonal {d}")
        ms = d - ns
        return self.U[..., ns - 1, ms], self.V[..., ns, ms - 1]

    def residual(self) -> float:
        "Largest relative violation of the kernel and of the partition recursion over all cells."

        a = self.X
        b = self.U[..., :, :-1]
        c = self.V[..., :-1, :]
        if self.kernels is None:
            out_u, out_v = quadrant_kernel(self.model, a, b, c)
        else:
            out_u = np.zeros(b.shape, dtype=self.U.dtype)
            out_v = np.zeros(c.shape, dtype=self.V.dtype)
            for k, row in enumerate(self.kernels):
                for t, kernel in enumerate(row):
                    out_u[..., k, t], out_v[..., k, t] = quadrant_kernel(
                        kernel, a[..., k, t], b[..., k, t], c[..., k, t]
                    )
        worst = max(
            relative_error(out_u, self.U[..., :, 1:]),
            relative_error(out_v, self.V[..., 1:, :]),
        )
        if self.Z is not None:
            worst = max(worst, self._partition_residual())
        return worst

    def _partition_residual(self) -> float:
        z = self.Z
        below, left = z[..., :-1, 1:], z[..., 1:, :-1]
        family = self.model.family
        if family is MapFamily.R_DLPP:
            expected = self.X + np.maximum(below, left)
        elif family is MapFamily.R_RPS:
            expected = -np.log(self.X) + np.logaddexp(below, left)
        else:
            h = self.model["A"] * self.X + self.model["B"]
            expected = np.logaddexp(np.log(self.X) + below, np.log(h) + left)
        return relative_error(z[..., 1:, 1:], expected)

    def to_csv_rows(self) -> Tuple[Sequence[str], List[Tuple]]:
        """
        Header and rows (n, m, X, U, V, Z) for 0 <= n <= N, 0 <= m <= M except the corner.

        Entries that are not defined at a boundary cell are left empty.
        """

        if self.replicas is not None:
            raise ValueError("select a replica before exporting a replicated field")

        header = ("n", "m", "X", "U", "V", "Z")
        rows: List[Tuple] = []
        for n in range(self.n_max + 1):
            for m in range(self.m_max + 1):
                if n == 0 and m == 0:
                    continue
                x = _scalar(self.X[n - 1, m - 1]) if n > 0 and m > 0 else ""
                u = _scalar(self.U[n - 1, m]) if n > 0 else ""
                v = _scalar(self.V[n, m - 1]) if m > 0 else ""
                z = _scalar(self.Z[n, m]) if self.Z is not None else ""
                rows.append((n, m, x, u, v, z))
        return header, rows

    def save_binary(self, path: str) -> None:
        """
        Writes each array as a row-major .npy file next to a JSON sidecar at `path`.

        The sidecar records the model, the boundary laws, and the file, shape and type of each array.
        """

        stem, _ = os.path.splitext(path)
        arrays: Dict[str, Any] = {}
        for name in ARRAY_NAMES:
            array = getattr(self, name)
            if array is None:
                continue
            file_name = f"{os.path.basename(stem)}.{name}.npy"
            np.save(os.path.join(os.path.dirname(stem), file_name), np.ascontiguousarray(array), allow_pickle=False)
            arrays[name] = {"file": file_name, "shape": list(array.shape), "dtype": str(array.dtype)}

        sidecar = {
            "model": map_to_json(self.model),
            "boundary": [spec_to_json(s) for s in self.boundary] if self.boundary else None,
            "arrays": arrays,
        }
        with open(path, "w") as f:
            json.dump(sidecar, f, indent=2)


def load_binary(path: str) -> QuadrantField:
    "Reads a field written by QuadrantField.save_binary."

    with open(path, "r") as f:
        sidecar = json.load(f)

    directory = os.path.dirname(path)
    arrays = {
        name: np.load(os.path.join(directory, entry["file"]), allow_pickle=False)
        for name, entry in sidecar["arrays"].items()
    }
    boundary = None
    if sidecar.get("boundary"):
        boundary = tuple(spec_from_json(s) for s in sidecar["boundary"])
    return QuadrantField(
        map_from_json(sidecar["model"]),
        arrays["X"],
        arrays["U"],
        arrays["V"],
        arrays.get("Z"),
        boundary,
    )


def _scalar(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    return float(value)
