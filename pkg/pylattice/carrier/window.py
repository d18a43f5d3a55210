"""
Finite windows of a lattice configuration, the carrier paths solved on them,
and the space-time fields obtained by repeated evolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..base import CoverageError, InvalidParams, UnsupportedFamily
from ..distributions import DistributionSpec, sample
from ..maps import LocalMap, MapFamily, MapKind
from ..rng import RNGStream

# families whose state space is (0, inf)
POSITIVE_FAMILIES = frozenset([MapFamily.DKDV, MapFamily.DTODA, MapFamily.K_DT, MapFamily.RPE])


@dataclass
class LatticeWindow:
    """
    A finite block of a configuration starting at lattice index `offset`.

    Type I windows hold one value x_n per site. Type II windows hold one pair per
    site, (Q_n, E_n) for udToda and (I_n, J_n) for dToda, as an array of shape (n, 2).
    """

    model: LocalMap
    values: np.ndarray
    offset: int = 0

    def __post_init__(self) -> None:
        kind = self.model.kind
        if kind not in (MapKind.TYPE_I, MapKind.TYPE_II):
            raise UnsupportedFamily(f"windows need a type I or type II map: {self.model}")

        values = np.array(self.values, dtype=float)
        if kind is MapKind.TYPE_II:
            if values.ndim == 1:
                if values.size % 2 != 0:
                    raise InvalidParams(
                        f"type II window needs whole pairs but got {values.size} slots"
                    )
                values = values.reshape(-1, 2)
            if values.ndim != 2 or values.shape[1] != 2:
                raise InvalidParams(f"type II window must have shape (n, 2): {values.shape}")
        elif values.ndim != 1:
            raise InvalidParams(f"type I window must be one-dimensional: {values.shape}")

        if len(values) == 0:
            raise InvalidParams("window is empty")
        if not np.all(np.isfinite(values)):
            raise InvalidParams("window values must be finite")
        if self.model.family in POSITIVE_FAMILIES and np.any(values <= 0):
            raise InvalidParams(f"{self.model.family.value} windows must be positive")

        self.values = values
        self.offset = int(self.offset)

    @property
    def kind(self) -> MapKind:
        return self.model.kind

    def __len__(self) -> int:
        return len(self.values)

    @property
    def end(self) -> int:
        "One past the last lattice index."

        return self.offset + len(self.values)

    def indices(self) -> np.ndarray:
        return np.arange(self.offset, self.end)

    def covers(self, start: int, stop: int) -> bool:
        return self.offset <= start and stop <= self.end

    def crop(self, start: int, stop: int) -> LatticeWindow:
        "The sub-window on lattice indices start <= n < stop."

        if not self.covers(start, stop) or start >= stop:
            raise CoverageError(
                f"window [{self.offset}, {self.end}) does not cover [{start}, {stop})"
            )
        return LatticeWindow(
            self.model, self.values[start - self.offset : stop - self.offset], start
        )

    def reflect(self) -> LatticeWindow:
        """
        The spatial reflection R of the window.

        Type I sites map by n -> -n. Type II slots map by Q_n -> Q_{1-n} and E_n -> E_{-n},
        which keeps each pair (Q_{n+1}, E_n) entering the local map adjacent; one site is lost.
        """

        if self.kind is MapKind.TYPE_I:
            return LatticeWindow(self.model, self.values[::-1], 1 - self.end)

        if len(self) < 2:
            raise CoverageError("reflecting a type II window needs at least two sites")
        q = self.values[1:, 0][::-1]
        e = self.values[:-1, 1][::-1]
        return LatticeWindow(self.model, np.column_stack([q, e]), 2 - self.end)


def window_from_json(model: LocalMap, data: Any, offset: int = 0) -> LatticeWindow:
    "A window from a JSON array of numbers (type I) or of pairs or flat slots (type II)."

    if not isinstance(data, list):
        raise InvalidParams(f"expected a JSON array of window values but got: {data!r}")
    try:
        values = np.array(data, dtype=float)
    except (TypeError, ValueError) as e:
        raise InvalidParams(f"malformed window values: {e}") from e
    return LatticeWindow(model, values, offset)


def sample_window(
    model: LocalMap,
    mu: DistributionSpec,
    size: int,
    rng: RNGStream,
    mu_tilde: Optional[DistributionSpec] = None,
) -> LatticeWindow:
    """
    A window of i.i.d. values starting at index 0.

    Type I sites are drawn from mu. Type II pairs draw the first slot from mu_tilde and the
    second from mu, on child streams 0 and 1.
    """

    if model.kind is MapKind.TYPE_I:
        values = sample(mu, rng.child(0), size)
    else:
        if mu_tilde is None:
            raise InvalidParams(f"a random {model.family.value} window needs mu_tilde")
        values = np.column_stack([sample(mu_tilde, rng.child(0), size), sample(mu, rng.child(1), size)])
    return LatticeWindow(model, values, 0)


@dataclass
class CarrierPath:
    """
    Carrier values u_n for lattice indices offset <= n < offset + len(values).

    :param sync_index: The first index at which the coupled seeds agreed, or None for a path
        computed from a known boundary value.
    :param residual: Largest deviation of the path from its defining recursion.
    """

    offset: int
    values: np.ndarray
    sync_index: Optional[int] = None
    residual: float = 0.0

    def __len__(self) -> int:
        return len(self.values)

    @property
    def end(self) -> int:
        return self.offset + len(self.values)

    def covers(self, start: int, stop: int) -> bool:
        return self.offset <= start and stop <= self.end

    def at(self, start: int, stop: int) -> np.ndarray:
        "Carrier values for lattice indices start <= n < stop."

        if not self.covers(start, stop):
            raise CoverageError(
                f"carrier [{self.offset}, {self.end}) does not cover [{start}, {stop})"
            )
        return self.values[start - self.offset : stop - self.offset]


@dataclass
class SpaceTimeField:
    """
    Configurations x^t and carriers u^t for t = 0, 1, ... as ragged rows.

    Row t of the configuration is windows[t]; carriers[t] is the carrier solved on it, so
    carriers has one row less than windows.
    """

    model: LocalMap
    windows: List[LatticeWindow] = field(default_factory=list)
    carriers: List[CarrierPath] = field(default_factory=list)

    @property
    def t_steps(self) -> int:
        return len(self.carriers)

    def rows(self) -> Iterator[Tuple[int, LatticeWindow, Optional[CarrierPath]]]:
        for t, window in enumerate(self.windows):
            carrier = self.carriers[t] if t < len(self.carriers) else None
            yield t, window, carrier

    def crop(self, start: int, stop: int) -> SpaceTimeField:
        "Restricts every row to lattice indices start <= n < stop."

        windows = [w.crop(start, stop) for w in self.windows]
        carriers = []
        for c in self.carriers:
            lo, hi = max(start, c.offset), min(stop, c.end)
            values = c.at(lo, hi) if lo < hi else np.empty(0)
            carriers.append(CarrierPath(lo, values, c.sync_index, c.residual))
        return SpaceTimeField(self.model, windows, carriers)

    def residual(self) -> float:
        "Largest violation of the local relation over all cells where both sides are known."

        worst = 0.0
        for t in range(self.t_steps):
            current, following, carrier = self.windows[t], self.windows[t + 1], self.carriers[t]
            if self.model.kind is MapKind.TYPE_I:
                lo = max(current.offset, following.offset, carrier.offset + 1)
                hi = min(current.end, following.end, carrier.end)
                if lo >= hi:
                    continue
                x = current.values[lo - current.offset : hi - current.offset]
                u_in = carrier.at(lo - 1, hi - 1)
                y, u_out = self.model(x, u_in)
                worst = max(
                    worst,
                    _max_abs(y - following.values[lo - following.offset : hi - following.offset]),
                    _max_abs(u_out - carrier.at(lo, hi)),
                )
            else:
                lo = max(current.offset, following.offset, carrier.offset)
                hi = min(current.end - 1, following.end, carrier.end - 1)
                if lo >= hi:
                    continue
                q_next = current.values[lo + 1 - current.offset : hi + 1 - current.offset, 0]
                e = current.values[lo - current.offset : hi - current.offset, 1]
                first, second, u_out = self.model(q_next, e, carrier.at(lo, hi))
                out = following.values[lo - following.offset : hi - following.offset]
                worst = max(
                    worst,
                    _max_abs(first - out[:, 0]),
                    _max_abs(second - out[:, 1]),
                    _max_abs(u_out - carrier.at(lo + 1, hi + 1)),
                )
        return worst

    def to_csv_rows(self) -> Tuple[Sequence[str], List[Tuple]]:
        """
        Header and rows of the field in long format.

        Columns are (t, n, x, u) for type I models and (t, n, Q, E, u) for type II models, with
        an empty u where the carrier is not known.
        """

        type_one = self.model.kind is MapKind.TYPE_I
        header = ("t", "n", "x", "u") if type_one else ("t", "n", "Q", "E", "u")
        rows: List[Tuple] = []
        for t, window, carrier in self.rows():
            for k, n in enumerate(window.indices().tolist()):
                u = ""
                if carrier is not None and carrier.offset <= n < carrier.end:
                    u = float(carrier.values[n - carrier.offset])
                if type_one:
                    rows.append((t, n, float(window.values[k]), u))
                else:
                    q, e = window.values[k]
                    rows.append((t, n, float(q), float(e), u))
        return header, rows


def _max_abs(values: Any) -> float:
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return 0.0
    return float(np.max(np.abs(values)))
