"""
Tagged descriptions of the local lattice maps and their parameters.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

from strong_typing.auxiliary import CompactDataClass
from strong_typing.serialization import json_to_object, object_to_json

from ..base import InvalidParams, NotInvertible, format_extended_real, parse_extended_real


class MapFamily(enum.Enum):
    "Family of a local map; the value is the name used in JSON documents."

    UDKDV = "udKdV"
    DKDV = "dKdV"
    UDTODA_STAR = "udTodaStar"
    UDTODA = "udToda"
    DTODA_STAR = "dTodaStar"
    DTODA = "dToda"
    RPE_STAR = "RPeStar"
    RPE = "RPe"
    K_UDT = "K_udT"
    K_DT = "K_dT"
    R_DLPP = "R_DLPP"
    R_RPS = "R_RPs"
    R_RPE = "R_RPe"
    R_HSV = "R_HSV"


class MapKind(enum.Enum):
    "Role of a map in a lattice model."

    TYPE_I = "typeI"
    TYPE_II = "typeII"
    STAR = "star"
    QUADRANT = "quadrant"


_KINDS: Dict[MapFamily, MapKind] = {
    MapFamily.UDKDV: MapKind.TYPE_I,
    MapFamily.DKDV: MapKind.TYPE_I,
    MapFamily.K_UDT: MapKind.TYPE_I,
    MapFamily.K_DT: MapKind.TYPE_I,
    MapFamily.UDTODA: MapKind.TYPE_II,
    MapFamily.DTODA: MapKind.TYPE_II,
    MapFamily.RPE: MapKind.TYPE_II,
    MapFamily.UDTODA_STAR: MapKind.STAR,
    MapFamily.DTODA_STAR: MapKind.STAR,
    MapFamily.RPE_STAR: MapKind.STAR,
    MapFamily.R_DLPP: MapKind.QUADRANT,
    MapFamily.R_RPS: MapKind.QUADRANT,
    MapFamily.R_RPE: MapKind.QUADRANT,
    MapFamily.R_HSV: MapKind.QUADRANT,
}

# number of arguments taken by maps of each kind
ARITY: Dict[MapKind, int] = {
    MapKind.TYPE_I: 2,
    MapKind.TYPE_II: 3,
    MapKind.STAR: 2,
    MapKind.QUADRANT: 3,
}

_DEFAULTS: Dict[MapFamily, Dict[str, float]] = {
    MapFamily.UDKDV: {"J": math.inf, "K": math.inf},
    MapFamily.DKDV: {"alpha": 0.0, "beta": 0.0},
    MapFamily.R_HSV: {"J_spin": 1.0},
}

_REQUIRED: Dict[MapFamily, Tuple[str, ...]] = {
    MapFamily.RPE_STAR: ("A", "B"),
    MapFamily.RPE: ("A", "B"),
    MapFamily.R_RPE: ("A", "B"),
    MapFamily.R_HSV: ("alpha", "nu", "q"),
}

# star families paired with the three-point map their involution builds
THREE_POINT_FAMILY: Dict[MapFamily, MapFamily] = {
    MapFamily.UDTODA_STAR: MapFamily.UDTODA,
    MapFamily.DTODA_STAR: MapFamily.DTODA,
    MapFamily.RPE_STAR: MapFamily.RPE,
}

Evaluator = Callable[..., Tuple[Any, ...]]

# filled in by the modules that implement the families
_EVALUATORS: Dict[MapFamily, Evaluator] = {}
_INVERSES: Dict[MapFamily, Evaluator] = {}


def register(family: MapFamily, evaluate: Evaluator, inverse: Optional[Evaluator] = None) -> None:
    "Registers the evaluation (and optional inverse) of a map family; callables take (params, *args)."

    _EVALUATORS[family] = evaluate
    if inverse is not None:
        _INVERSES[family] = inverse


@dataclass(frozen=True, repr=False)
class LocalMap(CompactDataClass):
    "A local lattice map together with its parameters."

    family: MapFamily
    params: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        merged = dict(_DEFAULTS.get(self.family, {}))
        for name, value in self.params.items():
            merged[name] = parse_extended_real(value)
        object.__setattr__(self, "params", merged)

    def __getitem__(self, name: str) -> float:
        try:
            return self.params[name]
        except KeyError:
            raise InvalidParams(
                f"{self.family.value} is missing parameter `{name}`"
            ) from None

    def key(self) -> Tuple[str, Tuple[Tuple[str, float], ...]]:
        return (self.family.value, tuple(sorted(self.params.items())))

    def __hash__(self) -> int:
        return hash(self.key())

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, LocalMap):
            return NotImplemented
        return self.key() == other.key()

    @property
    def kind(self) -> MapKind:
        return _KINDS[self.family]

    @property
    def arity(self) -> int:
        return ARITY[self.kind]

    @property
    def has_inverse(self) -> bool:
        return self.family in _INVERSES

    def __call__(self, *args):
        "Evaluates the map elementwise on scalars or numpy arrays."

        if len(args) != self.arity:
            raise TypeError(
                f"{self.family.value} takes {self.arity} arguments but {len(args)} were given"
            )
        return _EVALUATORS[self.family](self.params, *args)

    def inverse(self, *args):
        "Evaluates the registered inverse of a star map."

        inverse = _INVERSES.get(self.family)
        if inverse is None:
            raise NotInvertible(f"no inverse registered for {self.family.value}")
        return inverse(self.params, *args)

    def with_params(self, **changes: float) -> LocalMap:
        params = dict(self.params)
        params.update(changes)
        return LocalMap(self.family, params)

    def __str__(self) -> str:
        args = ", ".join(
            f"{name}={format_extended_real(value)}" for name, value in self.params.items()
        )
        return f"{self.family.value}({args})"


def udkdv(J: float = math.inf, K: float = math.inf) -> LocalMap:
    return LocalMap(MapFamily.UDKDV, {"J": J, "K": K})


def dkdv(alpha: float, beta: float) -> LocalMap:
    return LocalMap(MapFamily.DKDV, {"alpha": alpha, "beta": beta})


def rpe_star(A: float, B: float) -> LocalMap:
    "Star map of the edge polymer with h(x) = Ax + B."

    return LocalMap(MapFamily.RPE_STAR, {"A": A, "B": B})


def rpe_kernel(A: float, B: float) -> LocalMap:
    return LocalMap(MapFamily.R_RPE, {"A": A, "B": B})


def hsv_kernel(alpha: float, nu: float, q: float) -> LocalMap:
    return LocalMap(MapFamily.R_HSV, {"alpha": alpha, "nu": nu, "q": q})


def plain(family: MapFamily) -> LocalMap:
    "A map family without parameters."

    return LocalMap(family, {})


def _require(condition: bool, local_map: LocalMap, reason: str) -> None:
    if not condition:
        raise InvalidParams(f"invalid parameters for {local_map}: {reason}")


def validate_map(local_map: LocalMap) -> LocalMap:
    "Checks parameter domains; returns the map unchanged or raises InvalidParams."

    for name in _REQUIRED.get(local_map.family, ()):
        if name not in local_map.params:
            raise InvalidParams(f"{local_map.family.value} is missing parameter `{name}`")
    for name, value in local_map.params.items():
        _require(not math.isnan(value), local_map, f"`{name}` is NaN")

    family = local_map.family
    if family is MapFamily.UDKDV:
        _require(local_map["J"] > -math.inf, local_map, "J must not be -inf")
        _require(local_map["K"] > -math.inf, local_map, "K must not be -inf")
    elif family is MapFamily.DKDV:
        for name in ("alpha", "beta"):
            _require(0 <= local_map[name] < math.inf, local_map, f"{name} >= 0 required")
    elif family in (MapFamily.RPE_STAR, MapFamily.RPE, MapFamily.R_RPE):
        A, B = local_map["A"], local_map["B"]
        _require(math.isfinite(A) and math.isfinite(B), local_map, "A, B must be finite")
        _require(max(A, B) > 0, local_map, "max{A, B} > 0 required")
    elif family is MapFamily.R_HSV:
        _require(0 <= local_map["alpha"] < math.inf, local_map, "alpha >= 0 required")
        _require(0 <= local_map["nu"] < 1, local_map, "nu in [0,1) required")
        _require(0 <= local_map["q"] < 1, local_map, "q in [0,1) required")
        _require(local_map["J_spin"] == 1, local_map, "only J_spin = 1 has a kernel")
    return local_map


def map_from_json(data: Dict[str, Any]) -> LocalMap:
    "Parses a JSON object {'family': ..., 'params': {...}} into a validated map."

    if not isinstance(data, dict):
        raise InvalidParams(f"expected a JSON object for a map but got: {data!r}")
    try:
        family = json_to_object(MapFamily, data.get("family"))
        params = json_to_object(
            Dict[str, float],
            {
                name: parse_extended_real(value)
                for name, value in (data.get("params") or {}).items()
            },
        )
    except Exception as e:
        raise InvalidParams(f"malformed map {data!r}: {e}") from e
    return validate_map(LocalMap(family, params))


def map_to_json(local_map: LocalMap) -> Dict[str, Any]:
    data = object_to_json(local_map)
    data["params"] = {
        name: format_extended_real(value) for name, value in local_map.params.items()
    }
    return data
