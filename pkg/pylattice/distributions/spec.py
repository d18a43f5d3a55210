"""
Parametric descriptions of the probability laws that appear as invariant
measures, carrier laws and boundary data.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from strong_typing.auxiliary import CompactDataClass
from strong_typing.serialization import json_to_object, object_to_json

from ..base import InvalidParams, format_extended_real, parse_extended_real


class Family(enum.Enum):
    "Distribution family; the value is the name used in JSON documents."

    ST_EXP = "stExp"
    S_EXP = "sExp"
    SSTB_GEO = "sstbGeo"
    SS_GEO = "ssGeo"
    AL = "AL"
    SD_AL = "sdAL"
    GAM = "Gam"
    IG = "IG"
    GIG = "GIG"
    BETA = "Beta"
    QNB = "qNB"
    DIRAC = "Dirac"
    UNIFORM01 = "Uniform01"


CONTINUOUS_FAMILIES = frozenset(
    [
        Family.ST_EXP,
        Family.S_EXP,
        Family.AL,
        Family.GAM,
        Family.IG,
        Family.GIG,
        Family.BETA,
        Family.UNIFORM01,
    ]
)

LATTICE_FAMILIES = frozenset([Family.SSTB_GEO, Family.SS_GEO, Family.SD_AL, Family.QNB])

_REQUIRED: Dict[Family, Tuple[str, ...]] = {
    Family.ST_EXP: ("lambda", "c1", "c2"),
    Family.S_EXP: ("lambda", "c"),
    Family.SSTB_GEO: ("theta", "M", "N"),
    Family.SS_GEO: ("theta",),
    Family.AL: ("lambda1", "lambda2"),
    Family.SD_AL: ("theta1", "theta2"),
    Family.GAM: ("lambda", "c"),
    Family.IG: ("lambda", "c"),
    Family.GIG: ("lambda", "c1", "c2"),
    Family.BETA: ("lambda1", "lambda2"),
    Family.QNB: ("q", "p"),
    Family.DIRAC: ("x",),
    Family.UNIFORM01: (),
}

_DEFAULTS: Dict[Family, Dict[str, float]] = {
    Family.SSTB_GEO: {"kappa": 1.0, "m": 1.0},
    Family.SS_GEO: {"M": 0.0, "m": 1.0},
    Family.SD_AL: {"m": 1.0},
}


@dataclass(frozen=True, repr=False)
class DistributionSpec(CompactDataClass):
    "A distribution family together with its parameters."

    family: Family
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

    def get(self, name: str, default: Optional[float] = None) -> Optional[float]:
        return self.params.get(name, default)

    def key(self) -> Tuple[str, Tuple[Tuple[str, float], ...]]:
        "A hashable identity used for caching derived laws."

        return (self.family.value, tuple(sorted(self.params.items())))

    def __hash__(self) -> int:
        return hash(self.key())

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, DistributionSpec):
            return NotImplemented
        return self.key() == other.key()

    @property
    def is_continuous(self) -> bool:
        return self.family in CONTINUOUS_FAMILIES

    @property
    def is_lattice(self) -> bool:
        return self.family in LATTICE_FAMILIES

    def with_params(self, **changes: float) -> DistributionSpec:
        "A copy of this spec with some parameters replaced."

        params = dict(self.params)
        params.update(changes)
        return DistributionSpec(self.family, params)

    def __str__(self) -> str:
        args = ", ".join(
            f"{name}={format_extended_real(value)}" for name, value in self.params.items()
        )
        return f"{self.family.value}({args})"


def st_exp(lam: float, c1: float, c2: float) -> DistributionSpec:
    return DistributionSpec(Family.ST_EXP, {"lambda": lam, "c1": c1, "c2": c2})


def s_exp(lam: float, c: float) -> DistributionSpec:
    return DistributionSpec(Family.S_EXP, {"lambda": lam, "c": c})


def sstb_geo(
    theta: float, M: int, N: float, kappa: float = 1.0, m: float = 1.0
) -> DistributionSpec:
    return DistributionSpec(
        Family.SSTB_GEO, {"theta": theta, "M": M, "N": N, "kappa": kappa, "m": m}
    )


def ss_geo(theta: float, M: int = 0, m: float = 1.0) -> DistributionSpec:
    return DistributionSpec(Family.SS_GEO, {"theta": theta, "M": M, "m": m})


def asym_laplace(lambda1: float, lambda2: float) -> DistributionSpec:
    return DistributionSpec(Family.AL, {"lambda1": lambda1, "lambda2": lambda2})


def sd_al(theta1: float, theta2: float, m: float = 1.0) -> DistributionSpec:
    return DistributionSpec(Family.SD_AL, {"theta1": theta1, "theta2": theta2, "m": m})


def gamma_law(lam: float, c: float) -> DistributionSpec:
    return DistributionSpec(Family.GAM, {"lambda": lam, "c": c})


def inv_gamma(lam: float, c: float) -> DistributionSpec:
    return DistributionSpec(Family.IG, {"lambda": lam, "c": c})


def gig(lam: float, c1: float, c2: float) -> DistributionSpec:
    return DistributionSpec(Family.GIG, {"lambda": lam, "c1": c1, "c2": c2})


def beta_law(lambda1: float, lambda2: float) -> DistributionSpec:
    return DistributionSpec(Family.BETA, {"lambda1": lambda1, "lambda2": lambda2})


def qnb(q: float, p: float, b: Optional[float] = None, L: Optional[int] = None) -> DistributionSpec:
    "q-negative binomial law qNB(b, p); pass L instead of b for b = q^-L."

    params: Dict[str, float] = {"q": q, "p": p}
    if L is not None:
        params["L"] = L
    elif b is not None:
        params["b"] = b
    else:
        raise InvalidParams("qNB requires either `b` or `L`")
    return DistributionSpec(Family.QNB, params)


def dirac(x: float) -> DistributionSpec:
    return DistributionSpec(Family.DIRAC, {"x": x})


def uniform01() -> DistributionSpec:
    return DistributionSpec(Family.UNIFORM01, {})


def _is_integer(value: float) -> bool:
    return math.isfinite(value) and float(value).is_integer()


def _require(condition: bool, spec: DistributionSpec, reason: str) -> None:
    if not condition:
        raise InvalidParams(f"invalid parameters for {spec}: {reason}")


def qnb_bound(spec: DistributionSpec) -> Optional[int]:
    "The largest support point of a finitely supported qNB law, or None for support on all of Z+."

    if "L" in spec.params:
        return int(spec["L"])
    q, p, b = spec["q"], spec["p"], spec["b"]
    if p < 0 and b > 1 and 0 < q < 1:
        L = -math.log(b) / math.log(q)
        rounded = round(L)
        if abs(L - rounded) <= 1e-9 * max(1.0, abs(L)):
            return int(rounded)
    return None


def qnb_b(spec: DistributionSpec) -> float:
    "The parameter b of a qNB law, resolving the L parameterization."

    if "L" in spec.params:
        return spec["q"] ** (-spec["L"])
    return spec["b"]


def validate(spec: DistributionSpec) -> DistributionSpec:
    "Checks parameter domains; returns the spec unchanged or raises InvalidParams."

    for name in _REQUIRED[spec.family]:
        if name not in spec.params:
            raise InvalidParams(f"{spec.family.value} is missing parameter `{name}`")
    for name, value in spec.params.items():
        _require(not math.isnan(value), spec, f"`{name}` is NaN")

    family = spec.family
    if family is Family.ST_EXP:
        lam, c1, c2 = spec["lambda"], spec["c1"], spec["c2"]
        _require(math.isfinite(lam), spec, "lambda must be finite")
        _require(math.isfinite(c1), spec, "c1 must be finite")
        _require(c1 < c2, spec, "c1 < c2 required")
        if math.isinf(c2):
            _require(lam > 0, spec, "lambda > 0 required when c2 is infinite")
    elif family is Family.S_EXP:
        _require(0 < spec["lambda"] < math.inf, spec, "lambda > 0 required")
        _require(math.isfinite(spec["c"]), spec, "c must be finite")
    elif family in (Family.SSTB_GEO, Family.SS_GEO):
        theta, M = spec["theta"], spec["M"]
        N = spec.get("N", math.inf) if family is Family.SSTB_GEO else math.inf
        kappa = spec.get("kappa", 1.0)
        _require(theta > 0, spec, "theta > 0 required")
        _require(_is_integer(M), spec, "M must be an integer")
        _require(math.isinf(N) and N > 0 or _is_integer(N), spec, "N must be an integer or inf")
        _require(M <= N, spec, "M <= N required")
        _require(kappa > 0, spec, "kappa > 0 required")
        _require(spec["m"] > 0, spec, "m > 0 required")
        if math.isinf(N):
            _require(theta < 1, spec, "theta < 1 required when N is infinite")
    elif family is Family.AL or family is Family.BETA:
        _require(spec["lambda1"] > 0, spec, "lambda1 > 0 required")
        _require(spec["lambda2"] > 0, spec, "lambda2 > 0 required")
    elif family is Family.SD_AL:
        _require(0 < spec["theta1"] < 1, spec, "theta1 in (0,1) required")
        _require(0 < spec["theta2"] < 1, spec, "theta2 in (0,1) required")
        _require(spec["m"] > 0, spec, "m > 0 required")
    elif family in (Family.GAM, Family.IG):
        _require(0 < spec["lambda"] < math.inf, spec, "lambda > 0 required")
        _require(0 < spec["c"] < math.inf, spec, "c > 0 required")
    elif family is Family.GIG:
        lam, c1, c2 = spec["lambda"], spec["c1"], spec["c2"]
        _require(math.isfinite(lam), spec, "lambda must be finite")
        _require(0 <= c1 < math.inf, spec, "c1 >= 0 required")
        _require(0 < c2 < math.inf, spec, "c2 > 0 required")
        if c1 == 0:
            _require(lam > 0, spec, "GIG(lambda,0,c) = IG(lambda,c) requires lambda > 0")
    elif family is Family.QNB:
        q, p = spec["q"], spec["p"]
        _require(0 <= q < 1, spec, "q in [0,1) required")
        _require("b" in spec.params or "L" in spec.params, spec, "`b` or `L` required")
        if "L" in spec.params:
            _require(_is_integer(spec["L"]) and spec["L"] >= 0, spec, "L must be a nonnegative integer")
            _require(0 < q, spec, "q > 0 required with L")
            _require(p < 0, spec, "p < 0 required with b = q^-L")
        elif p < 0:
            _require(qnb_bound(spec) is not None, spec, "p < 0 requires b = q^-L")
        else:
            _require(0 <= p < 1, spec, "p in [0,1) required")
            _require(0 <= spec["b"] < 1, spec, "b in [0,1) required")
    elif family is Family.DIRAC:
        _require(math.isfinite(spec["x"]), spec, "x must be finite")

    return spec


def spec_from_json(data: Dict[str, Any]) -> DistributionSpec:
    "Parses a JSON object {'family': ..., 'params': {...}} into a validated spec."

    if not isinstance(data, dict):
        raise InvalidParams(f"expected a JSON object for a distribution but got: {data!r}")
    try:
        family = json_to_object(Family, data.get("family"))
        params = json_to_object(
            Dict[str, float],
            {
                name: parse_extended_real(value)
                for name, value in (data.get("params") or {}).items()
            },
        )
    except Exception as e:
        raise InvalidParams(f"malformed distribution {data!r}: {e}") from e
    return validate(DistributionSpec(family, params))


def spec_to_json(spec: DistributionSpec) -> Dict[str, Any]:
    data = object_to_json(spec)
    data["params"] = {
        name: format_extended_real(value) for name, value in spec.params.items()
    }
    return data
