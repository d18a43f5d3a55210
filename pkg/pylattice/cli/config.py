"""
Experiment configuration documents and their validation.

A configuration is a JSON object naming an experiment, the local map it runs on, the laws
filling its measure slots, Monte Carlo sizes, test settings and output options. A suite is a
JSON array of configurations or an object with an `experiments` array.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple, Type, TypeVar

from strong_typing.auxiliary import CompactDataClass
from strong_typing.serialization import json_to_object

from ..base import ConfigError, parse_extended_real
from ..distributions import DistributionSpec, spec_from_json
from ..maps import LocalMap, MapFamily, MapKind, map_from_json
from ..verification import DEFAULT_ALPHA, DEFAULT_EPS, CorrespondenceSide, LimitTarget

T = TypeVar("T")


class Experiment(enum.Enum):
    "Kind of experiment; the value is the name used in configuration documents."

    DETAILED_BALANCE = "detailed_balance"
    DETAILED_BALANCE_STAR = "detailed_balance_star"
    INVARIANCE = "invariance"
    BURKE = "burke"
    ERGODICITY_RECONSTRUCTION = "ergodicity_reconstruction"
    ULTRADISCRETIZATION = "ultradiscretization"
    CORRESPONDENCE = "correspondence"
    STOCHASTIC_QUADRANT = "stochastic_quadrant"
    SIMULATE = "simulate"


class OutputFormat(enum.Enum):
    JSON = "json"
    CSV = "csv"


MEASURE_SLOTS = ("mu", "nu", "mu_tilde", "nu_tilde", "boundary_x", "boundary_u", "bulk")

# experiments that run without a local map
LIMIT_EXPERIMENTS = frozenset([Experiment.ULTRADISCRETIZATION, Experiment.CORRESPONDENCE])

_MODEL_KINDS: Dict[Experiment, FrozenSet[MapKind]] = {
    Experiment.DETAILED_BALANCE: frozenset([MapKind.TYPE_I]),
    Experiment.DETAILED_BALANCE_STAR: frozenset([MapKind.STAR]),
    Experiment.INVARIANCE: frozenset([MapKind.TYPE_I, MapKind.TYPE_II]),
    Experiment.BURKE: frozenset([MapKind.TYPE_I, MapKind.TYPE_II, MapKind.STAR]),
    Experiment.ERGODICITY_RECONSTRUCTION: frozenset([MapKind.TYPE_I]),
    Experiment.STOCHASTIC_QUADRANT: frozenset([MapKind.QUADRANT]),
    Experiment.SIMULATE: frozenset([MapKind.TYPE_I, MapKind.TYPE_II, MapKind.QUADRANT]),
}

_QUADRANT_SLOTS = ("boundary_x", "boundary_u", "bulk")


@dataclass(frozen=True, repr=False)
class MonteCarloSettings(CompactDataClass):
    """
    Sizes of a Monte Carlo experiment.

    :param seed: Master seed of all random streams of the experiment.
    :param samples: Sample count, replica count or number of reconstructions.
    :param window: Window width, or the number of rows of a quadrant.
    :param margin: Erosion margin of window evolution; max(256, window / 8) if unset.
    :param time_steps: Number of time steps, or the number of columns of a quadrant.
    """

    seed: int
    samples: int = 100000
    window: int = 4096
    margin: Optional[int] = None
    time_steps: int = 512
    n_fields: int = 32


@dataclass(frozen=True, repr=False)
class TestSettings(CompactDataClass):
    """
    Settings of the statistical tests.

    :param power_shift: When set, a detailed balance experiment also reports the total variation
        after shifting theta of mu by this amount.
    :param params: Parameters of limit experiments, such as lambda, c, L, target or side.
    """

    __test__ = False

    alpha: float = DEFAULT_ALPHA
    bins: int = 8
    eps_list: Tuple[float, ...] = DEFAULT_EPS
    power_shift: Optional[float] = None
    params: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True, repr=False)
class OutputSettings(CompactDataClass):
    path: Optional[str] = None
    format: OutputFormat = OutputFormat.JSON


@dataclass(frozen=True, repr=False)
class ExperimentConfig(CompactDataClass):
    """
    A validated experiment.

    :param initial: Explicit initial configuration of a simulation, used instead of drawing one
        from mu.
    """

    experiment: Experiment
    model: Optional[LocalMap]
    measures: Dict[str, DistributionSpec]
    mc: MonteCarloSettings
    test: TestSettings = field(default_factory=TestSettings)
    output: OutputSettings = field(default_factory=OutputSettings)
    initial: Optional[List[Any]] = None

    def measure(self, slot: str) -> Optional[DistributionSpec]:
        return self.measures.get(slot)


def _object(data: Any, where: str) -> Dict[str, Any]:
    if not isinstance(data, dict):
        raise ConfigError(where, "expected a JSON object")
    return data


def _known_keys(data: Dict[str, Any], where: str, allowed: Tuple[str, ...]) -> None:
    for key in data:
        if key not in allowed:
            raise ConfigError(f"{where}.{key}" if where else key, "unknown field")


def _typed(typ: Type[T], data: Any, where: str) -> T:
    try:
        return json_to_object(typ, data)
    except ConfigError:
        raise
    except Exception as e:
        raise ConfigError(where, f"malformed value {data!r}: {e}") from e


def _require_positive(value: int, where: str) -> None:
    if value < 1:
        raise ConfigError(where, f"must be positive but is {value}")


def _parse_mc(data: Any) -> MonteCarloSettings:
    data = _object(data, "mc")
    _known_keys(data, "mc", ("seed", "samples", "window", "margin", "time_steps", "n_fields"))
    if data.get("seed") is None:
        raise ConfigError("mc.seed", "required")
    seed = data["seed"]
    if isinstance(seed, bool) or not isinstance(seed, int) or not (0 <= seed < 2**64):
        raise ConfigError("mc.seed", f"must be a 64-bit unsigned integer but is {seed!r}")

    mc = MonteCarloSettings(
        **{name: _typed(int, value, f"mc.{name}") for name, value in data.items() if value is not None}
    )
    for name in ("samples", "window", "time_steps", "n_fields"):
        _require_positive(getattr(mc, name), f"mc.{name}")
    if mc.margin is not None and mc.margin < 0:
        raise ConfigError("mc.margin", f"must be nonnegative but is {mc.margin}")
    return mc


def _parse_test(data: Any) -> TestSettings:
    data = _object(data, "test")
    _known_keys(data, "test", ("alpha", "bins", "eps_list", "power_shift", "params"))

    alpha = _typed(float, data.get("alpha", DEFAULT_ALPHA), "test.alpha")
    if not 0.0 < alpha < 1.0:
        raise ConfigError("test.alpha", f"must lie in (0, 1) but is {alpha}")
    bins = _typed(int, data.get("bins", 8), "test.bins")
    if bins < 2:
        raise ConfigError("test.bins", f"at least 2 bins required but got {bins}")

    eps_list = DEFAULT_EPS
    if "eps_list" in data:
        eps_list = tuple(_typed(List[float], data["eps_list"], "test.eps_list"))
        if not eps_list:
            raise ConfigError("test.eps_list", "must not be empty")
        if any(not eps > 0 for eps in eps_list):
            raise ConfigError("test.eps_list", "values must be positive")
        if any(b > a for a, b in zip(eps_list, eps_list[1:])):
            raise ConfigError("test.eps_list", "values must be nonincreasing")

    power_shift = None
    if data.get("power_shift") is not None:
        power_shift = _typed(float, data["power_shift"], "test.power_shift")

    params: Dict[str, Any] = {}
    for name, value in _object(data.get("params") or {}, "test.params").items():
        if name == "target":
            params[name] = _typed(LimitTarget, value, "test.params.target")
        elif name == "side":
            params[name] = _typed(CorrespondenceSide, value, "test.params.side")
        else:
            try:
                params[name] = parse_extended_real(value)
            except ValueError as e:
                raise ConfigError(f"test.params.{name}", str(e)) from e

    return TestSettings(alpha, bins, eps_list, power_shift, params)


def _parse_output(data: Any) -> OutputSettings:
    data = _object(data, "output")
    _known_keys(data, "output", ("path", "format"))
    path = _typed(Optional[str], data.get("path"), "output.path")
    fmt = _typed(OutputFormat, data.get("format", OutputFormat.JSON.value), "output.format")
    return OutputSettings(path, fmt)


def _parse_measures(data: Any) -> Dict[str, DistributionSpec]:
    measures: Dict[str, DistributionSpec] = {}
    for slot, value in _object(data, "measures").items():
        if slot not in MEASURE_SLOTS:
            raise ConfigError(f"measures.{slot}", f"unknown slot; expected one of {', '.join(MEASURE_SLOTS)}")
        try:
            measures[slot] = spec_from_json(value)
        except ValueError as e:
            raise ConfigError(f"measures.{slot}", str(e)) from e
    return measures


def _required_slots(experiment: Experiment, model: LocalMap, has_initial: bool) -> Tuple[str, ...]:
    kind = model.kind
    if experiment is Experiment.DETAILED_BALANCE:
        return ("mu", "nu")
    if experiment is Experiment.DETAILED_BALANCE_STAR:
        return ("mu", "nu", "mu_tilde", "nu_tilde")
    if experiment is Experiment.INVARIANCE:
        return ("mu",) if kind is MapKind.TYPE_I else ("mu", "mu_tilde")
    if experiment is Experiment.BURKE:
        return ("mu", "nu") if kind is MapKind.TYPE_I else ("mu", "nu", "mu_tilde", "nu_tilde")
    if experiment is Experiment.ERGODICITY_RECONSTRUCTION:
        return ("mu", "nu")
    if experiment is Experiment.STOCHASTIC_QUADRANT or kind is MapKind.QUADRANT:
        return _QUADRANT_SLOTS
    if has_initial:
        return ()
    return ("mu",) if kind is MapKind.TYPE_I else ("mu", "mu_tilde")


def _check_model(experiment: Experiment, model: LocalMap) -> None:
    allowed = _MODEL_KINDS[experiment]
    if model.kind not in allowed:
        names = ", ".join(sorted(k.value for k in allowed))
        raise ConfigError(
            "model.family",
            f"{experiment.value} needs a map of kind {names} but {model.family.value} is {model.kind.value}",
        )

    if model.family is MapFamily.DKDV and experiment in (
        Experiment.INVARIANCE,
        Experiment.ERGODICITY_RECONSTRUCTION,
        Experiment.SIMULATE,
    ):
        alpha, beta = model["alpha"], model["beta"]
        if not (alpha * beta == 0 or alpha == beta):
            raise ConfigError("model.params", f"{experiment.value} with dKdV needs alpha * beta = 0 or alpha = beta")


def _check_limit_params(experiment: Experiment, params: Dict[str, Any]) -> None:
    if experiment is Experiment.ULTRADISCRETIZATION:
        required = ["target", "lambda", "c"]
        if params.get("target") is LimitTarget.ST_EXP_FROM_GIG:
            required.append("L")
    else:
        required = ["side", "lambda1", "lambda2", "c"]
    for name in required:
        if name not in params:
            raise ConfigError(f"test.params.{name}", "required")
    for name, value in params.items():
        if isinstance(value, float) and math.isnan(value):
            raise ConfigError(f"test.params.{name}", "must not be NaN")


def config_from_object(data: Any) -> ExperimentConfig:
    "Validates a decoded JSON configuration object."

    data = _object(data, "config")
    _known_keys(data, "", ("experiment", "model", "measures", "mc", "test", "output", "initial"))

    if "experiment" not in data:
        raise ConfigError("experiment", "required")
    experiment = _typed(Experiment, data["experiment"], "experiment")
    if "mc" not in data:
        raise ConfigError("mc.seed", "required")
    mc = _parse_mc(data["mc"])
    test = _parse_test(data.get("test") or {})
    output = _parse_output(data.get("output") or {})
    measures = _parse_measures(data.get("measures") or {})

    initial = data.get("initial")
    if initial is not None:
        if experiment is not Experiment.SIMULATE:
            raise ConfigError("initial", "only a simulate experiment takes an initial configuration")
        if not isinstance(initial, list) or not initial:
            raise ConfigError("initial", "expected a nonempty JSON array")

    model = None
    if experiment in LIMIT_EXPERIMENTS:
        _check_limit_params(experiment, test.params)
    else:
        if data.get("model") is None:
            raise ConfigError("model", "required")
        try:
            model = map_from_json(data["model"])
        except ValueError as e:
            raise ConfigError("model", str(e)) from e
        _check_model(experiment, model)
        if initial is not None and model.kind is MapKind.QUADRANT:
            raise ConfigError("initial", "quadrant simulations are driven by their boundary laws")
        for slot in _required_slots(experiment, model, initial is not None):
            if slot not in measures:
                raise ConfigError(f"measures.{slot}", "required")
        if test.power_shift is not None:
            if experiment is not Experiment.DETAILED_BALANCE:
                raise ConfigError("test.power_shift", "only a detailed_balance experiment has a power check")
            if "theta" not in measures["mu"].params:
                raise ConfigError("test.power_shift", "mu has no ratio parameter theta to perturb")

    return ExperimentConfig(experiment, model, measures, mc, test, output, initial)


def _decode(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError("config", f"malformed JSON: {e}") from e


def parse_config(text: str) -> ExperimentConfig:
    "Parses and validates a single experiment configuration."

    return config_from_object(_decode(text))


def parse_suite(text: str) -> List[ExperimentConfig]:
    """
    Parses a suite: a JSON array of configurations, an object with an `experiments` array, or a
    single configuration object.

    :raises ConfigError: Some configuration is invalid; the field is prefixed with its position.
    """

    data = _decode(text)
    if isinstance(data, dict) and "experiments" in data:
        _known_keys(data, "", ("experiments",))
        items = data["experiments"]
        prefix = "experiments"
    elif isinstance(data, list):
        items = data
        prefix = ""
    else:
        return [config_from_object(data)]

    if not isinstance(items, list) or not items:
        raise ConfigError(prefix or "config", "expected a nonempty JSON array of experiments")
    configs = []
    for index, item in enumerate(items):
        try:
            configs.append(config_from_object(item))
        except ConfigError as e:
            raise ConfigError(f"{prefix}[{index}].{e.field}", e.reason) from e
    return configs
