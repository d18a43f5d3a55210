"""
Fundamental types, error classes and extended-real helpers.
"""

import math
from typing import Any, Optional, Type, TypeVar, Union

import numpy as np

T = TypeVar("T")

INF = math.inf

ArrayLike = Union[float, np.ndarray]


class InvalidParams(ValueError):
    pass


class DomainError(ValueError):
    pass


class InfiniteSupport(ValueError):
    pass


class UnsupportedFamily(TypeError):
    pass


class NotInvertible(TypeError):
    pass


class NotSynchronized(RuntimeError):
    pass


class NotConverged(RuntimeError):
    pass


class UnsupportedRegime(NotImplementedError):
    pass


class CoverageError(IndexError):
    pass


class TooLarge(ValueError):
    pass


class EmptySample(ValueError):
    pass


class TooFewSamples(ValueError):
    pass


class SamplerOverflow(OverflowError):
    pass


class RejectionStarved(RuntimeError):
    pass


class PrecheckFailed(ValueError):
    pass


class KindMismatch(TypeError):
    pass


class ConfigError(ValueError):
    "Raised when an experiment configuration is rejected; names the offending field."

    field: str
    reason: str

    def __init__(self, field: str, reason: str):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason


def cast_if_not_none(typ: Type[T], value: Optional[Any]) -> Optional[T]:
    "Coerces an optional value into the specified type unless the value is None."

    if value is None:
        return None
    else:
        return typ(value)  # type: ignore


def parse_extended_real(value: Any) -> float:
    "Converts a JSON scalar to an extended real, accepting the strings 'inf' and '-inf'."

    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "+inf", "infinity"):
            return INF
        if text in ("-inf", "-infinity"):
            return -INF
        try:
            return float(text)
        except ValueError as e:
            raise ValueError(f"not an extended real: {value!r}") from e
    if isinstance(value, bool):
        raise ValueError(f"not an extended real: {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    raise ValueError(f"not an extended real: {value!r}")


def format_extended_real(value: float) -> Union[float, str]:
    "Inverse of parse_extended_real for JSON output."

    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def positive_part(value: ArrayLike) -> ArrayLike:
    "max{value, 0} with max{x - inf, 0} = 0."

    return np.maximum(value, 0.0)


def relative_error(a: ArrayLike, b: ArrayLike) -> float:
    "Largest elementwise relative deviation max|a-b|/max(1,|a|,|b|)."

    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0:
        return 0.0
    scale = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    return float(np.max(np.abs(a - b) / scale))
