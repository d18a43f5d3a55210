"""
Outcome of a verification and its JSON and CSV forms.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..base import format_extended_real

# significance level of a report unless overridden
DEFAULT_ALPHA = 0.01

CSV_HEADER = ("experiment", "model", "statistic_name", "value", "threshold", "pass", "n", "seed")


@dataclass
class TestReport:
    """
    The outcome of one verification.

    Every check is framed so that smaller is better: a report passes exactly when its statistic
    does not exceed its threshold.

    :param anchor: The statement being checked.
    :param details: Auxiliary values such as sub-test p-values or a KS curve.
    """

    __test__ = False

    name: str
    anchor: str
    model: str
    statistic_name: str
    statistic: float
    threshold: float
    n_samples: int
    seed: int
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.statistic <= self.threshold)

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "model": self.model,
            "statistic_name": self.statistic_name,
            "statistic": _plain(self.statistic),
            "threshold": _plain(self.threshold),
            "pass": self.passed,
            "n_samples": int(self.n_samples),
            "seed": int(self.seed),
            "details": _plain(self.details),
        }

    def to_csv_row(self) -> Tuple:
        return (
            self.name,
            self.model,
            self.statistic_name,
            _plain(self.statistic),
            _plain(self.threshold),
            "true" if self.passed else "false",
            int(self.n_samples),
            int(self.seed),
        )


def _plain(value: Any) -> Any:
    "Converts numpy values and non-finite floats into JSON-compatible values."

    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return None
        return format_extended_real(value)
    return value


def p_value_statistic(p_values: Sequence[float]) -> float:
    "max_i -log10 p_i; a p-value of 0 yields infinity."

    worst = 0.0
    for p in p_values:
        if p <= 0.0:
            return math.inf
        worst = max(worst, -math.log10(min(p, 1.0)))
    return worst


def bonferroni_threshold(alpha: float, k: int) -> float:
    "-log10(alpha / k), the critical value of p_value_statistic over k sub-tests."

    if not (0.0 < alpha < 1.0):
        raise ValueError(f"significance level must lie in (0, 1): {alpha}")
    return -math.log10(alpha / max(k, 1))


def report_from_p_values(
    name: str,
    anchor: str,
    model: str,
    p_values: Dict[str, float],
    alpha: float,
    n_samples: int,
    seed: int,
    details: Optional[Dict[str, Any]] = None,
) -> TestReport:
    "A report over named sub-tests combined with a Bonferroni correction."

    extra = dict(details or {})
    extra["p_values"] = dict(p_values)
    extra["alpha"] = alpha
    return TestReport(
        name,
        anchor,
        model,
        "max_neg_log10_p",
        p_value_statistic(list(p_values.values())),
        bonferroni_threshold(alpha, len(p_values)),
        n_samples,
        seed,
        extra,
    )


def reports_to_json(reports: Sequence[TestReport]) -> List[Dict[str, Any]]:
    return [report.to_json() for report in reports]


def reports_to_csv_rows(reports: Sequence[TestReport]) -> Tuple[Sequence[str], List[Tuple]]:
    return CSV_HEADER, [report.to_csv_row() for report in reports]
