"""
Plain-text renderings of reports and fields, and atomic output files.
"""

import csv
import enum
import io
import json
import logging
import os
import tempfile
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..base import KindMismatch
from ..carrier import SpaceTimeField
from ..distributions import DistributionSpec, cdf
from ..maps import MapKind
from ..stochastic import QuadrantField
from ..verification import TestReport, reports_to_csv_rows, reports_to_json
from .config import OutputFormat

Field = Union[SpaceTimeField, QuadrantField]


class PlotKind(enum.Enum):
    KS_CURVE = "ks_curve"
    FIELD_HEATMAP = "field_heatmap"
    MARGINAL_HIST = "marginal_hist"


def to_csv(header: Sequence[str], rows: Sequence[Tuple]) -> str:
    "A CSV document with a one-line header."

    with io.StringIO() as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return out.getvalue()


def _ks_curve(source: Any) -> str:
    if not isinstance(source, TestReport) or "ks" not in source.details or "eps" not in source.details:
        raise KindMismatch(f"a KS curve needs a limit report but got {type(source).__name__}")
    eps, ks = source.details["eps"], source.details["ks"]
    return to_csv(("eps", "ks"), [(float(e), float(k)) for e, k in zip(eps, ks)])


def _heatmap_rows(source: Any) -> List[Tuple]:
    if isinstance(source, SpaceTimeField):
        rows = []
        for t, window, _ in source.rows():
            # the first slot of a pair for type II models
            values = window.values if source.model.kind is MapKind.TYPE_I else window.values[:, 0]
            rows.extend((t, int(n), float(v)) for n, v in zip(window.indices().tolist(), values))
        return rows

    if isinstance(source, QuadrantField):
        if source.replicas is not None:
            raise KindMismatch("select a replica before rendering a replicated quadrant")
        values = source.Z[1:, 1:] if source.Z is not None else source.X
        return [
            (m + 1, n + 1, float(values[n, m]))
            for m in range(values.shape[1])
            for n in range(values.shape[0])
        ]

    if isinstance(source, np.ndarray) and source.ndim == 2:
        return [
            (t, n, float(source[t, n]))
            for t in range(source.shape[0])
            for n in range(source.shape[1])
        ]

    raise KindMismatch(f"a heatmap needs a field or a two-dimensional array but got {type(source).__name__}")


def _marginal_hist(source: Any, spec: Optional[DistributionSpec], bins: int) -> str:
    if spec is None:
        raise KindMismatch("a marginal histogram needs the law of the samples")
    if isinstance(source, (TestReport, SpaceTimeField, QuadrantField)):
        raise KindMismatch(f"a marginal histogram needs a sample array but got {type(source).__name__}")

    samples = np.asarray(source, dtype=float).ravel()
    if samples.size == 0:
        raise KindMismatch("a marginal histogram needs at least one sample")
    counts, edges = np.histogram(samples, bins=bins)
    cumulative = np.asarray(cdf(spec, edges), dtype=float)
    # the outer bins take the tails so that expected counts sum to the sample size
    cumulative[0], cumulative[-1] = 0.0, 1.0
    probabilities = np.diff(cumulative)
    expected = samples.size * probabilities
    return to_csv(
        ("bin_left", "bin_right", "count", "expected"),
        [
            (float(edges[i]), float(edges[i + 1]), int(counts[i]), float(expected[i]))
            for i in range(len(counts))
        ],
    )


def emit_plot_data(
    source: Any,
    kind: PlotKind,
    spec: Optional[DistributionSpec] = None,
    bins: int = 32,
) -> str:
    """
    Renders plot-ready data as CSV.

    :param source: A limit report for `ks_curve`; a space-time field, a single quadrant or a
        two-dimensional array for `field_heatmap`; a sample array for `marginal_hist`.
    :param spec: Law of the samples of a marginal histogram.
    :raises KindMismatch: The source does not fit the kind of plot.
    """

    if kind is PlotKind.KS_CURVE:
        return _ks_curve(source)
    if kind is PlotKind.FIELD_HEATMAP:
        return to_csv(("t", "n", "value"), _heatmap_rows(source))
    if kind is PlotKind.MARGINAL_HIST:
        return _marginal_hist(source, spec, bins)
    raise KindMismatch(f"unknown plot kind: {kind}")


def render_reports(reports: Sequence[TestReport], fmt: OutputFormat) -> str:
    if fmt is OutputFormat.CSV:
        header, rows = reports_to_csv_rows(reports)
        return to_csv(header, rows)
    return json.dumps(reports_to_json(reports), indent=2) + "\n"


def render_field(field: Field) -> str:
    header, rows = field.to_csv_rows()
    return to_csv(header, rows)


def write_atomic(path: str, text: str) -> None:
    "Writes a file so that the target path holds either its old content or the complete new content."

    directory = os.path.dirname(os.path.abspath(path))
    handle, temp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as f:
            f.write(text)
            f.flush()
            os.fsync(f.fileno())
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise
    logging.debug("wrote %d characters to %s", len(text), path)
