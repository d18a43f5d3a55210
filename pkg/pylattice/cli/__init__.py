from .config import (
    MEASURE_SLOTS,
    Experiment,
    ExperimentConfig,
    MonteCarloSettings,
    OutputFormat,
    OutputSettings,
    TestSettings,
    config_from_object,
    parse_config,
    parse_suite,
)
from .emit import PlotKind, emit_plot_data, render_field, render_reports, to_csv, write_atomic
from .runner import ExperimentResult, run_experiment, run_suite, simulate
