"""
Dispatch of validated experiments to the verification and simulation modules.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from ..carrier import default_margin, evolve_multi, sample_window, window_from_json
from ..maps import MapKind
from ..rng import RNGStream
from ..stochastic import QuadrantSetup
from ..timing import timing
from ..verification import (
    TestReport,
    check_burke,
    check_correspondence,
    check_detailed_balance,
    check_detailed_balance_star,
    check_ergodicity_reconstruction,
    check_invariance,
    check_power,
    check_quadrant_stationarity,
    check_ultradiscretization,
)
from .config import Experiment, ExperimentConfig
from .emit import Field


@dataclass
class ExperimentResult:
    "Reports of a verification experiment, or the field of a simulation."

    config: ExperimentConfig
    reports: List[TestReport] = field(default_factory=list)
    artifact: Optional[Field] = None

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)


def _quadrant_setup(config: ExperimentConfig) -> QuadrantSetup:
    return QuadrantSetup(
        config.model,
        config.measures["boundary_x"],
        config.measures["boundary_u"],
        config.measures["bulk"],
    )


def _detailed_balance(config: ExperimentConfig, rng: RNGStream) -> List[TestReport]:
    mu, nu = config.measures["mu"], config.measures["nu"]
    reports = [
        check_detailed_balance(
            config.model, mu, nu, config.mc.samples, rng, alpha=config.test.alpha, bins=config.test.bins
        )
    ]
    if config.test.power_shift is not None:
        reports.append(check_power(config.model, mu, nu, config.test.power_shift, config.mc.seed))
    return reports


def _detailed_balance_star(config: ExperimentConfig, rng: RNGStream) -> List[TestReport]:
    m = config.measures
    return [
        check_detailed_balance_star(
            config.model,
            m["mu"],
            m["nu"],
            m["mu_tilde"],
            m["nu_tilde"],
            config.mc.samples,
            rng,
            alpha=config.test.alpha,
            bins=config.test.bins,
        )
    ]


def _invariance(config: ExperimentConfig, rng: RNGStream) -> List[TestReport]:
    mc = config.mc
    return [
        check_invariance(
            config.model,
            config.measures["mu"],
            mc.window,
            mc.margin if mc.margin is not None else default_margin(mc.window),
            mc.n_fields,
            rng,
            mu_tilde=config.measure("mu_tilde"),
            nu=config.measure("nu"),
            alpha=config.test.alpha,
        )
    ]


def _burke(config: ExperimentConfig, rng: RNGStream) -> List[TestReport]:
    return [
        check_burke(
            config.model,
            config.measures["mu"],
            config.measures["nu"],
            config.mc.window,
            config.mc.time_steps,
            rng,
            config.measure("mu_tilde"),
            config.measure("nu_tilde"),
            alpha=config.test.alpha,
            bins=config.test.bins,
        )
    ]


def _ergodicity(config: ExperimentConfig, rng: RNGStream) -> List[TestReport]:
    return [
        check_ergodicity_reconstruction(
            config.model,
            config.measures["mu"],
            config.measures["nu"],
            config.mc.window,
            config.mc.time_steps,
            rng,
            samples=config.mc.samples,
        )
    ]


def _ultradiscretization(config: ExperimentConfig, rng: RNGStream) -> List[TestReport]:
    params = config.test.params
    return [
        check_ultradiscretization(params["target"], params, config.test.eps_list, config.mc.samples, rng)
    ]


def _correspondence(config: ExperimentConfig, rng: RNGStream) -> List[TestReport]:
    params = config.test.params
    return [check_correspondence(params["side"], params, config.mc.samples, config.test.eps_list, rng)]


def _stochastic_quadrant(config: ExperimentConfig, rng: RNGStream) -> List[TestReport]:
    return [
        check_quadrant_stationarity(
            _quadrant_setup(config),
            config.mc.samples,
            config.mc.window,
            config.mc.time_steps,
            rng,
            alpha=config.test.alpha,
            bins=config.test.bins,
        )
    ]


_CHECKS: Dict[Experiment, Callable[[ExperimentConfig, RNGStream], List[TestReport]]] = {
    Experiment.DETAILED_BALANCE: _detailed_balance,
    Experiment.DETAILED_BALANCE_STAR: _detailed_balance_star,
    Experiment.INVARIANCE: _invariance,
    Experiment.BURKE: _burke,
    Experiment.ERGODICITY_RECONSTRUCTION: _ergodicity,
    Experiment.ULTRADISCRETIZATION: _ultradiscretization,
    Experiment.CORRESPONDENCE: _correspondence,
    Experiment.STOCHASTIC_QUADRANT: _stochastic_quadrant,
}


def simulate(config: ExperimentConfig) -> Field:
    """
    The space-time field of a type I or type II model, or a single filled quadrant.

    A lattice simulation starts from the explicit initial configuration if one is given and
    otherwise from a window of mc.window sites drawn from mu (and mu_tilde); it then runs
    mc.time_steps steps of the carrier dynamics. A quadrant simulation fills mc.window rows and
    mc.time_steps columns.
    """

    rng = RNGStream(config.mc.seed)
    model = config.model
    if model.kind is MapKind.QUADRANT:
        return _quadrant_setup(config).run(config.mc.window, config.mc.time_steps, rng)

    if config.initial is not None:
        window = window_from_json(model, config.initial)
    else:
        window = sample_window(model, config.measures["mu"], config.mc.window, rng, config.measure("mu_tilde"))
    return evolve_multi(window, config.mc.time_steps, margin=config.mc.margin, nu=config.measure("nu"))


@timing
def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    "Runs one experiment from its own master seed."

    logging.debug("running %s on %s", config.experiment.value, config.model)
    if config.experiment is Experiment.SIMULATE:
        return ExperimentResult(config, artifact=simulate(config))

    reports = _CHECKS[config.experiment](config, RNGStream(config.mc.seed))
    for report in reports:
        logging.info(
            "%s %s: %s = %g (threshold %g)",
            report.name,
            report.model,
            report.statistic_name,
            report.statistic,
            report.threshold,
        )
    return ExperimentResult(config, reports)


def run_suite(configs: Sequence[ExperimentConfig], workers: int = 1) -> List[ExperimentResult]:
    """
    Runs independent experiments, possibly on several threads.

    Results are returned in the order of the suite whatever the number of workers.
    """

    if workers <= 1 or len(configs) <= 1:
        return [run_experiment(config) for config in configs]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(run_experiment, configs))
