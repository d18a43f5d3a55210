import copy
import json
import math
import os.path
import unittest

import pylattice
from pylattice.base import ConfigError
from pylattice.cli import Experiment, OutputFormat, parse_config, parse_suite
from pylattice.distributions import st_exp
from pylattice.maps import MapFamily, udkdv
from pylattice.verification import DEFAULT_EPS, LimitTarget

from tests.lattice_test_case import LatticeTestCase

MINIMAL = {
    "experiment": "detailed_balance",
    "model": {"family": "udKdV", "params": {"J": 1, "K": 2}},
    "measures": {
        "mu": {"family": "stExp", "params": {"lambda": 1, "c1": 0, "c2": 1}},
        "nu": {"family": "stExp", "params": {"lambda": 1, "c1": 0, "c2": 2}},
    },
    "mc": {"seed": 7, "samples": 1000},
}


def document(**changes) -> dict:
    data = copy.deepcopy(MINIMAL)
    data.update(changes)
    return data


class TestParseConfig(LatticeTestCase):
    def assertConfigError(self, data, field: str, reason: str = None):
        text = data if isinstance(data, str) else json.dumps(data)
        with self.assertRaises(ConfigError) as cm:
            parse_config(text)
        self.assertEqual(cm.exception.field, field)
        if reason is not None:
            self.assertEqual(cm.exception.reason, reason)

    def test_minimal(self):
        config = parse_config(json.dumps(MINIMAL))
        self.assertEqual(config.experiment, Experiment.DETAILED_BALANCE)
        self.assertEqual(config.model, udkdv(1, 2))
        self.assertEqual(config.measures["mu"], st_exp(1.0, 0.0, 1.0))
        self.assertEqual(config.mc.seed, 7)
        self.assertEqual(config.mc.samples, 1000)
        self.assertEqual(config.mc.window, 4096)
        self.assertIsNone(config.mc.margin)
        self.assertEqual(config.test.alpha, 0.01)
        self.assertEqual(config.test.eps_list, DEFAULT_EPS)
        self.assertEqual(config.output.format, OutputFormat.JSON)
        self.assertIsNone(config.output.path)

    def test_extended_reals(self):
        data = document(model={"family": "udKdV", "params": {"J": 1, "K": "inf"}})
        data["measures"]["nu"] = {"family": "stExp", "params": {"lambda": 1, "c1": 0, "c2": "inf"}}
        config = parse_config(json.dumps(data))
        self.assertEqual(config.model["K"], math.inf)
        self.assertEqual(config.measures["nu"]["c2"], math.inf)

    def test_missing_seed(self):
        self.assertConfigError(document(mc={"samples": 10}), "mc.seed", "required")
        data = document()
        del data["mc"]
        self.assertConfigError(data, "mc.seed", "required")
        self.assertConfigError(document(mc={"seed": -1}), "mc.seed")
        self.assertConfigError(document(mc={"seed": 1.5}), "mc.seed")

    def test_margin(self):
        self.assertEqual(parse_config(json.dumps(document(mc={"seed": 1, "margin": 64}))).mc.margin, 64)
        self.assertIsNone(parse_config(json.dumps(document(mc={"seed": 1, "margin": None}))).mc.margin)
        self.assertConfigError(document(mc={"seed": 1, "margin": -1}), "mc.margin")

    def test_invariance_dkdv(self):
        measures = {"mu": {"family": "GIG", "params": {"lambda": 1, "c1": 1, "c2": 1}}}
        config = parse_config(
            json.dumps(
                document(
                    experiment="invariance",
                    model={"family": "dKdV", "params": {"alpha": 1, "beta": 1}},
                    measures=measures,
                )
            )
        )
        self.assertEqual(config.model.family, MapFamily.DKDV)
        self.assertConfigError(
            document(
                experiment="invariance",
                model={"family": "dKdV", "params": {"alpha": 1, "beta": 2}},
                measures=measures,
            ),
            "model.params",
        )

    def test_model_kind(self):
        self.assertConfigError(document(model={"family": "udToda"}), "model.family")
        self.assertConfigError(document(model=None), "model", "required")
        self.assertConfigError(document(model={"family": "noSuchMap"}), "model")

    def test_measures(self):
        data = document()
        del data["measures"]["nu"]
        self.assertConfigError(data, "measures.nu", "required")
        data = document()
        data["measures"]["rho"] = data["measures"]["mu"]
        self.assertConfigError(data, "measures.rho")
        data = document()
        data["measures"]["mu"] = {"family": "stExp", "params": {"lambda": 1, "c1": 2, "c2": 1}}
        self.assertConfigError(data, "measures.mu")

    def test_test_settings(self):
        self.assertConfigError(document(test={"alpha": 1.5}), "test.alpha")
        self.assertConfigError(document(test={"bins": 1}), "test.bins")
        self.assertConfigError(document(test={"eps_list": [0.1, 0.2]}), "test.eps_list")
        self.assertConfigError(document(test={"eps_list": []}), "test.eps_list")
        self.assertConfigError(document(test={"power_shift": 0.1}), "test.power_shift")
        self.assertConfigError(document(test={"sigma": 1}), "test.sigma", "unknown field")

    def test_unknown_fields(self):
        self.assertConfigError(document(extra=1), "extra", "unknown field")
        self.assertConfigError(document(mc={"seed": 1, "steps": 3}), "mc.steps", "unknown field")
        self.assertConfigError(document(experiment="fitting"), "experiment")
        self.assertConfigError("{not json", "config")

    def test_output(self):
        config = parse_config(json.dumps(document(output={"path": "out.csv", "format": "csv"})))
        self.assertEqual(config.output.format, OutputFormat.CSV)
        self.assertEqual(config.output.path, "out.csv")
        self.assertConfigError(document(output={"format": "xml"}), "output.format")

    def test_limits(self):
        data = {
            "experiment": "ultradiscretization",
            "mc": {"seed": 1, "samples": 100},
            "test": {"eps_list": [0.2, 0.1], "params": {"target": "stExp_from_GIG", "lambda": 1, "c": -1, "L": 2}},
        }
        config = parse_config(json.dumps(data))
        self.assertIsNone(config.model)
        self.assertIs(config.test.params["target"], LimitTarget.ST_EXP_FROM_GIG)
        self.assertEqual(config.test.eps_list, (0.2, 0.1))

        del data["test"]["params"]["L"]
        self.assertConfigError(data, "test.params.L", "required")
        data["test"]["params"]["target"] = "sExp_from_GIG"
        self.assertConfigError(data, "test.params.target")

        data = {
            "experiment": "correspondence",
            "mc": {"seed": 1},
            "test": {"params": {"lambda1": 1, "lambda2": 1, "c": -1}},
        }
        self.assertConfigError(data, "test.params.side", "required")

    def test_simulate(self):
        data = {
            "experiment": "simulate",
            "model": {"family": "udKdV", "params": {"J": 1, "K": "inf"}},
            "initial": [0, 0, 1, 1, 0, 0],
            "mc": {"seed": 1, "time_steps": 3},
        }
        config = parse_config(json.dumps(data))
        self.assertEqual(config.initial, [0, 0, 1, 1, 0, 0])
        del data["initial"]
        self.assertConfigError(data, "measures.mu", "required")
        self.assertConfigError(document(initial=[0, 1]), "initial")


class TestParseSuite(LatticeTestCase):
    def test_forms(self):
        self.assertEqual(len(parse_suite(json.dumps([MINIMAL, MINIMAL]))), 2)
        self.assertEqual(len(parse_suite(json.dumps({"experiments": [MINIMAL]}))), 1)
        self.assertEqual(len(parse_suite(json.dumps(MINIMAL))), 1)

    def test_position(self):
        with self.assertRaises(ConfigError) as cm:
            parse_suite(json.dumps({"experiments": [MINIMAL, document(mc={})]}))
        self.assertEqual(cm.exception.field, "experiments[1].mc.seed")
        self.assertEqual(cm.exception.reason, "required")
        with self.assertRaises(ConfigError):
            parse_suite(json.dumps([]))

    def test_acceptance_suite(self):
        path = os.path.join(os.path.dirname(pylattice.__file__), "data", "acceptance-suite.json")
        with open(path, "r", encoding="utf-8") as f:
            configs = parse_suite(f.read())
        experiments = {config.experiment for config in configs}
        self.assertEqual(experiments, set(Experiment) - {Experiment.SIMULATE})
        seeds = [config.mc.seed for config in configs]
        self.assertEqual(len(set(seeds)), len(seeds))


if __name__ == "__main__":
    unittest.main()
