import os
import tempfile
import unittest
from unittest import mock

from ..exceptions import (
    InvalidSettings,
    MultipleMethods,
    UnknownExperiment,
    UnknownMethod
)
from ..settings import (
    OUTPUT_ENV,
    ExperimentConfig,
    PlanSettings,
    SolverSettings,
    default_output_root
)


class TestSolverSettings(unittest.TestCase):
    def test_defaults(self):
        payload = SolverSettings().payload

        self.assertEqual(payload["method"], "ebd-la")
        self.assertIsNone(payload["levels"])
        self.assertEqual(payload["hermitian_tolerance"], 1e-12)
        self.assertEqual(payload["walk_tolerance"], 0.05)
        self.assertEqual(payload["dispersive_bound"], 0.25)

    def test_methods(self):
        self.assertEqual(SolverSettings().bloch(2).payload["method"], "bloch2")
        self.assertEqual(SolverSettings().star().payload["method"],
                         "star-closed")
        self.assertEqual(SolverSettings().star(False).payload["method"],
                         "star-series")
        self.assertEqual(SolverSettings().method("bloch4").payload["method"],
                         "bloch4")

    def test_one_method(self):
        with self.assertRaises(MultipleMethods):
            SolverSettings().ebd_la().bloch()

    def test_unknown_method(self):
        with self.assertRaises(UnknownMethod):
            SolverSettings().method("sw")

    def test_bloch_order(self):
        with self.assertRaises(InvalidSettings):
            SolverSettings().bloch(3)

    def test_levels(self):
        self.assertEqual(SolverSettings(levels=4).payload["levels"], 4)

        with self.assertRaises(InvalidSettings):
            SolverSettings(levels=1)
        with self.assertRaises(InvalidSettings):
            SolverSettings(levels=2.5)
        with self.assertRaises(InvalidSettings):
            SolverSettings(levels="three")

    def test_tolerances(self):
        with self.assertRaises(InvalidSettings):
            SolverSettings(tie_tolerance=0)
        with self.assertRaises(InvalidSettings):
            SolverSettings(walk_tolerance="loose")


class TestPlanSettings(unittest.TestCase):
    def test_defaults(self):
        payload = PlanSettings().payload

        self.assertTrue(payload["allow_static"])
        self.assertTrue(payload["allow_dynamic"])
        self.assertEqual(payload["static_detuning"], -200.0)
        self.assertEqual(payload["max_dynamic"], 7)

    def test_chaining(self):
        payload = PlanSettings(seed=3).static(detuning=-180.0) \
            .dynamic(False).payload

        self.assertEqual(payload["seed"], 3)
        self.assertEqual(payload["static_detuning"], -180.0)
        self.assertFalse(payload["allow_dynamic"])

    def test_zero_detuning(self):
        with self.assertRaises(InvalidSettings):
            PlanSettings().static(detuning=0)

    def test_bounds(self):
        with self.assertRaises(InvalidSettings):
            PlanSettings(node_budget=0)
        with self.assertRaises(InvalidSettings):
            PlanSettings(seed=-1)
        with self.assertRaises(InvalidSettings):
            PlanSettings().dynamic(max_connectors=0)
        with self.assertRaises(InvalidSettings):
            PlanSettings(max_repeats=True)


class TestExperimentConfig(unittest.TestCase):
    def test_unknown(self):
        with tempfile.TemporaryDirectory() as root:
            with self.assertRaises(UnknownExperiment):
                ExperimentConfig("anneal", out=root)

    def test_payload(self):
        with tempfile.TemporaryDirectory() as root:
            config = ExperimentConfig(
                "evolve", {"device": "d.json"}, {"steps": 11, "method": "x"},
                out=os.path.join(root, "run"), seed=2
            )

            self.assertTrue(os.path.isdir(config.out))
            self.assertEqual(config.payload, {
                "experiment": "evolve",
                "inputs": {"device": "d.json"},
                "overrides": {"method": "x", "steps": 11},
                "seed": 2,
            })
            self.assertEqual(list(config.payload["overrides"]),
                             ["method", "steps"])

    def test_unwritable(self):
        with tempfile.TemporaryDirectory() as root:
            blocker = os.path.join(root, "file")
            open(blocker, "w").close()

            with self.assertRaises(InvalidSettings):
                ExperimentConfig("plan", out=os.path.join(blocker, "run"))

    def test_output_environment(self):
        with mock.patch.dict(os.environ, {OUTPUT_ENV: "/tmp/woven"}):
            self.assertEqual(default_output_root(), "/tmp/woven")

        with mock.patch.dict(os.environ, {OUTPUT_ENV: ""}):
            self.assertEqual(default_output_root(), "out")
