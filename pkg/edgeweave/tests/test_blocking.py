import unittest

import numpy as np

from .shared_vars import (
    device_path,
    golden,
    plan_path,
    schedule_path,
    threshold
)

from .. import Blocking
from ..exceptions import InvalidDevice, MultipleMethods
from ..models.graph import complete_graph, path_graph
from ..settings import PlanSettings, SolverSettings


class TestBlocking(unittest.TestCase):
    def setUp(self):
        self.session = Blocking()
        self.session.device = self.session.load_device(
            device_path("three_qubit_chain")
        )

    def tearDown(self):
        self.session.close()

    def test_effective(self):
        value, tolerance = golden("three_qubit_g13")
        model = self.session.effective()

        self.assertEqual(model.method, "ebd-la")
        self.assertAlmostEqual(model.coupling("100", "001"), value,
                               delta=tolerance)

    def test_effective_method(self):
        model = self.session.effective(method="bloch4")

        self.assertEqual(model.labels, ["Q1", "Q3"])

    def test_walk_speed(self):
        session = Blocking(
            device=self.session.device,
            settings=SolverSettings(walk_tolerance=0.001)
        )

        self.assertEqual(self.session.walk_speed(3.0).flagged, [])
        self.assertEqual(len(session.walk_speed(3.0).flagged), 1)

    def test_session_method(self):
        session = Blocking(
            device=self.session.device,
            settings=SolverSettings().bloch(2)
        )

        self.assertEqual(session.effective().method, "bloch2")
        with self.assertRaises(MultipleMethods):
            session.settings.ebd_la()

    def test_evolve(self):
        full, effective, errors = self.session.evolve(
            "100", np.linspace(0.0, 0.5, 101)
        )

        self.assertEqual(full.model, "full")
        self.assertEqual(effective.model, "effective")
        self.assertLess(errors.maximum,
                        threshold("three_qubit_population_error"))

    def test_floquet(self):
        device = self.session.load_device(device_path("four_qubit_pew"))
        schedule = self.session.load_schedule(schedule_path("pew_four"))
        result, errors = self.session.floquet(schedule, 0, cycles=6,
                                              device=device)

        self.assertEqual(result.cycles, 6)
        self.assertLess(errors.maximum, threshold("pew_population_error"))

    def test_ctqw(self):
        result = self.session.ctqw(path_graph(3), 0, [0.0, 1.0])

        self.assertEqual(result.populations.shape, (2, 3))

    def test_plan(self):
        device = self.session.load_device(device_path("grid_2x2"))
        plan = self.session.plan(complete_graph(2), device)

        self.assertTrue(self.session.validate(plan, device).ok)

    def test_validate_fixture(self):
        device = self.session.load_device(device_path("grid_3x4"))
        plan = self.session.load_plan(plan_path("glued_binary_tree"))
        report = self.session.validate(plan, device)

        self.assertTrue(report.ok)
        self.assertEqual(len(report.bridges), 2)

    def test_plan_settings(self):
        session = Blocking(
            plan_settings=PlanSettings().static(False).dynamic(False)
        )
        device = session.load_device(device_path("grid_3x4"))
        plan = session.load_plan(plan_path("glued_binary_tree"))

        self.assertTrue(session.validate(plan, device).ok)
        self.assertFalse(session.plan_settings.payload["allow_static"])

    def test_sew_scaling(self):
        values = self.session.sew_scaling(3, 25.0, -200.0)

        self.assertEqual([n for n, _ in values], [1, 2, 3])
        self.assertAlmostEqual(values[0][1], -3.033, delta=0.02)
        self.assertTrue(
            abs(values[0][1]) > abs(values[1][1]) > abs(values[2][1])
        )

    def test_without_device(self):
        with Blocking() as session:
            with self.assertRaises(InvalidDevice):
                session.effective()

    def test_context_drops_device(self):
        with Blocking(device=self.session.device) as session:
            self.assertIsNotNone(session.device)

        self.assertIsNone(session.device)
