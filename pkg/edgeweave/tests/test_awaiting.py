import unittest

import numpy as np

from .shared_vars import device_path, golden, plan_path, schedule_path

from .. import Awaiting, Blocking
from ..exceptions import InfeasibleEmbedding, InvalidDevice
from ..models.graph import complete_graph


class TestAwaiting(unittest.IsolatedAsyncioTestCase):
    async def asyncSetUp(self):
        self.session = Awaiting(workers=2)
        self.session.device = await self.session.load_device(
            device_path("three_qubit_chain")
        )

    async def asyncTearDown(self):
        await self.session.close()

    async def test_effective(self):
        value, tolerance = golden("three_qubit_g13")
        model = await self.session.effective()

        self.assertAlmostEqual(model.coupling("100", "001"), value,
                               delta=tolerance)

    async def test_walk_speed(self):
        report = await self.session.walk_speed(3.0)

        self.assertEqual(len(report.edges), 1)
        self.assertEqual(report.flagged, [])

    async def test_evolve(self):
        full, _, errors = await self.session.evolve(
            "100", np.linspace(0.0, 0.2, 21)
        )

        self.assertEqual(full.populations.shape[0], 21)
        self.assertEqual(errors.labels, ["100", "001"])

    async def test_floquet(self):
        device = await self.session.load_device(
            device_path("four_qubit_pew")
        )
        schedule = await self.session.load_schedule(schedule_path("pew_four"))
        result, _ = await self.session.floquet(schedule, 0, cycles=2,
                                               device=device)

        self.assertAlmostEqual(result.samples.population("0001")[1], 1.0)

    async def test_validate(self):
        device = await self.session.load_device(device_path("grid_3x7"))
        plan = await self.session.load_plan(plan_path("glued_tetrahedra"))
        report = await self.session.validate(plan, device)

        self.assertTrue(report.ok)

    async def test_plan_failure(self):
        device = await self.session.load_device(device_path("grid_2x2"))

        with self.assertRaises(InfeasibleEmbedding):
            await self.session.plan(complete_graph(5), device)

    async def test_sew_scaling_matches_blocking(self):
        concurrent = await self.session.sew_scaling(4, 25.0, -200.0)
        sequential = Blocking().sew_scaling(4, 25.0, -200.0)

        self.assertEqual([n for n, _ in concurrent], [1, 2, 3, 4])
        for (_, a), (_, b) in zip(concurrent, sequential):
            self.assertAlmostEqual(a, b, places=12)

    async def test_context(self):
        async with Awaiting() as session:
            with self.assertRaises(InvalidDevice):
                await session.effective()
