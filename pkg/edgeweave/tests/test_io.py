import json
import os
import tempfile
import unittest

from .shared_vars import (
    device_path,
    graph_path,
    plan_path,
    schedule_path
)

from ..exceptions import (
    InvalidDocument,
    InvalidPlan,
    UnsupportedVersion,
    UnwritableOutput
)
from ..io import (
    AwaitingIO,
    BlockingIO,
    build_manifest,
    dump_document,
    load_device,
    load_graph,
    load_plan,
    load_schedule,
    render_csv,
    render_svg,
    save_device,
    save_plan,
    save_schedule
)
from ..models.device import DeviceLattice
from ..models.plan import WeavePlan


class TestBlockingIO(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.root = self.directory.name

    def tearDown(self):
        self.directory.cleanup()

    def _document(self, name: str, data) -> str:
        pathway = os.path.join(self.root, name)
        with open(pathway, "w", encoding="utf-8") as f:
            f.write(data if isinstance(data, str) else json.dumps(data))

        return pathway

    def test_device_save_is_stable(self):
        device = load_device(device_path("five_qubit_2d"))
        first = save_device(device, os.path.join(self.root, "a.json"))
        second = save_device(load_device(first),
                             os.path.join(self.root, "b.json"))

        with open(first) as a, open(second) as b:
            self.assertEqual(a.read(), b.read())

    def test_plan_save_is_stable(self):
        plan = load_plan(plan_path("fullerene20"))
        first = save_plan(plan, os.path.join(self.root, "plan.json"))
        again = WeavePlan(json.loads(open(first).read()))

        self.assertEqual(again.to_dict(), plan.to_dict())

    def test_schedule_save_is_stable(self):
        schedule = load_schedule(schedule_path("pew_four"))
        pathway = save_schedule(
            schedule, os.path.join(self.root, "nested", "pew.json")
        )

        self.assertEqual(load_schedule(pathway).to_dict(), schedule.to_dict())

    def test_plan_loads_its_graph(self):
        plan = load_plan(plan_path("glued_binary_tree"))

        self.assertIsNotNone(plan.target)
        self.assertEqual(plan.target.n, 10)
        self.assertEqual(
            plan.target.edges(),
            load_graph(graph_path("glued_binary_tree")).edges()
        )

    def test_bad_json(self):
        pathway = self._document("bad.json", "{\"version\": 1,")

        with self.assertRaises(InvalidDocument):
            load_device(pathway)

    def test_missing_file(self):
        with self.assertRaises(InvalidDocument):
            load_device(os.path.join(self.root, "missing.json"))

    def test_top_level_list(self):
        pathway = self._document("list.json", [1, 2])

        with self.assertRaises(InvalidDocument):
            load_graph(pathway)

    def test_version(self):
        pathway = self._document("future.json", {
            "version": 2, "rows": 1, "cols": 2,
        })

        with self.assertRaises(UnsupportedVersion):
            load_device(pathway)

    def test_missing_version(self):
        pathway = self._document("unversioned.json", {"segments": []})

        with self.assertRaises(UnsupportedVersion):
            load_schedule(pathway)

    def test_malformed_schedule(self):
        pathway = self._document("schedule.json", {
            "version": 1, "segments": [{"edges": [[0, 1]]}],
        })

        with self.assertRaises(InvalidDocument):
            load_schedule(pathway)

    def test_plan_without_vertices(self):
        pathway = self._document("plan.json", {"version": 1})

        with self.assertRaises(InvalidPlan):
            load_plan(pathway)

    def test_session_instance(self):
        device = BlockingIO().load_device(device_path("grid_2x2"))

        self.assertIsInstance(device, DeviceLattice)
        self.assertEqual(device.size, 4)

    def test_unwritable(self):
        blocker = self._document("blocker", "")
        device = load_device(device_path("grid_2x2"))

        with self.assertRaises(UnwritableOutput):
            save_device(device, os.path.join(blocker, "device.json"))


class TestAwaitingIO(unittest.IsolatedAsyncioTestCase):
    async def asyncSetUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.io = AwaitingIO()

    async def asyncTearDown(self):
        self.directory.cleanup()

    async def test_plan(self):
        plan = await self.io.load_plan(plan_path("glued_tetrahedra"))

        self.assertEqual(len(plan.bridges), 3)
        self.assertEqual(plan.target.n, 10)

    async def test_round_trip(self):
        device = await self.io.load_device(device_path("four_qubit_pew"))
        pathway = await self.io.save_device(
            device, os.path.join(self.directory.name, "device.json")
        )

        self.assertEqual(
            (await self.io.load_device(pathway)).to_dict(), device.to_dict()
        )

    async def test_missing_file(self):
        with self.assertRaises(InvalidDocument):
            await self.io.load_graph(
                os.path.join(self.directory.name, "missing.json")
            )

    async def test_unwritable(self):
        blocker = os.path.join(self.directory.name, "blocker")
        open(blocker, "w").close()
        device = await self.io.load_device(device_path("grid_2x2"))

        with self.assertRaises(UnwritableOutput):
            await self.io.save_device(
                device, os.path.join(blocker, "nested", "device.json")
            )


class TestRendering(unittest.TestCase):
    def test_dump_document(self):
        text = dump_document({"version": 1, "a": [1, 2]})

        self.assertTrue(text.endswith("}\n"))
        self.assertIn("\n  \"a\": [", text)

    def test_csv(self):
        text = render_csv(["n", "g"], [[1, 0.1], [2, -3.0]])

        self.assertEqual(text, "n,g\n1,0.1\n2,-3.0\n")

    def test_manifest(self):
        manifest = build_manifest(["b.csv", "a.csv"], {"seed": 0})

        self.assertEqual(manifest["files"], ["a.csv", "b.csv"])
        self.assertEqual(manifest["parameters"], {"seed": 0})
        self.assertIn("created_at", manifest)

    def test_svg(self):
        text = render_svg([0.0, 1.0], {"100": [1.0, 0.0]})

        self.assertIn("<svg", text)
