import math
import unittest

import numpy as np

from .shared_vars import device_path, threshold

from ..dynamics import (
    compare_dynamics,
    compare_walkspeed,
    ctqw_evolve,
    ctqw_probability,
    effective_hamiltonian,
    evolve,
    model_mapping,
    population_error,
    propagate
)
from ..effective import device_hamiltonian, effective_for_device
from ..exceptions import (
    DimensionMismatch,
    GridMismatch,
    InvalidGraph,
    NegativeDuration,
    OutOfRange,
    UnknownBasisLabel
)
from ..hamiltonian import hopping_hamiltonian
from ..io import load_device
from ..models.device import DeviceLattice, chain_device
from ..models.evolution import EvolutionResult
from ..models.graph import WalkSpeed, complete_graph, path_graph


T_GRID = np.linspace(0.0, 0.5, 501)


class TestEvolve(unittest.TestCase):
    def setUp(self):
        self.device = load_device(device_path("three_qubit_chain"))
        self.H = device_hamiltonian(self.device)

    def test_norm_and_start(self):
        result = evolve(self.H, "100", T_GRID)

        self.assertEqual(result.model, "full")
        self.assertEqual(result.populations.shape, (501, 27))
        self.assertAlmostEqual(result.population("100")[0], 1.0)
        self.assertTrue(np.allclose(result.populations.sum(axis=1), 1.0,
                                    atol=threshold("unitarity")))

    def test_single_excitation_sector(self):
        result = evolve(self.H, "100", T_GRID)
        sector = sum(
            result.population(label) for label in ("100", "010", "001")
        )

        self.assertTrue(np.allclose(sector, 1.0, atol=1e-9))

    def test_connector_leakage(self):
        result = evolve(self.H, "100", T_GRID)

        self.assertLess(result.population("010").max(),
                        threshold("three_qubit_connector_leakage"))
        self.assertGreater(result.population("001").max(), 0.9)

    def test_resonant_swap(self):
        device = chain_device([4500.0, 4500.0], [25.0])
        result = evolve(device_hamiltonian(device), "10", [0.0, 0.01])

        self.assertAlmostEqual(result.population("01")[1], 1.0, places=9)

    def test_time_reversal(self):
        rng = np.random.default_rng(3)
        state = rng.normal(size=self.H.dimension) \
            + 1j * rng.normal(size=self.H.dimension)
        state /= np.linalg.norm(state)

        forward = propagate(self.H, state, 0.37)
        back = propagate(self.H, forward, -0.37)

        self.assertAlmostEqual(np.linalg.norm(forward), 1.0)
        self.assertLess(np.abs(back - state).max(),
                        threshold("unitarity"))

    def test_state_shape(self):
        with self.assertRaises(DimensionMismatch):
            propagate(self.H, np.ones(3), 0.1)

    def test_negative_grid(self):
        with self.assertRaises(NegativeDuration):
            evolve(self.H, "100", [-0.1, 0.0])

    def test_unsorted_grid(self):
        with self.assertRaises(OutOfRange):
            evolve(self.H, "100", [0.2, 0.1])

    def test_unknown_initial(self):
        with self.assertRaises(UnknownBasisLabel):
            evolve(self.H, "300", T_GRID)

    def test_effective_hamiltonian(self):
        model = effective_for_device(self.device, "ebd-la")
        H = effective_hamiltonian(model)

        self.assertEqual(H.provenance, "effective")
        self.assertEqual(H.labels, ["100", "001"])
        self.assertEqual(evolve(H, "100", [0.0]).model, "effective")


class TestCtqw(unittest.TestCase):
    def test_path_transfer(self):
        probability = ctqw_probability(
            path_graph(3), 0, 2, math.pi / math.sqrt(2.0)
        )

        self.assertAlmostEqual(probability, 1.0, places=10)

    def test_pair_transfer(self):
        self.assertAlmostEqual(
            ctqw_probability(complete_graph(2), 0, 1, math.pi / 2.0), 1.0,
            places=10
        )

    def test_walk_speed_scaling(self):
        J = 3.1
        t = (math.pi / 2.0) / (2.0 * math.pi * J)

        self.assertAlmostEqual(
            ctqw_probability(complete_graph(2), 0, 1, t, WalkSpeed(J)), 1.0,
            places=10
        )

    def test_symmetric(self):
        graph = path_graph(4)

        for t in (0.3, 1.1, 2.7):
            self.assertAlmostEqual(ctqw_probability(graph, 0, 2, t),
                                   ctqw_probability(graph, 2, 0, t))

    def test_distribution(self):
        result = ctqw_evolve(complete_graph(3), 0, np.linspace(0, 2, 21))

        self.assertEqual(result.model, "ctqw")
        self.assertEqual(result.labels, ["0", "1", "2"])
        self.assertTrue(np.allclose(result.population("1"),
                                    result.population("2")))

    def test_bad_vertex(self):
        with self.assertRaises(OutOfRange):
            ctqw_probability(path_graph(3), 0, 3, 1.0)

    def test_asymmetric_weights(self):
        with self.assertRaises(InvalidGraph):
            ctqw_probability(np.array([[0.0, 1.0], [2.0, 0.0]]), 0, 1, 1.0)

    def test_single_excitation_is_a_walk(self):
        rng = np.random.default_rng(11)

        for _ in range(20):
            size = int(rng.integers(2, 7))
            device = DeviceLattice({
                "rows": 1,
                "cols": size,
                "qubits": [
                    {"site": [0, col],
                     "omega": float(rng.uniform(4400.0, 4800.0)),
                     "alpha": -250.0}
                    for col in range(size)
                ],
                "couplers": [
                    {"sites": [[0, col], [0, col + 1]],
                     "g": float(rng.uniform(-40.0, 40.0)), "g_max": 50.0}
                    for col in range(size - 1)
                ],
            })
            H = hopping_hamiltonian(device)
            j, k = (int(v) for v in rng.integers(0, size, 2))
            t = float(rng.uniform(0.0, 0.2))

            walk = ctqw_probability(H.in_mhz().real, j, k, t, speed=1.0)
            full = evolve(H, H.labels[j], [t]).population(H.labels[k])[0]

            self.assertLess(abs(walk - full), 1e-9)


class TestPopulationError(unittest.TestCase):
    def test_three_qubit_chain(self):
        device = load_device(device_path("three_qubit_chain"))
        full, effective, errors = compare_dynamics(device, "100", T_GRID)

        self.assertEqual(effective.model, "effective")
        self.assertEqual(errors.labels, ["100", "001"])
        self.assertLess(errors.maximum,
                        threshold("three_qubit_population_error"))

    def test_bloch4_three_qubit_chain(self):
        device = load_device(device_path("three_qubit_chain"))
        _, effective, errors = compare_dynamics(
            device, "100", T_GRID, method="bloch4"
        )

        self.assertEqual(effective.labels, ["Q1", "Q3"])
        self.assertEqual(errors.labels, ["100", "001"])
        self.assertLess(errors.maximum, threshold("bloch4_population_error"))

    def test_four_qubit_chain(self):
        device = load_device(device_path("four_qubit_chain"))
        _, _, errors = compare_dynamics(device, "1000", T_GRID)

        self.assertLess(errors.maximum,
                        threshold("four_qubit_population_error"))

    def test_two_d_patch(self):
        device = load_device(device_path("five_qubit_2d"))
        _, _, errors = compare_dynamics(device, "10000", T_GRID)

        self.assertLess(errors.maximum, threshold("two_d_population_error"))

    def test_initial_not_kept(self):
        device = load_device(device_path("three_qubit_chain"))

        with self.assertRaises(UnknownBasisLabel):
            compare_dynamics(device, "010", T_GRID)

    def test_grid_mismatch(self):
        first = EvolutionResult({
            "times": [0.0, 1.0], "populations": [[1.0], [1.0]],
            "labels": ["a"], "initial": "a", "model": "full",
        })
        second = EvolutionResult({
            "times": [0.0, 2.0], "populations": [[1.0], [1.0]],
            "labels": ["a"], "initial": "a", "model": "effective",
        })

        with self.assertRaises(GridMismatch):
            population_error(first, second)

    def test_mapping(self):
        device = load_device(device_path("three_qubit_chain"))
        model = effective_for_device(device, "bloch4")

        self.assertEqual(model_mapping(device, model),
                         {"Q1": "100", "Q3": "001"})


class TestWalkSpeed(unittest.TestCase):
    def test_flagged_edges(self):
        device = load_device(device_path("four_qubit_chain"))
        model = effective_for_device(device, "ebd-la")

        strict = compare_walkspeed(model, 3.1, tolerance=0.01)
        loose = compare_walkspeed(model, WalkSpeed(3.1))

        self.assertEqual(len(strict.edges), 2)
        self.assertTrue(strict.flagged)
        self.assertFalse(loose.flagged)

    def test_unknown_edge(self):
        device = load_device(device_path("three_qubit_chain"))
        report = compare_walkspeed(effective_for_device(device), 3.1)

        with self.assertRaises(UnknownBasisLabel):
            report.deviation("100", "010")

    def test_nonpositive_speed(self):
        device = load_device(device_path("three_qubit_chain"))

        with self.assertRaises(OutOfRange):
            compare_walkspeed(effective_for_device(device), 0.0)
