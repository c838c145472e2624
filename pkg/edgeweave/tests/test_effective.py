import math
import unittest
from unittest import mock

import numpy as np

from scipy import linalg

from .shared_vars import device_path, golden

from .. import hamiltonian
from ..dynamics import compare_walkspeed, walkspeed_for_device
from ..effective import (
    bloch_2d,
    bloch_four_chain,
    bloch_three_qubit,
    catalan,
    compensate_frequency,
    coupling_map,
    device_hamiltonian,
    ebd_la,
    effective_for_device,
    fit_decay,
    node_subspace,
    settings_hamiltonian,
    sew_chain,
    sew_scaling,
    star_closed,
    star_converges,
    star_matrix,
    star_model,
    star_partial_sums,
    star_series
)
from ..exceptions import (
    AmbiguousAssignment,
    DimensionMismatch,
    InvalidDevice,
    OutOfRange,
    UnknownBasisLabel,
    UnknownMethod,
    ZeroDetuning
)
from ..hamiltonian import HamiltonianMatrix
from ..io import load_device
from ..models.device import grid_device
from ..settings import SolverSettings
from ..units import to_angular


class TestBloch(unittest.TestCase):
    def test_three_qubit_fourth_order(self):
        model = bloch_three_qubit(25.0, 25.0, -200.0, -200.0)

        self.assertEqual(model.labels, ["Q1", "Q3"])
        self.assertEqual(model.qubits, [0, 2])
        self.assertEqual(model.method, "bloch4")
        self.assertAlmostEqual(model.coupling("Q1", "Q3"), -3.027, delta=0.005)

    def test_three_qubit_second_order(self):
        model = bloch_three_qubit(25.0, 25.0, -200.0, -200.0, order=2)

        self.assertAlmostEqual(model.coupling("Q1", "Q3"), -3.125)
        self.assertAlmostEqual(model.frequency("Q1"), -200.0 - 3.125)

    def test_three_qubit_shift(self):
        model = bloch_three_qubit(25.0, 25.0, -200.0, -200.0,
                                  omega_connector=4700.0)

        self.assertAlmostEqual(model.frequency("Q1"), 4500.0 - 3.027,
                               delta=0.005)
        self.assertAlmostEqual(model.frequency("Q1"), model.frequency("Q3"))

    def test_zero_detuning(self):
        with self.assertRaises(ZeroDetuning):
            bloch_three_qubit(25.0, 25.0, 0.0, -200.0)

    def test_bad_order(self):
        with self.assertRaises(OutOfRange):
            bloch_three_qubit(25.0, 25.0, -200.0, -200.0, order=3)

    def test_dispersive_warning(self):
        with self.assertLogs(level="WARNING"):
            bloch_three_qubit(25.0, 25.0, -50.0, -50.0)

    def test_four_chain(self):
        model = bloch_four_chain(25.0, 25.0, 3.1, -200.0, -200.0, -200.0)

        self.assertEqual(model.labels, ["Q1", "Q3", "Q4"])
        self.assertAlmostEqual(model.coupling("Q3", "Q4"), 3.0516, places=4)
        self.assertAlmostEqual(model.coupling("Q1", "Q4"), -0.0484, places=4)
        self.assertAlmostEqual(model.coupling("Q1", "Q3"), -3.027,
                               delta=0.005)

    def test_four_chain_reduces_to_three(self):
        four = bloch_four_chain(25.0, 25.0, 0.0, -200.0, -180.0, -190.0)
        three = bloch_three_qubit(25.0, 25.0, -200.0, -180.0)

        self.assertAlmostEqual(four.coupling("Q1", "Q3"),
                               three.coupling("Q1", "Q3"))
        self.assertEqual(four.coupling("Q1", "Q4"), 0.0)

    def test_2d_reduces_to_four_chain(self):
        flat = bloch_2d(25.0, 25.0, 3.1, 0.0,
                        -200.0, -200.0, -203.0, -203.0)
        chain = bloch_four_chain(25.0, 25.0, 3.1, -200.0, -200.0, -203.0)

        for a, b in (("Q1", "Q3"), ("Q3", "Q4"), ("Q1", "Q4")):
            self.assertAlmostEqual(flat.coupling(a, b), chain.coupling(a, b))
        self.assertEqual(flat.coupling("Q4", "Q5"), 0.0)

    def test_2d_symmetric_arms(self):
        model = bloch_2d(25.0, 25.0, 3.1, 3.1,
                         -200.0, -200.0, -203.0, -203.0)

        self.assertAlmostEqual(model.coupling("Q3", "Q4"),
                               model.coupling("Q3", "Q5"))
        self.assertAlmostEqual(model.coupling("Q1", "Q4"),
                               model.coupling("Q1", "Q5"))


class TestStar(unittest.TestCase):
    def test_catalan(self):
        self.assertEqual([catalan(p) for p in range(6)],
                         [1, 1, 2, 5, 14, 42])
        self.assertEqual(catalan(10), 16796)

    def test_catalan_large(self):
        self.assertEqual(catalan(30), 3814986502092304)
        self.assertEqual(catalan(150) * 151, math.comb(300, 150))

    def test_catalan_range(self):
        with self.assertRaises(OutOfRange):
            catalan(-1)
        with self.assertRaises(OutOfRange):
            catalan(2.5)

    def test_closed(self):
        self.assertAlmostEqual(star_closed(3, 25.0, -200.0), -2.9908,
                               places=4)
        self.assertAlmostEqual(star_closed(4, 25.0, -200.0), -2.951,
                               places=3)
        self.assertAlmostEqual(star_closed(4, 25.0, -180.0), -3.239,
                               places=3)
        self.assertGreater(star_closed(4, 25.0, 200.0), 0.0)

    def test_closed_zero_detuning(self):
        with self.assertRaises(ZeroDetuning):
            star_closed(3, 25.0, 0.0)

    def test_radius(self):
        for n in range(1, 16):
            self.assertTrue(star_converges(n, 25.0, -200.0), n)
        for n in (16, 17, 20):
            self.assertFalse(star_converges(n, 25.0, -200.0), n)

    def test_series_leading_term(self):
        value, _ = star_series(1, 25.0, -200.0, p_max=0)

        self.assertAlmostEqual(value, 25.0 ** 2 / -200.0)

    def test_series_converges_inside_radius(self):
        for n in range(1, 16):
            value, converges = star_series(n, 25.0, -200.0)

            self.assertTrue(converges)
            self.assertAlmostEqual(value, star_closed(n, 25.0, -200.0),
                                   delta=1e-3)

    def test_series_diverges_outside_radius(self):
        sums = star_partial_sums(20, 25.0, -200.0, 50)
        early = abs(sums[11] - sums[10])
        late = abs(sums[50] - sums[49])

        self.assertGreater(late, early)
        self.assertGreater(abs(sums[-1] - star_closed(20, 25.0, -200.0)), 1.0)

    def test_series_grows_just_outside_radius(self):
        sums = star_partial_sums(17, 25.0, -200.0, 200)
        early = abs(sums[11] - sums[10])
        late = abs(sums[200] - sums[199])

        self.assertGreater(late, 100 * early)

    def test_series_warns_outside_radius(self):
        with self.assertLogs(level="WARNING"):
            star_model(20, 25.0, -200.0, closed=False)

    def test_closed_matches_ebd_la(self):
        for n in (3, 4, 16, 20, 32):
            H = star_matrix(n, 25.0, -200.0, omega_connector=4700.0)
            model = ebd_la(H, H.labels[1:])
            exact = model.coupling(H.labels[1], H.labels[2])
            closed = star_closed(n, 25.0, -200.0)

            self.assertLess(abs(closed - exact) / abs(exact), 0.02)

    def test_star_model_uniform(self):
        model = star_model(3, 25.0, -200.0, omega_connector=4700.0)

        self.assertEqual(model.method, "star-closed")
        self.assertEqual(len(model.pairs()), 3)
        self.assertTrue(all(
            g == star_closed(3, 25.0, -200.0) for _, _, g in model.pairs()
        ))

    def test_star_from_device(self):
        device = load_device(device_path("star_three"))
        model = effective_for_device(device, "star-closed")

        self.assertEqual(model.qubits, [1, 2, 3])
        self.assertAlmostEqual(model.coupling(model.labels[0],
                                              model.labels[1]), -2.9908,
                               places=4)


class TestEbdLa(unittest.TestCase):
    def test_two_level(self):
        H = HamiltonianMatrix(
            to_angular(np.array([[0.0, 25.0], [25.0, 200.0]])),
            labels=["a", "b"]
        )
        model = ebd_la(H, ["a"])

        self.assertAlmostEqual(model.frequency("a"), -3.078, places=3)

    def test_three_qubit_chain(self):
        value, tolerance = golden("three_qubit_g13")
        device = load_device(device_path("three_qubit_chain"))
        model = effective_for_device(device, "ebd-la")

        self.assertEqual(model.labels, ["100", "001"])
        self.assertEqual(model.qubits, [0, 2])
        self.assertAlmostEqual(model.coupling("100", "001"), value,
                               delta=tolerance)

        bloch = effective_for_device(device, "bloch4")
        self.assertLessEqual(
            abs(bloch.coupling("Q1", "Q3") - model.coupling("100", "001")),
            0.15
        )

    def test_full_and_single_excitation_agree(self):
        device = load_device(device_path("three_qubit_chain"))
        full = effective_for_device(device, "ebd-la", full=True)
        single = effective_for_device(device, "ebd-la", full=False)

        self.assertAlmostEqual(full.coupling("100", "001"),
                               single.coupling("100", "001"), places=9)

    def test_four_qubit_chain_deviation(self):
        value, tolerance = golden("four_qubit_deviation")
        device = load_device(device_path("four_qubit_chain"))
        model = effective_for_device(device, "ebd-la")
        report = compare_walkspeed(model, 3.1)

        self.assertAlmostEqual(report.deviation("1000", "0010"), value,
                               delta=tolerance)
        self.assertEqual(
            [(a, b) for a, b, _ in report.parasitic], [("1000", "0001")]
        )

    def test_two_d_patch(self):
        value, tolerance = golden("two_d_g13")
        device = load_device(device_path("five_qubit_2d"))
        model = effective_for_device(device, "ebd-la")

        g13 = model.coupling("10000", "00100")
        self.assertAlmostEqual(g13, value, delta=tolerance)
        self.assertLess(abs(abs(g13) - 3.1) / 3.1, 0.01)

    def test_spectrum_preserved(self):
        rng = np.random.default_rng(7)

        for _ in range(50):
            size = int(rng.integers(2, 65))
            k = int(rng.integers(1, min(4, size - 1) + 1))
            noise = rng.normal(size=(size, size)) \
                + 1j * rng.normal(size=(size, size))
            matrix = noise + noise.conj().T

            H = HamiltonianMatrix(matrix)
            subspace = [str(i) for i in sorted(
                rng.choice(size, size=k, replace=False)
            )]
            model = ebd_la(H, subspace)

            exact = linalg.eigvalsh(matrix)
            scale = np.abs(exact).max()
            for value in linalg.eigvalsh(model.matrix):
                self.assertLessEqual(np.abs(exact - value).min(),
                                     1e-10 * scale)

    def test_tie(self):
        H = HamiltonianMatrix([[0.0, 1.0], [1.0, 0.0]], labels=["a", "b"])

        with self.assertRaises(AmbiguousAssignment):
            ebd_la(H, ["a"])

    def test_bad_subspace(self):
        H = HamiltonianMatrix(np.diag([0.0, 1.0]), labels=["a", "b"])

        with self.assertRaises(DimensionMismatch):
            ebd_la(H, [])
        with self.assertRaises(DimensionMismatch):
            ebd_la(H, ["a", "b"])
        with self.assertRaises(UnknownBasisLabel):
            ebd_la(H, ["z"])

    def test_no_connectors(self):
        with self.assertRaises(InvalidDevice):
            node_subspace(grid_device(1, 3))

    def test_explicit_subspace(self):
        device = grid_device(1, 3).with_frequencies({1: 4700.0})
        model = effective_for_device(device, "ebd-la", subspace=[0, 2])

        self.assertEqual(model.labels, ["100", "001"])
        self.assertAlmostEqual(model.coupling("100", "001"), -3.033,
                               delta=0.02)

    def test_unknown_method(self):
        device = load_device(device_path("three_qubit_chain"))

        with self.assertRaises(UnknownMethod):
            effective_for_device(device, "schrieffer-wolff")

    def test_settings_method(self):
        device = load_device(device_path("three_qubit_chain"))
        model = effective_for_device(
            device, settings=SolverSettings().bloch(2)
        )

        self.assertEqual(model.method, "bloch2")

    def test_compensation(self):
        device = load_device(device_path("four_qubit_chain"))
        model = effective_for_device(device, "ebd-la")
        shift = compensate_frequency(model, "0001", "0010")

        self.assertLess(shift, 0.0)
        self.assertAlmostEqual(
            model.frequency("0001") + shift, model.frequency("0010")
        )


class TestSewScaling(unittest.TestCase):
    def test_chain(self):
        device = sew_chain(2, 25.0, -200.0)

        self.assertEqual(list(device.omegas), [4500.0, 4700.0, 4700.0, 4500.0])
        self.assertEqual(device.connectors, [1, 2])
        self.assertEqual(node_subspace(device), ["1000", "0001"])

    def test_exponential_decay(self):
        points = sew_scaling(4, 25.0, -200.0)
        magnitudes = [abs(g) for _, g in points]

        self.assertEqual([n for n, _ in points], [1, 2, 3, 4])
        self.assertAlmostEqual(magnitudes[0], 3.033, delta=0.02)
        self.assertTrue(all(
            later < earlier for earlier, later
            in zip(magnitudes, magnitudes[1:])
        ))

        slope, _, r2 = fit_decay(points)
        self.assertLess(slope, 0.0)
        self.assertGreater(r2, 0.99)

    def test_full_space_agrees(self):
        single = sew_scaling(2, 25.0, -200.0)
        full = sew_scaling(2, 25.0, -200.0, full=True)

        for (_, a), (_, b) in zip(single, full):
            self.assertAlmostEqual(a, b, places=9)

    def test_coupling_map(self):
        rows = coupling_map([4700.0, 4500.0], [25.0])

        self.assertEqual(len(rows), 2)
        self.assertAlmostEqual(rows[0][2], -3.033 / 25.0, delta=0.001)
        self.assertTrue(math.isnan(rows[1][2]) or abs(rows[1][2]) > 0.1)

    def test_device_hamiltonian_size(self):
        small = device_hamiltonian(grid_device(1, 3))
        large = device_hamiltonian(grid_device(3, 4))

        self.assertEqual(small.provenance, "full")
        self.assertEqual(small.dimension, 27)
        self.assertEqual(large.provenance, "single-excitation")
        self.assertEqual(large.dimension, 12)

    def test_levels_override(self):
        device = grid_device(2, 5)

        self.assertEqual(device_hamiltonian(device).provenance,
                         "single-excitation")

        truncated = settings_hamiltonian(device, SolverSettings(levels=2))
        self.assertEqual(truncated.provenance, "full")
        self.assertEqual(truncated.dimension, 1024)

    def test_levels_keep_couplings(self):
        device = load_device(device_path("three_qubit_chain"))
        settings = SolverSettings(levels=2)

        self.assertEqual(settings_hamiltonian(device, settings).dimension, 8)
        self.assertAlmostEqual(
            effective_for_device(device, "ebd-la", settings=settings)
            .coupling("100", "001"),
            effective_for_device(device, "ebd-la").coupling("100", "001"),
            places=9
        )

    def test_hermitian_tolerance_reaches_matrix(self):
        device = load_device(device_path("three_qubit_chain"))

        with mock.patch.object(hamiltonian, "HamiltonianMatrix",
                               wraps=HamiltonianMatrix) as matrix:
            effective_for_device(
                device, "ebd-la",
                settings=SolverSettings(hermitian_tolerance=1e-6)
            )

        self.assertEqual(matrix.call_args.kwargs["tolerance"], 1e-6)


class TestWalkspeedForDevice(unittest.TestCase):
    def setUp(self):
        self.device = load_device(device_path("three_qubit_chain"))

    def test_default_tolerance(self):
        report = walkspeed_for_device(self.device, 3.0)

        self.assertEqual(len(report.edges), 1)
        self.assertEqual(report.flagged, [])

    def test_settings_tolerance(self):
        report = walkspeed_for_device(
            self.device, 3.0, settings=SolverSettings(walk_tolerance=0.001)
        )

        self.assertEqual(len(report.flagged), 1)
