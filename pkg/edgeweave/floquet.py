"""Periodic edge weaving.

Couplers are toggled piecewise constantly. With every swap fragment
lasting a quarter swap time ``1 / (4g)`` the period unitary is the
identity on the connectors and a rotation between the two endpoints, so
the endpoints see an effective coupling at period boundaries only.

All Hamiltonians here are taken in the frame rotating at the mean qubit
frequency. The frame commutes with hopping, populations are unchanged.
"""

from typing import List, Sequence, Tuple, Union

import math

import numpy as np

from scipy import linalg

from .dynamics import Propagator
from .exceptions import (
    DimensionMismatch,
    InvalidDevice,
    InvalidSchedule,
    NegativeDuration,
    NormViolation,
    OutOfRange
)
from .hamiltonian import (
    FockSpace,
    HamiltonianMatrix,
    build_bhm,
    excitation_label,
    number_operator,
    single_excitation_space
)
from .models.device import DeviceLattice
from .models.effective import EffectiveModel
from .models.evolution import ErrorSeries, EvolutionResult, StroboscopicResult
from .models.schedule import FloquetSchedule, Segment
from .units import FrequencyValue, quarter_swap_time, to_angular


UNITARY_TOLERANCE = 1e-9


def _frame(device: DeviceLattice) -> FrequencyValue:
    return float(np.mean(device.omegas))


def segment_hamiltonian(device: DeviceLattice, segment: Segment,
                        full: bool = False) -> HamiltonianMatrix:
    """Device Hamiltonian with only the segment's couplers on.

    Parameters
    ----------
    device : DeviceLattice
    segment : Segment
    full : bool, optional
        Truncated product space instead of the one-excitation block,
        by default False

    Returns
    -------
    HamiltonianMatrix
        In the rotating frame, rad/us.

    Raises
    ------
    InvalidSchedule
        An edge isn't a device coupler or exceeds its tunable range.
    """

    active = {
        edge: segment.couplings.get(edge, device.coupling(*edge))
        for edge in segment.edges
    }

    try:
        switched = device.with_couplers(active)
    except InvalidDevice as error:
        raise InvalidSchedule(str(error))

    if full:
        space = FockSpace(device.size, device.levels)
    else:
        space = single_excitation_space(device.size, device.levels)

    H = build_bhm(switched, space)
    shift = to_angular(_frame(device)) * number_operator(space)
    provenance = "full" if full else "single-excitation"

    return HamiltonianMatrix(H.matrix - shift, space, provenance)


def _check_unitary(U: np.ndarray) -> None:
    error = np.abs(U.conj().T @ U - np.eye(U.shape[0])).max()
    if error > UNITARY_TOLERANCE:
        raise NormViolation(
            "Period unitary deviates from unitarity by {:.3e}".format(error)
        )


def period_unitary(device: DeviceLattice, schedule: FloquetSchedule,
                   full: bool = False) -> np.ndarray:
    """``U = U_n ... U_1`` over one period.

    Returns
    -------
    np.ndarray
        Single-excitation basis in site order unless ``full``.

    Raises
    ------
    InvalidSchedule
    """

    size = device.size if not full else int(np.prod(device.levels))
    U = np.eye(size, dtype=complex)
    for segment in schedule.segments:
        H = segment_hamiltonian(device, segment, full)
        U = Propagator(H.matrix).unitary(segment.duration) @ U

    _check_unitary(U)

    return U


def floquet_hamiltonian(U: np.ndarray, period: float,
                        labels: Sequence[str] = None) -> HamiltonianMatrix:
    """``i log(U) / T``, principal branch.

    Reproduces ``U`` exactly at every period boundary, whichever branch.
    """

    if period <= 0:
        raise OutOfRange("Period must be positive")

    matrix = 1j * linalg.logm(U) / period

    return HamiltonianMatrix(
        (matrix + matrix.conj().T) / 2.0, provenance="effective",
        labels=labels, tolerance=1e-8
    )


def pew_effective(g: FrequencyValue, t2: float, n_connectors: int = 2,
                  omega: FrequencyValue = 0.0,
                  labels: Sequence[str] = ("Q1", "Q4"),
                  qubits: Sequence[int] = None) -> EffectiveModel:
    """Effective endpoint coupling of a dynamic bridge.

    Every swap fragment lasts ``t1 = 1 / (4g)``, the centre coupler is
    held for ``t2``. One period rotates the endpoints by
    ``theta = 2 pi g t2``, so ``g~ = g t2 / (n_connectors t1 + t2)``,
    i.e. ``g 2g t2 / (2g t2 + 1)`` for two connectors.

    Parameters
    ----------
    g : FrequencyValue
        Coupler strength in MHz.
    t2 : float
        Centre segment in us.
    n_connectors : int, optional
        Even connector count, by default 2
    omega : FrequencyValue, optional
        Endpoint frequency, by default 0.0 (rotating frame)
    labels : Sequence[str], optional
        by default ("Q1", "Q4")
    qubits : Sequence[int], optional
        Device qubits of the endpoints.

    Returns
    -------
    EffectiveModel

    Raises
    ------
    NegativeDuration
    OutOfRange
    """

    if t2 < 0:
        raise NegativeDuration("t2 = {} us is negative".format(t2))
    if n_connectors < 2 or n_connectors % 2:
        raise OutOfRange("The centre segment needs an even connector count")

    period = n_connectors * quarter_swap_time(g) + t2
    g_tilde = g * t2 / period if period > 0 else 0.0

    return EffectiveModel({
        "labels": list(labels),
        "qubits": None if qubits is None else list(qubits),
        "method": "pew",
        "g_tilde": [[0.0, g_tilde], [g_tilde, 0.0]],
        "omega_tilde": [omega, omega],
    })


def pew_scaling(g: FrequencyValue, n_connectors: int) -> FrequencyValue:
    """``g / (N_c + 1)``, quarter-swap fragments and full transfer.
    """

    if n_connectors < 0:
        raise OutOfRange("Connector count must be nonnegative")

    return g / (n_connectors + 1)


def pew_chain_schedule(n_connectors: int, g: FrequencyValue,
                       t_mid: float = None, cycles: int = 1
                       ) -> FloquetSchedule:
    """Quarter-swap schedule on a chain ``0 .. n_connectors + 1``.

    Fragments hop the excitation inward from both ends, meet in the
    middle, and the same fragments run mirrored back. An even count
    meets on one centre coupler, held for ``t_mid``. An odd count meets
    on a three-site section driven at ``g / sqrt(2)`` for two quarter
    segments, a full end-to-end transfer of that section.

    Parameters
    ----------
    n_connectors : int
    g : FrequencyValue
        Coupler strength in MHz.
    t_mid : float, optional
        Centre duration in us for even counts, by default ``1 / (4g)``.
    cycles : int, optional
        by default 1

    Returns
    -------
    FloquetSchedule
        ``n_connectors + 1`` segments when ``t_mid`` is nonzero.

    Raises
    ------
    OutOfRange
    InvalidSchedule
        ``t_mid`` given with an odd count.
    """

    if n_connectors < 1:
        raise OutOfRange("A dynamic bridge needs at least one connector")

    quarter = quarter_swap_time(g)
    last = n_connectors + 1
    m = n_connectors // 2
    fragments = [
        {"duration_us": quarter,
         "edges": [[k - 1, k, g], [last - k, last - k + 1, g]]}
        for k in range(1, m + 1)
    ]

    if n_connectors % 2 == 0:
        centre = [{
            "duration_us": quarter if t_mid is None else t_mid,
            "edges": [[m, m + 1, g]],
        }]
        if t_mid is not None and t_mid == 0:
            centre = []
    else:
        if t_mid is not None:
            raise InvalidSchedule(
                "A centre duration only applies to even connector counts"
            )

        weak = g / math.sqrt(2.0)
        centre = [
            {"duration_us": quarter,
             "edges": [[m, m + 1, weak], [m + 1, m + 2, weak]]}
        ] * 2

    return FloquetSchedule({
        "segments": fragments + centre + fragments[::-1],
        "cycles": cycles,
    })


def measure_rate(U: np.ndarray, a: int, b: int, period: float
                 ) -> FrequencyValue:
    """Effective coupling in MHz read off the endpoint block of ``U``.

    ``theta = atan2(|U_ba|, |U_aa|)`` is the rotation per period,
    ``g~ = theta / (2 pi T)``.
    """

    if period <= 0:
        raise OutOfRange("Period must be positive")

    theta = math.atan2(abs(U[b, a]), abs(U[a, a]))

    return theta / (2.0 * math.pi * period)


def _endpoints(device: DeviceLattice,
               endpoints: Sequence[int] = None) -> Tuple[int, int]:
    if endpoints is None:
        nodes = device.nodes
        endpoints = nodes if len(nodes) == 2 else (0, device.size - 1)

    a, b = (int(qubit) for qubit in endpoints)
    for qubit in (a, b):
        if not 0 <= qubit < device.size:
            raise OutOfRange("Qubit {} isn't on the device".format(qubit))

    return a, b


def floquet_effective(device: DeviceLattice, schedule: FloquetSchedule,
                      endpoints: Sequence[int] = None) -> EffectiveModel:
    """Two-site model with the rate measured from the period unitary.
    """

    a, b = _endpoints(device, endpoints)
    U = period_unitary(device, schedule)
    g_tilde = measure_rate(U, a, b, schedule.period)

    return EffectiveModel({
        "labels": [
            excitation_label(device.size, a),
            excitation_label(device.size, b)
        ],
        "qubits": [a, b],
        "method": "pew",
        "g_tilde": [[0.0, g_tilde], [g_tilde, 0.0]],
        "omega_tilde": [0.0, 0.0],
    })


def embed_effective(device: DeviceLattice, model: EffectiveModel,
                    endpoints: Sequence[int] = None) -> HamiltonianMatrix:
    """``omega I + g~ A_eff`` on the device's one-excitation basis.

    Connectors carry no coupling and the endpoints' model frequency.
    """

    a, b = _endpoints(device, endpoints)
    if len(model.labels) != 2:
        raise DimensionMismatch("Dynamic bridge models have two sites")

    space = single_excitation_space(device.size, device.levels)
    matrix = model.omega_tilde.mean() * np.eye(device.size)
    matrix[a, a], matrix[b, b] = model.omega_tilde
    matrix[a, b] = matrix[b, a] = model.g_tilde[0, 1]

    return HamiltonianMatrix(to_angular(matrix), space, "effective")


def _initial_label(device: DeviceLattice, initial: Union[str, int]) -> str:
    if isinstance(initial, int):
        if not 0 <= initial < device.size:
            raise OutOfRange("Qubit {} isn't on the device".format(initial))
        return excitation_label(device.size, initial)

    return str(initial)


def _intra_period(propagators: List[Tuple[Propagator, float]],
                  state: np.ndarray, steps: int
                  ) -> Tuple[List[float], List[np.ndarray]]:
    times, states = [], []
    elapsed = 0.0
    for propagator, duration in propagators:
        grid = np.linspace(0.0, duration, steps + 1)[1:]
        times.extend(elapsed + grid)
        states.extend(propagator.amplitudes(state, grid))
        state = states[-1]
        elapsed += duration

    return times, states


def simulate_pew(device: DeviceLattice, schedule: FloquetSchedule,
                 initial: Union[str, int], cycles: int = None,
                 effective: EffectiveModel = None,
                 endpoints: Sequence[int] = None, full: bool = False,
                 steps: int = 0) -> Tuple[StroboscopicResult, ErrorSeries]:
    """Piecewise-constant evolution sampled at period boundaries.

    Parameters
    ----------
    device : DeviceLattice
    schedule : FloquetSchedule
    initial : Union[str, int]
        Basis label, or the qubit holding the single excitation.
    cycles : int, optional
        Periods simulated, by default the schedule's.
    effective : EffectiveModel, optional
        Two-site reference on the endpoints, by default the rate
        measured from the period unitary.
    endpoints : Sequence[int], optional
        Bridge endpoints, by default the two non-connector qubits or
        the first and last qubit.
    full : bool, optional
        Simulate the truncated product space, by default False
    steps : int, optional
        Points per segment of the retained intra-period trace, 0 keeps
        none.

    Returns
    -------
    StroboscopicResult
    ErrorSeries
        Endpoint populations against the reference, at boundaries.

    Raises
    ------
    InvalidSchedule
    OutOfRange
        Empty schedule, or the initial state isn't on an endpoint.
    """

    if schedule.empty:
        raise InvalidSchedule("Schedule has no segments")

    cycles = schedule.cycles if cycles is None else int(cycles)
    if cycles < 0:
        raise OutOfRange("cycles must be nonnegative")

    a, b = _endpoints(device, endpoints)
    endpoint_labels = [
        excitation_label(device.size, a), excitation_label(device.size, b)
    ]
    label = _initial_label(device, initial)
    if label not in endpoint_labels:
        raise OutOfRange(
            "Initial state {} isn't on an endpoint".format(label)
        )

    period = schedule.period
    propagators = []
    H = None
    for segment in schedule.segments:
        H = segment_hamiltonian(device, segment, full)
        propagators.append((Propagator(H.matrix), segment.duration))

    U = np.eye(H.dimension, dtype=complex)
    for propagator, duration in propagators:
        U = propagator.unitary(duration) @ U
    _check_unitary(U)

    state = np.zeros(H.dimension, dtype=complex)
    state[H.index(label)] = 1.0

    samples = [state]
    trace_times, trace_states = [0.0], [state]
    for cycle in range(cycles):
        if steps:
            times, states = _intra_period(propagators, samples[-1], steps)
            trace_times.extend(cycle * period + np.array(times))
            trace_states.extend(states)
        samples.append(U @ samples[-1])

    times = period * np.arange(cycles + 1)
    strobe = EvolutionResult({
        "times": times,
        "populations": np.clip(np.abs(np.array(samples)) ** 2, 0.0, 1.0),
        "labels": H.labels,
        "initial": label,
        "model": "floquet",
    })

    continuous = None
    if steps:
        continuous = EvolutionResult({
            "times": trace_times,
            "populations": np.clip(
                np.abs(np.array(trace_states)) ** 2, 0.0, 1.0
            ),
            "labels": H.labels,
            "initial": label,
            "model": "floquet",
        })

    if effective is None:
        g_tilde = measure_rate(U, H.index(endpoint_labels[0]),
                               H.index(endpoint_labels[1]), period)
    else:
        g_tilde = effective.g_tilde[0, 1]

    reference = Propagator(to_angular(np.array([
        [0.0, g_tilde], [g_tilde, 0.0]
    ])))
    start = np.zeros(2, dtype=complex)
    start[endpoint_labels.index(label)] = 1.0
    expected = np.abs(reference.amplitudes(start, times)) ** 2

    errors = np.column_stack([
        np.abs(strobe.population(endpoint_labels[k]) - expected[:, k])
        for k in range(2)
    ])

    return (
        StroboscopicResult({
            "period": period,
            "samples": strobe,
            "continuous": continuous,
        }),
        ErrorSeries({
            "times": times,
            "labels": endpoint_labels,
            "values": errors,
        })
    )
