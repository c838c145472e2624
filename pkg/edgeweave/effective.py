"""Effective couplings mediated by detuned connector qubits.

Closed forms come from Bloch perturbation theory on the subspace where
every connector sits in its ground state. Bloch effective Hamiltonians
are not Hermitian, the two off-diagonal coefficients are averaged.
"""

from typing import List, Sequence, Tuple, Union

import logging
import math

import numpy as np

from scipy import linalg
from scipy import special
from scipy import stats

from .exceptions import (
    AmbiguousAssignment,
    DimensionMismatch,
    InvalidDevice,
    NumericalError,
    OutOfRange,
    UnknownMethod,
    ZeroDetuning
)
from .hamiltonian import (
    FockSpace,
    HamiltonianMatrix,
    build_bhm,
    excitation_label,
    hopping_hamiltonian,
    single_excitation_space
)
from .models.device import DeviceLattice, chain_device
from .models.effective import DetuningSet, EffectiveModel
from .settings import SolverSettings
from .units import FrequencyValue, to_angular, to_linear


FULL_SPACE_LIMIT = 1024
STAR_P_MAX = 50


def _detunings(bound: float, couplings: Sequence[FrequencyValue],
               **deltas: FrequencyValue) -> DetuningSet:
    detunings = DetuningSet(deltas)

    if not detunings.dispersive(couplings, bound):
        logging.warning(
            "|g/Delta| = {:.3f} is outside the dispersive regime "
            "(bound {}), perturbative couplings are unreliable".format(
                detunings.ratio(couplings), bound
            )
        )

    return detunings


def _averaged(matrix: np.ndarray) -> np.ndarray:
    return (matrix + matrix.T) / 2.0


def _three_qubit_terms(g12: float, g23: float, d1: float, d3: float,
                       order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Bloch V_eff on ``{|100>, |001>}`` before averaging.

    Returns the (non-symmetric) coupling matrix and the diagonal shifts.
    """

    sigma = g12 ** 2 / d1 + g23 ** 2 / d3

    v = np.zeros((2, 2))
    # second order
    v[1, 0] = g12 * g23 / d1
    v[0, 1] = g12 * g23 / d3
    v[0, 0] = g12 ** 2 / d1
    v[1, 1] = g23 ** 2 / d3

    if order >= 4:
        v[1, 0] -= g12 * g23 / d1 ** 2 * sigma
        v[0, 1] -= g12 * g23 / d3 ** 2 * sigma
        v[0, 0] -= g12 ** 2 / d1 ** 2 * sigma
        v[1, 1] -= g23 ** 2 / d3 ** 2 * sigma

    return v, np.diag(v).copy()


def bloch_three_qubit(g12: FrequencyValue, g23: FrequencyValue,
                      delta1: FrequencyValue, delta3: FrequencyValue,
                      order: int = 4, omega_connector: FrequencyValue = 0.0,
                      bound: float = 0.25) -> EffectiveModel:
    """Effective Q1-Q3 coupling across one connector.

    Parameters
    ----------
    g12 : FrequencyValue
    g23 : FrequencyValue
    delta1 : FrequencyValue
        ``w1 - w2`` in MHz.
    delta3 : FrequencyValue
        ``w3 - w2`` in MHz.
    order : int, optional
        2 or 4, by default 4
    omega_connector : FrequencyValue, optional
        Connector frequency, added to the reported frequencies,
        by default 0.0
    bound : float, optional
        Dispersive warning bound on |g/Delta|, by default 0.25

    Returns
    -------
    EffectiveModel
        Labels Q1 and Q3.

    Raises
    ------
    ZeroDetuning
    """

    if order not in (2, 4):
        raise OutOfRange("Bloch order must be 2 or 4")

    _detunings(bound, (g12, g23), Q1=delta1, Q3=delta3)
    v, shifts = _three_qubit_terms(g12, g23, delta1, delta3, order)

    return EffectiveModel({
        "labels": ["Q1", "Q3"],
        "qubits": [0, 2],
        "method": "bloch{}".format(order),
        "g_tilde": _averaged(v - np.diag(shifts)),
        "omega_tilde": omega_connector + np.array([delta1, delta3]) + shifts,
    })


def bloch_four_chain(g12: FrequencyValue, g23: FrequencyValue,
                     g34: FrequencyValue, delta1: FrequencyValue,
                     delta3: FrequencyValue, delta4: FrequencyValue,
                     omega_connector: FrequencyValue = 0.0,
                     bound: float = 0.25) -> EffectiveModel:
    """Four-qubit chain Q1-Q2-Q3-Q4 with Q2 as the connector.

    Frequency shifts only account for eliminating the connector, Q4 is
    left at its bare detuning.

    Returns
    -------
    EffectiveModel
        Labels Q1, Q3 and Q4.
    """

    _detunings(bound, (g12, g23), Q1=delta1, Q3=delta3, Q4=delta4)
    sigma13 = g23 ** 2 / delta3 + g12 ** 2 / delta1

    g13 = g23 * g12 / 2.0 * (
        1.0 / delta3 + 1.0 / delta1
        + g34 ** 2 / (delta4 * delta3 ** 2)
        - sigma13 * (1.0 / delta3 ** 2 + 1.0 / delta1 ** 2)
    )
    g34_tilde = g34 - g23 ** 2 * g34 / (delta3 * delta4)
    g14 = -g34 * g23 * g12 / (delta3 * delta4)

    _, shifts = _three_qubit_terms(g12, g23, delta1, delta3, 4)

    return EffectiveModel({
        "labels": ["Q1", "Q3", "Q4"],
        "qubits": [0, 2, 3],
        "method": "bloch4",
        "g_tilde": [
            [0.0, g13, g14],
            [g13, 0.0, g34_tilde],
            [g14, g34_tilde, 0.0],
        ],
        "omega_tilde": omega_connector + np.array([
            delta1 + shifts[0], delta3 + shifts[1], delta4
        ]),
    })


def bloch_2d(g12: FrequencyValue, g23: FrequencyValue,
             g34: FrequencyValue, g35: FrequencyValue,
             delta1: FrequencyValue, delta3: FrequencyValue,
             delta4: FrequencyValue, delta5: FrequencyValue,
             omega_connector: FrequencyValue = 0.0,
             bound: float = 0.25) -> EffectiveModel:
    """T-shaped five-qubit patch, Q3 coupled to Q2, Q4 and Q5.

    Returns
    -------
    EffectiveModel
        Labels Q1, Q3, Q4 and Q5. Q4-Q5 stays uncoupled.
    """

    _detunings(
        bound, (g12, g23),
        Q1=delta1, Q3=delta3, Q4=delta4, Q5=delta5
    )
    sigma13 = g23 ** 2 / delta3 + g12 ** 2 / delta1
    sigma45 = g34 ** 2 / delta4 + g35 ** 2 / delta5

    g13 = g23 * g12 / 2.0 * (
        1.0 / delta3 + 1.0 / delta1 + sigma45 / delta3 ** 2
        - (1.0 / delta3 ** 2 + 1.0 / delta1 ** 2) * sigma13
    )
    g34_tilde = g34 - g34 * g23 ** 2 / (delta3 * delta4)
    g35_tilde = g35 - g35 * g23 ** 2 / (delta3 * delta5)
    g14 = -g12 * g23 * g34 / (delta3 * delta4)
    g15 = -g35 * g23 * g12 / (delta3 * delta5)

    _, shifts = _three_qubit_terms(g12, g23, delta1, delta3, 4)

    return EffectiveModel({
        "labels": ["Q1", "Q3", "Q4", "Q5"],
        "qubits": [0, 2, 3, 4],
        "method": "bloch4",
        "g_tilde": [
            [0.0, g13, g14, g15],
            [g13, 0.0, g34_tilde, g35_tilde],
            [g14, g34_tilde, 0.0, 0.0],
            [g15, g35_tilde, 0.0, 0.0],
        ],
        "omega_tilde": omega_connector + np.array([
            delta1 + shifts[0], delta3 + shifts[1], delta4, delta5
        ]),
    })


def catalan(p: int) -> int:
    """Catalan number ``binom(2p, p) / (p + 1)``, exact.

    Raises
    ------
    OutOfRange
        ``p`` negative or not an integer.
    """

    if isinstance(p, bool) or int(p) != p or p < 0:
        raise OutOfRange(
            "Catalan index must be a nonnegative integer, got {!r}".format(p)
        )

    p = int(p)

    return int(special.comb(2 * p, p, exact=True)) // (p + 1)


def star_converges(n_peripheral: int, g: FrequencyValue,
                   delta: FrequencyValue) -> bool:
    """``N < Delta^2 / 4g^2``.
    """

    if g == 0:
        return True

    return n_peripheral < delta ** 2 / (4.0 * g ** 2)


def star_partial_sums(n_peripheral: int, g: FrequencyValue,
                      delta: FrequencyValue, p_max: int) -> List[float]:
    """Partial sums of the Catalan series for p = 0..p_max.
    """

    if delta == 0:
        raise ZeroDetuning()
    if p_max < 0:
        raise OutOfRange("p_max must be nonnegative")

    x = -n_peripheral * g ** 2 / delta ** 2
    prefactor = g ** 2 / delta

    # C_p x^p by the ratio C_p / C_{p-1} = 2(2p - 1) / (p + 1)
    sums = []
    total = 0.0
    term = prefactor
    for p in range(p_max + 1):
        if p:
            term *= x * 2.0 * (2 * p - 1) / (p + 1)
        total += term
        sums.append(total)

    return sums


def star_series(n_peripheral: int, g: FrequencyValue,
                delta: FrequencyValue, p_max: int = STAR_P_MAX
                ) -> Tuple[FrequencyValue, bool]:
    """Peripheral-peripheral coupling of a star, Catalan series.

    Parameters
    ----------
    n_peripheral : int
    g : FrequencyValue
        Hub coupling in MHz.
    delta : FrequencyValue
        Peripheral minus hub frequency in MHz.
    p_max : int, optional
        Last term kept, by default 50

    Returns
    -------
    FrequencyValue
        Partial sum in MHz.
    bool
        Whether ``N < Delta^2 / 4g^2``.
    """

    return (
        star_partial_sums(n_peripheral, g, delta, p_max)[-1],
        star_converges(n_peripheral, g, delta)
    )


def star_closed(n_peripheral: int, g: FrequencyValue,
                delta: FrequencyValue) -> FrequencyValue:
    """Resummed star coupling
    ``sign(Delta) (sqrt(Delta^2 + 4Ng^2) - |Delta|) / 2N``.
    """

    if n_peripheral < 1:
        raise OutOfRange("A star needs at least one peripheral")
    if delta == 0:
        raise ZeroDetuning()

    return math.copysign(1.0, delta) * (
        math.sqrt(delta ** 2 + 4.0 * n_peripheral * g ** 2) - abs(delta)
    ) / (2.0 * n_peripheral)


def star_matrix(n_peripheral: int, g: FrequencyValue,
                delta: FrequencyValue,
                omega_connector: FrequencyValue = 0.0) -> HamiltonianMatrix:
    """Single-excitation arrowhead Hamiltonian, hub first.
    """

    size = n_peripheral + 1
    matrix = np.diag(
        [omega_connector] + [omega_connector + delta] * (size - 1)
    )
    matrix[0, 1:] = matrix[1:, 0] = g

    space = single_excitation_space(size, 2)
    return HamiltonianMatrix(to_angular(matrix), space, "single-excitation")


def star_model(n_peripheral: int, g: FrequencyValue, delta: FrequencyValue,
               closed: bool = True, p_max: int = STAR_P_MAX,
               omega_connector: FrequencyValue = 0.0,
               labels: Sequence[str] = None,
               qubits: Sequence[int] = None) -> EffectiveModel:
    """Uniform effective model on the peripherals of a star.

    Every peripheral pair couples with the star coupling and every
    peripheral is shifted by the same amount.
    """

    if closed:
        value = star_closed(n_peripheral, g, delta)
    else:
        value, converges = star_series(n_peripheral, g, delta, p_max)
        if not converges:
            logging.warning(
                "Star series with N = {} is outside its convergence "
                "radius {:.2f}".format(
                    n_peripheral, delta ** 2 / (4.0 * g ** 2)
                )
            )

    if labels is None:
        labels = ["P{}".format(i + 1) for i in range(n_peripheral)]

    g_tilde = np.full((n_peripheral, n_peripheral), value)
    np.fill_diagonal(g_tilde, 0.0)

    return EffectiveModel({
        "labels": labels,
        "qubits": list(qubits) if qubits is not None else None,
        "method": "star-closed" if closed else "star-series",
        "g_tilde": g_tilde,
        "omega_tilde": np.full(
            n_peripheral, omega_connector + delta + value
        ),
    })


def _inverse_sqrt(matrix: np.ndarray, tolerance: float) -> np.ndarray:
    values, vectors = linalg.eigh(matrix)
    if values.min() <= tolerance:
        raise AmbiguousAssignment(
            "Assigned eigenvectors don't span the subspace"
        )

    return (vectors / np.sqrt(values)) @ vectors.conj().T


def ebd_la(H: HamiltonianMatrix, subspace: Sequence[str],
           tie_tolerance: float = 1e-9) -> EffectiveModel:
    """Exact block diagonalization by least action.

    Eigenvectors of ``H`` are assigned to the subspace greedily by their
    weight on it. With ``Z`` the subspace rows of the assigned vectors
    and ``L`` their energies the effective block is
    ``(ZZ^+)^-1/2 Z L Z^+ (ZZ^+)^-1/2``, the subspace block of the
    block-diagonalizing unitary closest to identity.

    Parameters
    ----------
    H : HamiltonianMatrix
    subspace : Sequence[str]
        Basis labels, a strict subset of ``H``'s basis.
    tie_tolerance : float, optional
        Weight gap at the assignment cut below which the choice is
        ambiguous, by default 1e-9

    Returns
    -------
    EffectiveModel
        Couplings and frequencies in MHz, ``matrix`` in rad/us.

    Raises
    ------
    UnknownBasisLabel
    DimensionMismatch
        Subspace empty, repeated or not a strict subset.
    AmbiguousAssignment
    """

    labels = [str(label) for label in subspace]
    if not labels or len(set(labels)) != len(labels):
        raise DimensionMismatch("Subspace labels must be distinct")
    if len(labels) >= H.dimension:
        raise DimensionMismatch("Subspace must be a strict subset")

    rows = [H.index(label) for label in labels]
    energies, vectors = linalg.eigh(H.matrix)

    block = vectors[rows, :]
    weights = np.sum(np.abs(block) ** 2, axis=0)
    order = np.argsort(-weights, kind="stable")

    k = len(rows)
    if weights[order[k - 1]] - weights[order[k]] <= tie_tolerance:
        raise AmbiguousAssignment(
            "Eigenvectors {} and {} tie on the subspace "
            "(weights {:.3e}, {:.3e})".format(
                order[k - 1], order[k],
                weights[order[k - 1]], weights[order[k]]
            )
        )

    chosen = np.sort(order[:k])
    z = block[:, chosen]
    polar = _inverse_sqrt(z @ z.conj().T, tie_tolerance) @ z
    matrix = (polar * energies[chosen]) @ polar.conj().T
    matrix = (matrix + matrix.conj().T) / 2.0

    mhz = to_linear(matrix).real
    qubits = None
    if H.space is not None:
        states = [H.space.states[row] for row in rows]
        if all(sum(state) == 1 for state in states):
            qubits = [state.index(1) for state in states]

    return EffectiveModel({
        "labels": labels,
        "qubits": qubits,
        "method": "ebd-la",
        "g_tilde": mhz - np.diag(np.diag(mhz)),
        "omega_tilde": np.diag(mhz),
        "matrix": matrix,
    })


def sew_chain(n_connectors: int, g: FrequencyValue, delta: FrequencyValue,
              omega: FrequencyValue = 4500.0, alpha: FrequencyValue = -250.0,
              levels: int = 3) -> DeviceLattice:
    """Node, ``n_connectors`` detuned connectors, node.
    """

    if n_connectors < 1:
        raise OutOfRange("A static bridge needs at least one connector")
    if delta == 0:
        raise ZeroDetuning()

    omegas = [omega] + [omega - delta] * n_connectors + [omega]

    return chain_device(
        omegas, [g] * (n_connectors + 1), alpha=alpha, levels=levels,
        connectors=range(1, n_connectors + 1),
        name="sew-chain-{}".format(n_connectors)
    )


def node_subspace(device: DeviceLattice) -> List[str]:
    """Single-excitation labels of every non-connector qubit.
    """

    if not device.connectors:
        raise InvalidDevice(
            "Device marks no connectors, pass a subspace explicitly"
        )

    return [excitation_label(device.size, i) for i in device.nodes]


def device_hamiltonian(device: DeviceLattice, full: bool = None,
                       levels: int = None, tolerance: float = 1e-12
                       ) -> HamiltonianMatrix:
    """Full product-space Hamiltonian when it has at most 1024 states
    (or when ``full``), else the one-excitation block.

    ``levels`` truncates every qubit of the product space the same
    way instead of by the device's own levels.
    """

    levels = device.levels if levels is None else [levels] * device.size

    if full is None:
        full = int(np.prod(levels)) <= FULL_SPACE_LIMIT

    if full:
        return build_bhm(
            device, FockSpace(device.size, levels), tolerance
        )

    return hopping_hamiltonian(device, tolerance)


def settings_hamiltonian(device: DeviceLattice,
                         settings: SolverSettings = None,
                         full: bool = None) -> HamiltonianMatrix:
    """:func:`device_hamiltonian` with the truncation and Hermiticity
    tolerance of ``settings``.
    """

    settings = settings or SolverSettings()

    return device_hamiltonian(
        device, full, settings.payload["levels"],
        settings.payload["hermitian_tolerance"]
    )


def sew_coupling(n_connectors: int, g: FrequencyValue,
                 delta: FrequencyValue, omega: FrequencyValue = 4500.0,
                 full: bool = False, tie_tolerance: float = 1e-9
                 ) -> FrequencyValue:
    """EBD-LA end-to-end coupling of one static chain.
    """

    device = sew_chain(n_connectors, g, delta, omega)
    model = ebd_la(
        device_hamiltonian(device, full), node_subspace(device),
        tie_tolerance
    )

    return float(model.g_tilde[0, 1])


def sew_scaling(n_connectors: int, g: FrequencyValue, delta: FrequencyValue,
                omega: FrequencyValue = 4500.0, full: bool = False,
                tie_tolerance: float = 1e-9
                ) -> List[Tuple[int, FrequencyValue]]:
    """End-to-end coupling of static chains with 1..n_connectors
    connectors.

    Parameters
    ----------
    n_connectors : int
        Longest chain.
    g : FrequencyValue
    delta : FrequencyValue
        Node minus connector frequency in MHz.
    omega : FrequencyValue, optional
        Node frequency, by default 4500.0
    full : bool, optional
        Use the truncated product space instead of the one-excitation
        block, by default False. Both give the same couplings.

    Returns
    -------
    List[Tuple[int, FrequencyValue]]
    """

    return [
        (count, sew_coupling(count, g, delta, omega, full, tie_tolerance))
        for count in range(1, n_connectors + 1)
    ]


def fit_decay(points: Sequence[Tuple[int, FrequencyValue]]
              ) -> Tuple[float, float, float]:
    """Linear fit of ``ln|g|`` against the connector count.

    Returns
    -------
    float
        Slope.
    float
        Intercept.
    float
        R squared.
    """

    counts = [count for count, _ in points]
    logs = [math.log(abs(value)) for _, value in points]
    fit = stats.linregress(counts, logs)

    return fit.slope, fit.intercept, fit.rvalue ** 2


def coupling_map(connector_omegas: Sequence[FrequencyValue],
                 couplings: Sequence[FrequencyValue],
                 omega: FrequencyValue = 4500.0,
                 alpha: FrequencyValue = -250.0,
                 levels: int = 3) -> List[Tuple[float, float, float]]:
    """``g13 / g`` of the three-qubit chain over connector frequency and
    coupling, from the full truncated space.

    Points where the assignment is ambiguous, e.g. at resonance, are
    reported as nan.
    """

    rows = []
    for omega2 in connector_omegas:
        for g in couplings:
            device = chain_device(
                [omega, omega2, omega], [g, g], alpha=alpha, levels=levels,
                connectors=[1]
            )
            H = build_bhm(device, FockSpace(3, levels))

            try:
                value = ebd_la(H, node_subspace(device)).g_tilde[0, 1] / g
            except (NumericalError, ZeroDivisionError):
                value = float("nan")

            rows.append((float(omega2), float(g), float(value)))

    return rows


def compensate_frequency(model: EffectiveModel, target: str,
                         reference: str) -> FrequencyValue:
    """Frequency change on ``target`` that lines its shifted frequency
    up with ``reference``.
    """

    return model.frequency(reference) - model.frequency(target)


def _as_labels(device: DeviceLattice,
               subspace: Sequence[Union[str, int]]) -> List[str]:
    return [
        excitation_label(device.size, int(item))
        if isinstance(item, int) else str(item)
        for item in subspace
    ]


def _star_layout(device: DeviceLattice) -> Tuple[int, List[int]]:
    if device.connectors:
        hub = device.connectors[0]
    else:
        hub = max(
            range(device.size),
            key=lambda index: (len(device.neighbours(index)), -index)
        )

    return hub, device.neighbours(hub)


def effective_for_device(device: DeviceLattice, method: str = None,
                         subspace: Sequence[Union[str, int]] = None,
                         settings: SolverSettings = None,
                         full: bool = None) -> EffectiveModel:
    """Effective model of a device by method tag.

    Bloch methods read the device in qubit order as Q1..Qn with Q2 the
    connector: 3 qubits give the chain formula, 4 the four-qubit chain
    and 5 the T-shaped patch. Star methods use the first marked
    connector, else the best-connected qubit, as the hub.

    Parameters
    ----------
    device : DeviceLattice
    method : str, optional
        Method tag, by default the settings' method.
    subspace : Sequence[Union[str, int]], optional
        Labels or qubit indices for ebd-la, by default every
        non-connector qubit.
    settings : SolverSettings, optional
    full : bool, optional
        Force the product space (True) or the one-excitation block
        (False) for ebd-la, by default chosen by size.

    Raises
    ------
    UnknownMethod
    InvalidDevice
    """

    settings = settings or SolverSettings()
    method = method or settings.payload["method"]
    bound = settings.payload["dispersive_bound"]

    if method == "ebd-la":
        labels = (
            _as_labels(device, subspace) if subspace is not None
            else node_subspace(device)
        )
        return ebd_la(
            settings_hamiltonian(device, settings, full), labels,
            settings.payload["tie_tolerance"]
        )

    if method in ("bloch2", "bloch4"):
        w = device.omegas
        g = device.coupling
        deltas = [w[i] - w[1] for i in range(device.size)]

        if device.size == 3:
            return bloch_three_qubit(
                g(0, 1), g(1, 2), deltas[0], deltas[2],
                order=int(method[-1]), omega_connector=w[1], bound=bound
            )

        if method == "bloch2":
            raise UnknownMethod(
                "bloch2 is only defined for the three-qubit chain"
            )

        if device.size == 4:
            return bloch_four_chain(
                g(0, 1), g(1, 2), g(2, 3), deltas[0], deltas[2], deltas[3],
                omega_connector=w[1], bound=bound
            )

        if device.size == 5:
            return bloch_2d(
                g(0, 1), g(1, 2), g(2, 3), g(2, 4),
                deltas[0], deltas[2], deltas[3], deltas[4],
                omega_connector=w[1], bound=bound
            )

        raise InvalidDevice("Bloch formulas cover 3, 4 or 5 qubits")

    if method in ("star-series", "star-closed"):
        hub, peripherals = _star_layout(device)
        if not peripherals:
            raise InvalidDevice("Star hub has no neighbours")

        first = peripherals[0]
        return star_model(
            len(peripherals), device.coupling(hub, first),
            device.omegas[first] - device.omegas[hub],
            closed=method == "star-closed",
            omega_connector=device.omegas[hub],
            labels=[excitation_label(device.size, p) for p in peripherals],
            qubits=peripherals
        )

    raise UnknownMethod("Unknown method {!r}".format(method))

