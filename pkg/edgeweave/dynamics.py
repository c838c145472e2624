"""Time evolution by spectral decomposition.

Every propagator is ``V exp(-i E t) V^+`` from one eigendecomposition,
exact up to roundoff at any time.
"""

from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from scipy import linalg

from .effective import effective_for_device, settings_hamiltonian
from .exceptions import (
    DimensionMismatch,
    GridMismatch,
    InvalidGraph,
    NegativeDuration,
    OutOfRange,
    UnknownBasisLabel
)
from .hamiltonian import HamiltonianMatrix, excitation_label
from .models.device import DeviceLattice
from .models.effective import EffectiveModel
from .models.evolution import ErrorSeries, EvolutionResult
from .models.graph import TargetGraph, WalkSpeed
from .settings import SolverSettings
from .units import FrequencyValue, to_angular


class Propagator:
    """Cached eigendecomposition of a Hermitian generator.

    Parameters
    ----------
    matrix : np.ndarray
        Generator in rad per time unit.
    """

    def __init__(self, matrix: np.ndarray) -> None:
        self.energies, self.vectors = linalg.eigh(matrix)

    def unitary(self, t: float) -> np.ndarray:
        return (self.vectors * np.exp(-1j * self.energies * t)) \
            @ self.vectors.conj().T

    def amplitudes(self, state: np.ndarray, times: Sequence[float]
                   ) -> np.ndarray:
        """Rows are ``exp(-iHt) state`` for each ``t``.
        """

        coefficients = self.vectors.conj().T @ state
        phases = np.exp(-1j * np.outer(times, self.energies))

        return (phases * coefficients) @ self.vectors.T


def _basis_vector(size: int, index: int) -> np.ndarray:
    state = np.zeros(size, dtype=complex)
    state[index] = 1.0
    return state


def _time_grid(t_grid: Sequence[float]) -> np.ndarray:
    times = np.asarray(t_grid, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise OutOfRange("Time grid must be a non-empty list")
    if np.any(times < 0):
        raise NegativeDuration("Time grid holds negative times")
    if np.any(np.diff(times) < 0):
        raise OutOfRange("Time grid must be sorted")

    return times


def _populations(amplitudes: np.ndarray) -> np.ndarray:
    populations = np.abs(amplitudes) ** 2
    # roundoff only, norm is checked by EvolutionResult
    return np.clip(populations, 0.0, 1.0)


def propagate(H: HamiltonianMatrix, state: np.ndarray, t: float
              ) -> np.ndarray:
    """``exp(-iHt) state`` for any real ``t``, negative included.
    """

    state = np.asarray(state, dtype=complex)
    if state.shape != (H.dimension,):
        raise DimensionMismatch(
            "State has shape {}, Hamiltonian is {}-dimensional".format(
                state.shape, H.dimension
            )
        )

    return Propagator(H.matrix).amplitudes(state, [t])[0]


def evolve(H: HamiltonianMatrix, initial: str, t_grid: Sequence[float],
           model: str = None) -> EvolutionResult:
    """Populations of every basis state over a time grid.

    Parameters
    ----------
    H : HamiltonianMatrix
    initial : str
        Basis label of the initial state.
    t_grid : Sequence[float]
        Sorted, nonnegative times in us.
    model : str, optional
        Tag stored on the result, by default taken from the
        Hamiltonian's provenance.

    Returns
    -------
    EvolutionResult

    Raises
    ------
    UnknownBasisLabel
    NegativeDuration
    """

    times = _time_grid(t_grid)
    start = _basis_vector(H.dimension, H.index(initial))
    amplitudes = Propagator(H.matrix).amplitudes(start, times)

    if model is None:
        model = "effective" if H.provenance == "effective" else "full"

    return EvolutionResult({
        "times": times,
        "populations": _populations(amplitudes),
        "labels": H.labels,
        "initial": initial,
        "model": model,
    })


def effective_hamiltonian(model: EffectiveModel) -> HamiltonianMatrix:
    """Effective model as a Hamiltonian on its own labels.
    """

    return HamiltonianMatrix(
        to_angular(model.matrix_mhz()), provenance="effective",
        labels=model.labels
    )


def _generator(graph: Union[TargetGraph, np.ndarray]) -> np.ndarray:
    if isinstance(graph, TargetGraph):
        return graph.adjacency.astype(float)

    matrix = np.asarray(graph, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidGraph("Weighted graph must be a square matrix")
    if not np.allclose(matrix, matrix.T, rtol=0, atol=1e-12):
        raise InvalidGraph("Weighted graph must be symmetric")

    return matrix


def _walk_scale(speed: Union[WalkSpeed, FrequencyValue, None]) -> float:
    if speed is None:
        return 1.0
    if isinstance(speed, WalkSpeed):
        speed = speed.J

    return to_angular(float(speed))


def ctqw_probability(graph: Union[TargetGraph, np.ndarray], j: int, k: int,
                     t: float,
                     speed: Union[WalkSpeed, FrequencyValue] = None
                     ) -> float:
    """``|<k| exp(-iAt) |j>|^2``.

    Parameters
    ----------
    graph : Union[TargetGraph, np.ndarray]
        Target graph, or a symmetric weight matrix.
    j : int
        Start vertex, 0-based.
    k : int
        End vertex, 0-based.
    t : float
        Dimensionless time, or us when a speed is given.
    speed : Union[WalkSpeed, FrequencyValue], optional
        Walk speed J in MHz. ``A`` is scaled by ``2 pi J``.

    Returns
    -------
    float
    """

    matrix = _generator(graph)
    size = matrix.shape[0]
    for vertex in (j, k):
        if not 0 <= vertex < size:
            raise OutOfRange(
                "Vertex {} outside 0..{}".format(vertex, size - 1)
            )

    amplitude = Propagator(_walk_scale(speed) * matrix).amplitudes(
        _basis_vector(size, j), [t]
    )[0, k]

    return float(abs(amplitude) ** 2)


def ctqw_evolve(graph: Union[TargetGraph, np.ndarray], j: int,
                t_grid: Sequence[float],
                speed: Union[WalkSpeed, FrequencyValue] = None
                ) -> EvolutionResult:
    """Walker distribution over every vertex for a time grid.
    """

    matrix = _generator(graph)
    size = matrix.shape[0]
    if not 0 <= j < size:
        raise OutOfRange("Vertex {} outside 0..{}".format(j, size - 1))

    times = _time_grid(t_grid)
    amplitudes = Propagator(_walk_scale(speed) * matrix).amplitudes(
        _basis_vector(size, j), times
    )

    return EvolutionResult({
        "times": times,
        "populations": _populations(amplitudes),
        "labels": [str(vertex) for vertex in range(size)],
        "initial": str(j),
        "model": "ctqw",
    })


def population_error(full: EvolutionResult, eff: EvolutionResult,
                     mapping: Dict[str, str] = None) -> ErrorSeries:
    """``E_k(t) = |p_k_full(t) - p_k_eff(t)|`` per tracked state.

    Parameters
    ----------
    full : EvolutionResult
    eff : EvolutionResult
    mapping : Dict[str, str], optional
        Effective label to full label, by default every effective label
        maps to itself.

    Returns
    -------
    ErrorSeries
        Labelled by the full-model labels.

    Raises
    ------
    GridMismatch
    UnknownBasisLabel
    """

    if full.times.shape != eff.times.shape \
            or not np.array_equal(full.times, eff.times):
        raise GridMismatch()

    if mapping is None:
        mapping = {label: label for label in eff.labels}

    missing = [label for label in eff.labels if label not in mapping]
    if missing:
        raise UnknownBasisLabel(
            "Mapping misses effective states {}".format(missing)
        )

    tracked: List[str] = []
    columns = []
    for label in eff.labels:
        target = mapping[label]
        tracked.append(target)
        columns.append(np.abs(full.population(target) - eff.population(label)))

    return ErrorSeries({
        "times": full.times,
        "labels": tracked,
        "values": np.column_stack(columns),
    })


class WalkSpeedReport:
    """Per-edge deviation of effective couplings from a walk speed.

    Attributes
    ----------
    J : float
    edges : List[tuple]
        ``(a, b, g_tilde, deviation, flagged)``.
    parasitic : List[tuple]
        Couplings below a tenth of J, ``(a, b, g_tilde)``.
    """

    def __init__(self, J: float, edges: List[tuple],
                 parasitic: List[tuple]) -> None:
        self.J = J
        self.edges = edges
        self.parasitic = parasitic

    @property
    def flagged(self) -> List[tuple]:
        return [edge for edge in self.edges if edge[4]]

    def deviation(self, a: str, b: str) -> float:
        for first, second, _, deviation, _ in self.edges:
            if {first, second} == {str(a), str(b)}:
                return deviation

        raise UnknownBasisLabel("No edge {}-{} in this report".format(a, b))


def compare_walkspeed(eff_model: EffectiveModel,
                      J: Union[WalkSpeed, FrequencyValue],
                      tolerance: float = 0.05,
                      parasitic_fraction: float = 0.1) -> WalkSpeedReport:
    """Relative deviation ``| |g| - J | / J`` on every effective edge.

    Couplings smaller than ``parasitic_fraction * J`` are listed apart
    as parasitic long-range terms instead of edges.
    """

    if isinstance(J, WalkSpeed):
        J = J.J
    J = float(J)
    if J <= 0:
        raise OutOfRange("Walk speed must be positive")

    edges = []
    parasitic = []
    for a, b, g in eff_model.pairs():
        if abs(g) < parasitic_fraction * J:
            if g != 0:
                parasitic.append((a, b, g))
            continue

        deviation = abs(abs(g) - J) / J
        edges.append((a, b, g, deviation, deviation > tolerance))

    return WalkSpeedReport(J, edges, parasitic)


def walkspeed_for_device(device: DeviceLattice,
                         J: Union[WalkSpeed, FrequencyValue],
                         method: str = None,
                         subspace: Sequence[Union[str, int]] = None,
                         settings: SolverSettings = None
                         ) -> WalkSpeedReport:
    """Effective model of a device checked against ``J`` with the
    settings' walk tolerance.
    """

    settings = settings or SolverSettings()

    return compare_walkspeed(
        effective_for_device(device, method, subspace, settings), J,
        settings.payload["walk_tolerance"]
    )


def model_mapping(device: DeviceLattice, model: EffectiveModel
                  ) -> Dict[str, str]:
    """Effective label to the device's basis label of the same qubit.
    """

    if model.qubits is None:
        return {label: label for label in model.labels}

    return {
        label: excitation_label(device.size, qubit)
        for label, qubit in zip(model.labels, model.qubits)
    }


def compare_dynamics(device: DeviceLattice, initial: str,
                     t_grid: Sequence[float], method: str = None,
                     settings: SolverSettings = None, full: bool = None,
                     subspace: Sequence[Union[str, int]] = None
                     ) -> Tuple[EvolutionResult, EvolutionResult,
                                ErrorSeries]:
    """Evolves a device and its effective model side by side.

    Parameters
    ----------
    device : DeviceLattice
    initial : str
        Device basis label, must be a state the effective model keeps.
    t_grid : Sequence[float]
    method : str, optional
        Effective method, by default the settings' (ebd-la).
    settings : SolverSettings, optional
    full : bool, optional
        Product space or one-excitation block, by default by size.
    subspace : Sequence[Union[str, int]], optional
        Kept states for ebd-la.

    Returns
    -------
    EvolutionResult
        Full model.
    EvolutionResult
        Effective model, on its own labels.
    ErrorSeries
        Per tracked qubit, labelled like the full model.

    Raises
    ------
    UnknownBasisLabel
        ``initial`` isn't kept by the effective model.
    """

    H = settings_hamiltonian(device, settings, full)
    model = effective_for_device(device, method, subspace, settings, full)
    mapping = model_mapping(device, model)

    inverse = {target: label for label, target in mapping.items()}
    if str(initial) not in inverse:
        raise UnknownBasisLabel(
            "{} isn't a state of the effective model".format(initial)
        )

    full_result = evolve(H, initial, t_grid)
    effective_result = evolve(
        effective_hamiltonian(model), inverse[str(initial)], t_grid
    )

    return (
        full_result,
        effective_result,
        population_error(full_result, effective_result, mapping)
    )
