"""Truncated Bose-Hubbard Hamiltonians.

``H = sum_j (w_j n_j + (a_j / 2) n_j (n_j - 1))
+ sum_<jk> g_jk (a_j^+ a_k + a_j a_k^+)``, assembled densely in rad/us.
"""

from __future__ import annotations
from itertools import product
from typing import Dict, List, Sequence, Tuple, Union

import math

import numpy as np

from .exceptions import (
    DimensionMismatch,
    NonHermitian,
    OutOfRange,
    UnknownBasisLabel
)
from .models.device import DeviceLattice
from .units import to_angular, to_linear


State = Tuple[int, ...]

PROVENANCES = ("full", "single-excitation", "effective")


def state_label(state: State) -> str:
    """``(1, 0, 0)`` -> ``"100"``. Levels above 9 are comma separated.
    """

    if all(n < 10 for n in state):
        return "".join(str(n) for n in state)

    return ",".join(str(n) for n in state)


def excitation_label(sites: int, site: int) -> str:
    """Label of one excitation on ``site``.
    """

    return state_label(tuple(int(k == site) for k in range(sites)))


class FockSpace:
    """Product basis ``|n_1 ... n_N>`` with ``n_i < d_i``.

    States are enumerated lexicographically in ``(n_1, ..., n_N)``,
    optionally keeping only a fixed total excitation number.

    Attributes
    ----------
    levels : Tuple[int, ...]
        Truncation per site.
    excitations : int
        Total excitation number kept, None when unrestricted.
    states : List[State]
    labels : List[str]
    """

    def __init__(self, sites: int, levels: Union[int, Sequence[int]] = 3,
                 excitations: int = None,
                 states: Sequence[State] = None) -> None:
        if sites < 1:
            raise OutOfRange("A Fock space needs at least one site")

        if isinstance(levels, int):
            levels = [levels] * sites
        if len(levels) != sites:
            raise DimensionMismatch(
                "{} levels given for {} sites".format(len(levels), sites)
            )
        if any(d < 2 for d in levels):
            raise OutOfRange("Every site needs at least two levels")

        self.levels = tuple(int(d) for d in levels)
        self.excitations = excitations

        if states is None:
            states = [
                state for state in product(*(range(d) for d in self.levels))
                if excitations is None or sum(state) == excitations
            ]
        self.states = [tuple(state) for state in states]
        if not self.states:
            raise OutOfRange("Fock space is empty")

        self.labels = [state_label(state) for state in self.states]
        self._index = {label: i for i, label in enumerate(self.labels)}

    @property
    def sites(self) -> int:
        return len(self.levels)

    @property
    def dimension(self) -> int:
        return len(self.states)

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownBasisLabel(
                "{} isn't a state of this space".format(label)
            )

    def single_excitation_indices(self) -> List[int]:
        """Indices of ``|b_j>`` in site order, missing ones skipped.
        """

        return [
            self._index[label]
            for label in (
                excitation_label(self.sites, site)
                for site in range(self.sites)
            )
            if label in self._index
        ]


def single_excitation_space(sites: int,
                            levels: Union[int, Sequence[int]] = 3
                            ) -> FockSpace:
    """One-excitation space ordered by excited site, ``|b_1>`` first.
    """

    return FockSpace(
        sites, levels, excitations=1,
        states=[
            tuple(int(k == site) for k in range(sites))
            for site in range(sites)
        ]
    )


class HamiltonianMatrix:
    """Dense Hermitian matrix in rad/us over a basis.

    Attributes
    ----------
    matrix : np.ndarray
        Complex, read only.
    labels : List[str]
    space : FockSpace
        None for matrices built from raw arrays.
    provenance : str
        full, single-excitation or effective.
    """

    def __init__(self, matrix, space: FockSpace = None,
                 provenance: str = "full", labels: Sequence[str] = None,
                 tolerance: float = 1e-12) -> None:
        matrix = np.array(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatch(
                "Hamiltonian must be square, got {}".format(matrix.shape)
            )

        if space is not None:
            labels = space.labels
        elif labels is None:
            labels = [str(i) for i in range(matrix.shape[0])]

        if len(labels) != matrix.shape[0]:
            raise DimensionMismatch(
                "{} labels for a {}-dimensional matrix".format(
                    len(labels), matrix.shape[0]
                )
            )

        scale = max(np.abs(matrix).max(), 1.0)
        if np.abs(matrix - matrix.conj().T).max() > tolerance * scale:
            raise NonHermitian()

        if provenance not in PROVENANCES:
            raise OutOfRange("Unknown provenance {}".format(provenance))

        matrix.setflags(write=False)
        self.matrix = matrix
        self.space = space
        self.provenance = provenance
        self.labels = [str(label) for label in labels]
        self._index = {label: i for i, label in enumerate(self.labels)}

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownBasisLabel(
                "{} isn't a basis state of this Hamiltonian".format(label)
            )

    def in_mhz(self) -> np.ndarray:
        return to_linear(self.matrix)


def _levels(device: DeviceLattice, space: FockSpace) -> None:
    if space.sites != device.size:
        raise DimensionMismatch(
            "Space has {} sites, device has {} qubits".format(
                space.sites, device.size
            )
        )


def build_bhm(device: DeviceLattice, space: FockSpace,
              tolerance: float = 1e-12) -> HamiltonianMatrix:
    """Assembles the Bose-Hubbard Hamiltonian of a device.

    Parameters
    ----------
    device : DeviceLattice
    space : FockSpace
        Must have one site per qubit. Hopping between states outside
        the space is dropped, which is exact for excitation-restricted
        spaces.
    tolerance : float, optional
        Relative Hermiticity tolerance, by default 1e-12

    Returns
    -------
    HamiltonianMatrix
        In rad/us.

    Raises
    ------
    DimensionMismatch
    NonHermitian
    """

    _levels(device, space)

    omegas = device.omegas
    alphas = device.alphas
    matrix = np.zeros((space.dimension, space.dimension), dtype=complex)
    index: Dict[State, int] = {
        state: i for i, state in enumerate(space.states)
    }

    for column, state in enumerate(space.states):
        n = np.array(state)
        matrix[column, column] = float(
            np.dot(omegas, n) + np.dot(alphas / 2.0, n * (n - 1))
        )

        for coupler in device.couplers:
            if coupler.g == 0:
                continue

            j, k = coupler.endpoints
            for source, target in ((j, k), (k, j)):
                # a_target^+ a_source
                if state[source] == 0 \
                        or state[target] + 1 >= space.levels[target]:
                    continue

                hopped = list(state)
                hopped[source] -= 1
                hopped[target] += 1
                row = index.get(tuple(hopped))
                if row is None:
                    continue

                matrix[row, column] += coupler.g * math.sqrt(
                    state[source] * (state[target] + 1)
                )

    return HamiltonianMatrix(
        to_angular(matrix), space, "full", tolerance=tolerance
    )


def project_single_excitation(H: HamiltonianMatrix) -> HamiltonianMatrix:
    """Principal block on the one-excitation states ``|b_j>``.

    Rows and columns follow the excited site, so the result is the
    weighted coupling graph with frequencies on the diagonal.

    Raises
    ------
    DimensionMismatch
        ``H`` has no Fock space or misses some ``|b_j>``.
    """

    if H.space is None:
        raise DimensionMismatch("Projection needs a Fock-space Hamiltonian")

    indices = H.space.single_excitation_indices()
    if len(indices) != H.space.sites:
        raise DimensionMismatch(
            "Space lacks some single-excitation states"
        )

    return HamiltonianMatrix(
        H.matrix[np.ix_(indices, indices)],
        single_excitation_space(H.space.sites, H.space.levels),
        "single-excitation"
    )


def hopping_hamiltonian(device: DeviceLattice,
                        tolerance: float = 1e-12) -> HamiltonianMatrix:
    """Single-excitation Hamiltonian straight from the device.

    Same matrix as projecting :func:`build_bhm`, without the full space.
    """

    space = single_excitation_space(device.size, device.levels)

    return HamiltonianMatrix(
        build_bhm(device, space, tolerance).matrix, space, "single-excitation",
        tolerance=tolerance
    )


def number_operator(space: FockSpace) -> np.ndarray:
    """Total excitation number, diagonal in the Fock basis.
    """

    return np.diag([float(sum(state)) for state in space.states])


def dump_matrix(H: HamiltonianMatrix) -> str:
    """Row-major text dump, one ``real imag`` pair per entry.
    """

    lines = ["# {} {} {}".format(H.provenance, H.dimension, " ".join(
        H.labels
    ))]
    for row in H.matrix:
        lines.append(" ".join(
            "{!r} {!r}".format(float(value.real), float(value.imag))
            for value in row
        ))

    return "\n".join(lines) + "\n"
