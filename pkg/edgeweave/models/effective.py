from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..exceptions import NonHermitian, UnknownBasisLabel, ZeroDetuning
from ..units import FrequencyValue, to_linear


class DetuningSet:
    """Holds node-minus-connector detunings.

    Attributes
    ----------
    deltas : Dict[str, FrequencyValue]
        Detuning in MHz keyed by node label.
    """

    def __init__(self, data: Dict[str, FrequencyValue]) -> None:
        self.deltas = {}
        for label, delta in data.items():
            if delta == 0:
                raise ZeroDetuning(
                    "Detuning of {} is zero".format(label)
                )

            self.deltas[label] = float(delta)

    def ratio(self, couplings: Sequence[FrequencyValue]) -> float:
        """Largest |g/Delta| over the given couplings and detunings.
        """

        g = max((abs(value) for value in couplings), default=0.0)
        return g / min(abs(delta) for delta in self.deltas.values())

    def dispersive(self, couplings: Sequence[FrequencyValue],
                   bound: float = 0.25) -> bool:
        return self.ratio(couplings) < bound


class EffectiveModel:
    """Holds an effective Hamiltonian on a subspace.

    Attributes
    ----------
    labels : List[str]
        Subspace basis labels.
    g_tilde : np.ndarray
        Symmetric effective couplings in MHz, zero diagonal.
    omega_tilde : np.ndarray
        Shifted frequencies in MHz. Closed-form methods that only see
        detunings report them relative to the connector frequency.
    method : str
        bloch2, bloch4, star-series, star-closed, ebd-la or pew.
    qubits : List[int]
        Qubit carrying the excitation of each label, when known.
    matrix : np.ndarray
        Effective Hamiltonian in rad/us when the method produced a full
        matrix (ebd-la), else None.
    """

    def __init__(self, data: dict) -> None:
        self.labels = [str(label) for label in data["labels"]]
        self.method = data["method"]

        g_tilde = np.array(data["g_tilde"], dtype=float)
        if not np.allclose(g_tilde, g_tilde.T, rtol=0, atol=1e-12):
            raise NonHermitian("Effective couplings are not symmetric")
        np.fill_diagonal(g_tilde, 0.0)
        g_tilde.setflags(write=False)
        self.g_tilde = g_tilde

        self.omega_tilde = np.array(data["omega_tilde"], dtype=float)
        self.omega_tilde.setflags(write=False)

        self.qubits = data.get("qubits")

        matrix = data.get("matrix")
        if matrix is not None:
            matrix = np.array(matrix, dtype=complex)
            matrix.setflags(write=False)
        self.matrix = matrix

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise UnknownBasisLabel(
                "{} isn't in {}".format(label, self.labels)
            )

    def coupling(self, a: str, b: str) -> FrequencyValue:
        return float(self.g_tilde[self.index(a), self.index(b)])

    def frequency(self, label: str) -> FrequencyValue:
        return float(self.omega_tilde[self.index(label)])

    def pairs(self) -> List[Tuple[str, str, FrequencyValue]]:
        """Every label pair with its coupling, upper triangle order.
        """

        size = len(self.labels)
        return [
            (self.labels[i], self.labels[j], float(self.g_tilde[i, j]))
            for i in range(size) for j in range(i + 1, size)
        ]

    def matrix_mhz(self) -> np.ndarray:
        """Effective Hamiltonian in MHz.
        """

        if self.matrix is not None:
            return to_linear(self.matrix)

        return np.diag(self.omega_tilde) + self.g_tilde
