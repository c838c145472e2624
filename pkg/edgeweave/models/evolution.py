from typing import List

import numpy as np

from ..exceptions import NormViolation, UnknownBasisLabel


NORM_TOLERANCE = 1e-9


class EvolutionResult:
    """Holds populations over a time grid.

    Attributes
    ----------
    times : np.ndarray
        Sample times in us, or dimensionless for unit-speed walks.
    populations : np.ndarray
        Shape ``(len(times), len(labels))``.
    labels : List[str]
    initial : str
    model : str
        full, effective, ctqw or floquet.
    """

    def __init__(self, data: dict) -> None:
        self.times = np.array(data["times"], dtype=float)
        self.populations = np.array(data["populations"], dtype=float)
        self.labels = [str(label) for label in data["labels"]]
        self.initial = str(data["initial"])
        self.model = data["model"]

        totals = self.populations.sum(axis=1)
        if np.any(np.abs(totals - 1.0) > NORM_TOLERANCE):
            raise NormViolation(
                "Total population drifts to {}".format(
                    totals[np.argmax(np.abs(totals - 1.0))]
                )
            )
        if np.any(self.populations < -1e-12) \
                or np.any(self.populations > 1.0 + 1e-12):
            raise NormViolation("Population outside [0, 1]")

        self.times.setflags(write=False)
        self.populations.setflags(write=False)

    def population(self, label: str) -> np.ndarray:
        """Population of one basis state over time.
        """

        try:
            return self.populations[:, self.labels.index(str(label))]
        except ValueError:
            raise UnknownBasisLabel(
                "{} isn't in this result".format(label)
            )


class ErrorSeries:
    """Holds E_k(t) per tracked qubit.

    Attributes
    ----------
    times : np.ndarray
    labels : List[str]
        Tracked basis labels.
    values : np.ndarray
        Shape ``(len(times), len(labels))``.
    """

    def __init__(self, data: dict) -> None:
        self.times = np.array(data["times"], dtype=float)
        self.labels: List[str] = [str(label) for label in data["labels"]]
        self.values = np.clip(np.array(data["values"], dtype=float), 0, 1)

        self.times.setflags(write=False)
        self.values.setflags(write=False)

    @property
    def maximum(self) -> float:
        """Largest error over time and qubits.
        """

        return float(self.values.max()) if self.values.size else 0.0


class StroboscopicResult:
    """Holds populations sampled at period boundaries.

    Attributes
    ----------
    period : float
        Period T in us.
    samples : EvolutionResult
        Populations at ``0, T, 2T, ...``.
    continuous : EvolutionResult
        Intra-period trace for plotting, may be None.
    """

    def __init__(self, data: dict) -> None:
        self.period = float(data["period"])
        self.samples = data["samples"]
        self.continuous = data.get("continuous")

    @property
    def cycles(self) -> int:
        return len(self.samples.times) - 1
