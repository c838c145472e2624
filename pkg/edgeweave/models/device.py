from __future__ import annotations
from typing import Dict, Generator, List, Sequence, Tuple

import networkx as nx
import numpy as np

from ..exceptions import InvalidDevice, OutOfRange
from ..units import FrequencyValue, frequency


Site = Tuple[int, int]

DEFAULTS = {
    "omega": 4500.0,
    "alpha": -250.0,
    "levels": 3,
    "g": 25.0,
    "g_max": 50.0,
}

DEFAULT_G_FLOOR = 3.0


def as_site(value) -> Site:
    """Coerces ``[row, col]`` into a tuple, raising InvalidDevice.
    """

    try:
        row, col = value
    except (TypeError, ValueError):
        raise InvalidDevice("Site must be [row, col], got {!r}".format(value))

    if isinstance(row, bool) or isinstance(col, bool) \
            or int(row) != row or int(col) != col:
        raise InvalidDevice("Site must be integers, got {!r}".format(value))

    return int(row), int(col)


def manhattan(a: Site, b: Site) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def _read_only(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class TransmonSpec:
    """Holds one transmon.

    Attributes
    ----------
    site : Site
    omega : FrequencyValue
        Qubit frequency in MHz.
    alpha : FrequencyValue
        Anharmonicity in MHz, the on-site interaction of the
        Bose-Hubbard model.
    levels : int
        Truncation d.
    """

    def __init__(self, data: dict) -> None:
        self.site = as_site(data["site"])
        self.omega = frequency(
            data["omega"], "omega", positive=True, error=InvalidDevice
        )
        self.alpha = frequency(data["alpha"], "alpha", error=InvalidDevice)

        levels = data.get("levels", DEFAULTS["levels"])
        if isinstance(levels, bool) or int(levels) != levels or levels < 2:
            raise InvalidDevice(
                "levels must be an integer >= 2, got {!r}".format(levels)
            )
        self.levels = int(levels)

    def to_dict(self) -> dict:
        return {
            "site": list(self.site),
            "omega": self.omega,
            "alpha": self.alpha,
            "levels": self.levels,
        }


class CouplerSpec:
    """Holds one tunable coupler.

    Attributes
    ----------
    endpoints : Tuple[int, int]
        Qubit indices, smaller first.
    sites : Tuple[Site, Site]
    g : FrequencyValue
        Hopping strength in MHz.
    g_max : FrequencyValue
        Upper end of the tunable range in MHz.
    """

    def __init__(self, data: dict) -> None:
        first, second = data["endpoints"]
        if first == second:
            raise InvalidDevice("Coupler endpoints must be distinct")

        if first > second:
            first, second = second, first
            data = dict(data, sites=list(reversed(data["sites"])))

        self.endpoints = (int(first), int(second))
        self.sites = tuple(as_site(site) for site in data["sites"])
        self.g = frequency(data["g"], "g", error=InvalidDevice)
        self.g_max = frequency(data["g_max"], "g_max", error=InvalidDevice)

        if self.g_max < 0 or abs(self.g) > self.g_max:
            raise InvalidDevice(
                "Coupler {}-{}: |g| = {} outside [0, g_max = {}]".format(
                    self.sites[0], self.sites[1], abs(self.g), self.g_max
                )
            )

    def to_dict(self) -> dict:
        return {
            "sites": [list(site) for site in self.sites],
            "g": self.g,
            "g_max": self.g_max,
        }


class DeviceLattice:
    """Holds a transmon lattice on a grid.

    Qubits are indexed in the order they are listed, or row-major when
    the document only gives defaults.

    Attributes
    ----------
    name : str
    rows : int
    cols : int
    qubits : List[TransmonSpec]
    couplers : List[CouplerSpec]
    g_floor : FrequencyValue
        Smallest useful effective coupling in MHz.
    connectors : List[int]
        Qubits the document marks as connectors.
    """

    def __init__(self, data: dict) -> None:
        self.name = data.get("name")
        self.rows = self.__dimension(data, "rows")
        self.cols = self.__dimension(data, "cols")

        defaults = dict(DEFAULTS, **data.get("defaults", {}))

        if "qubits" in data:
            qubit_data = [dict(defaults, **qubit) for qubit in data["qubits"]]
        else:
            qubit_data = [
                dict(defaults, site=[row, col])
                for row in range(self.rows)
                for col in range(self.cols)
            ]

        if not qubit_data:
            raise InvalidDevice("Device has no qubits")

        self.qubits = [TransmonSpec(qubit) for qubit in qubit_data]
        self._index = {}
        for index, qubit in enumerate(self.qubits):
            row, col = qubit.site
            if not (0 <= row < self.rows and 0 <= col < self.cols):
                raise InvalidDevice(
                    "Site {} outside {}x{} grid".format(
                        qubit.site, self.rows, self.cols
                    )
                )
            if qubit.site in self._index:
                raise InvalidDevice("Duplicate qubit at {}".format(qubit.site))

            self._index[qubit.site] = index

        if "couplers" in data:
            coupler_data = [
                dict({"g": defaults["g"], "g_max": defaults["g_max"]},
                     **coupler)
                for coupler in data["couplers"]
            ]
        else:
            coupler_data = [
                {"sites": [list(a), list(b)], "g": defaults["g"],
                 "g_max": defaults["g_max"]}
                for a, b in self.__grid_edges()
            ]

        self.couplers = []
        self._couplers = {}
        for coupler in coupler_data:
            a, b = (as_site(site) for site in coupler["sites"])
            for site in (a, b):
                if site not in self._index:
                    raise InvalidDevice(
                        "Coupler references missing site {}".format(site)
                    )
            if manhattan(a, b) != 1:
                raise InvalidDevice(
                    "Coupler {}-{} joins non-adjacent sites".format(a, b)
                )

            spec = CouplerSpec(
                dict(coupler, endpoints=[self._index[a], self._index[b]])
            )
            if spec.endpoints in self._couplers:
                raise InvalidDevice(
                    "Duplicate coupler on edge {}-{}".format(a, b)
                )

            self._couplers[spec.endpoints] = spec
            self.couplers.append(spec)

        self.g_floor = frequency(
            data.get("g_floor", DEFAULT_G_FLOOR), "g_floor",
            positive=True, error=InvalidDevice
        )

        self.connectors = []
        for site in data.get("connectors", []):
            site = as_site(site)
            if site not in self._index:
                raise InvalidDevice(
                    "Connector references missing site {}".format(site)
                )
            self.connectors.append(self._index[site])

        self.omegas = _read_only(
            np.array([qubit.omega for qubit in self.qubits])
        )
        self.alphas = _read_only(
            np.array([qubit.alpha for qubit in self.qubits])
        )

    @staticmethod
    def __dimension(data: dict, key: str) -> int:
        value = data.get(key)
        if isinstance(value, bool) or not isinstance(value, int) \
                or value < 1:
            raise InvalidDevice(
                "{} must be a positive integer, got {!r}".format(key, value)
            )

        return value

    def __grid_edges(self) -> Generator[Tuple[Site, Site], None, None]:
        for qubit in self.qubits:
            row, col = qubit.site
            for other in ((row, col + 1), (row + 1, col)):
                if other in self._index:
                    yield qubit.site, other

    @property
    def size(self) -> int:
        return len(self.qubits)

    @property
    def sites(self) -> List[Site]:
        return [qubit.site for qubit in self.qubits]

    @property
    def levels(self) -> List[int]:
        return [qubit.levels for qubit in self.qubits]

    @property
    def nodes(self) -> List[int]:
        """Qubits not marked as connectors.
        """

        return [
            index for index in range(self.size)
            if index not in self.connectors
        ]

    def index(self, site: Sequence[int]) -> int:
        """Qubit index at a grid site.

        Raises
        ------
        OutOfRange
            No qubit sits there.
        """

        try:
            return self._index[tuple(site)]
        except (KeyError, TypeError):
            raise OutOfRange("No qubit at site {!r}".format(site))

    def has_site(self, site: Sequence[int]) -> bool:
        return tuple(site) in self._index

    def coupler(self, i: int, j: int) -> CouplerSpec:
        """Coupler between two qubits, None if they aren't coupled.
        """

        return self._couplers.get((min(i, j), max(i, j)))

    def coupling(self, i: int, j: int) -> FrequencyValue:
        coupler = self.coupler(i, j)
        return coupler.g if coupler else 0.0

    def coupling_matrix(self) -> np.ndarray:
        """Symmetric matrix of hopping strengths in MHz.
        """

        matrix = np.zeros((self.size, self.size))
        for coupler in self.couplers:
            i, j = coupler.endpoints
            matrix[i, j] = matrix[j, i] = coupler.g

        return matrix

    def neighbours(self, index: int) -> List[int]:
        return sorted(
            j if i == index else i
            for i, j in self._couplers
            if index in (i, j)
        )

    def graph(self) -> nx.Graph:
        """Coupler graph on qubit indices, sites kept as node data.
        """

        graph = nx.Graph()
        for index, qubit in enumerate(self.qubits):
            graph.add_node(index, site=qubit.site)
        for coupler in self.couplers:
            graph.add_edge(*coupler.endpoints, g=coupler.g)

        return graph

    def with_frequencies(self, omegas: Dict[int, FrequencyValue]
                         ) -> DeviceLattice:
        """Copy with some qubit frequencies replaced.
        """

        data = self.to_dict()
        for index, omega in omegas.items():
            data["qubits"][index]["omega"] = float(omega)

        return DeviceLattice(data)

    def with_couplers(self, active: Dict[Tuple[int, int], FrequencyValue]
                      ) -> DeviceLattice:
        """Copy keeping only the given couplers at the given strengths.

        Parameters
        ----------
        active : Dict[Tuple[int, int], FrequencyValue]
            Qubit pair to hopping strength in MHz.

        Raises
        ------
        InvalidDevice
            A pair isn't a coupler or a strength exceeds its g_max.
        """

        couplers = []
        for (i, j), g in sorted(active.items()):
            coupler = self.coupler(i, j)
            if coupler is None:
                raise InvalidDevice(
                    "Qubits {} and {} share no coupler".format(i, j)
                )

            couplers.append(dict(coupler.to_dict(), g=float(g)))

        data = self.to_dict()
        data["couplers"] = couplers

        return DeviceLattice(data)

    def to_dict(self) -> dict:
        """Canonical explicit document.
        """

        return {
            "version": 1,
            "name": self.name,
            "rows": self.rows,
            "cols": self.cols,
            "g_floor": self.g_floor,
            "connectors": [list(self.qubits[i].site) for i in self.connectors],
            "qubits": [qubit.to_dict() for qubit in self.qubits],
            "couplers": [coupler.to_dict() for coupler in self.couplers],
        }


def chain_device(omegas: Sequence[FrequencyValue],
                 couplings: Sequence[FrequencyValue],
                 alpha: FrequencyValue = -250.0, levels: int = 3,
                 g_max: FrequencyValue = 50.0,
                 connectors: Sequence[int] = (),
                 name: str = None) -> DeviceLattice:
    """Builds a one-row chain.

    Parameters
    ----------
    omegas : Sequence[FrequencyValue]
        One frequency per qubit, left to right.
    couplings : Sequence[FrequencyValue]
        ``len(omegas) - 1`` nearest-neighbour strengths.
    alpha : FrequencyValue, optional
        by default -250.0
    levels : int, optional
        by default 3
    g_max : FrequencyValue, optional
        by default 50.0
    connectors : Sequence[int], optional
        Positions marked as connectors, by default ()
    name : str, optional
        by default None

    Returns
    -------
    DeviceLattice
    """

    if len(couplings) != len(omegas) - 1:
        raise InvalidDevice("A chain of n qubits needs n - 1 couplings")

    return DeviceLattice({
        "name": name,
        "rows": 1,
        "cols": len(omegas),
        "qubits": [
            {"site": [0, col], "omega": omega, "alpha": alpha,
             "levels": levels}
            for col, omega in enumerate(omegas)
        ],
        "couplers": [
            {"sites": [[0, col], [0, col + 1]], "g": g, "g_max": g_max}
            for col, g in enumerate(couplings)
        ],
        "connectors": [[0, col] for col in connectors],
    })


def grid_device(rows: int, cols: int, **defaults) -> DeviceLattice:
    """Uniform grid with every nearest-neighbour coupler present.
    """

    return DeviceLattice({
        "rows": rows,
        "cols": cols,
        "defaults": defaults,
    })
