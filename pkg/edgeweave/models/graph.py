from __future__ import annotations
from typing import List, Tuple

import networkx as nx
import numpy as np

from ..exceptions import InvalidGraph, OutOfRange
from ..units import FrequencyValue, frequency


Edge = Tuple[int, int]


class TargetGraph:
    """Holds the graph to be woven.

    Built from either an ``adjacency`` matrix or ``n`` plus an
    ``edges`` list. Asymmetric, looped or weighted input is rejected,
    never repaired.

    Attributes
    ----------
    name : str
    n : int
        Vertex count.
    adjacency : np.ndarray
        Symmetric 0/1 matrix, read only.
    """

    def __init__(self, data: dict) -> None:
        self.name = data.get("name")

        if "adjacency" in data:
            self.adjacency = self.__from_matrix(data["adjacency"])
        elif "edges" in data:
            self.adjacency = self.__from_edges(data.get("n"), data["edges"])
        else:
            raise InvalidGraph("Graph needs an adjacency matrix or edges")

        self.adjacency.setflags(write=False)
        self.n = self.adjacency.shape[0]

    @staticmethod
    def __from_matrix(rows) -> np.ndarray:
        try:
            matrix = np.array(rows, dtype=float)
        except (TypeError, ValueError):
            raise InvalidGraph("Adjacency must be a numeric matrix")

        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] \
                or matrix.shape[0] == 0:
            raise InvalidGraph(
                "Adjacency must be square, got shape {}".format(matrix.shape)
            )

        if not np.isin(matrix, (0.0, 1.0)).all():
            raise InvalidGraph("Adjacency entries must be 0 or 1")

        diagonal = np.flatnonzero(np.diag(matrix))
        if diagonal.size:
            raise InvalidGraph(
                "Nonzero diagonal at A[{0}][{0}]".format(diagonal[0])
            )

        rows, cols = np.nonzero(matrix != matrix.T)
        if rows.size:
            raise InvalidGraph(
                "Adjacency is asymmetric at A[{}][{}]".format(
                    rows[0], cols[0]
                )
            )

        return matrix.astype(int)

    @staticmethod
    def __from_edges(n, edges) -> np.ndarray:
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise InvalidGraph("n must be a positive integer")

        matrix = np.zeros((n, n), dtype=int)
        for edge in edges:
            try:
                u, v = (int(vertex) for vertex in edge)
            except (TypeError, ValueError):
                raise InvalidGraph("Edge must be [u, v], got {!r}".format(edge))

            if u == v:
                raise InvalidGraph("Self loop on vertex {}".format(u))
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph("Edge {} outside 0..{}".format(edge, n - 1))
            if matrix[u, v]:
                raise InvalidGraph("Duplicate edge {}".format(edge))

            matrix[u, v] = matrix[v, u] = 1

        return matrix

    def edges(self) -> List[Edge]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``.
        """

        rows, cols = np.nonzero(np.triu(self.adjacency))
        return [(int(u), int(v)) for u, v in zip(rows, cols)]

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def degree(self, vertex: int) -> int:
        return int(self.adjacency[vertex].sum())

    def neighbours(self, vertex: int) -> List[int]:
        return [int(u) for u in np.flatnonzero(self.adjacency[vertex])]

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def to_dict(self) -> dict:
        """Canonical document, edges form.
        """

        return {
            "version": 1,
            "name": self.name,
            "n": self.n,
            "edges": [list(edge) for edge in self.edges()],
        }


class WalkSpeed:
    """Uniform hopping rate of a woven graph.

    Attributes
    ----------
    J : FrequencyValue
        Rate in MHz.
    """

    def __init__(self, J: FrequencyValue, g_floor: FrequencyValue = None
                 ) -> None:
        self.J = frequency(J, "J", positive=True)

        if g_floor is not None and self.J < g_floor:
            raise OutOfRange(
                "Walk speed {} MHz is below the {} MHz floor".format(
                    self.J, g_floor
                )
            )


def from_networkx(graph: nx.Graph, name: str = None) -> TargetGraph:
    """TargetGraph from a networkx graph, nodes relabelled 0..n-1
    in sorted order.
    """

    order = {node: index for index, node in enumerate(sorted(graph.nodes))}

    return TargetGraph({
        "name": name,
        "n": len(order),
        "edges": [[order[u], order[v]] for u, v in graph.edges],
    })


def path_graph(n: int) -> TargetGraph:
    return from_networkx(nx.path_graph(n), "path-{}".format(n))


def complete_graph(n: int) -> TargetGraph:
    return from_networkx(nx.complete_graph(n), "complete-{}".format(n))


def star_graph(n: int) -> TargetGraph:
    """Hub 0 with ``n`` peripherals.
    """

    return from_networkx(nx.star_graph(n), "star-{}".format(n))


def glued_binary_tree() -> TargetGraph:
    """Two depth-2 binary trees glued at their leaves, 10 vertices.

    Root 0, levels {1, 2}, {3, 4, 5, 6}, {7, 8}, root 9.
    """

    return TargetGraph({
        "name": "glued-binary-tree",
        "n": 10,
        "edges": [
            [0, 1], [0, 2],
            [1, 3], [1, 4], [2, 5], [2, 6],
            [3, 7], [4, 7], [5, 8], [6, 8],
            [7, 9], [8, 9],
        ],
    })


def glued_tetrahedra(count: int = 3) -> TargetGraph:
    """Chain of K4 blocks, neighbours sharing one vertex.
    """

    if count < 1:
        raise OutOfRange("Need at least one tetrahedron")

    edges = []
    for block in range(count):
        first = 3 * block
        members = range(first, first + 4)
        edges.extend(
            [u, v] for u in members for v in members if u < v
        )

    return TargetGraph({
        "name": "glued-tetrahedra",
        "n": 3 * count + 1,
        "edges": edges,
    })


def fullerene20() -> TargetGraph:
    """Dodecahedral C20 cage in three rings.

    Outer ring ``a0..a4`` is 0..4, middle ring ``b0..b9`` is 5..14 and
    inner ring ``c0..c4`` is 15..19. ``a_i`` bonds to ``b_2i`` and
    ``b_2i+1`` bonds to ``c_i``.
    """

    def a(i):
        return i % 5

    def b(i):
        return 5 + i % 10

    def c(i):
        return 15 + i % 5

    edges = []
    for i in range(5):
        edges.append([a(i), a(i + 1)])
        edges.append([a(i), b(2 * i)])
        edges.append([b(2 * i + 1), c(i)])
        edges.append([c(i), c(i + 1)])
    for i in range(10):
        edges.append([b(i), b(i + 1)])

    return TargetGraph({
        "name": "fullerene-20",
        "n": 20,
        "edges": edges,
    })
