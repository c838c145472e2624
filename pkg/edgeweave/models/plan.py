from __future__ import annotations
from itertools import combinations
from typing import Dict, List, Tuple

from ..exceptions import InvalidDevice, InvalidPlan
from .device import Site, as_site
from .schedule import FloquetSchedule


Edge = Tuple[int, int]

KINDS = ("static", "dynamic")


def _site(value) -> Site:
    try:
        return as_site(value)
    except InvalidDevice as error:
        raise InvalidPlan(str(error))


class Bridge:
    """Holds one quantum bridge.

    A static bridge with more than two endpoints is a hub, one detuned
    connector coupling every endpoint pair.

    Attributes
    ----------
    kind : str
        static or dynamic.
    endpoints : Tuple[int, ...]
        Target vertices joined by the bridge.
    connectors : List[Site]
        Connector path, ordered from the first endpoint.
    detuning : float
        Node minus connector frequency in MHz for static bridges,
        None to use the plan policy.
    fragment : FloquetSchedule
        Local schedule of a dynamic bridge once compiled, else None.
    """

    def __init__(self, data: dict) -> None:
        self.kind = data.get("kind")
        if self.kind not in KINDS:
            raise InvalidPlan(
                "Bridge kind must be static or dynamic, got {!r}".format(
                    self.kind
                )
            )

        self.endpoints = tuple(int(vertex) for vertex in data["endpoints"])
        if len(self.endpoints) < 2 \
                or len(set(self.endpoints)) != len(self.endpoints):
            raise InvalidPlan(
                "Bridge needs distinct endpoints, got {}".format(
                    self.endpoints
                )
            )
        if self.kind == "dynamic" and len(self.endpoints) != 2:
            raise InvalidPlan("Dynamic bridges join exactly two vertices")

        self.connectors = [_site(site) for site in data.get("connectors", [])]
        if not self.connectors:
            raise InvalidPlan("Bridge {} has no connector".format(
                self.endpoints
            ))

        detuning = data.get("detuning")
        self.detuning = None if detuning is None else float(detuning)

        fragment = data.get("fragment")
        if fragment is not None and not isinstance(fragment, FloquetSchedule):
            fragment = FloquetSchedule(fragment)
        self.fragment = fragment

    @property
    def hub(self) -> bool:
        return len(self.endpoints) > 2

    def realized(self) -> List[Edge]:
        """Target edges this bridge provides.
        """

        return [
            (min(u, v), max(u, v))
            for u, v in combinations(self.endpoints, 2)
        ]

    def to_dict(self) -> dict:
        data = {
            "kind": self.kind,
            "endpoints": list(self.endpoints),
            "connectors": [list(site) for site in self.connectors],
        }
        if self.detuning is not None:
            data["detuning"] = self.detuning

        return data


class WeavePlan:
    """Holds a vertex placement plus how every edge is realized.

    Attributes
    ----------
    name : str
    vertices : Dict[int, Site]
        Vertex to node-qubit site.
    direct : List[Edge]
        Edges realized by a single coupler.
    bridges : List[Bridge]
    walk_speed : float
        Target J in MHz, None to derive it.
    schedule : FloquetSchedule
        Compiled global schedule, None until compiled.
    target : TargetGraph
        Graph the plan realizes when known.
    graph_path : str
        Graph document the plan refers to.
    """

    def __init__(self, data: dict) -> None:
        self.name = data.get("name")
        self.graph_path = data.get("graph")
        self.target = data.get("target")

        try:
            self.vertices = {
                int(vertex): _site(site)
                for vertex, site in data["vertices"].items()
            }
        except (KeyError, AttributeError, ValueError):
            raise InvalidPlan("Plan needs a vertices mapping")

        self.direct = []
        for edge in data.get("direct", []):
            try:
                u, v = (int(vertex) for vertex in edge)
            except (TypeError, ValueError):
                raise InvalidPlan("Edge must be [u, v], got {!r}".format(edge))
            self.direct.append((min(u, v), max(u, v)))

        self.bridges = [
            bridge if isinstance(bridge, Bridge) else Bridge(bridge)
            for bridge in data.get("bridges", [])
        ]

        walk_speed = data.get("walk_speed")
        self.walk_speed = None if walk_speed is None else float(walk_speed)

        schedule = data.get("schedule")
        if schedule is not None and not isinstance(schedule, FloquetSchedule):
            schedule = FloquetSchedule(schedule)
        self.schedule = schedule

    def realized_edges(self) -> List[Edge]:
        """Every target edge in the plan, repeats kept.
        """

        edges = list(self.direct)
        for bridge in self.bridges:
            edges.extend(bridge.realized())

        return edges

    def connector_sites(self) -> List[Site]:
        return [site for bridge in self.bridges for site in bridge.connectors]

    def bridges_of(self, kind: str) -> List[Bridge]:
        return [bridge for bridge in self.bridges if bridge.kind == kind]

    def to_dict(self) -> dict:
        """Canonical document.
        """

        data = {
            "version": 1,
            "name": self.name,
            "graph": self.graph_path,
            "vertices": {
                str(vertex): list(site)
                for vertex, site in sorted(self.vertices.items())
            },
            "direct": [list(edge) for edge in sorted(self.direct)],
            "bridges": [bridge.to_dict() for bridge in self.bridges],
            "walk_speed": self.walk_speed,
        }
        if self.schedule is not None:
            data["schedule"] = self.schedule.to_dict()

        return data


class Check:
    """Outcome of one plan invariant.

    Attributes
    ----------
    name : str
    passed : bool
    detail : str
    """

    def __init__(self, name: str, passed: bool, detail: str = "") -> None:
        self.name = name
        self.passed = passed
        self.detail = detail


class BridgeReport:
    """Predicted couplings of one bridge.

    Attributes
    ----------
    bridge : Bridge
    couplings : Dict[Edge, float]
        Predicted g-tilde in MHz per realized edge.
    deviation : float
        Worst relative deviation of |g-tilde| from J.
    """

    def __init__(self, bridge: Bridge, couplings: Dict[Edge, float],
                 deviation: float) -> None:
        self.bridge = bridge
        self.couplings = couplings
        self.deviation = deviation


class ValidationReport:
    """Holds every plan check.

    Attributes
    ----------
    checks : List[Check]
    bridges : List[BridgeReport]
    walk_speed : float
        J the deviations are measured against, MHz.
    warnings : List[str]
    """

    def __init__(self) -> None:
        self.checks: List[Check] = []
        self.bridges: List[BridgeReport] = []
        self.walk_speed = None
        self.warnings: List[str] = []

    def add(self, name: str, failures: List[str]) -> None:
        self.checks.append(Check(name, not failures, "; ".join(failures)))

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[Check]:
        return [check for check in self.checks if not check.passed]

    def check(self, name: str) -> Check:
        for check in self.checks:
            if check.name == name:
                return check

        raise KeyError(name)
