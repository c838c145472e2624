"""Embeds target graphs onto device lattices.

Every target edge becomes a direct coupler, a static bridge (one detuned
connector, or a hub connector shared by up to four endpoints) or a
dynamic bridge (a chain of connectors toggled periodically).
"""

from typing import Dict, List, Optional, Sequence, Tuple

import logging
import random

import networkx as nx
import numpy as np

from .effective import ebd_la
from .exceptions import (
    IncommensuratePeriods,
    InfeasibleEmbedding,
    InvalidPlan,
    NumericalError,
    SearchBudgetExceeded,
    Unschedulable
)
from .floquet import pew_chain_schedule, pew_scaling
from .hamiltonian import HamiltonianMatrix
from .models.device import DeviceLattice, Site, manhattan
from .models.graph import TargetGraph
from .models.plan import (
    Bridge,
    BridgeReport,
    ValidationReport,
    WeavePlan
)
from .models.schedule import FloquetSchedule
from .settings import PlanSettings
from .units import FrequencyValue, to_angular


Edge = Tuple[int, int]

MAX_HUB = 4
FLOOR_TOLERANCE = 1e-9


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def predict_static(device: DeviceLattice, endpoints: Sequence[int],
                   connector: int, detuning: FrequencyValue
                   ) -> Dict[Edge, FrequencyValue]:
    """Effective couplings of a static bridge in isolation.

    The connector is set ``detuning`` below the mean endpoint frequency
    (node minus connector), every other qubit is dropped, and EBD-LA
    runs on the one-excitation block.

    Parameters
    ----------
    device : DeviceLattice
    endpoints : Sequence[int]
        Endpoint qubits.
    connector : int
        Connector qubit.
    detuning : FrequencyValue
        Node minus connector frequency in MHz.

    Returns
    -------
    Dict[Edge, FrequencyValue]
        g-tilde in MHz keyed by endpoint qubit pair.
    """

    endpoints = list(endpoints)
    size = len(endpoints) + 1
    omegas = device.omegas[endpoints]

    matrix = np.zeros((size, size))
    matrix[0, 0] = omegas.mean() - detuning
    for k, qubit in enumerate(endpoints, start=1):
        matrix[k, k] = device.omegas[qubit]
        matrix[0, k] = matrix[k, 0] = device.coupling(connector, qubit)

    labels = ["c"] + [str(qubit) for qubit in endpoints]
    model = ebd_la(
        HamiltonianMatrix(to_angular(matrix), provenance="single-excitation",
                          labels=labels),
        labels[1:]
    )

    return {
        _edge(int(a), int(b)): g for a, b, g in model.pairs()
    }


def _chain_coupling(device: DeviceLattice, qubits: Sequence[int]
                    ) -> FrequencyValue:
    return min(
        abs(device.coupling(a, b)) for a, b in zip(qubits, qubits[1:])
    )


def predict_dynamic(device: DeviceLattice, qubits: Sequence[int]
                    ) -> FrequencyValue:
    """``g / (N_c + 1)`` for a chain from endpoint to endpoint, ``g``
    the weakest coupler on it.
    """

    return pew_scaling(_chain_coupling(device, qubits), len(qubits) - 2)


class _Placement:
    """Backtracking state of one planning run.
    """

    def __init__(self, target: TargetGraph, device: DeviceLattice,
                 settings: PlanSettings) -> None:
        self.target = target
        self.device = device
        self.policy = settings.payload
        self.rng = random.Random(self.policy["seed"])

        self.graph = device.graph()
        self.rank = {
            qubit: self.rng.random() for qubit in range(device.size)
        }
        self.order = self.__vertex_order()

        self.vertices: Dict[int, int] = {}
        self.occupied = set()
        self.routes: Dict[Edge, Tuple[str, List[int]]] = {}

        self.expansions = 0
        self.deepest = -1
        self.witness: Optional[Edge] = None
        self._static: Dict[tuple, bool] = {}

    def __vertex_order(self) -> List[int]:
        target = self.target
        tiebreak = {vertex: self.rng.random() for vertex in range(target.n)}

        def key(vertex):
            return (-target.degree(vertex), tiebreak[vertex])

        order = []
        seen = set()
        for root in sorted(range(target.n), key=key):
            if root in seen:
                continue

            seen.add(root)
            queue = [root]
            while queue:
                vertex = queue.pop(0)
                order.append(vertex)
                for neighbour in sorted(target.neighbours(vertex), key=key):
                    if neighbour not in seen:
                        seen.add(neighbour)
                        queue.append(neighbour)

        return order

    def __static_ok(self, a: int, b: int, connector: int) -> bool:
        key = (a, b, connector)
        if key not in self._static:
            try:
                couplings = predict_static(
                    self.device, (a, b), connector,
                    self.policy["static_detuning"]
                )
                value = abs(next(iter(couplings.values())))
                self._static[key] = \
                    value >= self.device.g_floor - FLOOR_TOLERANCE
            except NumericalError:
                self._static[key] = False

        return self._static[key]

    def route(self, a: int, b: int) -> Optional[Tuple[str, List[int]]]:
        """Cheapest way to join qubits ``a`` and ``b``, None if none.
        """

        device = self.device
        if device.coupler(a, b) is not None:
            return "direct", []

        if self.policy["allow_static"]:
            shared = sorted(
                set(device.neighbours(a)) & set(device.neighbours(b))
                - self.occupied
            )
            for connector in shared:
                if self.__static_ok(a, b, connector):
                    return "static", [connector]

        if self.policy["allow_dynamic"]:
            free = [
                qubit for qubit in range(device.size)
                if qubit not in self.occupied
            ]
            subgraph = self.graph.subgraph(free + [a, b])
            try:
                path = nx.shortest_path(subgraph, a, b)
            except nx.NetworkXNoPath:
                return None

            connectors = path[1:-1]
            if 1 <= len(connectors) <= self.policy["max_dynamic"] \
                    and predict_dynamic(device, path) \
                    >= device.g_floor - FLOOR_TOLERANCE:
                return "dynamic", connectors

        return None

    def __pruned(self) -> bool:
        for vertex, qubit in self.vertices.items():
            waiting = sum(
                1 for neighbour in self.target.neighbours(vertex)
                if neighbour not in self.vertices
            )
            if not waiting:
                continue

            free = sum(
                1 for neighbour in self.device.neighbours(qubit)
                if neighbour not in self.occupied
            )
            if waiting > free:
                return True

        return False

    def __candidates(self, placed: List[int]) -> List[int]:
        sites = self.device.sites

        def key(qubit):
            distance = sum(
                manhattan(sites[qubit], sites[self.vertices[u]])
                for u in placed
            )
            return (
                distance, -len(self.device.neighbours(qubit)),
                self.rank[qubit]
            )

        return sorted(
            (
                qubit for qubit in range(self.device.size)
                if qubit not in self.occupied
            ),
            key=key
        )

    def __release(self, edges: List[Edge]) -> None:
        for edge in edges:
            _, connectors = self.routes.pop(edge)
            self.occupied.difference_update(connectors)

    def search(self, depth: int = 0) -> bool:
        if depth == len(self.order):
            return True

        vertex = self.order[depth]
        placed = [
            u for u in self.target.neighbours(vertex) if u in self.vertices
        ]

        for qubit in self.__candidates(placed):
            self.expansions += 1
            if self.expansions > self.policy["node_budget"]:
                raise SearchBudgetExceeded(
                    "Gave up after {} placements".format(
                        self.policy["node_budget"]
                    )
                )

            self.vertices[vertex] = qubit
            self.occupied.add(qubit)

            routed = []
            for u in placed:
                route = self.route(self.vertices[u], qubit)
                if route is None:
                    if depth > self.deepest:
                        self.deepest = depth
                        self.witness = _edge(u, vertex)
                    break

                edge = _edge(u, vertex)
                kind, connectors = route
                if u > vertex:
                    connectors = connectors[::-1]
                self.routes[edge] = (kind, connectors)
                self.occupied.update(route[1])
                routed.append(edge)
            else:
                if not self.__pruned() and self.search(depth + 1):
                    return True

            self.__release(routed)
            del self.vertices[vertex]
            self.occupied.discard(qubit)

        return False


def plan_embedding(target: TargetGraph, device: DeviceLattice,
                   settings: PlanSettings = None) -> WeavePlan:
    """Places every vertex on a qubit and routes every edge.

    Vertices are placed breadth first from the best-connected one, each
    on the free qubit closest to its placed neighbours, with
    backtracking. Edges prefer a direct coupler, then a static bridge,
    then the shortest free dynamic chain.

    Parameters
    ----------
    target : TargetGraph
    device : DeviceLattice
    settings : PlanSettings, optional

    Returns
    -------
    WeavePlan
        With walk speed and compiled schedule set.

    Raises
    ------
    InfeasibleEmbedding
        ``witness`` names the edge the deepest attempt failed on, None
        for a capacity failure or a layout that fails validation.
    SearchBudgetExceeded
    """

    settings = settings or PlanSettings()

    if target.n > device.size:
        raise InfeasibleEmbedding(
            "{} vertices don't fit on {} qubits".format(target.n, device.size)
        )

    state = _Placement(target, device, settings)
    if not state.search():
        raise InfeasibleEmbedding(
            "No placement routes edge {}".format(state.witness),
            witness=state.witness
        )

    sites = device.sites
    direct = []
    bridges = []
    for (u, v), (kind, connectors) in sorted(state.routes.items()):
        if kind == "direct":
            direct.append([u, v])
            continue

        bridge = {
            "kind": kind,
            "endpoints": [u, v],
            "connectors": [list(sites[qubit]) for qubit in connectors],
        }
        if kind == "static":
            bridge["detuning"] = settings.payload["static_detuning"]
        bridges.append(bridge)

    plan = WeavePlan({
        "name": target.name,
        "vertices": {
            vertex: list(sites[qubit])
            for vertex, qubit in sorted(state.vertices.items())
        },
        "direct": direct,
        "bridges": bridges,
    })
    plan.target = target

    report = validate_plan(plan, device, target, settings)
    if not report.ok:
        raise InfeasibleEmbedding("Planned layout fails validation: {}".format(
            "; ".join(
                "{}: {}".format(check.name, check.detail)
                for check in report.failures()
            )
        ))
    plan.walk_speed = report.walk_speed
    plan.schedule = compile_schedule(plan, device, settings)
    if plan.bridges_of("dynamic"):
        layout = _Layout(plan, device, settings, plan.walk_speed)
        for bridge, fragment in zip(layout.bridges, layout.fragments):
            bridge.fragment = fragment

    logging.info(
        "Planned {} on {} after {} placements: {} direct, {} static, "
        "{} dynamic".format(
            target.name, device.name, state.expansions, len(plan.direct),
            len(plan.bridges_of("static")), len(plan.bridges_of("dynamic"))
        )
    )

    return plan


def _bridge_path(plan: WeavePlan, device: DeviceLattice,
                 bridge: Bridge) -> List[int]:
    return [device.index(plan.vertices[bridge.endpoints[0]])] \
        + [device.index(site) for site in bridge.connectors] \
        + [device.index(plan.vertices[bridge.endpoints[1]])]


def _path_failures(plan: WeavePlan, device: DeviceLattice,
                   bridge: Bridge) -> List[str]:
    failures = []
    name = "{} bridge {}".format(bridge.kind, list(bridge.endpoints))
    ends = [plan.vertices[vertex] for vertex in bridge.endpoints]

    if bridge.hub:
        if len(bridge.connectors) != 1:
            failures.append("{} is a hub with several connectors".format(
                name
            ))
        elif len(bridge.endpoints) > MAX_HUB:
            failures.append("{} joins more than {} endpoints".format(
                name, MAX_HUB
            ))
        else:
            hub = bridge.connectors[0]
            for site in ends:
                if manhattan(site, hub) != 1:
                    failures.append("{}: hub {} isn't next to {}".format(
                        name, hub, site
                    ))
        return failures

    path = [ends[0]] + list(bridge.connectors) + [ends[1]]
    for a, b in zip(path, path[1:]):
        if manhattan(a, b) != 1 \
                or device.coupler(device.index(a), device.index(b)) is None:
            failures.append("{}: {} and {} aren't coupled".format(
                name, a, b
            ))

    return failures


def validate_plan(plan: WeavePlan, device: DeviceLattice,
                  target: TargetGraph = None,
                  settings: PlanSettings = None) -> ValidationReport:
    """Checks every plan invariant and predicts bridge couplings.

    Checks, by name: ``sites_on_device``, ``disjoint``,
    ``connector_sharing``, ``direct_edges_coupled``, ``bridge_paths``,
    ``static_length``, ``dynamic_length``, ``edge_realization`` and
    ``coupling_floor``. Never raises on a broken plan.

    Parameters
    ----------
    plan : WeavePlan
    device : DeviceLattice
    target : TargetGraph, optional
        by default the plan's own target. Edge realization is skipped
        when neither is known.
    settings : PlanSettings, optional

    Returns
    -------
    ValidationReport
    """

    settings = settings or PlanSettings()
    policy = settings.payload
    target = target or plan.target
    report = ValidationReport()

    failures = [
        "vertex {} at {}".format(vertex, site)
        for vertex, site in sorted(plan.vertices.items())
        if not device.has_site(site)
    ] + [
        "connector at {}".format(site)
        for site in plan.connector_sites() if not device.has_site(site)
    ]
    report.add("sites_on_device", failures)
    sites_ok = not failures

    failures = []
    vertex_sites = {}
    for vertex, site in sorted(plan.vertices.items()):
        if site in vertex_sites:
            failures.append("vertices {} and {} share {}".format(
                vertex_sites[site], vertex, site
            ))
        vertex_sites[site] = vertex
    for bridge in plan.bridges:
        for vertex in bridge.endpoints:
            if vertex not in plan.vertices:
                failures.append("bridge endpoint {} isn't placed".format(
                    vertex
                ))
        for site in bridge.connectors:
            if site in vertex_sites:
                failures.append("connector {} is vertex {}".format(
                    site, vertex_sites[site]
                ))
    for u, v in plan.direct:
        for vertex in (u, v):
            if vertex not in plan.vertices:
                failures.append("direct endpoint {} isn't placed".format(
                    vertex
                ))
    report.add("disjoint", failures)
    placed_ok = not failures

    failures = []
    for index, bridge in enumerate(plan.bridges):
        if bridge.kind != "static":
            continue
        for other in plan.bridges[:index] + plan.bridges[index + 1:]:
            shared = set(bridge.connectors) & set(other.connectors)
            if shared:
                failures.append(
                    "static bridge {} shares {} with {}".format(
                        list(bridge.endpoints), sorted(shared),
                        list(other.endpoints)
                    )
                )
    report.add("connector_sharing", failures)

    failures = []
    if sites_ok and placed_ok:
        for u, v in plan.direct:
            a = device.index(plan.vertices[u])
            b = device.index(plan.vertices[v])
            if device.coupler(a, b) is None:
                failures.append("{}-{} has no coupler".format(u, v))
    report.add("direct_edges_coupled", failures)

    failures = []
    if sites_ok and placed_ok:
        for bridge in plan.bridges:
            failures.extend(_path_failures(plan, device, bridge))
    report.add("bridge_paths", failures)
    paths_ok = not failures

    report.add("static_length", [
        "static bridge {} uses {} connectors, static bridges are limited "
        "to one".format(list(bridge.endpoints), len(bridge.connectors))
        for bridge in plan.bridges_of("static")
        if len(bridge.connectors) > 1
    ])
    report.add("dynamic_length", [
        "dynamic bridge {} uses {} connectors, at most {}".format(
            list(bridge.endpoints), len(bridge.connectors),
            policy["max_dynamic"]
        )
        for bridge in plan.bridges_of("dynamic")
        if not 1 <= len(bridge.connectors) <= policy["max_dynamic"]
    ])

    if target is not None:
        failures = []
        realized = plan.realized_edges()
        wanted = set(target.edges())
        seen = set()
        for edge in realized:
            if edge in seen:
                failures.append("edge {} realized twice".format(edge))
            elif edge not in wanted:
                failures.append("edge {} isn't in the target".format(edge))
            seen.add(edge)
        failures.extend(
            "edge {} isn't realized".format(edge)
            for edge in sorted(wanted - seen)
        )
        missing = set(range(target.n)) - set(plan.vertices)
        if missing:
            failures.append("vertices {} aren't placed".format(
                sorted(missing)
            ))
        report.add("edge_realization", failures)

    if not (sites_ok and placed_ok and paths_ok):
        report.add("coupling_floor", [
            "couplings not predicted for an unplaceable plan"
        ])
        return report

    static = {}
    for bridge in plan.bridges_of("static"):
        qubits = {
            vertex: device.index(plan.vertices[vertex])
            for vertex in bridge.endpoints
        }
        detuning = bridge.detuning
        if detuning is None:
            detuning = policy["static_detuning"]
        try:
            by_qubit = predict_static(
                device, list(qubits.values()),
                device.index(bridge.connectors[0]), detuning
            )
        except NumericalError as error:
            report.add("coupling_floor", ["bridge {}: {}".format(
                list(bridge.endpoints), error
            )])
            return report

        static[id(bridge)] = {
            _edge(u, v): by_qubit[_edge(qubits[u], qubits[v])]
            for u, v in bridge.realized()
        }

    # Dynamic bridges at device coupling, each sharing the period
    # equally with the other slots.
    dynamic = plan.bridges_of("dynamic")
    shares = len(_slots(dynamic)) or 1
    nominal = [
        predict_dynamic(device, _bridge_path(plan, device, bridge)) / shares
        for bridge in dynamic
    ]

    J = plan.walk_speed
    if J is None:
        magnitudes = [
            abs(g) for couplings in static.values() for g in couplings.values()
        ] + nominal or [
            abs(device.coupling(
                device.index(plan.vertices[u]),
                device.index(plan.vertices[v])
            ))
            for u, v in plan.direct
        ]
        J = max(min(magnitudes, default=device.g_floor), device.g_floor)
    report.walk_speed = J

    failures = []
    tuned = {}
    if dynamic:
        try:
            layout = _Layout(plan, device, settings, J)
        except IncommensuratePeriods as error:
            report.add("coupling_floor", [str(error)])
            return report

        for index, bridge in enumerate(layout.bridges):
            tuned[id(bridge)] = {bridge.realized()[0]: layout.coupling(index)}
            if layout.drives[index] \
                    < layout.required[index] - FLOOR_TOLERANCE:
                failures.append(
                    "dynamic bridge {} needs a {:.3f} MHz drive to reach "
                    "J, its couplers stop at {:.3f} MHz".format(
                        list(bridge.endpoints), layout.required[index],
                        layout.drives[index]
                    )
                )

    predictions = [
        (bridge, static.get(id(bridge)) or tuned[id(bridge)])
        for bridge in plan.bridges
    ]

    for bridge, couplings in predictions:
        deviation = max(
            abs(abs(g) - J) / J for g in couplings.values()
        )
        report.bridges.append(BridgeReport(bridge, couplings, deviation))
        for edge, g in sorted(couplings.items()):
            if abs(g) < device.g_floor - FLOOR_TOLERANCE:
                failures.append(
                    "edge {} predicts {:.3f} MHz under the {} MHz "
                    "floor".format(edge, abs(g), device.g_floor)
                )
    for u, v in plan.direct:
        coupler = device.coupler(
            device.index(plan.vertices[u]), device.index(plan.vertices[v])
        )
        if coupler is not None and coupler.g_max < J:
            failures.append(
                "direct edge {}-{} can't reach J = {:.3f} MHz".format(u, v, J)
            )
    report.add("coupling_floor", failures)

    dynamic_sites = [
        site for bridge in plan.bridges_of("dynamic")
        for site in bridge.connectors
    ]
    for bridge in plan.bridges_of("static"):
        for site in bridge.connectors:
            if any(manhattan(site, other) == 1 for other in dynamic_sites):
                warning = (
                    "static connector {} sits next to a dynamic bridge, "
                    "their interaction isn't modeled".format(site)
                )
                logging.warning(warning)
                report.warnings.append(warning)

    return report


def _chain_reach(device: DeviceLattice, qubits: Sequence[int]
                 ) -> FrequencyValue:
    reach = []
    for a, b in zip(qubits, qubits[1:]):
        coupler = device.coupler(a, b)
        if coupler is None:
            raise InvalidPlan("Qubits {} and {} aren't coupled".format(a, b))
        reach.append(coupler.g_max)

    return min(reach)


def bridge_fragment(plan: WeavePlan, device: DeviceLattice,
                    bridge: Bridge, drive: FrequencyValue = None
                    ) -> FloquetSchedule:
    """Local schedule of a dynamic bridge on device qubit indices.

    ``drive`` is the coupler strength in MHz, by default the weakest
    device coupler on the chain.
    """

    if bridge.kind != "dynamic":
        raise InvalidPlan("Only dynamic bridges have a schedule")

    path = _bridge_path(plan, device, bridge)
    if drive is None:
        drive = _chain_coupling(device, path)
    local = pew_chain_schedule(len(bridge.connectors), drive)

    return local.relabel(path)


def _slots(dynamic: List[Bridge]) -> List[List[int]]:
    conflicts = nx.Graph()
    conflicts.add_nodes_from(range(len(dynamic)))
    for i, first in enumerate(dynamic):
        for j in range(i + 1, len(dynamic)):
            if set(first.endpoints) & set(dynamic[j].endpoints):
                conflicts.add_edge(i, j)

    colours = nx.greedy_color(conflicts, strategy="largest_first")
    slots: Dict[int, List[int]] = {}
    for index in range(len(dynamic)):
        slots.setdefault(colours[index], []).append(index)

    return [slots[colour] for colour in sorted(slots)]


def _slot_length(periods: List[float], tolerance: float,
                 max_repeats: int) -> float:
    longest = max(periods)
    for repeats in range(1, max_repeats + 1):
        length = repeats * longest
        if all(
            abs(length / period - round(length / period))
            <= tolerance * length / period
            for period in periods
        ):
            return length

    raise IncommensuratePeriods(
        "Local periods {} share no multiple within {} repeats".format(
            periods, max_repeats
        )
    )


def _slot_segments(fragments: List[FloquetSchedule], length: float,
                   tolerance: float) -> List[Tuple[float, Dict[Edge, float]]]:
    cuts = {0.0, length}
    for fragment in fragments:
        repeats = int(round(length / fragment.period))
        for repeat in range(repeats):
            offset = repeat * fragment.period
            cuts.update(offset + time for time in fragment.boundaries())

    times = []
    for time in sorted(cuts):
        if time > length * (1 + tolerance):
            continue
        if not times or time - times[-1] > tolerance * length:
            times.append(time)
    times[-1] = length

    pieces = []
    for start, stop in zip(times, times[1:]):
        middle = (start + stop) / 2.0
        active = {}
        for fragment in fragments:
            segment = fragment.active_at(middle % fragment.period)
            for edge in segment.edges:
                active[edge] = segment.couplings.get(edge)
        pieces.append((stop - start, active))

    return pieces


class _Layout:
    """Time slots of a plan's dynamic bridges.

    Bridges sharing an endpoint go to different slots. A slot lasts the
    smallest common multiple of its bridges' local periods and the
    global period is the sum of the slots, so a bridge only couples its
    endpoints for its slot's share of the period.

    With a walk speed every chain is driven at ``J (N_c + 1) n_slots``,
    which leaves each bridge at ``J`` over the global period, capped by
    the weakest coupler's ``g_max``. Without one chains run at their
    device coupling.
    """

    def __init__(self, plan: WeavePlan, device: DeviceLattice,
                 settings: PlanSettings, walk_speed: FrequencyValue = None
                 ) -> None:
        policy = settings.payload

        self.bridges = plan.bridges_of("dynamic")
        self.slots = _slots(self.bridges)
        self.required: List[Optional[FrequencyValue]] = []
        self.drives: List[FrequencyValue] = []
        self.fragments: List[FloquetSchedule] = []
        for bridge in self.bridges:
            path = _bridge_path(plan, device, bridge)
            if walk_speed is None:
                required = None
                drive = _chain_coupling(device, path)
            else:
                required = walk_speed * (len(bridge.connectors) + 1) \
                    * len(self.slots)
                drive = min(required, _chain_reach(device, path))

            self.required.append(required)
            self.drives.append(drive)
            self.fragments.append(bridge_fragment(plan, device, bridge, drive))

        self.lengths = [
            _slot_length(
                [self.fragments[index].period for index in slot],
                policy["period_tolerance"], policy["max_repeats"]
            )
            for slot in self.slots
        ]
        self.period = sum(self.lengths)

    def coupling(self, index: int) -> FrequencyValue:
        """g-tilde of bridge ``index`` in MHz over the global period.
        """

        for slot, length in zip(self.slots, self.lengths):
            if index in slot:
                share = length / self.period
                break

        return pew_scaling(
            self.drives[index], len(self.bridges[index].connectors)
        ) * share


def compile_schedule(plan: WeavePlan, device: DeviceLattice,
                     settings: PlanSettings = None) -> FloquetSchedule:
    """Global periodic schedule of a plan.

    Dynamic bridges sharing an endpoint run in separate time slots,
    every other bridge of a slot runs alongside. A slot lasts the
    smallest common multiple of its bridges' local periods. When the
    plan carries a walk speed each chain's drive is tuned so the bridge
    couples at J over the whole period. Static couplers stay on at
    device strength and direct edges at J throughout. The plan isn't
    modified.

    Parameters
    ----------
    plan : WeavePlan
    device : DeviceLattice
    settings : PlanSettings, optional

    Returns
    -------
    FloquetSchedule
        Empty without dynamic bridges.

    Raises
    ------
    Unschedulable
        Two bridges share a connector.
    IncommensuratePeriods
    """

    settings = settings or PlanSettings()
    policy = settings.payload
    if not plan.bridges_of("dynamic"):
        return FloquetSchedule({"segments": []})

    owners: Dict[Site, Bridge] = {}
    for bridge in plan.bridges:
        for site in bridge.connectors:
            if site in owners and owners[site] is not bridge:
                raise Unschedulable(
                    "Connector {} is shared by bridges {} and {}".format(
                        site, list(owners[site].endpoints),
                        list(bridge.endpoints)
                    )
                )
            owners[site] = bridge

    J = plan.walk_speed
    layout = _Layout(plan, device, settings, J)

    always: Dict[Edge, float] = {}
    for bridge in plan.bridges_of("static"):
        hub = device.index(bridge.connectors[0])
        for vertex in bridge.endpoints:
            qubit = device.index(plan.vertices[vertex])
            always[_edge(hub, qubit)] = device.coupling(hub, qubit)
    for u, v in plan.direct:
        a = device.index(plan.vertices[u])
        b = device.index(plan.vertices[v])
        always[_edge(a, b)] = J if J is not None else device.coupling(a, b)

    segments = []
    for slot, length in zip(layout.slots, layout.lengths):
        fragments = [layout.fragments[index] for index in slot]
        for duration, active in _slot_segments(
                fragments, length, policy["period_tolerance"]):
            couplings = dict(always)
            couplings.update(active)
            segments.append({
                "duration_us": duration,
                "edges": [
                    [i, j] if g is None else [i, j, g]
                    for (i, j), g in sorted(couplings.items())
                ],
            })

    return FloquetSchedule({"segments": segments})
