from __future__ import annotations
from typing import List, Sequence, Set, Tuple

from ..exceptions import InvalidSchedule, NegativeDuration


Edge = Tuple[int, int]


def _edge(i: int, j: int) -> Edge:
    if i == j:
        raise InvalidSchedule("Edge {}-{} is a loop".format(i, j))

    return (int(i), int(j)) if i < j else (int(j), int(i))


class Segment:
    """One piecewise-constant stretch of a period.

    Edges listed as ``[i, j]`` run at the device coupling, edges listed
    as ``[i, j, g]`` run at ``g`` MHz.

    Attributes
    ----------
    duration : float
        Length in us.
    edges : Tuple[Edge, ...]
        Active couplers, sorted.
    couplings : Dict[Edge, float]
        Strength overrides in MHz.
    """

    def __init__(self, data: dict) -> None:
        duration = float(data["duration_us"])
        if duration < 0:
            raise NegativeDuration(
                "Segment duration {} us is negative".format(duration)
            )
        if duration == 0:
            raise InvalidSchedule("Segment durations must be positive")
        self.duration = duration

        self.couplings = {}
        edges = set()
        for entry in data.get("edges", []):
            if len(entry) not in (2, 3):
                raise InvalidSchedule(
                    "Edge must be [i, j] or [i, j, g], got {!r}".format(entry)
                )

            edge = _edge(entry[0], entry[1])
            if edge in edges:
                raise InvalidSchedule("Edge {} listed twice".format(edge))

            edges.add(edge)
            if len(entry) == 3:
                self.couplings[edge] = float(entry[2])

        self.edges = tuple(sorted(edges))

    def to_dict(self) -> dict:
        return {
            "duration_us": self.duration,
            "edges": [
                list(edge) + [self.couplings[edge]]
                if edge in self.couplings else list(edge)
                for edge in self.edges
            ],
        }


class FloquetSchedule:
    """Ordered segments making up one period.

    Attributes
    ----------
    segments : List[Segment]
    cycles : int
        Periods simulated by default.
    """

    def __init__(self, data: dict) -> None:
        self.segments = [
            segment if isinstance(segment, Segment) else Segment(segment)
            for segment in data.get("segments", [])
        ]

        cycles = data.get("cycles", 1)
        if isinstance(cycles, bool) or int(cycles) != cycles or cycles < 0:
            raise InvalidSchedule("cycles must be a nonnegative integer")
        self.cycles = int(cycles)

    @property
    def period(self) -> float:
        return sum(segment.duration for segment in self.segments)

    @property
    def empty(self) -> bool:
        return not self.segments

    def edges(self) -> Set[Edge]:
        """Every coupler the schedule ever switches on.
        """

        return {edge for segment in self.segments for edge in segment.edges}

    def relabel(self, qubits: Sequence[int]) -> FloquetSchedule:
        """Maps local site ``k`` onto ``qubits[k]``.
        """

        segments = []
        for segment in self.segments:
            entries = []
            for i, j in segment.edges:
                entry = [qubits[i], qubits[j]]
                if (i, j) in segment.couplings:
                    entry.append(segment.couplings[(i, j)])
                entries.append(entry)

            segments.append({
                "duration_us": segment.duration,
                "edges": entries,
            })

        return FloquetSchedule({"segments": segments, "cycles": self.cycles})

    def boundaries(self) -> List[float]:
        """Start time of every segment plus the period.
        """

        times = [0.0]
        for segment in self.segments:
            times.append(times[-1] + segment.duration)

        return times

    def active_at(self, time: float) -> Segment:
        """Segment running at ``time`` within one period.
        """

        start = 0.0
        for segment in self.segments:
            if time < start + segment.duration:
                return segment
            start += segment.duration

        return self.segments[-1]

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "cycles": self.cycles,
            "segments": [segment.to_dict() for segment in self.segments],
        }
