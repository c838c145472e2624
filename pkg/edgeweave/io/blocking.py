import logging
import os

from ..exceptions import InvalidDocument, UnwritableOutput
from ..models.device import DeviceLattice
from ..models.graph import TargetGraph
from ..models.plan import WeavePlan
from ..models.schedule import FloquetSchedule
from .base import BaseIO, dump_document


class BlockingIO(BaseIO):
    def _read(self, pathway: str) -> str:
        """Reads a text file.
        """

        try:
            with open(pathway, "r", encoding="utf-8") as f:
                return f.read()
        except OSError as error:
            message = "{}: {}".format(pathway, error.strerror)
            logging.error(message)
            raise InvalidDocument(message)

    def _write(self, pathway: str, text: str) -> str:
        """Writes a text file, creating parent directories.
        """

        try:
            directory = os.path.dirname(pathway)
            if directory:
                os.makedirs(directory, exist_ok=True)

            with open(pathway, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
        except OSError as error:
            message = "{}: {}".format(pathway, error.strerror)
            logging.error(message)
            raise UnwritableOutput(message)

        return pathway

    def _load(self, pathway: str) -> dict:
        return self.handle_document(self._read(pathway), pathway)

    def load_device(self, pathway: str) -> DeviceLattice:
        """Loads a device document.

        Parameters
        ----------
        pathway : str

        Returns
        -------
        DeviceLattice
        """

        return self._device(self._load(pathway))

    def load_graph(self, pathway: str) -> TargetGraph:
        """Loads a graph document.

        Parameters
        ----------
        pathway : str

        Returns
        -------
        TargetGraph
        """

        return self._graph(self._load(pathway))

    def load_schedule(self, pathway: str) -> FloquetSchedule:
        return self._schedule(self._load(pathway))

    def load_plan(self, pathway: str) -> WeavePlan:
        """Loads a plan document along with the graph it names.

        Parameters
        ----------
        pathway : str

        Returns
        -------
        WeavePlan
            ``target`` is set when the plan names a graph.
        """

        plan = self._plan(self._load(pathway))

        graph_pathway = self._graph_pathway(plan, pathway)
        if graph_pathway is not None:
            plan.target = self.load_graph(graph_pathway)

        return plan

    def save_device(self, device: DeviceLattice, pathway: str) -> str:
        return self._write(pathway, dump_document(device.to_dict()))

    def save_graph(self, graph: TargetGraph, pathway: str) -> str:
        return self._write(pathway, dump_document(graph.to_dict()))

    def save_plan(self, plan: WeavePlan, pathway: str) -> str:
        return self._write(pathway, dump_document(plan.to_dict()))

    def save_schedule(self, schedule: FloquetSchedule, pathway: str) -> str:
        return self._write(pathway, dump_document(schedule.to_dict()))
