import csv
import io
import json
import logging
import os
from datetime import datetime, timezone
from json import JSONDecodeError
from typing import Any, Dict, List, Sequence, Type, TypeVar

from ..exceptions import InvalidDocument, UnsupportedVersion
from ..models.device import DeviceLattice
from ..models.graph import TargetGraph
from ..models.plan import WeavePlan
from ..models.schedule import FloquetSchedule


T = TypeVar("T")

VERSION = 1


def dump_document(data: dict) -> str:
    """Canonical JSON text, two space indent and a trailing newline.
    """

    return json.dumps(data, indent=2) + "\n"


def render_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """CSV text shared by both sessions, floats in ``repr`` form.
    """

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([
            repr(float(value)) if isinstance(value, float) else value
            for value in row
        ])

    return buffer.getvalue()


def render_svg(times: Sequence[float], series: Dict[str, Sequence[float]],
               xlabel: str = "t (us)", ylabel: str = "population") -> str:
    """Single line plot as SVG text.
    """

    import matplotlib
    matplotlib.use("Agg")
    from matplotlib import pyplot

    figure, axes = pyplot.subplots(figsize=(6, 4))
    for label, values in series.items():
        axes.plot(times, values, label=label)
    axes.set_xlabel(xlabel)
    axes.set_ylabel(ylabel)
    if series:
        axes.legend(loc="best", fontsize="small")

    buffer = io.StringIO()
    figure.savefig(buffer, format="svg")
    pyplot.close(figure)

    return buffer.getvalue()


def build_manifest(files: List[str], parameters: Dict[str, Any]) -> dict:
    """Run manifest, the timestamp kept apart from reproducible fields.
    """

    return {
        "version": VERSION,
        "files": sorted(files),
        "parameters": parameters,
        "created_at": datetime.now(timezone.utc).isoformat(),
    }


class BaseIO:
    def handle_document(self, text: str, source: str = "<document>"
                        ) -> dict:
        """Decodes a JSON document and checks its version.

        Parameters
        ----------
        text : str
        source : str, optional
            Path used in messages, by default "<document>"

        Returns
        -------
        dict

        Raises
        ------
        InvalidDocument
        UnsupportedVersion
        """

        try:
            data = json.loads(text)
        except JSONDecodeError as error:
            message = "{}: line {} column {}: {}".format(
                source, error.lineno, error.colno, error.msg
            )
            logging.error(message)
            raise InvalidDocument(message)

        if not isinstance(data, dict):
            message = "{}: top level must be an object".format(source)
            logging.error(message)
            raise InvalidDocument(message)

        if data.get("version") != VERSION:
            message = "{}: version {!r} isn't supported".format(
                source, data.get("version")
            )
            logging.error(message)
            raise UnsupportedVersion(message)

        return data

    @staticmethod
    def _build(model: Type[T], data: dict) -> T:
        """Model from a decoded document, structural slips reported as
        InvalidDocument.
        """

        try:
            return model(data)
        except (KeyError, TypeError, ValueError) as error:
            message = "{} document is malformed: {!r}".format(
                model.__name__, error
            )
            logging.error(message)
            raise InvalidDocument(message)

    def _device(self, data: dict) -> DeviceLattice:
        return self._build(DeviceLattice, data)

    def _graph(self, data: dict) -> TargetGraph:
        return self._build(TargetGraph, data)

    def _schedule(self, data: dict) -> FloquetSchedule:
        return self._build(FloquetSchedule, data)

    def _plan(self, data: dict) -> WeavePlan:
        return self._build(WeavePlan, data)

    @staticmethod
    def _graph_pathway(plan: WeavePlan, pathway: str) -> str:
        """Graph document of a plan, relative to the plan file.
        """

        if plan.graph_path is None:
            return None

        return os.path.join(os.path.dirname(pathway), plan.graph_path)
