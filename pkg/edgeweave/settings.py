from __future__ import annotations
from typing import Any, Dict

import os

from .exceptions import (
    InvalidSettings,
    MultipleMethods,
    UnknownMethod,
    UnknownExperiment
)


METHODS = [
    "bloch2",
    "bloch4",
    "star-series",
    "star-closed",
    "ebd-la"
]

EXPERIMENTS = [
    "effective",
    "evolve",
    "floquet",
    "ctqw",
    "plan",
    "scaling"
]

OUTPUT_ENV = "EDGEWEAVE_OUT"


def default_output_root() -> str:
    """Output root from ``EDGEWEAVE_OUT``, else ``./out``.
    """

    return os.environ.get(OUTPUT_ENV) or "out"


def _positive(value: Any, name: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidSettings("{} must be a number".format(name))

    if not value > 0:
        raise InvalidSettings("{} must be positive".format(name))

    return value


def _positive_int(value: Any, name: str, minimum: int = 1) -> int:
    try:
        whole = isinstance(value, bool) or int(value) != value
    except (TypeError, ValueError):
        whole = True
    if whole:
        raise InvalidSettings("{} must be an integer".format(name))

    if value < minimum:
        raise InvalidSettings(
            "{} must be at least {}".format(name, minimum)
        )

    return int(value)


class SolverSettings:
    __method = False

    def __init__(self, levels: int = None, dispersive_bound: float = None,
                 tie_tolerance: float = None,
                 hermitian_tolerance: float = None,
                 walk_tolerance: float = None) -> None:
        """Numerical knobs shared by every computation.

        Parameters
        ----------
        levels : int, optional
            Truncation applied to every qubit in product-space builds,
            by default each qubit keeps the device's own
        dispersive_bound : float, optional
            |g/Delta| above which Bloch formulas warn, by default 0.25
        tie_tolerance : float, optional
            Overlap gap below which EBD-LA refuses to assign,
            by default 1e-9
        hermitian_tolerance : float, optional
            Relative Hermiticity tolerance, by default 1e-12
        walk_tolerance : float, optional
            Relative walk-speed deviation that gets flagged,
            by default 0.05
        """

        self.payload = {
            "levels": None,
            "dispersive_bound": 0.25,
            "tie_tolerance": 1e-9,
            "hermitian_tolerance": 1e-12,
            "walk_tolerance": 0.05,
            "method": "ebd-la",
        }

        if levels is not None:
            self.payload["levels"] = _positive_int(levels, "levels", 2)
        if dispersive_bound is not None:
            self.payload["dispersive_bound"] = _positive(
                dispersive_bound, "dispersive_bound"
            )
        if tie_tolerance is not None:
            self.payload["tie_tolerance"] = _positive(
                tie_tolerance, "tie_tolerance"
            )
        if hermitian_tolerance is not None:
            self.payload["hermitian_tolerance"] = _positive(
                hermitian_tolerance, "hermitian_tolerance"
            )
        if walk_tolerance is not None:
            self.payload["walk_tolerance"] = _positive(
                walk_tolerance, "walk_tolerance"
            )

    def __set_method(self, method: str) -> SolverSettings:
        if self.__method:
            raise MultipleMethods()

        if method not in METHODS:
            raise UnknownMethod(
                "{} isn't one of {}".format(method, ", ".join(METHODS))
            )

        self.__method = True
        self.payload["method"] = method

        return self

    def method(self, name: str) -> SolverSettings:
        """Selects an effective-model method by tag.

        Parameters
        ----------
        name : str
            One of bloch2, bloch4, star-series, star-closed, ebd-la.

        Returns
        -------
        SolverSettings
        """

        return self.__set_method(name)

    def ebd_la(self) -> SolverSettings:
        """Exact block diagonalization by least action.
        """

        return self.__set_method("ebd-la")

    def bloch(self, order: int = 4) -> SolverSettings:
        """Bloch perturbation closed forms.

        Parameters
        ----------
        order : int, optional
            2 or 4, by default 4
        """

        if order not in (2, 4):
            raise InvalidSettings("Bloch order must be 2 or 4")

        return self.__set_method("bloch{}".format(order))

    def star(self, closed: bool = True) -> SolverSettings:
        """Star-graph formulas, closed form or Catalan series.
        """

        return self.__set_method("star-closed" if closed else "star-series")


class PlanSettings:
    def __init__(self, node_budget: int = None, seed: int = None,
                 period_tolerance: float = None,
                 max_repeats: int = None) -> None:
        """Planner and schedule compiler policy.

        Both bridge kinds are allowed until switched off with
        :meth:`static` or :meth:`dynamic`.

        Parameters
        ----------
        node_budget : int, optional
            Placement attempts before giving up, by default 200000
        seed : int, optional
            Tie-breaking seed, by default 0
        period_tolerance : float, optional
            Relative tolerance when matching local periods,
            by default 1e-9
        max_repeats : int, optional
            Largest multiple of a local period tried, by default 64
        """

        self.payload = {
            "allow_static": True,
            "allow_dynamic": True,
            "static_detuning": -200.0,
            "max_dynamic": 7,
            "node_budget": 200000,
            "seed": 0,
            "period_tolerance": 1e-9,
            "max_repeats": 64,
        }

        if node_budget is not None:
            self.payload["node_budget"] = _positive_int(
                node_budget, "node_budget"
            )
        if seed is not None:
            self.payload["seed"] = _positive_int(seed, "seed", 0)
        if period_tolerance is not None:
            self.payload["period_tolerance"] = _positive(
                period_tolerance, "period_tolerance"
            )
        if max_repeats is not None:
            self.payload["max_repeats"] = _positive_int(
                max_repeats, "max_repeats"
            )

    def static(self, enabled: bool = True,
               detuning: float = None) -> PlanSettings:
        """Configures static (detuned connector) bridges.

        Parameters
        ----------
        enabled : bool, optional
            by default True
        detuning : float, optional
            Node minus connector frequency in MHz, by default -200

        Returns
        -------
        PlanSettings
        """

        self.payload["allow_static"] = bool(enabled)

        if detuning is not None:
            if detuning == 0:
                raise InvalidSettings("Static detuning must be nonzero")

            self.payload["static_detuning"] = float(detuning)

        return self

    def dynamic(self, enabled: bool = True,
                max_connectors: int = None) -> PlanSettings:
        """Configures dynamic (periodically toggled) bridges.

        Parameters
        ----------
        enabled : bool, optional
            by default True
        max_connectors : int, optional
            Longest connector chain, by default 7

        Returns
        -------
        PlanSettings
        """

        self.payload["allow_dynamic"] = bool(enabled)

        if max_connectors is not None:
            self.payload["max_dynamic"] = _positive_int(
                max_connectors, "max_connectors"
            )

        return self


class ExperimentConfig:
    def __init__(self, name: str, inputs: Dict[str, str] = None,
                 overrides: Dict[str, Any] = None, out: str = None,
                 seed: int = 0) -> None:
        """Describes one CLI run.

        Parameters
        ----------
        name : str
            Registered experiment name.
        inputs : Dict[str, str], optional
            Input documents keyed by role, by default None
        overrides : Dict[str, Any], optional
            Parameter overrides, by default None
        out : str, optional
            Output directory, by default ``EDGEWEAVE_OUT`` or ``./out``
        seed : int, optional
            by default 0

        Raises
        ------
        UnknownExperiment
        InvalidSettings
            Output directory can't be created or written.
        """

        if name not in EXPERIMENTS:
            raise UnknownExperiment(
                "{} isn't one of {}".format(name, ", ".join(EXPERIMENTS))
            )

        self.name = name
        self.inputs = dict(inputs or {})
        self.overrides = dict(overrides or {})
        self.seed = _positive_int(seed, "seed", 0)
        self.out = out if out is not None else default_output_root()

        try:
            os.makedirs(self.out, exist_ok=True)
        except OSError as error:
            raise InvalidSettings(
                "Can't create {}: {}".format(self.out, error)
            )

        if not os.access(self.out, os.W_OK):
            raise InvalidSettings("{} isn't writable".format(self.out))

    @property
    def payload(self) -> Dict[str, Any]:
        """Parameters recorded in a run manifest.
        """

        return {
            "experiment": self.name,
            "inputs": dict(sorted(self.inputs.items())),
            "overrides": dict(sorted(self.overrides.items())),
            "seed": self.seed,
        }
