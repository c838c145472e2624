from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import List, Sequence, Tuple, Union

import asyncio

from .base import Base
from .dynamics import (
    WalkSpeedReport,
    compare_dynamics,
    ctqw_evolve,
    walkspeed_for_device
)
from .effective import effective_for_device, sew_coupling
from .floquet import simulate_pew
from .io import AwaitingIO, BlockingIO
from .models.device import DeviceLattice
from .models.effective import EffectiveModel
from .models.evolution import ErrorSeries, EvolutionResult, StroboscopicResult
from .models.graph import TargetGraph, WalkSpeed
from .models.plan import ValidationReport, WeavePlan
from .models.schedule import FloquetSchedule
from .settings import PlanSettings, SolverSettings
from .units import FrequencyValue
from .weaver import plan_embedding, validate_plan


__version__ = "0.1.0"
__url__ = "https://edgeweave.readthedocs.io/en/latest/"
__description__ = "Static and periodic edge weaving on transmon lattices."
__author__ = "WardPearce"
__author_email__ = "wardpearce@protonmail.com"
__license__ = "GPL v3"


Comparison = Tuple[EvolutionResult, EvolutionResult, ErrorSeries]


class Awaiting(Base, AwaitingIO):
    def __init__(self, *args, workers: int = None, **kwargs) -> None:
        super().__init__(*args, **kwargs)

        self._executor = ThreadPoolExecutor(max_workers=workers)

    async def __aenter__(self) -> Awaiting:
        return self

    async def __aexit__(self, exc_type, exc_val, exc_tb) -> None:
        await self.close()

    async def close(self) -> None:
        """Shuts the worker pool down.
        """

        self._executor.shutdown(wait=True)

    async def _run(self, func, *args, **kwargs):
        return await asyncio.get_running_loop().run_in_executor(
            self._executor, partial(func, *args, **kwargs)
        )

    async def effective(self, device: DeviceLattice = None,
                        method: str = None,
                        subspace: Sequence[Union[str, int]] = None
                        ) -> EffectiveModel:
        """Effective model of a device.

        Parameters
        ----------
        device : DeviceLattice, optional
            by default the session's device.
        method : str, optional
            by default the session settings' method.
        subspace : Sequence[Union[str, int]], optional
            Kept states for ebd-la.

        Returns
        -------
        EffectiveModel
        """

        return await self._run(
            effective_for_device, self._lattice(device), method, subspace,
            self.settings
        )

    async def walk_speed(self, J: Union[WalkSpeed, FrequencyValue],
                         device: DeviceLattice = None, method: str = None,
                         subspace: Sequence[Union[str, int]] = None
                         ) -> WalkSpeedReport:
        """Effective edges against a walk speed, flagged past the
        settings' walk tolerance.
        """

        return await self._run(
            walkspeed_for_device, self._lattice(device), J, method,
            subspace, self.settings
        )

    async def evolve(self, initial: str, t_grid: Sequence[float],
                     device: DeviceLattice = None, method: str = None,
                     full: bool = None) -> Comparison:
        """Full and effective evolution with their population error.

        Returns
        -------
        EvolutionResult
        EvolutionResult
        ErrorSeries
        """

        return await self._run(
            compare_dynamics, self._lattice(device), initial, t_grid,
            method, self.settings, full
        )

    async def floquet(self, schedule: FloquetSchedule,
                      initial: Union[str, int], cycles: int = None,
                      device: DeviceLattice = None,
                      effective: EffectiveModel = None, full: bool = False,
                      steps: int = 0
                      ) -> Tuple[StroboscopicResult, ErrorSeries]:
        """Stroboscopic run of a schedule.

        Returns
        -------
        StroboscopicResult
        ErrorSeries
        """

        return await self._run(
            simulate_pew, self._lattice(device), schedule, initial, cycles,
            effective, None, full, steps
        )

    async def ctqw(self, graph: TargetGraph, j: int, t_grid: Sequence[float],
                   speed: Union[WalkSpeed, FrequencyValue] = None
                   ) -> EvolutionResult:
        return await self._run(ctqw_evolve, graph, j, t_grid, speed)

    async def plan(self, graph: TargetGraph,
                   device: DeviceLattice = None) -> WeavePlan:
        """Plans an embedding with the session's plan settings.

        Returns
        -------
        WeavePlan
        """

        return await self._run(
            plan_embedding, graph, self._lattice(device), self.plan_settings
        )

    async def validate(self, plan: WeavePlan,
                       device: DeviceLattice = None) -> ValidationReport:
        return await self._run(
            validate_plan, plan, self._lattice(device), None,
            self.plan_settings
        )

    async def sew_scaling(self, n_connectors: int, g: FrequencyValue,
                          delta: FrequencyValue,
                          omega: FrequencyValue = 4500.0
                          ) -> List[Tuple[int, FrequencyValue]]:
        """End-to-end static couplings for 1..n_connectors, computed
        concurrently.

        Returns
        -------
        List[Tuple[int, FrequencyValue]]
        """

        counts = range(1, n_connectors + 1)
        values = await asyncio.gather(*[
            self._run(
                sew_coupling, count, g, delta, omega,
                tie_tolerance=self.settings.payload["tie_tolerance"]
            )
            for count in counts
        ])

        return list(zip(counts, values))


class Blocking(Base, BlockingIO):
    def __enter__(self) -> Blocking:
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.close()

    def close(self) -> None:
        """Drops the session's device.
        """

        self.device = None

    def effective(self, device: DeviceLattice = None, method: str = None,
                  subspace: Sequence[Union[str, int]] = None
                  ) -> EffectiveModel:
        """Effective model of a device.

        Parameters
        ----------
        device : DeviceLattice, optional
            by default the session's device.
        method : str, optional
            by default the session settings' method.
        subspace : Sequence[Union[str, int]], optional
            Kept states for ebd-la.

        Returns
        -------
        EffectiveModel
        """

        return effective_for_device(
            self._lattice(device), method, subspace, self.settings
        )

    def walk_speed(self, J: Union[WalkSpeed, FrequencyValue],
                   device: DeviceLattice = None, method: str = None,
                   subspace: Sequence[Union[str, int]] = None
                   ) -> WalkSpeedReport:
        return walkspeed_for_device(
            self._lattice(device), J, method, subspace, self.settings
        )

    def evolve(self, initial: str, t_grid: Sequence[float],
               device: DeviceLattice = None, method: str = None,
               full: bool = None) -> Comparison:
        """Full and effective evolution with their population error.

        Returns
        -------
        EvolutionResult
        EvolutionResult
        ErrorSeries
        """

        return compare_dynamics(
            self._lattice(device), initial, t_grid, method, self.settings,
            full
        )

    def floquet(self, schedule: FloquetSchedule, initial: Union[str, int],
                cycles: int = None, device: DeviceLattice = None,
                effective: EffectiveModel = None, full: bool = False,
                steps: int = 0) -> Tuple[StroboscopicResult, ErrorSeries]:
        """Stroboscopic run of a schedule.

        Returns
        -------
        StroboscopicResult
        ErrorSeries
        """

        return simulate_pew(
            self._lattice(device), schedule, initial, cycles, effective,
            None, full, steps
        )

    def ctqw(self, graph: TargetGraph, j: int, t_grid: Sequence[float],
             speed: Union[WalkSpeed, FrequencyValue] = None
             ) -> EvolutionResult:
        return ctqw_evolve(graph, j, t_grid, speed)

    def plan(self, graph: TargetGraph,
             device: DeviceLattice = None) -> WeavePlan:
        """Plans an embedding with the session's plan settings.

        Returns
        -------
        WeavePlan
        """

        return plan_embedding(graph, self._lattice(device),
                              self.plan_settings)

    def validate(self, plan: WeavePlan,
                 device: DeviceLattice = None) -> ValidationReport:
        return validate_plan(plan, self._lattice(device), None,
                             self.plan_settings)

    def sew_scaling(self, n_connectors: int, g: FrequencyValue,
                    delta: FrequencyValue, omega: FrequencyValue = 4500.0
                    ) -> List[Tuple[int, FrequencyValue]]:
        """End-to-end static couplings for 1..n_connectors.

        Returns
        -------
        List[Tuple[int, FrequencyValue]]
        """

        return [
            (count, sew_coupling(
                count, g, delta, omega,
                tie_tolerance=self.settings.payload["tie_tolerance"]
            ))
            for count in range(1, n_connectors + 1)
        ]


__all__ = [
    "Awaiting",
    "Blocking",
    "SolverSettings",
    "PlanSettings"
]
