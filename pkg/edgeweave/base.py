from .exceptions import InvalidDevice
from .models.device import DeviceLattice
from .settings import PlanSettings, SolverSettings


class Base:
    def __init__(self, device: DeviceLattice = None,
                 settings: SolverSettings = None,
                 plan_settings: PlanSettings = None) -> None:
        """Shared session state.

        Parameters
        ----------
        device : DeviceLattice, optional
            Default device for every call, by default None
        settings : SolverSettings, optional
            by default SolverSettings()
        plan_settings : PlanSettings, optional
            by default PlanSettings()
        """

        self.device = device
        self.settings = settings or SolverSettings()
        self.plan_settings = plan_settings or PlanSettings()

    def _lattice(self, device: DeviceLattice = None) -> DeviceLattice:
        device = device or self.device
        if device is None:
            raise InvalidDevice("No device given and none set on the session")

        return device
