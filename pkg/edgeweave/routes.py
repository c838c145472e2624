import os


class Route:
    _prefix = None

    def __init__(self, root: str) -> None:
        """Used for formatting artifact paths under an output root.

        Parameters
        ----------
        root : str
            Output directory of the run.
        """

        self.root = root
        self.format()

    def format(self) -> None:
        """Joins every template onto the root and prefix.
        """

        routes = [
            attr for attr in dir(self.__class__)
            if not callable(getattr(self.__class__, attr))
            and not attr.startswith("__")
            and not attr.startswith("_")
        ]

        for var_name in routes:
            parts = [self.root]
            if self._prefix:
                parts.append(self._prefix)

            setattr(
                self,
                var_name,
                os.path.join(*parts, getattr(self.__class__, var_name))
            )

    def relative(self, pathway: str) -> str:
        """Path as listed in the manifest.
        """

        return os.path.relpath(pathway, self.root).replace(os.sep, "/")


class Effective(Route):
    _prefix = "effective"

    table = "couplings.csv"
    matrix = "hamiltonian.txt"
    manifest = "manifest.json"


class Evolve(Route):
    _prefix = "evolve"

    full = "full.csv"
    effective = "effective.csv"
    error = "error.csv"
    plot = "{}.svg"
    manifest = "manifest.json"


class Floquet(Route):
    _prefix = "floquet"

    stroboscopic = "stroboscopic.csv"
    trace = "trace.csv"
    error = "error.csv"
    plot = "{}.svg"
    manifest = "manifest.json"


class Ctqw(Route):
    _prefix = "ctqw"

    walk = "walk.csv"
    plot = "{}.svg"
    manifest = "manifest.json"


class Plan(Route):
    _prefix = "plan"

    plan = "plan.json"
    report = "report.csv"
    manifest = "manifest.json"


class Scaling(Route):
    _prefix = "scaling"

    sew = "sew.csv"
    pew = "pew.csv"
    coupling_map = "coupling_map.csv"
    plot = "{}.svg"
    manifest = "manifest.json"


ROUTES = {
    "effective": Effective,
    "evolve": Evolve,
    "floquet": Floquet,
    "ctqw": Ctqw,
    "plan": Plan,
    "scaling": Scaling,
}
