class EdgeweaveException(Exception):
    """Base exception for edgeweave.
    """

    def __init__(self, msg="Edgeweave base exception", *args,
                 **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class InputError(EdgeweaveException):
    """Base for errors caused by user supplied documents or arguments.
    """

    def __init__(self, msg="Invalid input", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class NumericalError(EdgeweaveException):
    """Base for failures inside a numerical routine.
    """

    def __init__(self, msg="Numerical failure", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class PlanningError(EdgeweaveException):
    """Base for embedding and scheduling failures.
    """

    def __init__(self, msg="Planning failure", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class InvalidDocument(InputError):
    """Raised when a document can't be parsed.
    """

    def __init__(self, msg="Document could not be parsed", *args,
                 **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class UnwritableOutput(InputError):
    """Raised when a result or document can't be written.
    """

    def __init__(self, msg="Output could not be written", *args,
                 **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class UnsupportedVersion(InputError):
    """Raised when a document's version field is missing or unknown.
    """

    def __init__(self, msg="Unsupported document version", *args,
                 **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class InvalidDevice(InputError):
    """Raised when a device breaks a lattice invariant.
    """

    def __init__(self, msg="Invalid device", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class InvalidGraph(InputError):
    """Raised when an adjacency matrix isn't a simple undirected graph.
    """

    def __init__(self, msg="Invalid graph", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class InvalidPlan(InputError):
    """Raised when a plan document is malformed.
    """

    def __init__(self, msg="Invalid plan", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class InvalidSchedule(InputError):
    """Raised when a schedule references unknown couplers or is malformed.
    """

    def __init__(self, msg="Invalid schedule", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class NegativeDuration(InvalidSchedule):
    """Raised when a duration or time is below zero.
    """

    def __init__(self, msg="Negative duration", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class InvalidSettings(InputError):
    """Raised when a setting is outside its allowed range.
    """

    def __init__(self, msg="Invalid setting", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class MultipleMethods(InvalidSettings):
    """Raised when you attempt to select more than one
       effective-model method on one settings object.
    """

    def __init__(self, msg="Multiple methods called", *args,
                 **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class UnknownMethod(InputError):
    """Raised when an effective-model method tag isn't recognised.
    """

    def __init__(self, msg="Unknown method", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class UnknownExperiment(InputError):
    """Raised when an experiment name isn't registered.
    """

    def __init__(self, msg="Unknown experiment", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class UnknownBasisLabel(InputError):
    """Raised when a basis label isn't part of a basis.
    """

    def __init__(self, msg="Unknown basis label", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class GridMismatch(InputError):
    """Raised when two time series don't share a time grid.
    """

    def __init__(self, msg="Time grids differ", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class DimensionMismatch(InputError):
    """Raised when a matrix or basis has the wrong size.
    """

    def __init__(self, msg="Dimension mismatch", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class OutOfRange(InputError):
    """Raised when an argument is outside its supported range.
    """

    def __init__(self, msg="Value out of range", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class NonHermitian(NumericalError):
    """Raised when an assembled Hamiltonian isn't Hermitian.
    """

    def __init__(self, msg="Matrix is not Hermitian", *args,
                 **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class NormViolation(NumericalError):
    """Raised when evolved populations don't sum to one.
    """

    def __init__(self, msg="Populations are not normalised", *args,
                 **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class ZeroDetuning(NumericalError):
    """Raised when a perturbative formula is given a zero detuning.
    """

    def __init__(self, msg="Detuning is zero", *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class AmbiguousAssignment(NumericalError):
    """Raised when eigenvectors can't be assigned to a subspace
       because their overlaps tie.
    """

    def __init__(self, msg="Ambiguous eigenvector assignment", *args,
                 **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class InfeasibleEmbedding(PlanningError):
    """Raised when a graph can't be placed on a device.

    Attributes
    ----------
    witness : tuple
        First target edge that couldn't be routed, None when the
        failure is a capacity one.
    """

    def __init__(self, msg="Embedding is infeasible", witness=None,
                 *args, **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)
        self.witness = witness


class SearchBudgetExceeded(PlanningError):
    """Raised when the planner runs out of node expansions.
    """

    def __init__(self, msg="Search budget exceeded", *args,
                 **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class Unschedulable(PlanningError):
    """Raised when dynamic bridges share connector qubits.
    """

    def __init__(self, msg="Dynamic bridges can't be scheduled", *args,
                 **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)


class IncommensuratePeriods(PlanningError):
    """Raised when local periods have no common multiple
       within the tolerance.
    """

    def __init__(self, msg="Local periods are incommensurate", *args,
                 **kwargs) -> None:
        super().__init__(msg, *args, **kwargs)
