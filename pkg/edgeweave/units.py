"""Unit conventions.

Every user facing frequency is a linear frequency in MHz, so a coupling
quoted as ``25 MHz x 2pi`` is stored as ``25.0``. Hamiltonians are
assembled in angular units (rad/us) and times are in microseconds.
"""

import math

from typing import Any, Type

from .exceptions import EdgeweaveException, OutOfRange


TWO_PI = 2.0 * math.pi

#: Linear frequency in MHz.
FrequencyValue = float


def to_angular(mhz):
    """MHz to rad/us. Works on scalars and numpy arrays.
    """

    return mhz * TWO_PI


def to_linear(rad_per_us):
    """rad/us to MHz.
    """

    return rad_per_us / TWO_PI


def quarter_swap_time(g: FrequencyValue) -> float:
    """Duration in us of a full swap on a resonant pair.

    ``pi / (2 * 2pi g)`` written in linear units, i.e. ``1 / (4g)``.
    """

    if g == 0:
        raise OutOfRange("Coupling must be nonzero for a swap time")

    return 1.0 / (4.0 * abs(g))


def frequency(value: Any, field: str, positive: bool = False,
              error: Type[EdgeweaveException] = OutOfRange
              ) -> FrequencyValue:
    """Validates a FrequencyValue.

    Parameters
    ----------
    value : Any
        Raw number.
    field : str
        Field name used in the error message.
    positive : bool, optional
        Require a strictly positive value, by default False
    error : Type[EdgeweaveException], optional
        Exception raised on failure, by default OutOfRange

    Returns
    -------
    FrequencyValue
    """

    if isinstance(value, bool):
        raise error("{} must be a number, got {!r}".format(field, value))

    try:
        value = float(value)
    except (TypeError, ValueError):
        raise error("{} must be a number, got {!r}".format(field, value))

    if not math.isfinite(value):
        raise error("{} must be finite".format(field))

    if positive and value <= 0:
        raise error("{} must be positive, got {}".format(field, value))

    return value
