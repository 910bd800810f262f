import astropy.units as u
import numpy as np

frames_per_second = u.def_unit("fps", 1 / u.s)
try:
    u.add_enabled_units([frames_per_second])
except ValueError:
    pass

u.add_enabled_aliases({"frames/s": frames_per_second})


def strip_unit(x, unit=None):
    """
    Quick wrapper to remove the unit from a quantity,
    but not complain if it doesn't have one.

    Parameters
    ----------
    x : Quantity, float, array
        The thing that might have units.
    unit : str, Unit, optional
        If `x` is a Quantity, convert it to this unit
        before dropping the unit.

    Returns
    -------
    value : float, array
        The bare number(s).
    """
    if isinstance(x, u.Quantity):
        if unit is None:
            return x.value
        return x.to_value(unit)
    return x


def to_microseconds(x, unit=u.s):
    """
    Convert a time into an integer number of microseconds.

    Parameters
    ----------
    x : Quantity, float
        A time. If it has no units, it is assumed
        to be expressed in `unit`.
    unit : str, Unit
        The unit to assume for bare numbers.

    Returns
    -------
    microseconds : int
        The time, rounded to the nearest microsecond.
    """
    if not isinstance(x, u.Quantity):
        x = x * u.Unit(unit)
    return int(np.round(x.to_value(u.us)))
