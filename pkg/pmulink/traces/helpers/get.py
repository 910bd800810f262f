from ...imports import *

__all__ = ["get"]


def _native_unit(key):
    """
    The unit a column is stored in, judged from its suffix.
    """
    for suffix, unit in [("_us", u.us), ("_ms", u.ms)]:
        if key.endswith(suffix):
            return unit
    return None


def get(self, key, default=None, unit=None):
    """
    Retrieve a column or property by its name.

    `t.get('delay_us')` is the same as `t.delay_us`, and it
    also works for properties like `t.delay_ms`. Time columns
    (the ones ending in `_us` or `_ms`) can be converted on
    the way out, so `t.get('delay_us', unit=u.ms)` gives the
    delays as an astropy Quantity in ms.

    Parameters
    ----------
    key : str
        The name of the column or property.
    default : any, optional
        What to return if there's nothing called `key`.
    unit : astropy.units.Unit, optional
        Convert a time column to this unit.

    Returns
    -------
    thing : any
        The column or property (or `default`).
    """
    try:
        value = getattr(self, key)
    except AttributeError:
        return default
    if unit is None:
        return value

    native = _native_unit(key)
    if native is None:
        raise ConfigurationError(
            f"""
        '{key}' isn't a time column, so it can't be converted to {unit}.
        Time columns end in '_us' or '_ms'.
        """
        )
    return (np.asarray(value) * native).to(unit)
