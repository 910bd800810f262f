from ...imports import *

__all__ = ["assign_groups", "si_group"]


def si_group(t_us, si_window=80, si_grid_offset=22.5, handoff_delay=2.5):
    """
    Find which SI instant serves each frame.

    A frame handed to the modem at t_i + handoff_delay waits
    for the next instant on the grid si_grid_offset + k * si_window;
    its group is that k.

    Parameters
    ----------
    t_us : array
        Frame timestamps (µs).
    si_window : float
        The SI period (ms).
    si_grid_offset : float
        The SI grid phase (ms).
    handoff_delay : float
        The time (ms) between t_i and the hand-off to the modem.

    Returns
    -------
    group : array
        Integer group indices.
    """
    window = to_microseconds(si_window, u.ms)
    offset = to_microseconds(si_grid_offset, u.ms)
    handoff = to_microseconds(handoff_delay, u.ms)
    since = np.asarray(t_us, dtype=np.int64) + handoff - offset

    # integer ceiling division
    return -((-since) // window)


def assign_groups(self, si_window=80, si_grid_offset=22.5, handoff_delay=2.5):
    """
    Label each frame with the index of the SI instant that served it.

    Parameters
    ----------
    si_window : float
        The SI period (ms).
    si_grid_offset : float
        The SI grid phase (ms).
    handoff_delay : float
        The time (ms) between t_i and the hand-off to the modem.

    Returns
    -------
    grouped : DelayTrace
        A copy with a `group` column (-1 where t_i is unknown).
    """

    # create a history entry for this action (before other variables are defined)
    h = self._create_history_entry("assign_groups", locals())

    new = self._create_copy()
    groups = si_group(
        self.t_us,
        si_window=si_window,
        si_grid_offset=si_grid_offset,
        handoff_delay=handoff_delay,
    )
    new.framelike["group"] = np.where(self.t_us < 0, -1, groups)

    new._record_history_entry(h)
    return new
