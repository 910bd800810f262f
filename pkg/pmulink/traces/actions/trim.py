from ...imports import *

__all__ = ["skip_first", "select_streams"]


def skip_first(self):
    """
    Drop the first delivered frame of each stream.

    The first frame of a connection can pay a large setup
    delay, which dominates the maximum of a short run.

    Returns
    -------
    trimmed : DelayTrace
        The trace without those frames.
    """

    # create a history entry for this action (before other variables are defined)
    h = self._create_history_entry("skip_first", locals())

    keep = np.ones(self.nframes, dtype=bool)
    delivered = np.nonzero(self.delivered)[0]
    for s in self.streams:
        rows = delivered[self.stream_id[delivered] == s]
        first = rows[np.lexsort((self.seq[rows], self.t_us[rows]))[0]]
        keep[first] = False

    new = self[keep]
    new._remove_last_history_entry()

    # append the history entry to the new trace
    new._record_history_entry(h)
    return new


def select_streams(self, stream_ids):
    """
    Keep only some streams.

    Parameters
    ----------
    stream_ids : int, list
        The stream id(s) to keep.

    Returns
    -------
    selected : DelayTrace
    """

    # create a history entry for this action (before other variables are defined)
    h = self._create_history_entry("select_streams", locals())

    new = self[np.isin(self.stream_id, np.atleast_1d(stream_ids))]
    new._remove_last_history_entry()
    new._record_history_entry(h)
    return new
