from ...imports import *

__all__ = ["realign", "compute_buffer_delays"]


def compute_buffer_delays(stream_id, t_us, arrival_us, delivered, seq=None):
    """
    Calculate how long each frame waits in a realignment buffer.

    Within each stream, frames are released in timestamp order,
    so a frame that arrives before some earlier-timestamped frame
    has to wait for it. Frames that never arrived aren't waited for.

    Parameters
    ----------
    stream_id : array
        The stream of each frame.
    t_us : array
        The timestamp t_i of each frame (µs).
    arrival_us : array
        When each frame arrived (µs).
    delivered : array
        A boolean mask of frames that arrived.
    seq : array, optional
        Sequence numbers, to break ties between equal timestamps.

    Returns
    -------
    waits : array
        delta6 for each frame (µs), in the original order.
        0 for frames that weren't delivered.
    """
    stream_id = np.asarray(stream_id)
    t_us = np.asarray(t_us, dtype=np.int64)
    arrival_us = np.asarray(arrival_us, dtype=np.int64)
    delivered = np.asarray(delivered, dtype=bool)
    if seq is None:
        seq = np.arange(len(t_us))

    waits = np.zeros(len(t_us), dtype=np.int64)
    order = np.lexsort((seq, t_us, stream_id))
    for s in np.unique(stream_id[delivered]):
        rows = order[(stream_id[order] == s) & delivered[order]]
        arrivals = arrival_us[rows]

        # the latest arrival among all earlier-timestamped frames
        released = np.maximum.accumulate(arrivals)
        earlier = np.concatenate([arrivals[:1], released[:-1]])
        waits[rows] = np.maximum(earlier - arrivals, 0)
    return waits


def realign(self):
    """
    Sort frames by timestamp, and find each one's buffer delay.

    The result is a permutation of the frames (sorted by t_i,
    then stream, then sequence number), with a new
    `buffer_delay_us` column holding delta6. No other
    values are changed.

    Returns
    -------
    realigned : DelayTrace
        The sorted trace.
    """

    # create a history entry for this action (before other variables are defined)
    h = self._create_history_entry("realign", locals())

    waits = compute_buffer_delays(
        self.stream_id, self.t_us, self.t_prime_us, self.delivered, self.seq
    )
    order = np.lexsort((self.seq, self.stream_id, self.t_us))

    new = self[order]
    new._remove_last_history_entry()
    new.framelike["buffer_delay_us"] = waits[order]

    # append the history entry to the new trace
    new._record_history_entry(h)
    return new
