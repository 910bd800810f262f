from ...imports import *
from ..records import DelayStats

__all__ = ["compute_stats", "compute_stats_by_stream"]


def _consecutive_differences(stream_id, t_us, seq, delays):
    """
    |D_i - D_(i-1)| for consecutive frames of the same stream,
    ordered by timestamp, pooled across streams.
    """
    differences = []
    for s in np.unique(stream_id):
        this = stream_id == s
        order = np.lexsort((seq[this], t_us[this]))
        differences.append(np.abs(np.diff(delays[this][order])))
    if len(differences) == 0:
        return np.array([])
    return np.concatenate(differences)


def compute_stats(self, expected_count=None, label="all"):
    """
    Summarize the delays of the delivered frames.

    Parameters
    ----------
    expected_count : int, optional
        How many frames should have arrived, for the loss
        fraction. By default, the number of rows in the trace
        (so frames recorded as lost count against it).
    label : str
        A name for the stats row.

    Returns
    -------
    stats : DelayStats
        All delays in ms. The standard deviation is the
        sample (ddof=1) one, quartiles interpolate linearly
        between order statistics, and the 95% confidence
        interval half-width is 1.96 sigma / sqrt(n).
    """
    delivered = self.delivered
    n = int(np.sum(delivered))
    if n == 0:
        raise EmptyStatsError(
            f"""
        There are no delivered frames among these {self.nframes}
        records, so there's nothing to calculate statistics of.
        """
        )

    delays = self.delay_us[delivered] / microseconds_per_millisecond
    stddev = float(np.std(delays, ddof=1)) if n > 1 else 0.0
    q1, q3 = np.percentile(delays, [25, 75])

    differences = _consecutive_differences(
        self.stream_id[delivered], self.t_us[delivered], self.seq[delivered], delays
    )
    jitter = float(np.mean(differences)) if len(differences) > 0 else 0.0

    if expected_count is None:
        expected_count = self.nframes
    if expected_count < n:
        raise ContractViolation(
            f"""
        {n} frames were delivered, which is more than the
        expected_count={expected_count}.
        """
        )

    return DelayStats(
        n=n,
        mean=float(np.mean(delays)),
        min=float(np.min(delays)),
        max=float(np.max(delays)),
        stddev=stddev,
        q1=float(q1),
        q3=float(q3),
        jitter=jitter,
        ci95_halfwidth=1.96 * stddev / np.sqrt(n),
        loss_fraction=1 - n / expected_count,
        label=label,
    )


def compute_stats_by_stream(self, expected_counts=None, include_all=None):
    """
    Summarize the delays of each stream separately.

    Parameters
    ----------
    expected_counts : dict, optional
        {stream_id: expected frames}. By default, each stream's
        number of rows.
    include_all : bool, optional
        Add an "all" row for everything together? By
        default, only when there's more than one stream.

    Returns
    -------
    stats : list of DelayStats
        One per stream (labeled by stream id), then maybe "all".
    """
    expected_counts = expected_counts or {}
    streams = self.streams
    rows = []
    for s in streams:
        subset = self.framelike["stream_id"] == s
        expected = expected_counts.get(int(s), int(np.sum(subset)))
        rows.append(
            self[subset].compute_stats(expected_count=expected, label=str(int(s)))
        )

    if include_all is None:
        include_all = len(streams) > 1
    if include_all:
        expected = None
        if len(expected_counts) > 0:
            expected = sum(expected_counts.values())
        rows.append(self.compute_stats(expected_count=expected, label="all"))
    return rows
