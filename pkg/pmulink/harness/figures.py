"""
Turn delay traces and synchrophasor series into plot-ready tables.
"""
from ..imports import *
from ..traces import DelayTrace, SynchrophasorSeries, si_group

__all__ = ["emit_figure_data", "figure_ids", "figure_columns", "normalize_figure_id"]

# which columns each figure's dataset has
figure_columns = {
    "4a": ["t_us", "v"],
    "4b": ["t_us", "phi"],
    "4c": ["t_us", "f"],
    "4d": ["t_us", "rho"],
    "5": ["bin_left_ms", "bin_right_ms", "count", "fraction"],
    "6": ["stream_id", "t_us", "delay_ms"],
    "7": ["stream_id", "t_us", "t_prime_us", "group"],
}
figure_ids = list(figure_columns)


def normalize_figure_id(figure_id):
    """
    Accept 5, "5", "fig5", or "4A" and return the canonical id ("5", "4a").
    """
    text = str(figure_id).strip().lower()
    if text.startswith("fig"):
        text = text[3:]
    if text not in figure_columns:
        raise UsageError(
            f"""
        There's no figure '{figure_id}'.
        Please choose from {figure_ids}.
        """
        )
    return text


def _as_series(data):
    if isinstance(data, SynchrophasorSeries):
        return data
    if isinstance(data, str):
        return SynchrophasorSeries(data)
    return SynchrophasorSeries.from_synchrophasors(data)


def _as_trace(data):
    if isinstance(data, DelayTrace):
        return data
    if isinstance(data, str):
        return DelayTrace(data)
    return DelayTrace.from_records(data)


def _histogram(delays_ms):
    """
    Count delays in 1 ms bins, starting from the whole ms below the minimum.
    """
    edges = np.arange(np.floor(np.min(delays_ms)), np.floor(np.max(delays_ms)) + 2)
    counts, edges = np.histogram(delays_ms, bins=edges)
    return Table(
        dict(
            bin_left_ms=edges[:-1],
            bin_right_ms=edges[1:],
            count=counts.astype(np.int64),
            fraction=counts / len(delays_ms),
        )
    )


def _handoff_times(trace, handoff_delay):
    """
    When each frame reached the modem (µs).

    Frames with a recorded budget use t_i + delta1 + delta2 + delta3,
    which covers frames that waited for others to fill a datagram.
    The rest fall back to t_i + handoff_delay.
    """
    fallback = trace.t_us + to_microseconds(handoff_delay, u.ms)
    parts = [trace.framelike.get(f"delta{i}_us") for i in [1, 2, 3]]
    if any(p is None for p in parts):
        return fallback
    known = np.all([p >= 0 for p in parts], axis=0)
    return np.where(known, trace.t_us + sum(parts), fallback)


def emit_figure_data(
    data,
    figure_id,
    output_path=None,
    si_window=80,
    si_grid_offset=22.5,
    handoff_delay=2.5,
    skip_first=False,
):
    """
    Make the dataset behind one figure.

    Parameters
    ----------
    data : DelayTrace, SynchrophasorSeries, list, str
        Delay records (for figures 5, 6, 7) or synchrophasors
        (for figures 4a-4d), or a file containing them.
    figure_id : str
        "4a" (magnitude), "4b" (phase), "4c" (frequency),
        "4d" (ROCOF), "5" (histogram of delays in 1 ms bins),
        "6" (delay vs. generation time), or "7" (generation
        time, reception time, and SI group).
    output_path : str, optional
        Write the table to this CSV file too.
    si_window : float
        The SI period (ms), for figure 7's groups.
    si_grid_offset : float
        The SI grid phase (ms), for figure 7's groups.
    handoff_delay : float
        The time (ms) from t_i to the hand-off to the modem, for
        figure 7's groups when the records carry no delay budget.
    skip_first : bool
        Drop each stream's first delivered frame (figures 5-7)?

    Returns
    -------
    table : Table
        The dataset, with the columns listed in `figure_columns`.
    """
    figure_id = normalize_figure_id(figure_id)

    if figure_id.startswith("4"):
        series = _as_series(data)
        if series.nframes == 0:
            raise UsageError(f"Figure {figure_id} needs at least one synchrophasor.")
        column = figure_columns[figure_id][1]
        table = Table({"t_us": series.t_us, column: series.framelike[column]})
    else:
        trace = _as_trace(data)
        if skip_first:
            trace = trace.skip_first()
        delivered = trace[trace.delivered]
        if delivered.nframes == 0:
            raise UsageError(f"Figure {figure_id} needs at least one delivered frame.")

        if figure_id == "5":
            table = _histogram(delivered.delay_ms)
        elif figure_id == "6":
            table = Table(
                dict(
                    stream_id=delivered.stream_id,
                    t_us=delivered.t_us,
                    delay_ms=delivered.delay_us / microseconds_per_millisecond,
                )
            )
        else:
            table = Table(
                dict(
                    stream_id=delivered.stream_id,
                    t_us=delivered.t_us,
                    t_prime_us=delivered.t_prime_us,
                    group=si_group(
                        _handoff_times(delivered, handoff_delay),
                        si_window=si_window,
                        si_grid_offset=si_grid_offset,
                        handoff_delay=0,
                    ),
                )
            )

    if output_path is not None:
        try:
            table.write(output_path, format="ascii.csv", overwrite=True)
        except OSError as e:
            raise StartupError(f"Couldn't write {output_path}: {e}")
    return table
