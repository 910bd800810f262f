"""
A Phasor Data Concentrator that turns received datagrams into delay records.
"""
from ..imports import *
from ..frames.codec import ScalingConfig, decode, split_leading_frames
from ..traces import DelayRecord, DelayBudget, DelayTrace

from collections import deque

__all__ = ["PhasorDataConcentrator", "realign", "compute_stats", "as_trace"]


def as_trace(records):
    """
    Make sure `records` is a `DelayTrace` (lists of `DelayRecord` are converted).
    """
    if isinstance(records, DelayTrace):
        return records
    return DelayTrace.from_records(records)


def realign(records):
    """
    Sort records by timestamp and calculate each one's buffer delay.

    Parameters
    ----------
    records : DelayTrace, list of DelayRecord
        The records, in arrival order.

    Returns
    -------
    realigned : DelayTrace
        The same records, sorted by t_i.
    buffer_delays : array
        delta6 (µs) for each sorted record.
    """
    realigned = as_trace(records).realign()
    return realigned, realigned.buffer_delay_us


def compute_stats(records, expected_count=None):
    """
    Summarize the delays of delivered records.

    Parameters
    ----------
    records : DelayTrace, list of DelayRecord
        The records.
    expected_count : int, optional
        How many frames should have arrived (by default, the number of records).

    Returns
    -------
    stats : DelayStats
    """
    return as_trace(records).compute_stats(expected_count=expected_count)


class PhasorDataConcentrator:
    """
    Receive datagrams, verify and decode their frames,
    stamp them, and keep a delay record for each.

    Parameters
    ----------
    scaling : ScalingConfig, optional
        The scaling the PMUs encode with.
    rate : float, optional
        The reporting rate lambda (fps). If known, sequence numbers
        are positions on the reporting grid; otherwise they count
        arrivals within each stream.
    start_time : int, optional
        The start of the reporting grid (µs). By default, the
        whole second before the first frame of each stream.
    max_records : int, optional
        Keep only this many of the most recent records in memory.
        `.counts` still covers every frame. By default, keep them all.
    """

    def __init__(self, scaling=None, rate=None, start_time=None, max_records=None):
        self.scaling = scaling or ScalingConfig()
        self.rate = None if rate is None else strip_unit(rate, frames_per_second)
        self.start_time = start_time
        self.counts = dict(
            datagrams=0,
            frames=0,
            delivered=0,
            lost=0,
            integrity_failure=0,
            malformed=0,
            truncated=0,
            clock_skew=0,
        )
        self._records = deque(maxlen=max_records)
        self._budgets = deque(maxlen=max_records)
        self._grid_start = {}
        self._arrivals = {}

    def __repr__(self):
        return f"<PhasorDataConcentrator ({len(self._records)} records, {self.counts['delivered']} delivered)>"

    def _sequence_number(self, stream_id, t_i):
        if self.rate is None:
            n = self._arrivals.get(stream_id, 0)
            self._arrivals[stream_id] = n + 1
            return n
        if stream_id not in self._grid_start:
            if self.start_time is None:
                self._grid_start[stream_id] = (
                    t_i // microseconds_per_second
                ) * microseconds_per_second
            else:
                self._grid_start[stream_id] = int(self.start_time)
        start = self._grid_start[stream_id]
        return int(np.round((t_i - start) * self.rate / microseconds_per_second))

    def _store(self, record, budget=None):
        self._records.append(record)
        self._budgets.append(budget or DelayBudget())
        self.counts[record.status] += 1

    def _count_failure(self, error):
        if isinstance(error, TruncatedFrameError):
            self.counts["truncated"] += 1
        else:
            self.counts["malformed"] += 1

    def ingest(self, datagram, reception_time, budgets=None):
        """
        Receive one datagram.

        Parameters
        ----------
        datagram : bytes
            One or more concatenated data frames.
        reception_time : int
            The PDC's timestamp t' for this datagram (µs).
        budgets : list of DelayBudget, optional
            The known delay components of each frame in the
            datagram (in simulations, where they're known).

        Returns
        -------
        records : list of DelayRecord
            One per frame that passed or failed its CRC check.
            Malformed or truncated data is counted in `.counts`,
            but never raised. When only the end of a datagram is
            damaged, the frames before it are still decoded.
        """
        self.counts["datagrams"] += 1
        reception_time = int(reception_time)
        data = bytes(datagram)

        frames, tail, error = split_leading_frames(data)
        if len(frames) == 0:
            # corrupted sizes can't split; let the CRC speak for the whole thing
            frames = [data]
        elif error is not None:
            # keep the frames that split cleanly; only the tail is lost
            self.counts["frames"] += 1
            self._count_failure(error)

        new = []
        for i, frame in enumerate(frames):
            self.counts["frames"] += 1
            budget = None if budgets is None or i >= len(budgets) else budgets[i]
            try:
                decoded = decode(frame)
            except IntegrityError:
                record = DelayRecord(
                    stream_id=-1,
                    sequence_number=-1,
                    t_i=-1,
                    t_prime=reception_time,
                    delay=-1,
                    frame_size=len(frame),
                    status="integrity_failure",
                )
                self._store(record)
                new.append(record)
                continue
            except FrameError as e:
                self._count_failure(e)
                continue

            t_i = decoded.timestamp(self.scaling)
            delay = reception_time - t_i
            if delay <= 0:
                self.counts["clock_skew"] += 1
                cheerfully_suggest(
                    f"""
                A frame from stream {decoded.idcode} arrived {-delay} µs
                *before* its own timestamp. The PMU and PDC clocks
                disagree; this frame won't be recorded.
                """
                )
                continue

            record = DelayRecord(
                stream_id=decoded.idcode,
                sequence_number=self._sequence_number(decoded.idcode, t_i),
                t_i=t_i,
                t_prime=reception_time,
                delay=delay,
                frame_size=len(frame),
                status="delivered",
            )
            self._store(record, budget)
            new.append(record)
        return new

    def record_lost(self, stream_id, sequence_number, t_i, frame_size, budget=None):
        """
        Keep a record of a frame that's known to be lost.

        Parameters
        ----------
        stream_id : int
            The stream it belonged to.
        sequence_number : int
            Its position in the stream.
        t_i : int
            Its timestamp (µs).
        frame_size : int
            How many bytes it had.
        budget : DelayBudget, optional
            Any delay components that are known.
        """
        record = DelayRecord(
            stream_id=int(stream_id),
            sequence_number=int(sequence_number),
            t_i=int(t_i),
            t_prime=-1,
            delay=-1,
            frame_size=int(frame_size),
            status="lost",
        )
        self._store(record, budget)
        return record

    def records(self):
        """
        Every record kept so far, in the order they were made.
        """
        return list(self._records)

    def trace(self, include_budget=False):
        """
        Every record kept so far, as a `DelayTrace` (in arrival order).

        Parameters
        ----------
        include_budget : bool
            Fill the delta1_us ... delta6_us columns?
        """
        budgets = list(self._budgets) if include_budget else None
        return DelayTrace.from_records(
            list(self._records), budgets=budgets, metadata=dict(counts=dict(self.counts))
        )
