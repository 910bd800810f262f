from ..imports import *
from .timeline import Timeline
from .records import DelayRecord, DelayBudget, statuses

__all__ = ["DelayTrace", "read_trace"]


class DelayTrace(Timeline):
    """
    `DelayTrace` objects hold the delay record of every frame
    a PDC knows about, one row per frame.

    The required columns are `stream_id, seq, t_us, t_prime_us,
    delay_us, size, status`; times are integer µs and unknown
    values are -1. Optional columns include the delay budget
    (`delta1_us` ... `delta6_us`), `buffer_delay_us` from
    `.realign()`, and `group` from `.assign_groups()`.
    """

    _required_columns = {
        "stream_id": np.int64,
        "seq": np.int64,
        "t_us": np.int64,
        "t_prime_us": np.int64,
        "delay_us": np.int64,
        "size": np.int64,
        "status": str,
    }

    @classmethod
    def from_records(cls, records, budgets=None, metadata=None):
        """
        Make a DelayTrace from a list of `DelayRecord`.

        Parameters
        ----------
        records : list of DelayRecord
            One per frame.
        budgets : list of DelayBudget, optional
            One per record, to fill the delta columns
            (unknown components become -1).
        metadata : dict, optional
            Anything else to keep with the trace.
        """
        records = list(records)
        framelike = {
            "stream_id": [r.stream_id for r in records],
            "seq": [r.sequence_number for r in records],
            "t_us": [r.t_i for r in records],
            "t_prime_us": [r.t_prime for r in records],
            "delay_us": [r.delay for r in records],
            "size": [r.frame_size for r in records],
        }
        framelike = {k: np.array(v, dtype=np.int64) for k, v in framelike.items()}
        framelike["status"] = np.array([r.status for r in records], dtype="U17")

        if budgets is not None:
            budgets = list(budgets)
            if len(budgets) != len(records):
                raise ContractViolation(
                    f"{len(budgets)} budgets can't describe {len(records)} records."
                )
            for i in range(1, 7):
                framelike[f"delta{i}_us"] = np.array(
                    [
                        -1 if getattr(b, f"delta{i}") is None else getattr(b, f"delta{i}")
                        for b in budgets
                    ],
                    dtype=np.int64,
                )
        if len(records) == 0:
            framelike = {}
        return cls(framelike=framelike, metadata=metadata)

    def records(self):
        """
        Convert back into a list of `DelayRecord`.
        """
        return [
            DelayRecord(
                stream_id=int(self.stream_id[i]),
                sequence_number=int(self.seq[i]),
                t_i=int(self.t_us[i]),
                t_prime=int(self.t_prime_us[i]),
                delay=int(self.delay_us[i]),
                frame_size=int(self.size[i]),
                status=str(self.status[i]),
            )
            for i in range(self.nframes)
        ]

    def budgets(self):
        """
        The `DelayBudget` of every frame (components that
        aren't stored, or are -1, come back as None).
        """
        columns = {}
        for i in range(1, 7):
            values = self.framelike.get(f"delta{i}_us")
            if values is None and i == 6:
                values = self.framelike.get("buffer_delay_us")
            columns[f"delta{i}"] = values

        def value(k, j):
            if columns[k] is None or columns[k][j] < 0:
                return None
            return int(columns[k][j])

        return [
            DelayBudget(**{k: value(k, j) for k in columns})
            for j in range(self.nframes)
        ]

    @property
    def delivered(self):
        """
        A boolean mask of the frames that arrived intact.
        """
        return self.status == "delivered"

    @property
    def delay_ms(self):
        """
        The delays of the delivered frames (ms).
        """
        return self.delay_us[self.delivered] / microseconds_per_millisecond

    @property
    def streams(self):
        """
        The (sorted) stream ids of the delivered frames.
        """
        return np.unique(self.stream_id[self.delivered])

    @property
    def counts(self):
        """
        How many frames have each status.
        """
        return {s: int(np.sum(self.status == s)) for s in statuses}

    def __repr__(self):
        n = self.__class__.__name__
        if self.name is not None:
            n += f"'{self.name}'"
        return f"<{n}({self.nframes} frames, {np.sum(self.delivered)} delivered)>"

    from .actions import (
        realign,
        compute_stats,
        compute_stats_by_stream,
        skip_first,
        select_streams,
        assign_groups,
    )


def read_trace(filepath, format=None):
    """
    Read a delay record CSV into a `DelayTrace`.

    Parameters
    ----------
    filepath : str
        The file to read.
    format : str, optional
        The file format (by default, guessed from the filename).
    """
    return DelayTrace(filepath, format=format)
