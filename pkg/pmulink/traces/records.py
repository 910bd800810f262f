"""
Per-frame delay records, delay budgets, and delay statistics.
"""
from ..imports import *

__all__ = ["DelayRecord", "DelayBudget", "DelayStats", "statuses", "stats_table"]

statuses = ["delivered", "lost", "integrity_failure"]


@dataclass(frozen=True)
class DelayRecord:
    """
    The end-to-end delay of one frame, as seen by the PDC.

    Parameters
    ----------
    stream_id : int
        The IDCODE of the PMU that sent the frame (-1 if unknown).
    sequence_number : int
        The frame's position in its stream (-1 if unknown).
    t_i : int
        The frame's timestamp, from SOC + FRACSEC (µs, -1 if unknown).
    t_prime : int
        When the PDC stamped it (µs, -1 if it never arrived).
    delay : int
        D_i = t_prime - t_i (µs, -1 if unknown).
    frame_size : int
        The number of bytes in the frame.
    status : str
        "delivered", "lost", or "integrity_failure".
    """

    stream_id: int
    sequence_number: int
    t_i: int
    t_prime: int
    delay: int
    frame_size: int
    status: str = "delivered"

    def __post_init__(self):
        if self.status not in statuses:
            raise ContractViolation(
                f"status='{self.status}' must be one of {statuses}."
            )
        if self.status == "delivered" and not self.delay > 0:
            raise ContractViolation(
                f"A delivered frame needs a positive delay (not {self.delay} µs)."
            )

    @property
    def delivered(self):
        return self.status == "delivered"


@dataclass(frozen=True)
class DelayBudget:
    """
    The six components of one frame's end-to-end delay, in µs.

    delta1 is the estimation time, delta2 the frame generation time,
    delta3 the hand-off to the modem, delta4 the cat-M access and
    airtime, delta5 the internet path, and delta6 the time spent in
    the PDC's realignment buffer. `None` means unknown.
    """

    delta1: int = None
    delta2: int = None
    delta3: int = None
    delta4: int = None
    delta5: int = None
    delta6: int = None

    def total(self):
        """
        The sum of the known components (µs).
        """
        return sum(
            v
            for v in [self.delta1, self.delta2, self.delta3, self.delta4, self.delta5, self.delta6]
            if v is not None
        )


# the columns of a stats row, in table order
_stats_columns = [
    "label",
    "n",
    "mean",
    "min",
    "max",
    "stddev",
    "q1",
    "q3",
    "jitter",
    "ci95",
    "loss",
]


@dataclass(frozen=True)
class DelayStats:
    """
    Summary statistics of a set of delays, in ms.

    Parameters
    ----------
    n : int
        The number of delivered frames.
    mean, min, max : float
        Of the delivered delays (ms).
    stddev : float
        The sample standard deviation (ms).
    q1, q3 : float
        The first and third quartiles (ms).
    jitter : float
        The mean absolute difference between consecutive
        delays of the same stream (ms).
    ci95_halfwidth : float
        The half-width of the 95% confidence interval on the mean (ms).
    loss_fraction : float
        The fraction of expected frames that never arrived.
    label : str
        A name for this row (like a stream id, or "all").
    """

    n: int
    mean: float
    min: float
    max: float
    stddev: float
    q1: float
    q3: float
    jitter: float
    ci95_halfwidth: float
    loss_fraction: float
    label: str = "all"

    def __post_init__(self):
        if not self.min <= self.q1 <= self.q3 <= self.max:
            raise ContractViolation(
                f"Expected min <= q1 <= q3 <= max, got {self.min}, {self.q1}, {self.q3}, {self.max}."
            )
        if not 0 <= self.loss_fraction <= 1:
            raise ContractViolation(
                f"loss_fraction={self.loss_fraction} must be in [0, 1]."
            )

    def to_row(self):
        """
        This row as a dictionary, with the short column names.
        """
        return dict(
            label=str(self.label),
            n=self.n,
            mean=self.mean,
            min=self.min,
            max=self.max,
            stddev=self.stddev,
            q1=self.q1,
            q3=self.q3,
            jitter=self.jitter,
            ci95=self.ci95_halfwidth,
            loss=self.loss_fraction,
        )

    def to_table(self):
        """
        This row as a one-row astropy Table.
        """
        return stats_table([self])


def stats_table(stats, precision=4):
    """
    Gather several `DelayStats` into one astropy Table.

    Parameters
    ----------
    stats : list of DelayStats
        The rows.
    precision : int
        How many decimal places the float columns are written with.

    Returns
    -------
    table : Table
        With columns label, n, mean, min, max, stddev,
        q1, q3, jitter, ci95, loss.
    """
    rows = [s.to_row() for s in stats]
    table = Table(
        {k: [r[k] for r in rows] for k in _stats_columns},
        dtype=[str, np.int64] + [float] * (len(_stats_columns) - 2),
    )
    for k in _stats_columns[2:]:
        table[k].info.format = f".{precision}f"
    return table
