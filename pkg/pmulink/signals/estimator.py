"""
Estimate synchrophasors (magnitude, phase, frequency, ROCOF)
from sampled blocks and square-wave edges.
"""
from ..imports import *
from ..configuration import register_config
from .waveform import samples_per_cycle

__all__ = [
    "Synchrophasor",
    "EstimatorConfig",
    "dft32",
    "estimate_frequency",
    "compute_rocof",
    "report",
]

rocof_modes = ["product", "derivative"]


@dataclass(frozen=True)
class Synchrophasor:
    """
    The synchrophasor vector measured at one reporting instant.

    Parameters
    ----------
    magnitude : float
        Peak amplitude v (V).
    phase : float
        Phase phi (radians, in [-pi, pi)), relative to a cosine
        at the nominal frequency aligned to the UTC second.
    frequency : float
        Frequency f (Hz).
    rocof : float
        Rate of change of frequency rho.
    timestamp : int
        The reporting instant t_i (integer µs since the UNIX epoch).
    """

    magnitude: float
    phase: float
    frequency: float
    rocof: float
    timestamp: int

    def __post_init__(self):
        if not self.magnitude >= 0:
            raise ContractViolation(f"magnitude={self.magnitude} must be >= 0")
        if not -np.pi <= self.phase < np.pi:
            raise ContractViolation(f"phase={self.phase} must be in [-pi, pi)")
        if not self.frequency > 0:
            raise ContractViolation(f"frequency={self.frequency} must be > 0")


@register_config
@dataclass
class EstimatorConfig:
    """
    How to report synchrophasors.

    Parameters
    ----------
    f0 : float
        The nominal frequency (50 or 60 Hz).
    reporting_rate : float
        Frames per second, lambda (between 1 and 120).
    rocof_mode : str
        "product" reports (f - f0) * f0, the formula the μ-PMU uses.
        "derivative" reports the conventional df/dt (Hz/s).
    """

    f0: float = 50.0
    reporting_rate: float = 50.0
    rocof_mode: str = "product"

    def __post_init__(self):
        self.f0 = strip_unit(self.f0, u.Hz)
        self.reporting_rate = strip_unit(self.reporting_rate, frames_per_second)
        if self.f0 not in [50, 60]:
            raise ConfigurationError(f"f0={self.f0} must be 50 or 60 Hz.")
        if not 1 <= self.reporting_rate <= 120:
            raise ConfigurationError(
                f"reporting_rate={self.reporting_rate} must be between 1 and 120 fps."
            )
        if self.rocof_mode not in rocof_modes:
            raise ConfigurationError(
                f"rocof_mode='{self.rocof_mode}' must be one of {rocof_modes}."
            )

    @property
    def reporting_interval(self):
        """
        The (unrounded) time between reports, in µs.
        """
        return microseconds_per_second / self.reporting_rate


def _fundamental_bins(samples):
    """
    Return X_1 for each row of a (nblocks, 32) array.
    """
    return np.fft.fft(samples, axis=-1)[..., 1]


def dft32(block):
    """
    Estimate magnitude and phase with a 32-point DFT.

    Parameters
    ----------
    block : SampleBlock, array
        One cycle of 32 samples.

    Returns
    -------
    magnitude : float
        The fundamental-bin amplitude as peak volts, 2|X_1|/32.
    phase : float
        The angle of X_1 (radians, in [-pi, pi)), referenced
        to the first sample of the block. An all-zero
        block returns a phase of 0.
    """
    samples = np.asarray(getattr(block, "samples", block), dtype=float)
    if samples.shape != (samples_per_cycle,):
        raise ContractViolation(
            f"dft32 needs a block of {samples_per_cycle} samples, not {samples.shape}."
        )
    X1 = _fundamental_bins(samples)
    magnitude = 2 * np.abs(X1) / samples_per_cycle
    if magnitude == 0:
        return 0.0, 0.0
    return float(magnitude), wrap_phase(np.angle(X1))


def estimate_frequency(edges):
    """
    Estimate frequency from the latest pair of rising edges.

    Parameters
    ----------
    edges : array
        Rising-edge times (integer µs), in increasing order.

    Returns
    -------
    frequency : float
        1 / (latest inter-edge interval), in Hz.
    """
    edges = np.asarray(edges, dtype=np.int64)
    if len(edges) < 2:
        raise InsufficientDataError(
            f"Estimating frequency needs at least 2 edges (got {len(edges)})."
        )
    interval = edges[-1] - edges[-2]
    if interval <= 0:
        raise ContractViolation(f"Edges must increase (got an interval of {interval} µs).")
    return microseconds_per_second / float(interval)


def compute_rocof(f, f0):
    """
    Compute the ROCOF the way the μ-PMU firmware does, (f - f0) * f0.

    Parameters
    ----------
    f : float, array
        Measured frequency (Hz).
    f0 : float
        Nominal frequency (Hz).
    """
    return (f - f0) * f0


def report(blocks, edges, config, count=None):
    """
    Produce a synchrophasor every 1/lambda seconds.

    The reporting grid starts where the first block ends,
    t_i = t_0 + round(i * 1e6 / lambda) µs, which is `start_time`
    for blocks sampled with a lead-in cycle. Each report uses the
    most recent completed DFT window, the latest block that ends
    at or before t_i (blocks are reused, never interpolated), and
    the latest pair of rising edges at or before t_i.

    Parameters
    ----------
    blocks : list of SampleBlock
        Blocks from `generate`.
    edges : array
        Rising edges from `square_wave_edges` (integer µs).
    config : EstimatorConfig
        The nominal frequency, reporting rate, and ROCOF mode.
    count : int, optional
        How many reports to make. By default, as many
        as the blocks cover.

    Returns
    -------
    synchrophasors : list of Synchrophasor
    """
    blocks = list(blocks)
    if len(blocks) == 0:
        return []
    f0 = config.f0

    # block b starts exactly b / f0 after an origin on the µs grid
    indices = np.array([b.index for b in blocks], dtype=np.int64)
    starts = np.array([b.block_start_time for b in blocks], dtype=np.int64)
    period = microseconds_per_second / f0
    origins = starts - np.round(indices * period).astype(np.int64)
    ends = origins + np.round((indices + 1) * period).astype(np.int64)

    # magnitude and phase (relative to the UTC-second cosine) of every block;
    # the cosine has the same phase at every whole cycle after the origin
    X1 = _fundamental_bins(np.vstack([b.samples for b in blocks]))
    magnitudes = 2 * np.abs(X1) / samples_per_cycle
    into_second = (origins % microseconds_per_second) / microseconds_per_second
    phases = wrap_phase(np.angle(X1) - 2 * np.pi * f0 * into_second)
    phases = np.where(magnitudes == 0, 0.0, phases)

    # how many reports do the blocks cover?
    t0 = ends[0]
    available = int(np.ceil((ends[-1] - t0) / config.reporting_interval - 1e-9))
    if count is None:
        count = available
    elif count > available:
        cheerfully_suggest(
            f"""
        {count} reports were requested, but the samples only
        cover {available} at {config.reporting_rate} fps.
        The output has been truncated to {available} reports.
        """
        )
        count = available

    times = t0 + np.round(np.arange(count) * config.reporting_interval).astype(
        np.int64
    )
    which = np.searchsorted(ends, times, side="right") - 1

    # the latest edge pair finished by each reporting instant
    edges = np.asarray(edges, dtype=np.int64)
    if len(edges) < 2:
        raise InsufficientDataError(
            f"Reporting needs at least 2 rising edges (got {len(edges)})."
        )
    latest = np.maximum(np.searchsorted(edges, times, side="right"), 2)
    frequencies = microseconds_per_second / (
        edges[latest - 1] - edges[latest - 2]
    ).astype(float)

    if config.rocof_mode == "product":
        rocofs = compute_rocof(frequencies, f0)
    else:
        rocofs = np.diff(frequencies, prepend=frequencies[:1]) * config.reporting_rate

    return [
        Synchrophasor(
            magnitude=float(magnitudes[j]),
            phase=float(phases[j]),
            frequency=float(frequencies[i]),
            rocof=float(rocofs[i]),
            timestamp=int(times[i]),
        )
        for i, j in enumerate(which)
    ]
