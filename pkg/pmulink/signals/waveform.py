"""
Generate AC voltage waveforms the way the μ-PMU's ADC sees them:
32 equidistant samples per nominal cycle, paced by a GPS-disciplined
clock, plus the rising edges of the sine-to-square converter.
"""
from ..imports import *
from ..configuration import register_config

__all__ = [
    "WaveformConfig",
    "SampleBlock",
    "generate",
    "square_wave_edges",
    "samples_per_cycle",
]

# the DFT buffer holds one nominal cycle
samples_per_cycle = 32

# the ADC reads 0-5 V with 10 bits, around a 2.5 V bias
adc_bits = 10
adc_range = 5.0
adc_bias = 2.5


@register_config
@dataclass
class WaveformConfig:
    """
    Describe the AC signal being measured.

    Parameters
    ----------
    nominal_frequency : float
        The grid's nominal frequency f0 (Hz). Sets the sampling rate.
    actual_frequency : float, None
        The signal's true frequency f (Hz). `None` means f = f0.
    amplitude : float
        The peak voltage v0 (V).
    initial_phase : float
        The phase (radians) of the sine at `start_time`, in [-pi, pi).
    noise_stddev : float
        Standard deviation (V) of additive white Gaussian noise.
    duration : float
        How long to sample (s).
    start_time : int
        When sampling starts, in whole UNIX seconds (so the
        sampling grid sits on a UTC second boundary).
    quantize : bool
        Pass the samples through a 10-bit, 0-5 V ADC model?
    lead_in : bool
        Also sample the nominal cycle just before `start_time`,
        so a report due at `start_time` has a completed window.
    """

    nominal_frequency: float = 50.0
    actual_frequency: float = None
    amplitude: float = 2.0
    initial_phase: float = 0.0
    noise_stddev: float = 0.0
    duration: float = 1.0
    start_time: int = 1_600_000_000
    quantize: bool = False
    lead_in: bool = True

    def __post_init__(self):
        self.nominal_frequency = strip_unit(self.nominal_frequency, u.Hz)
        self.actual_frequency = strip_unit(self.actual_frequency, u.Hz)
        self.amplitude = strip_unit(self.amplitude, u.V)
        self.initial_phase = strip_unit(self.initial_phase, u.rad)
        self.noise_stddev = strip_unit(self.noise_stddev, u.V)
        self.duration = strip_unit(self.duration, u.s)

        problems = []
        if not self.nominal_frequency > 0:
            problems.append(f"nominal_frequency={self.nominal_frequency} must be > 0")
        if not self.frequency > 0:
            problems.append(f"actual_frequency={self.actual_frequency} must be > 0")
        if not self.amplitude >= 0:
            problems.append(f"amplitude={self.amplitude} must be >= 0")
        if not -np.pi <= self.initial_phase < np.pi:
            problems.append(f"initial_phase={self.initial_phase} must be in [-pi, pi)")
        if not self.noise_stddev >= 0:
            problems.append(f"noise_stddev={self.noise_stddev} must be >= 0")
        if not self.duration > 0:
            problems.append(f"duration={self.duration} must be > 0")
        if int(self.start_time) != self.start_time or self.start_time < 0:
            problems.append(f"start_time={self.start_time} must be whole seconds")
        if len(problems) > 0:
            raise ConfigurationError(
                "This WaveformConfig isn't valid:\n" + "\n".join(problems)
            )
        self.start_time = int(self.start_time)

    @property
    def frequency(self):
        """
        The actual frequency of the signal (Hz).
        """
        if self.actual_frequency is None:
            return self.nominal_frequency
        return self.actual_frequency

    @property
    def sample_rate(self):
        """
        The GPSDO-paced sampling rate, 32 samples per nominal cycle (Hz).
        """
        return samples_per_cycle * self.nominal_frequency

    @property
    def nblocks(self):
        """
        The number of 32-sample blocks needed to cover the duration.
        """
        # (the small nudge keeps 1 s * 50 Hz from becoming 51 blocks)
        return int(np.ceil(self.duration * self.nominal_frequency - 1e-9))

    @property
    def first_block(self):
        """
        The index of the first sampled block (-1 with a lead-in cycle).
        """
        return -1 if self.lead_in else 0

    @property
    def start_time_us(self):
        return self.start_time * microseconds_per_second

    @property
    def first_sample_us(self):
        """
        When the first sample is taken (integer µs).
        """
        return self.start_time_us + int(
            np.round(self.first_block * microseconds_per_second / self.nominal_frequency)
        )

    @property
    def end_time_us(self):
        """
        When the last sampled cycle ends (integer µs).
        """
        return self.start_time_us + int(
            np.round(self.nblocks * microseconds_per_second / self.nominal_frequency)
        )


@dataclass(frozen=True, eq=False)
class SampleBlock:
    """
    One nominal cycle of samples, as held in the DFT buffer.

    Parameters
    ----------
    samples : array
        Exactly 32 voltages (V).
    block_start_time : int
        The time of the first sample (µs since the UNIX epoch).
    sample_rate : float
        The sampling rate (Hz), 32 times the nominal frequency.
    index : int
        Which block this is, counting from the start of sampling.
    """

    samples: np.ndarray
    block_start_time: int
    sample_rate: float
    index: int = 0

    def __post_init__(self):
        if np.shape(self.samples) != (samples_per_cycle,):
            raise ContractViolation(
                f"A SampleBlock needs exactly {samples_per_cycle} samples, "
                f"not {np.shape(self.samples)}."
            )

    @property
    def nominal_frequency(self):
        return self.sample_rate / samples_per_cycle


def _quantize_like_adc(voltages):
    """
    Pass voltages through a biased 10-bit ADC and back to volts.
    """
    top = 2**adc_bits - 1
    codes = np.clip(np.round((voltages + adc_bias) / adc_range * top), 0, top)
    return codes * adc_range / top - adc_bias


def generate(config, rng_seed=0):
    """
    Sample a waveform into 32-sample blocks.

    Sample k of block b is v0 * sin(2 pi f tau + phi0) (+ noise),
    where tau = (32 b + k) / (32 f0) seconds after `start_time`.
    With `lead_in`, sampling begins at block b = -1.

    Parameters
    ----------
    config : WaveformConfig
        The signal to sample.
    rng_seed : int
        Seed for the noise generator.

    Returns
    -------
    blocks : list of SampleBlock
        ceil(duration * f0) blocks, plus one for the lead-in.
    """
    indices = np.arange(config.first_block, config.nblocks)
    nblocks = len(indices)
    k = np.arange(nblocks * samples_per_cycle) + config.first_block * samples_per_cycle
    tau = k / config.sample_rate
    voltages = config.amplitude * np.sin(
        2 * np.pi * config.frequency * tau + config.initial_phase
    )

    if config.noise_stddev > 0:
        rng = np.random.default_rng(rng_seed)
        voltages = voltages + rng.normal(0, config.noise_stddev, voltages.shape)

    if config.quantize:
        voltages = _quantize_like_adc(voltages)

    # block starts come from the block index, so they never accumulate drift
    offsets = np.round(
        indices * microseconds_per_second / config.nominal_frequency
    ).astype(np.int64)
    starts = config.start_time_us + offsets

    voltages = voltages.reshape(nblocks, samples_per_cycle)
    return [
        SampleBlock(
            samples=voltages[i],
            block_start_time=int(starts[i]),
            sample_rate=config.sample_rate,
            index=int(b),
        )
        for i, b in enumerate(indices)
    ]


def square_wave_edges(config):
    """
    Find the rising edges of the square wave made from the signal.

    These are the upward zero crossings of the sinusoid, computed
    analytically and quantized to the microsecond, covering the
    sampled span (end included).

    Parameters
    ----------
    config : WaveformConfig
        The signal.

    Returns
    -------
    edges : array
        Integer µs times of the rising edges.
    """
    f = config.frequency
    cycles_offset = config.initial_phase / (2 * np.pi)
    begin = config.first_block / config.nominal_frequency
    span = config.nblocks / config.nominal_frequency

    # sin(2 pi f tau + phi0) crosses zero going up when 2 pi f tau + phi0 = 2 pi m
    first = int(np.ceil(begin * f + cycles_offset - 1e-12))
    last = int(np.floor(span * f + cycles_offset + 1e-9))
    m = np.arange(first, last + 1)
    tau = (m - cycles_offset) / f
    return config.start_time_us + np.round(tau * microseconds_per_second).astype(
        np.int64
    )
