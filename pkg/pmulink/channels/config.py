"""
Parameters of the simulated LTE cat-M uplink plus internet path.
"""
from ..imports import *
from ..configuration import read_config, apply_config, parse_size_map, register_config

__all__ = ["ChannelConfig"]


@register_config
@dataclass
class ChannelConfig:
    """
    Describe the cat-M channel between a PMU and the PDC.

    Parameters
    ----------
    si_window : float
        The period (ms) of the system-information transmissions
        that carry scheduling grants, between 20 and 200 ms.
    si_grid_offset : float
        The phase (ms) of the SI grid relative to the UTC second,
        in [0, si_window).
    base_delay_mean : float
        Mean (ms) of the carrier-side delay, before truncation.
    base_delay_stddev : float
        Standard deviation (ms) of the carrier-side delay, before truncation.
    base_delay_min : float
        Floor (ms) of the carrier-side delay.
    base_delay_memory : float
        Correlation time (ms) of successive carrier-side delays.
        0 makes every draw independent.
    loss_prob_by_size : dict
        Frame size (bytes) -> probability the frame is lost.
        Sizes not listed are never lost.
    extra_delay_by_size : dict
        Frame size (bytes) -> extra airtime (ms).
    setup_delay : float
        Extra delay (ms) for the first frame of a stream,
        when `connection_setup` is on.
    connection_setup : bool
        Does the first frame pay for establishing the connection?
    seed : int
        Seed for the channel's random numbers.
    """

    si_window: float = 80.0
    si_grid_offset: float = 22.5
    base_delay_mean: float = 134.0
    base_delay_stddev: float = 1.5
    base_delay_min: float = 128.0
    base_delay_memory: float = 1000.0
    loss_prob_by_size: dict = field(
        default_factory=lambda: {26: 0.0, 42: 0.002, 52: 0.006, 78: 0.033}
    )
    extra_delay_by_size: dict = field(default_factory=dict)
    setup_delay: float = 340.0
    connection_setup: bool = False
    seed: int = 0

    def __post_init__(self):
        for k in [
            "si_window",
            "si_grid_offset",
            "base_delay_mean",
            "base_delay_stddev",
            "base_delay_min",
            "base_delay_memory",
            "setup_delay",
        ]:
            setattr(self, k, float(strip_unit(getattr(self, k), u.ms)))
        self.loss_prob_by_size = parse_size_map(self.loss_prob_by_size or {})
        self.extra_delay_by_size = parse_size_map(self.extra_delay_by_size or {})

        problems = []
        if not 20 <= self.si_window <= 200:
            problems.append(f"si_window={self.si_window} ms must be in [20, 200] ms")
        if not 0 <= self.si_grid_offset < self.si_window:
            problems.append(
                f"si_grid_offset={self.si_grid_offset} ms must be in [0, si_window)"
            )
        if not self.base_delay_stddev >= 0:
            problems.append(f"base_delay_stddev={self.base_delay_stddev} must be >= 0")
        if not self.base_delay_min >= 0:
            problems.append(f"base_delay_min={self.base_delay_min} must be >= 0")
        if not self.base_delay_memory >= 0:
            problems.append(f"base_delay_memory={self.base_delay_memory} must be >= 0")
        if not self.setup_delay >= 0:
            problems.append(f"setup_delay={self.setup_delay} must be >= 0")
        for size, p in self.loss_prob_by_size.items():
            if not 0 <= p <= 1:
                problems.append(f"loss probability {p} for {size}-byte frames must be in [0, 1]")
        for size, extra in self.extra_delay_by_size.items():
            if not extra >= 0:
                problems.append(f"extra delay {extra} ms for {size}-byte frames must be >= 0")
        if int(self.seed) != self.seed:
            problems.append(f"seed={self.seed} must be an integer")
        if len(problems) > 0:
            raise ConfigurationError(
                "This ChannelConfig isn't valid:\n" + "\n".join(problems)
            )
        self.connection_setup = bool(self.connection_setup)
        self.seed = int(self.seed)

    @classmethod
    def from_file(cls, path, **overrides):
        """
        Make a ChannelConfig from a key-value config file.

        Parameters
        ----------
        path : str
            A config file, or the name of a preset (like "default").
        **overrides : dict
            Values that take priority over the file.
        """
        values = read_config(path)
        values.update(overrides)
        return apply_config(cls(), values)

    def _us(self, milliseconds):
        return int(np.round(milliseconds * microseconds_per_millisecond))

    @property
    def si_window_us(self):
        return self._us(self.si_window)

    @property
    def si_grid_offset_us(self):
        return self._us(self.si_grid_offset)

    @property
    def setup_delay_us(self):
        return self._us(self.setup_delay)

    def extra_delay_us(self, size):
        return self._us(self.extra_delay_by_size.get(size, 0.0))

    def loss_probability(self, size):
        return self.loss_prob_by_size.get(size, 0.0)
