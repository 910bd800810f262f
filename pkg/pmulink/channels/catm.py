"""
Simulate frames crossing an LTE cat-M uplink and the internet.

Every frame handed to the modem waits for the next system-information
(SI) instant on a periodic grid, pays any size-dependent airtime, and
then a carrier-side base delay drawn from a truncated normal. Frames
can be lost with a probability that depends on their size.
"""
from ..imports import *
from functools import lru_cache
from .config import ChannelConfig
from .events import EventQueue

__all__ = [
    "TransitResult",
    "ChannelState",
    "transmit",
    "run_stream",
    "run_streams",
    "departure_grid",
]

# the latent Gaussian is clipped here, so draws reach 6 sigma into either tail
_latent_limit = 6.0
_latent_grid_size = 4097


@dataclass(frozen=True)
class TransitResult:
    """
    What happened to one frame in the channel.

    Parameters
    ----------
    departure_time : int
        When the frame was handed to the modem (µs).
    arrival_time : int
        When it reached the PDC's network interface (µs), or -1 if lost.
    delivered : bool
        Did it arrive?
    delay_components : tuple
        (delta4_wait, delta4_tx, delta5) in µs.
    size : int
        The number of bytes sent.
    stream_id : int
        Which stream (PMU) sent it.
    sequence_number : int
        Its position in that stream's departures.
    """

    departure_time: int
    arrival_time: int
    delivered: bool
    delay_components: tuple
    size: int = 0
    stream_id: int = 0
    sequence_number: int = 0

    def __post_init__(self):
        if self.delivered and not self.arrival_time > self.departure_time:
            raise ContractViolation(
                f"A delivered frame must arrive ({self.arrival_time} µs) "
                f"after it leaves ({self.departure_time} µs)."
            )

    @property
    def delay(self):
        """
        The channel delay (µs), or -1 if the frame was lost.
        """
        if not self.delivered:
            return -1
        return self.arrival_time - self.departure_time


@lru_cache(maxsize=32)
def _quantile_table(mean, stddev, minimum):
    """
    Tabulate the truncated-normal quantile as a function of a
    standard normal latent variable, z -> F^-1(Phi(z)).
    """
    z = np.linspace(-_latent_limit, _latent_limit, _latent_grid_size)
    a = (minimum - mean) / stddev
    lower = truncnorm.ppf(norm.cdf(z), a, np.inf, loc=mean, scale=stddev)
    upper = truncnorm.isf(norm.sf(z), a, np.inf, loc=mean, scale=stddev)
    values = np.where(z < 0, lower, upper)
    return z, np.maximum(values, minimum)


def _base_delay(z, config):
    """
    Map a standard normal latent value onto the base delay (ms).
    """
    if config.base_delay_stddev == 0:
        return max(config.base_delay_mean, config.base_delay_min)
    grid, values = _quantile_table(
        config.base_delay_mean, config.base_delay_stddev, config.base_delay_min
    )
    return float(np.interp(z, grid, values))


class ChannelState:
    """
    The random state of one stream's trip through the channel.

    Holds the stream's generator and the latent variable that
    correlates successive base delays.
    """

    def __init__(self, rng, stream_id=0):
        self.rng = rng
        self.stream_id = stream_id
        self.latent = None
        self.last_departure = None
        self.frames_sent = 0

    @classmethod
    def from_config(cls, config, stream=0):
        """
        Seed a state deterministically from a config and a stream id.
        """
        return cls(np.random.default_rng([config.seed, stream]), stream_id=stream)

    def __repr__(self):
        return f"<ChannelState stream={self.stream_id} sent={self.frames_sent}>"

    def _advance_latent(self, departure, memory_us, innovation):
        if self.latent is None or memory_us == 0:
            self.latent = innovation
        else:
            # departures can go backwards when a state is reused
            rho = np.exp(-abs(departure - self.last_departure) / memory_us)
            self.latent = rho * self.latent + np.sqrt(1 - rho**2) * innovation
        self.last_departure = departure
        return self.latent


def transmit(frame_bytes, t_i, config=None, rng_state=None):
    """
    Send one frame through the channel.

    Parameters
    ----------
    frame_bytes : bytes
        The datagram. Only its length matters.
    t_i : int
        When it's handed to the modem (µs).
    config : ChannelConfig
        The channel.
    rng_state : ChannelState, optional
        The stream's random state (updated in place). A
        fresh one seeded from `config.seed` is used if not given.

    Returns
    -------
    result : TransitResult
    """
    config = config or ChannelConfig()
    state = rng_state or ChannelState.from_config(config)
    size = len(frame_bytes)
    t_i = int(t_i)

    # wait for the next SI instant
    wait = (config.si_grid_offset_us - t_i) % config.si_window_us

    airtime = config.extra_delay_us(size)
    if config.connection_setup and state.frames_sent == 0:
        airtime += config.setup_delay_us

    # always one uniform then one normal, whether or not the frame survives
    lost = state.rng.random() < config.loss_probability(size)
    z = state._advance_latent(
        t_i,
        config.base_delay_memory * microseconds_per_millisecond,
        np.clip(state.rng.standard_normal(), -_latent_limit, _latent_limit),
    )
    base = max(int(np.round(_base_delay(z, config) * microseconds_per_millisecond)), 1)

    result = TransitResult(
        departure_time=t_i,
        arrival_time=-1 if lost else t_i + wait + airtime + base,
        delivered=not lost,
        delay_components=(int(wait), int(airtime), int(base)),
        size=size,
        stream_id=state.stream_id,
        sequence_number=state.frames_sent,
    )
    state.frames_sent += 1
    return result


def departure_grid(n, rate, start_time=0):
    """
    The departure times (µs) of `n` frames at `rate` frames per second.

    Parameters
    ----------
    n : int
        How many frames.
    rate : float
        lambda (fps).
    start_time : int
        The first departure (µs).
    """
    rate = strip_unit(rate, frames_per_second)
    if not rate > 0:
        raise ConfigurationError(f"rate={rate} must be > 0 frames per second.")
    return int(start_time) + np.round(
        np.arange(n) * microseconds_per_second / rate
    ).astype(np.int64)


def _as_departures(frames, rate=None, start_time=0):
    """
    Turn either bytes (plus a rate) or (departure, bytes) pairs into pairs.
    """
    frames = list(frames)
    if len(frames) == 0:
        return []
    if isinstance(frames[0], (bytes, bytearray)):
        if rate is None:
            raise ConfigurationError(
                """
            Frames given as bare bytes need a `rate` to
            put them on a departure grid.
            """
            )
        times = departure_grid(len(frames), rate, start_time)
        return [(int(t), bytes(f)) for t, f in zip(times, frames)]
    return [(int(t), bytes(f)) for t, f in frames]


def run_streams(
    streams, config=None, on_arrival=None, rate=None, start_time=0, states=None
):
    """
    Send several streams through the channel on one shared event queue.

    Parameters
    ----------
    streams : dict
        {stream_id: frames}, where frames is a sequence of bytes
        (departing on the `rate` grid) or of (departure µs, bytes) pairs.
    config : ChannelConfig
        The channel, shared by every stream.
    on_arrival : function, optional
        Called as on_arrival(result, frame_bytes) for every
        delivered frame, in arrival-time order.
    rate : float, optional
        lambda (fps), needed only for bare-bytes frames.
    start_time : int
        The first departure (µs) for bare-bytes frames.
    states : dict, optional
        {stream_id: ChannelState}, to continue earlier runs.

    Returns
    -------
    results : dict
        {stream_id: list of TransitResult, ordered by departure}
    """
    config = config or ChannelConfig()
    states = dict(states or {})
    queue = EventQueue()
    results = {}

    for stream_id in streams:
        if stream_id not in states:
            states[stream_id] = ChannelState.from_config(config, stream=stream_id)
        results[stream_id] = []
        pairs = _as_departures(streams[stream_id], rate=rate, start_time=start_time)
        for departure, frame in sorted(pairs, key=lambda p: p[0]):
            queue.schedule(departure, "departure", (stream_id, frame))

    def depart(time, payload):
        stream_id, frame = payload
        result = transmit(frame, time, config, states[stream_id])
        results[stream_id].append(result)
        if result.delivered:
            queue.schedule(result.arrival_time, "arrival", (result, frame))

    def arrive(time, payload):
        if on_arrival is not None:
            on_arrival(*payload)

    queue.run({"departure": depart, "arrival": arrive})
    return results


def run_stream(frames, config=None, rate=None, start_time=0, state=None):
    """
    Send one stream of frames through the channel.

    Parameters
    ----------
    frames : list
        Bytes leaving every round(1e6 / rate) µs from `start_time`,
        or (departure µs, bytes) pairs.
    config : ChannelConfig
        The channel.
    rate : float, optional
        lambda (fps), needed only for bare-bytes frames.
    start_time : int
        The first departure (µs).
    state : ChannelState, optional
        The stream's random state, to continue an earlier run.

    Returns
    -------
    results : list of TransitResult
        Ordered by departure. Arrivals may be out of order.
    """
    stream_id = 0 if state is None else state.stream_id
    states = None if state is None else {stream_id: state}
    return run_streams(
        {stream_id: frames},
        config=config,
        rate=rate,
        start_time=start_time,
        states=states,
    )[stream_id]
