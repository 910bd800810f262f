"""
Run whole simulated experiments: waveform, estimator, codec,
cat-M channel, and PDC, wired together for one or more PMUs.
"""
from ..imports import *
from ..configuration import read_config, configure, parse_value, register_config
from ..signals import WaveformConfig, EstimatorConfig, generate, square_wave_edges, report
from ..frames import ScalingConfig, encode, pack_datagram
from ..channels import ChannelConfig, run_streams
from ..traces import (
    DelayBudget,
    DelayTrace,
    SynchrophasorSeries,
    compute_buffer_delays,
    stats_table,
)
from ..pdc import PhasorDataConcentrator
from .figures import emit_figure_data, figure_columns

__all__ = ["ExperimentSpec", "ExperimentResult", "run_experiment", "modes"]

modes = ["simulate", "udp-client", "udp-server", "report"]

# the reporting rates the μ-PMU was characterized at
tested_rates = (1, 80)


@register_config
@dataclass
class ExperimentSpec:
    """
    Everything needed to run one experiment.

    Parameters
    ----------
    mode : str
        "simulate", "udp-client", "udp-server", or "report".
    rate : float
        The reporting rate lambda (fps).
    duration : float
        How long to report for (s). 0 makes empty outputs.
    phase_count : int
        1 (26-byte frames) or 3 (42-byte frames).
    frames_per_datagram : int
        How many frames to pack into each datagram (1, 2, or 3).
    pmu_count : int
        How many PMUs transmit at once. Their IDCODEs are 1, 2, ...
    waveform : WaveformConfig
        The signal every PMU measures.
    channel : ChannelConfig
        The cat-M channel every PMU shares.
    output_dir : str
        Where to write the CSV files.
    processing_delays : tuple
        (delta1, delta2, delta3) in ms: estimating, making the
        frame, and handing it to the modem.
    scaling : ScalingConfig
        How frames are scaled.
    rocof_mode : str
        "product" or "derivative" (see `EstimatorConfig`).
    skip_first : bool
        Leave each stream's first delivered frame out of the statistics?
    progress : bool
        Show progress bars?
    """

    mode: str = "simulate"
    rate: float = 50.0
    duration: float = 50.0
    phase_count: int = 1
    frames_per_datagram: int = 1
    pmu_count: int = 1
    waveform: WaveformConfig = field(default_factory=WaveformConfig)
    channel: ChannelConfig = field(default_factory=ChannelConfig)
    output_dir: str = "pmulink-output"
    processing_delays: tuple = (0.5, 1.5, 0.5)
    scaling: ScalingConfig = field(default_factory=ScalingConfig)
    rocof_mode: str = "product"
    skip_first: bool = False
    progress: bool = True

    def __post_init__(self):
        self.rate = float(strip_unit(self.rate, frames_per_second))
        self.duration = float(strip_unit(self.duration, u.s))
        self.processing_delays = tuple(float(x) for x in self.processing_delays)

        problems = []
        if self.mode not in modes:
            problems.append(f"mode='{self.mode}' must be one of {modes}")
        if not self.rate > 0:
            problems.append(f"rate={self.rate} must be > 0")
        if not self.duration >= 0:
            problems.append(f"duration={self.duration} must be >= 0")
        if self.phase_count not in [1, 3]:
            problems.append(f"phase_count={self.phase_count} must be 1 or 3")
        if self.frames_per_datagram not in [1, 2, 3]:
            problems.append(
                f"frames_per_datagram={self.frames_per_datagram} must be 1, 2, or 3"
            )
        if not self.pmu_count >= 1:
            problems.append(f"pmu_count={self.pmu_count} must be >= 1")
        if len(self.processing_delays) != 3 or min(self.processing_delays) < 0:
            problems.append(
                f"processing_delays={self.processing_delays} must be three values >= 0"
            )
        if len(problems) > 0:
            raise ConfigurationError(
                "This ExperimentSpec isn't valid:\n" + "\n".join(problems)
            )

        if not tested_rates[0] <= self.rate <= tested_rates[1]:
            cheerfully_suggest(
                f"""
            A reporting rate of {self.rate} fps is outside the
            {tested_rates[0]}-{tested_rates[1]} fps range the channel
            model was calibrated for. It'll run, but be skeptical.
            """
            )

    @classmethod
    def from_file(cls, path, **overrides):
        """
        Make an ExperimentSpec from a key-value config file.

        Keys can belong to the experiment itself or to its waveform,
        channel, or scaling configurations.

        Parameters
        ----------
        path : str
            A config file, or the name of a preset (like "default").
        **overrides : dict
            Values that take priority over the file.
        """
        values = read_config(path)
        values.update(overrides)
        return cls.from_values(values)

    @classmethod
    def from_values(cls, values):
        """
        Make an ExperimentSpec from a {key: value} dictionary, like
        the one `read_config` returns.
        """
        # the run's duration also sets the waveform's, so keep it out of WaveformConfig
        values = dict(values)
        duration = values.pop("duration", None)

        spec, waveform, channel, scaling = configure(
            values, cls(), WaveformConfig(), ChannelConfig(), ScalingConfig()
        )
        changes = dict(waveform=waveform, channel=channel, scaling=scaling)
        if duration is not None:
            changes["duration"] = parse_value(duration, float, "duration")
        return replace(spec, **changes)

    @property
    def handoff_delay(self):
        """
        delta1 + delta2 + delta3 (ms).
        """
        return sum(self.processing_delays)

    @property
    def nreports(self):
        """
        How many synchrophasors each PMU reports.
        """
        return int(np.floor(self.duration * self.rate + 1e-9))


@dataclass
class ExperimentResult:
    """
    What came out of `run_experiment`.

    Parameters
    ----------
    trace : DelayTrace
        Every frame's delay record (with delay budget columns), sorted by t_i.
    stats : list of DelayStats
        One row per stream, plus "all" when there's more than one.
    paths : dict
        {name: path} of the files written.
    synchrophasors : SynchrophasorSeries
        The reports of the first PMU.
    """

    trace: DelayTrace
    stats: list
    paths: dict
    synchrophasors: SynchrophasorSeries = None


def _prepare_output_directory(output_dir):
    try:
        os.makedirs(output_dir, exist_ok=True)
    except OSError as e:
        raise StartupError(f"Couldn't create the output directory {output_dir}: {e}")
    if not os.access(output_dir, os.W_OK):
        raise StartupError(f"The output directory {output_dir} isn't writable.")


def _write_empty(path, columns):
    Table(names=columns).write(path, format="ascii.csv", overwrite=True)


def _simulate_pmu(spec, stream_id, estimator, scaling):
    """
    Estimate, encode, and pack one PMU's frames.

    Returns the synchrophasors, the frames, and the datagrams
    as (hand-off time, bytes, indices of the frames they carry).
    """
    waveform = replace(spec.waveform, duration=max(spec.duration, 1 / estimator.f0))
    blocks = generate(waveform, rng_seed=spec.channel.seed + stream_id)
    edges = square_wave_edges(waveform)
    synchrophasors = report(blocks, edges, estimator, count=spec.nreports)

    frames = [
        encode(s, idcode=stream_id, scaling=scaling, phase_count=spec.phase_count)
        for s in synchrophasors
    ]
    handoff = to_microseconds(spec.handoff_delay, u.ms)
    datagrams = []
    for first in range(0, len(frames), spec.frames_per_datagram):
        which = list(range(first, min(first + spec.frames_per_datagram, len(frames))))
        last = synchrophasors[which[-1]].timestamp
        datagrams.append(
            (last + handoff, pack_datagram([frames[i] for i in which]), which)
        )
    return synchrophasors, frames, datagrams


def run_experiment(spec):
    """
    Run a simulated experiment and write its outputs.

    Each PMU estimates synchrophasors from the waveform, encodes
    them, and packs them into datagrams, which are handed to the
    modem delta1 + delta2 + delta3 after the last frame's timestamp.
    All PMUs share one cat-M channel (and one event queue). At the
    PDC, each stream passes a realignment buffer before it's stamped,
    so every delay is the sum of its six delay components.

    Parameters
    ----------
    spec : ExperimentSpec
        What to run.

    Returns
    -------
    result : ExperimentResult
        The trace, statistics, and file paths. The files are
        records.csv, stats.csv, synchrophasors.csv, fig5.csv,
        fig6.csv, and fig7.csv in `spec.output_dir`.
    """
    _prepare_output_directory(spec.output_dir)
    paths = {
        k: os.path.join(spec.output_dir, f"{k}.csv")
        for k in ["records", "stats", "synchrophasors", "fig5", "fig6", "fig7"]
    }

    estimator = EstimatorConfig(
        f0=spec.waveform.nominal_frequency,
        reporting_rate=spec.rate,
        rocof_mode=spec.rocof_mode,
    )
    scaling = replace(spec.scaling, nominal_frequency=spec.waveform.nominal_frequency)
    delta1, delta2, delta3 = [to_microseconds(x, u.ms) for x in spec.processing_delays]
    streams = list(range(1, spec.pmu_count + 1))

    # nothing to report makes header-only files
    if spec.nreports == 0:
        trace = DelayTrace()
        trace.save(paths["records"], include_budget=True)
        stats_table([]).write(paths["stats"], format="ascii.csv", overwrite=True)
        series = SynchrophasorSeries()
        series.save(paths["synchrophasors"])
        for k in ["5", "6", "7"]:
            _write_empty(paths[f"fig{k}"], figure_columns[k])
        return ExperimentResult(trace=trace, stats=[], paths=paths, synchrophasors=series)

    # estimate and encode
    synchrophasors, frames, datagrams = {}, {}, {}
    for stream_id in tqdm(streams, leave=False, disable=not spec.progress):
        synchrophasors[stream_id], frames[stream_id], datagrams[stream_id] = _simulate_pmu(
            spec, stream_id, estimator, scaling
        )

    # send everything through the shared channel
    results = run_streams(
        {s: [(t, d) for t, d, _ in datagrams[s]] for s in streams},
        config=spec.channel,
    )

    # the realignment buffer holds each datagram until earlier ones are out
    rows = [(s, j) for s in streams for j in range(len(results[s]))]
    transits = [results[s][j] for s, j in rows]
    waits = compute_buffer_delays(
        stream_id=[s for s, _ in rows],
        t_us=[r.departure_time for r in transits],
        arrival_us=[max(r.arrival_time, 0) for r in transits],
        delivered=[r.delivered for r in transits],
        seq=[j for _, j in rows],
    )

    pdc = PhasorDataConcentrator(
        scaling=scaling, rate=spec.rate, start_time=spec.waveform.start_time_us
    )

    def budgets_for(s, j, wait):
        transit = results[s][j]
        _, _, which = datagrams[s][j]
        last = synchrophasors[s][which[-1]].timestamp
        delta4_wait, delta4_tx, delta5 = transit.delay_components
        delivered = transit.delivered
        return [
            DelayBudget(
                delta1=delta1,
                delta2=delta2,
                # frames wait for the rest of their datagram before hand-off
                delta3=delta3 + last - synchrophasors[s][i].timestamp,
                delta4=delta4_wait + delta4_tx if delivered else None,
                delta5=delta5 if delivered else None,
                delta6=int(wait) if delivered else None,
            )
            for i in which
        ]

    # stamp delivered datagrams in the order the buffer releases them
    released = sorted(
        [k for k in range(len(rows)) if transits[k].delivered],
        key=lambda k: (transits[k].arrival_time + waits[k], rows[k]),
    )
    for k in tqdm(released, leave=False, disable=not spec.progress):
        s, j = rows[k]
        pdc.ingest(
            datagrams[s][j][1],
            transits[k].arrival_time + waits[k],
            budgets=budgets_for(s, j, waits[k]),
        )

    # lost datagrams lose every frame they carried
    for k in range(len(rows)):
        if transits[k].delivered:
            continue
        s, j = rows[k]
        for i, budget in zip(datagrams[s][j][2], budgets_for(s, j, 0)):
            pdc.record_lost(
                stream_id=s,
                sequence_number=i,
                t_i=synchrophasors[s][i].timestamp,
                frame_size=len(frames[s][i]),
                budget=budget,
            )

    # sort by timestamp for the outputs
    trace = pdc.trace(include_budget=True)
    trace = trace[np.lexsort((trace.seq, trace.stream_id, trace.t_us))]
    trace.metadata["name"] = f"{spec.rate:g} fps"
    trace.save(paths["records"], include_budget=True)

    analyzed = trace.skip_first() if spec.skip_first else trace
    stats = analyzed.compute_stats_by_stream()
    stats_table(stats).write(paths["stats"], format="ascii.csv", overwrite=True)

    series = SynchrophasorSeries.from_synchrophasors(synchrophasors[streams[0]])
    series.save(paths["synchrophasors"])

    for k in ["5", "6", "7"]:
        emit_figure_data(
            analyzed,
            k,
            output_path=paths[f"fig{k}"],
            si_window=spec.channel.si_window,
            si_grid_offset=spec.channel.si_grid_offset,
            handoff_delay=spec.handoff_delay,
        )

    return ExperimentResult(
        trace=trace, stats=stats, paths=paths, synchrophasors=series
    )
