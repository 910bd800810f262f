"""
A live PMU client that sends data frames to a PDC over UDP.
"""
from ..imports import *
from ..signals import WaveformConfig, EstimatorConfig, generate, square_wave_edges, report
from ..frames import ScalingConfig, encode, pack_datagram
from ..pdc.server import parse_address

import socket, time

__all__ = ["run_udp_client"]


def run_udp_client(
    server,
    rate=50.0,
    duration=10.0,
    phase_count=1,
    frames_per_datagram=1,
    idcode=1,
    waveform=None,
    scaling=None,
    progress=True,
):
    """
    Send synchrophasor frames to a PDC in real time.

    The reporting grid starts at the next whole UTC second, and
    each datagram leaves when the wall clock reaches the timestamp
    of its last frame. Sends are scheduled against absolute
    monotonic deadlines, so the rate doesn't drift.

    Parameters
    ----------
    server : str, tuple
        The PDC's address, like "192.0.2.10:4712".
    rate : float
        The reporting rate lambda (fps).
    duration : float
        How long to send for (s).
    phase_count : int
        1 or 3 phasors per frame.
    frames_per_datagram : int
        How many frames to pack into each datagram.
    idcode : int
        This PMU's stream id.
    waveform : WaveformConfig, optional
        The signal to measure (its start time and duration are replaced).
    scaling : ScalingConfig, optional
        How frames are scaled.
    progress : bool
        Show a progress bar?

    Returns
    -------
    n : int
        The number of frames sent.
    """
    host, port = parse_address(server, default_host="127.0.0.1")
    duration = float(strip_unit(duration, u.s))
    if duration <= 0:
        return 0
    waveform = waveform or WaveformConfig()
    estimator = EstimatorConfig(f0=waveform.nominal_frequency, reporting_rate=rate)
    scaling = replace(
        scaling or ScalingConfig(), nominal_frequency=waveform.nominal_frequency
    )

    # the grid starts on the next whole second of the wall clock
    now_us = time.time_ns() // 1000
    start = now_us // microseconds_per_second + 1
    waveform = replace(waveform, start_time=start, duration=duration)
    count = int(np.floor(duration * estimator.reporting_rate + 1e-9))
    synchrophasors = report(
        generate(waveform), square_wave_edges(waveform), estimator, count=count
    )
    frames = [
        encode(s, idcode=idcode, scaling=scaling, phase_count=phase_count)
        for s in synchrophasors
    ]

    # map the wall-clock grid onto the monotonic clock
    monotonic_start = time.monotonic() + (
        start * microseconds_per_second - time.time_ns() // 1000
    ) / microseconds_per_second

    sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
    sent = 0
    try:
        for first in tqdm(
            range(0, len(frames), frames_per_datagram),
            leave=False,
            disable=not progress,
        ):
            chunk = frames[first : first + frames_per_datagram]
            last = synchrophasors[first + len(chunk) - 1].timestamp
            deadline = monotonic_start + (
                last - start * microseconds_per_second
            ) / microseconds_per_second
            pause = deadline - time.monotonic()
            if pause > 0:
                time.sleep(pause)
            sock.sendto(pack_datagram(chunk), (host, port))
            sent += len(chunk)
    finally:
        sock.close()
    return sent
