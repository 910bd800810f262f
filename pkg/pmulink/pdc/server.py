"""
A UDP server that runs a `PhasorDataConcentrator` on live traffic.

One thread receives datagrams and timestamps them the moment they
arrive; the calling thread decodes them, appends delay records to a
CSV file, and prints a statistics snapshot every so often.
"""
from ..imports import *
from .concentrator import PhasorDataConcentrator
from ..traces.writers.delay_csv import record_columns

import socket, threading, queue, time

__all__ = ["serve_udp", "parse_address"]


def parse_address(address, default_host="0.0.0.0"):
    """
    Split "host:port" (or just "port") into a (host, port) tuple.
    """
    if isinstance(address, tuple):
        return address[0], int(address[1])
    text = str(address)
    host, _, port = text.rpartition(":")
    try:
        return host or default_host, int(port)
    except ValueError:
        raise UsageError(f"'{address}' doesn't look like host:port.")


def _start_csv(path):
    """
    Write the header of a delay record CSV.
    """
    try:
        ascii.write(
            Table(names=record_columns, dtype=[np.int64] * 6 + [str]),
            path,
            format="csv",
            overwrite=True,
        )
    except OSError as e:
        raise StartupError(f"Couldn't write {path}: {e}")


def _append_csv(path, records):
    """
    Append delay records (without a header) to a CSV.
    """
    if len(records) == 0:
        return
    table = Table(
        rows=[
            (
                r.stream_id,
                r.sequence_number,
                r.t_i,
                r.t_prime,
                r.delay,
                r.frame_size,
                r.status,
            )
            for r in records
        ],
        names=record_columns,
    )
    with open(path, "a") as f:
        ascii.write(table, f, format="no_header", delimiter=",")


def _print_snapshot(pdc):
    """
    Print statistics over the records still held in memory.
    """
    trace = pdc.trace()
    try:
        s = trace.compute_stats()
    except EmptyStatsError:
        print(f"📡 {pdc.counts['datagrams']} datagrams, nothing delivered yet")
        return
    print(
        f"📡 latest n={s.n} mean={s.mean:.2f} ms min={s.min:.2f} max={s.max:.2f} "
        f"std={s.stddev:.2f} jitter={s.jitter:.2f} failures={pdc.counts['integrity_failure']}"
    )


def serve_udp(
    bind_address,
    output_path,
    rate=None,
    snapshot_interval=10.0,
    stop_event=None,
    max_datagrams=None,
    scaling=None,
    poll_interval=0.2,
    ready_event=None,
    keep_records=10_000,
):
    """
    Receive data frames over UDP and record their delays.

    Parameters
    ----------
    bind_address : str, tuple
        Where to listen, like "0.0.0.0:4712".
    output_path : str
        The delay record CSV to (re)write.
    rate : float, optional
        The reporting rate lambda (fps), for sequence numbers.
    snapshot_interval : float
        How often (s) to print a statistics snapshot. 0 turns them off.
    stop_event : threading.Event, optional
        Stop when this is set.
    max_datagrams : int, optional
        Stop after this many datagrams.
    scaling : ScalingConfig, optional
        The scaling the PMUs encode with.
    poll_interval : float
        How often (s) the threads check whether to stop.
    ready_event : threading.Event, optional
        Set once the socket is bound.
    keep_records : int, None
        How many of the most recent records to hold in memory, for
        the snapshots and the returned trace. The CSV gets every
        record either way. `None` keeps them all.

    Returns
    -------
    trace : DelayTrace
        The records still in memory, in arrival order. Its
        `metadata["written"]` is how many records went to the CSV.
    """
    host, port = parse_address(bind_address)
    stop_event = stop_event or threading.Event()

    sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
    try:
        sock.bind((host, port))
    except OSError as e:
        sock.close()
        raise StartupError(f"Couldn't listen on {host}:{port}: {e}")
    sock.settimeout(poll_interval)

    try:
        _start_csv(output_path)
    except StartupError:
        sock.close()
        raise

    received = queue.Queue()
    finished_receiving = threading.Event()

    def receive():
        while not (stop_event.is_set() or finished_receiving.is_set()):
            try:
                data, _ = sock.recvfrom(65535)
            except socket.timeout:
                continue
            except OSError:
                break
            received.put((time.time_ns() // 1000, data))

    receiver = threading.Thread(target=receive, daemon=True)
    receiver.start()
    if ready_event is not None:
        ready_event.set()

    pdc = PhasorDataConcentrator(scaling=scaling, rate=rate, max_records=keep_records)
    last_snapshot = time.monotonic()
    n = 0
    written = 0
    try:
        while not stop_event.is_set():
            if max_datagrams is not None and n >= max_datagrams:
                break
            try:
                reception_time, data = received.get(timeout=poll_interval)
            except queue.Empty:
                continue
            n += 1
            before = pdc.counts["malformed"] + pdc.counts["truncated"]
            records = pdc.ingest(data, reception_time)
            if pdc.counts["malformed"] + pdc.counts["truncated"] > before:
                cheerfully_suggest(
                    f"A {len(data)}-byte datagram couldn't be decoded; it was skipped."
                )
            _append_csv(output_path, records)
            written += len(records)

            if snapshot_interval and time.monotonic() - last_snapshot >= snapshot_interval:
                _print_snapshot(pdc)
                last_snapshot = time.monotonic()
    except KeyboardInterrupt:
        print("📡 stopping")
    finally:
        finished_receiving.set()
        receiver.join(timeout=2 * poll_interval + 1)
        sock.close()

    trace = pdc.trace()
    trace.metadata["written"] = written
    return trace
