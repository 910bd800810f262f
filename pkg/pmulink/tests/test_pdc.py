from ..pdc import *
from ..frames import encode, decode, read_golden, pack_datagram, ScalingConfig
from ..signals import Synchrophasor
from ..traces import DelayBudget, DelayRecord, read_trace
from ..harness.client import run_udp_client
from ..imports import *
from .setup_tests import *
import socket, threading

t0 = 1_600_000_000 * 1_000_000


def frame_at(t_i, idcode=1, phase_count=1):
    return encode(
        Synchrophasor(2.0, 0.0, 50.0, 0.0, t_i), idcode=idcode, phase_count=phase_count
    )


def test_ingest_one_frame():
    pdc = PhasorDataConcentrator(rate=50)
    records = pdc.ingest(frame_at(t0 + 20_000, idcode=4), t0 + 170_000)
    assert len(records) == 1
    r = records[0]
    assert r.stream_id == 4
    assert r.sequence_number == 1
    assert r.t_i == t0 + 20_000
    assert r.t_prime == t0 + 170_000
    assert r.delay == 150_000
    assert r.frame_size == 26
    assert r.delivered
    assert pdc.counts["datagrams"] == 1
    assert pdc.counts["delivered"] == 1


def test_sequence_numbers_without_a_rate():
    pdc = PhasorDataConcentrator()
    for k in [3, 1, 2]:
        pdc.ingest(frame_at(t0 + k * 20_000), t0 + 500_000)
    assert [r.sequence_number for r in pdc.records()] == [0, 1, 2]

    pdc = PhasorDataConcentrator(rate=50, start_time=t0 - 1_000_000)
    pdc.ingest(frame_at(t0 + 40_000), t0 + 500_000)
    assert pdc.records()[0].sequence_number == 52


def test_multi_frame_datagrams():
    pdc = PhasorDataConcentrator(rate=50)
    datagram = pack_datagram([frame_at(t0), frame_at(t0 + 20_000), frame_at(t0 + 40_000)])
    budgets = [DelayBudget(delta1=500, delta3=k) for k in [40_500, 20_500, 500]]
    records = pdc.ingest(datagram, t0 + 200_000, budgets=budgets)
    assert [r.delay for r in records] == [200_000, 180_000, 160_000]
    assert [r.sequence_number for r in records] == [0, 1, 2]
    assert len(set(r.t_prime for r in records)) == 1

    trace = pdc.trace(include_budget=True)
    assert list(trace.delta3_us) == [40_500, 20_500, 500]
    assert list(trace.delta2_us) == [-1, -1, -1]
    assert "delta1_us" not in pdc.trace().framelike


def test_integrity_failures_are_recorded():
    pdc = PhasorDataConcentrator()
    corrupted = bytearray(frame_at(t0))
    corrupted[12] ^= 0x01
    records = pdc.ingest(bytes(corrupted), t0 + 100_000)
    assert len(records) == 1
    r = records[0]
    assert r.status == "integrity_failure"
    assert (r.stream_id, r.sequence_number, r.t_i, r.delay) == (-1, -1, -1, -1)
    assert r.t_prime == t0 + 100_000
    assert pdc.counts["integrity_failure"] == 1
    assert pdc.trace().counts["integrity_failure"] == 1


def test_malformed_data_is_counted_not_raised():
    pdc = PhasorDataConcentrator()
    assert pdc.ingest(b"\xaa\x01", t0) == []
    assert pdc.counts["truncated"] == 1

    # a damaged tail costs only the tail
    good = read_golden("single_phase")
    t_i = decode(good).timestamp(ScalingConfig())
    records = pdc.ingest(good + good[:10], t_i + 100_000)
    assert len(records) == 1
    assert records[0].delivered
    assert records[0].delay == 100_000
    assert pdc.counts["datagrams"] == 2
    assert pdc.counts["truncated"] == 2
    assert pdc.counts["integrity_failure"] == 0

    pdc.ingest(good + b"\xaa\x01\x00\x02" + good, t_i + 100_000)
    assert pdc.counts["delivered"] == 2
    assert pdc.counts["malformed"] == 1


def test_rolling_record_window():
    pdc = PhasorDataConcentrator(rate=50, max_records=10)
    for k in range(30):
        pdc.ingest(frame_at(t0 + k * 20_000), t0 + k * 20_000 + 150_000)
    assert pdc.counts["delivered"] == 30
    assert [r.sequence_number for r in pdc.records()] == list(range(20, 30))
    trace = pdc.trace(include_budget=True)
    assert trace.nframes == 10
    assert trace.metadata["counts"]["delivered"] == 30
    assert trace.compute_stats().n == 10


def test_clock_skew():
    pdc = PhasorDataConcentrator()
    with pytest.warns(match="before"):
        records = pdc.ingest(frame_at(t0 + 100_000), t0)
    assert records == []
    assert pdc.counts["clock_skew"] == 1
    assert len(pdc.records()) == 0


def test_lost_records():
    pdc = PhasorDataConcentrator(rate=50)
    pdc.ingest(frame_at(t0), t0 + 150_000)
    r = pdc.record_lost(stream_id=1, sequence_number=1, t_i=t0 + 20_000, frame_size=26)
    assert r.status == "lost"
    assert r.t_prime == -1
    assert pdc.trace().counts == {"delivered": 1, "lost": 1, "integrity_failure": 0}
    s = compute_stats(pdc.records())
    assert s.loss_fraction == 0.5
    print(pdc)


def test_realign_function():
    records = [
        DelayRecord(1, 1, 20_000, 140_000, 120_000, 26),
        DelayRecord(1, 0, 0, 150_000, 150_000, 26),
    ]
    realigned, waits = realign(records)
    assert list(realigned.seq) == [0, 1]
    assert list(waits) == [0, 10_000]
    assert as_trace(realigned) is realigned
    empty, waits = realign([])
    assert empty.nframes == 0
    assert len(waits) == 0


def test_parse_address():
    assert parse_address("192.0.2.10:4712") == ("192.0.2.10", 4712)
    assert parse_address("4712") == ("0.0.0.0", 4712)
    assert parse_address(":4712", default_host="127.0.0.1") == ("127.0.0.1", 4712)
    assert parse_address(("localhost", "80")) == ("localhost", 80)
    with pytest.raises(UsageError):
        parse_address("nowhere")


def free_port():
    with socket.socket(socket.AF_INET, socket.SOCK_DGRAM) as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def test_bind_failure():
    with socket.socket(socket.AF_INET, socket.SOCK_DGRAM) as taken:
        taken.bind(("127.0.0.1", 0))
        port = taken.getsockname()[1]
        with pytest.raises(StartupError):
            serve_udp(
                f"127.0.0.1:{port}",
                os.path.join(test_directory, "test-bind.csv"),
                max_datagrams=1,
            )


def test_udp_loopback():
    port = free_port()
    output = os.path.join(test_directory, "test-loopback-records.csv")
    ready, stop = threading.Event(), threading.Event()
    received = {}

    def serve():
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            received["trace"] = serve_udp(
                f"127.0.0.1:{port}",
                output,
                rate=50,
                snapshot_interval=0,
                stop_event=stop,
                max_datagrams=25,
                ready_event=ready,
                keep_records=10,
            )

    server = threading.Thread(target=serve)
    server.start()
    assert ready.wait(timeout=5)
    try:
        sent = run_udp_client(
            f"127.0.0.1:{port}",
            rate=50,
            duration=1,
            frames_per_datagram=2,
            idcode=9,
            progress=False,
        )
    finally:
        server.join(timeout=10)
        stop.set()
        server.join(timeout=5)

    assert sent == 50
    trace = received["trace"]
    counts = trace.metadata["counts"]
    assert counts["datagrams"] == 25
    assert counts["frames"] == 50
    assert counts["delivered"] + counts["clock_skew"] == 50
    assert set(trace.stream_id) <= {9}
    assert np.all(np.diff(trace.seq) > 0)

    # only the latest records stay in memory, but the CSV has them all
    written = trace.metadata["written"]
    assert written == counts["delivered"]
    assert trace.nframes == min(10, written)
    saved = read_trace(output)
    assert saved.nframes == written
    assert list(saved.seq[-trace.nframes :]) == list(trace.seq)
