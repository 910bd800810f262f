from ..signals import *
from ..imports import *
from .setup_tests import *


def direct_dft(x, k=1):
    """
    An O(N^2) DFT, one bin at a time.
    """
    n = np.arange(len(x))
    return np.sum(x * np.exp(-2j * np.pi * k * n / len(x)))


def test_dft32_against_direct_dft():
    rng = np.random.default_rng(0)
    for _ in range(100):
        x = rng.normal(0, 1, 32)
        X1 = direct_dft(x)
        magnitude, phase = dft32(x)
        assert np.isclose(magnitude, 2 * np.abs(X1) / 32, rtol=1e-12)
        assert np.isclose(wrap_phase(phase - np.angle(X1)), 0, atol=1e-12)
        assert -np.pi <= phase < np.pi


def test_dft32_cosine():
    k = np.arange(32)
    magnitude, phase = dft32(2 * np.cos(2 * np.pi * k / 32 + 0.3))
    assert np.isclose(magnitude, 2)
    assert np.isclose(phase, 0.3)

    magnitude, phase = dft32(np.sin(2 * np.pi * k / 32))
    assert np.isclose(magnitude, 1)
    assert np.isclose(phase, -np.pi / 2)


def test_dft32_leaks_off_nominal():
    # 51.5625 Hz puts 33 cycles in 32 nominal ones, so the window doesn't close
    k = np.arange(32)
    x = 2 * np.sin(2 * np.pi * 51.5625 * k / 1600)
    magnitude, phase = dft32(x)
    X1 = direct_dft(x)
    assert not np.isclose(magnitude, 2, atol=1e-3)
    assert np.isclose(magnitude, 2 * np.abs(X1) / 32, rtol=1e-12)
    assert np.isclose(wrap_phase(phase - np.angle(X1)), 0, atol=1e-12)


def test_dft32_edges():
    assert dft32(np.zeros(32)) == (0.0, 0.0)
    with pytest.raises(ContractViolation):
        dft32(np.zeros(33))
    block = generate(WaveformConfig(duration=0.02))[0]
    assert np.isclose(dft32(block)[0], 2)


def test_estimate_frequency():
    assert estimate_frequency([0, 20_000]) == 50.0
    assert estimate_frequency([0, 20_000, 36_667]) == 1e6 / 16_667
    with pytest.raises(InsufficientDataError):
        estimate_frequency([0])
    with pytest.raises(ContractViolation):
        estimate_frequency([20_000, 20_000])


def test_rocof_grid():
    f0 = 50
    for f in np.linspace(49.5, 50.5, 101):
        assert compute_rocof(f, f0) == (f - f0) * f0

    # linear in the frequency deviation
    f = np.linspace(49.5, 50.5, 101)
    rho = compute_rocof(f, f0)
    assert np.allclose(np.diff(rho), np.diff(f) * f0, rtol=0, atol=1e-12)
    assert np.isclose(compute_rocof(50.2, 50), 10)
    assert compute_rocof(50, 50) == 0


def test_on_nominal_reports():
    waveform = WaveformConfig(duration=50)
    estimator = EstimatorConfig(reporting_rate=50)
    reports = report(generate(waveform), square_wave_edges(waveform), estimator, count=2500)
    assert len(reports) == 2500

    v = np.array([s.magnitude for s in reports])
    phi = np.array([s.phase for s in reports])
    f = np.array([s.frequency for s in reports])
    t = np.array([s.timestamp for s in reports])

    assert np.all(np.abs(v - 2.0) < 1e-6)
    assert np.ptp(phi) < 1e-9
    assert np.isclose(phi[0], -np.pi / 2)
    assert np.all(f == 50)
    assert all(s.rocof == 0 for s in reports)
    assert t[0] == waveform.start_time_us
    assert np.all(np.diff(t) == 20_000)


def test_on_nominal_reports_at_sixty_hertz():
    waveform = WaveformConfig(nominal_frequency=60, duration=10)
    estimator = EstimatorConfig(f0=60, reporting_rate=60)
    blocks = generate(waveform)
    assert blocks[0].sample_rate == 1920
    reports = report(blocks, square_wave_edges(waveform), estimator)
    assert len(reports) == 600

    # 1e6 / 60 isn't a whole number of µs, but the phase stays locked
    phi = np.array([s.phase for s in reports])
    assert np.all(np.abs(np.diff(phi)) < 1e-6)
    assert np.isclose(phi[0], -np.pi / 2)
    assert all(np.abs(s.magnitude - 2.0) < 1e-6 for s in reports)
    assert all(np.abs(s.frequency - 60) < 0.01 for s in reports)

    t = np.array([s.timestamp for s in reports])
    assert t[0] == waveform.start_time_us
    assert set(np.diff(t)) <= {16_666, 16_667}

    # reporting slower than the cycle rate reuses windows without losing the lock
    slower = report(
        blocks, square_wave_edges(waveform), replace(estimator, reporting_rate=50)
    )
    assert np.ptp([s.phase for s in slower]) < 1e-6


def test_off_nominal_wraps_and_beat():
    duration, rate = 25, 50
    waveform = WaveformConfig(actual_frequency=50.2, duration=duration)
    estimator = EstimatorConfig(reporting_rate=rate)
    reports = report(generate(waveform), square_wave_edges(waveform), estimator)
    assert len(reports) == duration * rate

    t = np.array([s.timestamp for s in reports]) / 1e6
    phi = np.array([s.phase for s in reports])
    v = np.array([s.magnitude for s in reports])

    # the phase drifts up by 2 pi every 1 / (f - f0) = 5 s
    wraps = t[1:][np.diff(phi) < -np.pi]
    assert len(wraps) >= 4
    assert np.all(np.abs(np.diff(wraps) - 5) <= 1 / rate + 1e-9)

    # the rectangular window's image term beats against the signal at 2 |f - f0|
    x = v - np.mean(v)
    N = len(x)
    power = [np.abs(direct_dft(x, k)) for k in range(1, N // 2)]
    peak = (1 + np.argmax(power)) / duration
    assert np.abs(peak - 2 * 0.2) <= 1 / duration

    f = np.array([s.frequency for s in reports])
    assert np.all(np.abs(f - 50.2) < 0.01)


def test_reporting_below_the_cycle_rate():
    waveform = WaveformConfig(duration=3)
    estimator = EstimatorConfig(reporting_rate=1)
    reports = report(generate(waveform), square_wave_edges(waveform), estimator)
    t = [s.timestamp - waveform.start_time_us for s in reports]
    assert t == [0, 1_000_000, 2_000_000]


def test_blocks_are_reused_not_interpolated():
    waveform = WaveformConfig(actual_frequency=50.5, duration=1)
    estimator = EstimatorConfig(reporting_rate=80)
    blocks = generate(waveform)
    reports = report(blocks, square_wave_edges(waveform), estimator)
    ends = np.array([b.block_start_time for b in blocks]) + 20_000
    for s in reports[:20]:
        b = np.searchsorted(ends, s.timestamp, side="right") - 1
        assert ends[b] <= s.timestamp < ends[b] + 20_000
        assert np.isclose(s.magnitude, dft32(blocks[b])[0])


def test_reports_only_use_completed_windows():
    waveform = WaveformConfig(actual_frequency=50.5, duration=0.2)
    estimator = EstimatorConfig(reporting_rate=50)
    blocks = generate(waveform)
    edges = square_wave_edges(waveform)
    reports = report(blocks, edges, estimator)

    # the report at the UTC second comes from the lead-in cycle
    assert reports[0].timestamp == waveform.start_time_us
    assert blocks[0].index == -1
    assert np.isclose(reports[0].magnitude, dft32(blocks[0])[0])

    # samples or edges after t_i never change the report at t_i
    cut = 5
    t = reports[cut].timestamp
    scrambled = [
        b if b.block_start_time + 20_000 <= t else replace(b, samples=np.zeros(32))
        for b in blocks
    ]
    shifted = np.where(edges > t, edges + 777, edges)
    again = report(scrambled, shifted, estimator, count=cut + 1)
    for a, b in zip(again, reports[: cut + 1]):
        assert a.timestamp == b.timestamp
        assert np.isclose(a.magnitude, b.magnitude)
        assert np.isclose(a.phase, b.phase)
        assert a.frequency == b.frequency


def test_truncated_reports_warn():
    waveform = WaveformConfig(duration=1)
    estimator = EstimatorConfig(reporting_rate=50)
    with pytest.warns(match="truncated"):
        reports = report(
            generate(waveform), square_wave_edges(waveform), estimator, count=60
        )
    assert len(reports) == 50


def test_derivative_rocof():
    waveform = WaveformConfig(actual_frequency=50.2, duration=1)
    estimator = EstimatorConfig(reporting_rate=50, rocof_mode="derivative")
    reports = report(generate(waveform), square_wave_edges(waveform), estimator)
    f = np.array([s.frequency for s in reports])
    rho = np.array([s.rocof for s in reports])
    assert rho[0] == 0
    assert np.allclose(rho[1:], np.diff(f) * 50)

    product = report(
        generate(waveform),
        square_wave_edges(waveform),
        replace(estimator, rocof_mode="product"),
    )
    assert all(s.rocof == compute_rocof(s.frequency, 50) for s in product)


def test_invalid_estimator_configs():
    for bad in [dict(f0=55), dict(reporting_rate=0.5), dict(reporting_rate=121), dict(rocof_mode="?")]:
        with pytest.raises(ConfigurationError):
            EstimatorConfig(**bad)


def test_synchrophasor_invariants():
    with pytest.raises(ContractViolation):
        Synchrophasor(magnitude=-1, phase=0, frequency=50, rocof=0, timestamp=0)
    with pytest.raises(ContractViolation):
        Synchrophasor(magnitude=1, phase=np.pi, frequency=50, rocof=0, timestamp=0)
    with pytest.raises(ContractViolation):
        Synchrophasor(magnitude=1, phase=0, frequency=0, rocof=0, timestamp=0)
