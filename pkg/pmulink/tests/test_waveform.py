from ..signals import *
from ..imports import *
from .setup_tests import *


def test_generate_blocks():
    config = WaveformConfig(duration=1)
    blocks = generate(config)
    assert len(blocks) == 51
    for b in blocks:
        assert b.samples.shape == (32,)
        assert b.sample_rate == 1600
        assert b.nominal_frequency == 50

    # one lead-in cycle, then the cycles from the UTC second on
    starts = np.array([b.block_start_time for b in blocks])
    assert blocks[0].index == -1
    assert starts[0] == config.first_sample_us == 1_600_000_000 * 1_000_000 - 20_000
    assert starts[1] == config.start_time_us
    assert np.all(np.diff(starts) == 20_000)

    plain = generate(replace(config, lead_in=False))
    assert len(plain) == 50
    assert plain[0].index == 0
    assert plain[0].block_start_time == config.start_time_us
    assert np.array_equal(plain[0].samples, blocks[1].samples)


def test_sample_values():
    config = WaveformConfig(
        actual_frequency=50.3, amplitude=1.7, initial_phase=0.4, duration=0.1
    )
    blocks = generate(config)
    for b in [blocks[0], blocks[3]]:
        k = np.arange(32)
        tau = (32 * b.index + k) / (32 * 50)
        expected = 1.7 * np.sin(2 * np.pi * 50.3 * tau + 0.4)
        assert np.allclose(b.samples, expected, atol=1e-12)


def test_sixty_hertz_grid_never_drifts():
    config = WaveformConfig(nominal_frequency=60, duration=1)
    blocks = generate(config)
    assert len(blocks) == 61
    starts = np.array([b.block_start_time for b in blocks]) - config.start_time_us
    assert starts[0] == -16_667
    assert set(np.diff(starts)) <= {16_666, 16_667}
    assert starts[-1] == round(59 * 1_000_000 / 60)
    assert config.end_time_us - config.start_time_us == 1_000_000


def test_partial_cycles_round_up():
    config = WaveformConfig(duration=0.015, lead_in=False)
    assert len(generate(config)) == 1
    config = WaveformConfig(duration=0.021, lead_in=False)
    assert len(generate(config)) == 2


def test_zero_amplitude():
    blocks = generate(WaveformConfig(amplitude=0, duration=0.1))
    assert all(np.all(b.samples == 0) for b in blocks)


def test_noise_is_seeded():
    config = WaveformConfig(noise_stddev=0.01, duration=0.2)
    a = generate(config, rng_seed=3)
    b = generate(config, rng_seed=3)
    c = generate(config, rng_seed=4)
    assert all(np.array_equal(x.samples, y.samples) for x, y in zip(a, b))
    assert not np.array_equal(a[0].samples, c[0].samples)


def test_quantized_samples_sit_on_adc_codes():
    config = WaveformConfig(duration=0.1, quantize=True)
    clean = generate(replace(config, quantize=False))
    for b, c in zip(generate(config), clean):
        codes = (b.samples + 2.5) / 5 * 1023
        assert np.allclose(codes, np.round(codes), atol=1e-9)
        assert np.max(np.abs(b.samples - c.samples)) <= 0.5 * 5 / 1023 + 1e-12


def test_square_wave_edges():
    config = WaveformConfig(duration=1)
    edges = square_wave_edges(config)
    assert len(edges) == 52
    assert edges[0] == config.start_time_us - 20_000
    assert edges[1] == config.start_time_us
    assert edges[-1] == config.end_time_us
    assert np.all(np.diff(edges) == 20_000)

    # a quarter cycle of phase moves every edge a quarter cycle earlier
    shifted = square_wave_edges(replace(config, initial_phase=np.pi / 2))
    assert shifted[0] - config.start_time_us == -5_000
    assert shifted[1] - config.start_time_us == 15_000

    off = square_wave_edges(replace(config, actual_frequency=50.2))
    assert np.all(np.abs(np.diff(off) - 1e6 / 50.2) <= 1)


def test_edge_spacing_across_frequencies():
    for f in np.linspace(45, 65, 41):
        for phi0 in [-3.0, 0.0, 1.2]:
            config = WaveformConfig(
                actual_frequency=f, initial_phase=phi0, duration=0.5
            )
            edges = square_wave_edges(config)

            # one edge per signal cycle, each within a µs of the true crossing
            assert np.all(np.abs(np.diff(edges) - 1e6 / f) <= 1)
            tau = (edges - config.start_time_us) / 1e6
            slack = 2 * np.pi * f * 0.5e-6 + 1e-9
            assert np.all(np.abs(np.sin(2 * np.pi * f * tau + phi0)) <= slack)
            assert np.all(np.cos(2 * np.pi * f * tau + phi0) > 0)

            # the edges cover the whole sampled span
            assert edges[0] >= config.first_sample_us
            assert edges[0] - config.first_sample_us <= 1e6 / f + 1
            assert edges[-1] <= config.end_time_us
            assert config.end_time_us - edges[-1] <= 1e6 / f + 1


def test_invalid_waveforms():
    for bad in [
        dict(duration=0),
        dict(amplitude=-1),
        dict(initial_phase=4),
        dict(initial_phase=np.pi),
        dict(noise_stddev=-0.1),
        dict(nominal_frequency=0),
        dict(actual_frequency=-50),
        dict(start_time=1.5),
    ]:
        with pytest.raises(ConfigurationError):
            WaveformConfig(**bad)


def test_units_are_accepted():
    config = WaveformConfig(duration=500 * u.ms, amplitude=2000 * u.mV)
    assert config.duration == 0.5
    assert config.amplitude == 2.0


def test_sample_block_length():
    with pytest.raises(ContractViolation):
        SampleBlock(samples=np.zeros(31), block_start_time=0, sample_rate=1600)
