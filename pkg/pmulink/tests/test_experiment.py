from ..harness import *
from ..channels import ChannelConfig
from ..traces import DelayTrace, SynchrophasorSeries, read_trace
from ..imports import *
from .setup_tests import *


def simulate(name, **kw):
    kw.setdefault("progress", False)
    return run_experiment(
        ExperimentSpec(output_dir=os.path.join(test_directory, name), **kw)
    )


def test_delay_statistics_across_rates():
    for rate in [1, 10, 50, 60, 80]:
        result = simulate(f"test-rate-{rate}", rate=rate, duration=60)
        assert len(result.stats) == 1
        s = result.stats[0]
        print(rate, s)
        assert s.n == int(60 * rate)
        assert 160 <= s.mean <= 180
        assert 14 <= s.stddev <= 24
        assert s.loss_fraction == 0

        if rate == 50:
            assert np.mean(result.trace.delay_ms < 200) >= 0.98

        if rate in [1, 10, 50, 80]:
            t = result.trace.t_us
            assert np.all(np.diff(t) == round(1e6 / rate))


def test_fifty_seconds_at_fifty_fps():
    result = simulate("test-2500", rate=50, duration=50)
    assert result.trace.nframes == 2500
    assert read_trace(result.paths["records"]).nframes == 2500
    for k in ["records", "stats", "synchrophasors", "fig5", "fig6", "fig7"]:
        assert os.path.exists(result.paths[k])


def test_budgets_add_up_to_the_delay():
    result = simulate("test-budget", rate=50, duration=10, frames_per_datagram=2)
    trace = result.trace
    assert set(trace.size) == {26}
    for b, d, ok in zip(trace.budgets(), trace.delay_us, trace.delivered):
        if ok:
            assert abs(b.total() - d) <= 1
            assert b.delta6 >= 0

    # frames packed together are stamped together
    delivered = trace[trace.delivered]
    pairs = delivered.seq // 2
    for p in np.unique(pairs)[:50]:
        assert len(set(delivered.t_prime_us[pairs == p])) == 1

    # and the budget survives a trip through the file
    saved = read_trace(result.paths["records"])
    assert saved.budgets() == trace.budgets()


def test_three_pmus():
    result = simulate("test-multi", rate=50, duration=10, pmu_count=3)
    assert [s.label for s in result.stats] == ["1", "2", "3", "all"]
    assert all(s.loss_fraction == 0 for s in result.stats)
    assert all(s.n == 500 for s in result.stats[:3])
    assert sorted(set(result.trace.stream_id)) == [1, 2, 3]

    stats = ascii.read(result.paths["stats"], format="csv")
    assert len(stats) == 4


def test_empty_experiment():
    result = simulate("test-empty", duration=0)
    assert result.trace.nframes == 0
    assert result.stats == []
    for path in result.paths.values():
        with open(path) as f:
            assert len(f.read().strip().splitlines()) == 1


def test_determinism():
    spec = dict(rate=50, duration=5, pmu_count=2, frames_per_datagram=3)
    a = simulate("test-determinism-a", **spec)
    b = simulate("test-determinism-b", **spec)
    for k in a.paths:
        with open(a.paths[k], "rb") as fa, open(b.paths[k], "rb") as fb:
            assert fa.read() == fb.read()

    c = simulate(
        "test-determinism-c", channel=ChannelConfig(seed=1), **spec
    )
    with open(a.paths["records"], "rb") as fa, open(c.paths["records"], "rb") as fc:
        assert fa.read() != fc.read()


def test_regular_arrivals_at_the_si_rate():
    result = simulate("test-regular", rate=12.5, duration=60)
    fig7 = ascii.read(result.paths["fig7"], format="csv")
    gaps = np.diff(np.array(fig7["t_prime_us"]))
    assert np.std(gaps) / np.mean(gaps) <= 1.5 / 134

    # one frame per SI instant
    assert len(set(fig7["group"])) == len(fig7)


def test_connection_setup_and_skip_first():
    channel = ChannelConfig(connection_setup=True)
    result = simulate("test-setup", rate=50, duration=2, channel=channel)
    first = np.argmin(result.trace.t_us)
    assert result.trace.delay_us[first] > 340_000

    skipped = simulate(
        "test-setup-skipped", rate=50, duration=2, channel=channel, skip_first=True
    )
    assert skipped.stats[0].n == result.stats[0].n - 1
    assert skipped.trace.nframes == result.trace.nframes


def test_unwritable_output():
    blocker = os.path.join(test_directory, "test-not-a-directory")
    with open(blocker, "w") as f:
        f.write("in the way")
    with pytest.raises(StartupError):
        run_experiment(
            ExperimentSpec(output_dir=os.path.join(blocker, "inside"), duration=1)
        )


def test_experiment_spec():
    with pytest.warns(match="calibrated"):
        ExperimentSpec(rate=100)

    for bad in [
        dict(mode="sideways"),
        dict(rate=0),
        dict(duration=-1),
        dict(phase_count=2),
        dict(frames_per_datagram=4),
        dict(pmu_count=0),
        dict(processing_delays=(1, 2)),
    ]:
        with pytest.raises(ConfigurationError):
            ExperimentSpec(**bad)

    spec = ExperimentSpec(rate=25, duration=2, processing_delays=(1, 2, 3))
    assert spec.nreports == 50
    assert spec.handoff_delay == 6


def test_experiment_spec_from_file():
    spec = ExperimentSpec.from_file("default", duration=5)
    assert spec.rate == 50
    assert spec.duration == 5
    assert spec.channel.si_window == 80
    assert spec.channel.loss_prob_by_size[78] == 0.033

    spec = ExperimentSpec.from_file("frame-size-study", frames_per_datagram="2")
    assert spec.phase_count == 3
    assert spec.frames_per_datagram == 2
    assert spec.channel.extra_delay_by_size == {42: 21.0, 78: 39.0}

    with pytest.warns(match="recognized"):
        ExperimentSpec.from_values(dict(rate="40", bogus="1"))


def test_figure_data():
    result = simulate("test-figures", rate=50, duration=10)
    series = result.synchrophasors
    assert series.nframes == 500

    for figure, column in zip(["4a", "4b", "4c", "4d"], ["v", "phi", "f", "rho"]):
        table = emit_figure_data(series, figure)
        assert table.colnames == ["t_us", column]
        assert len(table) == 500
    assert np.allclose(emit_figure_data(result.paths["synchrophasors"], "4a")["v"], 2)

    fig5 = emit_figure_data(result.trace, "fig5")
    assert fig5.colnames == figure_columns["5"]
    assert np.sum(fig5["count"]) == 500
    assert np.isclose(np.sum(fig5["fraction"]), 1)
    assert np.all(fig5["bin_right_ms"] - fig5["bin_left_ms"] == 1)

    fig6 = emit_figure_data(result.paths["records"], 6)
    assert fig6.colnames == ["stream_id", "t_us", "delay_ms"]
    assert np.allclose(fig6["delay_ms"], result.trace.delay_ms)

    output = os.path.join(test_directory, "test-fig7.csv")
    fig7 = emit_figure_data(result.trace, "7", output_path=output)
    assert fig7.colnames == ["stream_id", "t_us", "t_prime_us", "group"]
    assert len(ascii.read(output, format="csv")) == 500
    assert len(emit_figure_data(result.trace, "7", skip_first=True)) == 499

    # frames served by the same SI instant arrive together, in a tight bunch
    for g in np.unique(fig7["group"]):
        assert np.ptp(fig7["t_prime_us"][fig7["group"] == g]) < 15_000


def test_packed_frames_share_their_si_group():
    result = simulate(
        "test-fig7-pairs", rate=50, duration=10, frames_per_datagram=2
    )
    delivered = result.trace[result.trace.delivered]
    fig7 = emit_figure_data(result.trace, "7")
    assert len(fig7) == delivered.nframes == 500

    # a datagram leaves 2.5 ms after its second frame's timestamp
    start = delivered.t_us[delivered.seq == 0][0]
    last = start + (2 * (delivered.seq // 2) + 1) * 20_000
    expected = -((-(last + 2_500 - 22_500)) // 80_000)
    assert np.array_equal(np.array(fig7["group"]), expected)
    for p in np.unique(delivered.seq // 2):
        assert len(set(fig7["group"][delivered.seq // 2 == p])) == 1

    # the saved figure agrees
    saved = ascii.read(result.paths["fig7"], format="csv")
    assert np.array_equal(np.array(saved["group"]), expected)

    # without a recorded budget, groups fall back to t_i + handoff_delay
    path = os.path.join(test_directory, "test-fig7-no-budget.csv")
    result.trace.save(path)
    plain = emit_figure_data(path, "7")
    t = np.array(plain["t_us"])
    fallback = -((-(t + 2_500 - 22_500)) // 80_000)
    assert np.array_equal(np.array(plain["group"]), fallback)


def test_figure_errors():
    assert normalize_figure_id("fig4A") == "4a"
    assert normalize_figure_id(5) == "5"
    with pytest.raises(UsageError):
        normalize_figure_id("8")
    with pytest.raises(UsageError):
        emit_figure_data(DelayTrace(), "5")
    with pytest.raises(UsageError):
        emit_figure_data(SynchrophasorSeries(), "4c")
    with pytest.raises(UsageError):
        emit_figure_data([], "6")
