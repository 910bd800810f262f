"""
The `pmulink` command line.

```
pmulink simulate --rate 50 --duration 60 --out results/
pmulink udp-server --bind 0.0.0.0:4712 --out records.csv
pmulink udp-client --server 192.0.2.10:4712 --rate 50 --duration 60
pmulink report --figure 5 --in results/records.csv --out fig5.csv
pmulink stats --in results/records.csv
pmulink hexdump --hex "AA01 001A ..."
```

Exit codes are 0 for success, 1 for usage errors, 2 for runtime errors.
"""
from ..imports import *
from ..configuration import read_config
from ..frames import hexdump, split_datagram, parse_hex
from ..traces import read_trace, stats_table
from ..pdc import serve_udp
from .experiment import ExperimentSpec, run_experiment
from .figures import emit_figure_data, figure_ids
from .client import run_udp_client

import argparse, sys

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    """
    An ArgumentParser that raises UsageError instead of exiting.
    """

    def error(self, message):
        raise UsageError(message)


def _spec_from_arguments(args):
    """
    Read --config first, then let every flag that was given override it.
    """
    values = read_config(args.config) if args.config else {}
    flags = dict(
        rate=args.rate,
        duration=args.duration,
        si_window=args.si_window,
        si_grid_offset=args.si_grid_offset,
        seed=args.seed,
        phase_count=args.phases,
        frames_per_datagram=args.frames_per_datagram,
        pmu_count=args.pmus,
        output_dir=args.out,
        skip_first=True if args.skip_first else None,
        connection_setup=True if args.connection_setup else None,
        progress=False if args.no_progress else None,
    )
    values.update({k: v for k, v in flags.items() if v is not None})
    return ExperimentSpec.from_values(values)


def _simulate(args):
    spec = _spec_from_arguments(args)
    result = run_experiment(spec)
    print(f"📡 {result.trace.nframes} records written to {spec.output_dir}")
    if len(result.stats) > 0:
        print(stats_table(result.stats))
    return 0


def _udp_client(args):
    n = run_udp_client(
        args.server,
        rate=args.rate,
        duration=args.duration,
        phase_count=args.phases,
        frames_per_datagram=args.frames_per_datagram,
        idcode=args.idcode,
        progress=not args.no_progress,
    )
    print(f"📡 sent {n} frames to {args.server}")
    return 0


def _udp_server(args):
    trace = serve_udp(
        args.bind,
        args.out,
        rate=args.rate,
        snapshot_interval=args.snapshot_interval,
        max_datagrams=args.max_datagrams,
        keep_records=args.keep_records,
    )
    print(f"📡 {trace.metadata['written']} records written to {args.out}")
    return 0


def _report(args):
    table = emit_figure_data(
        getattr(args, "in"),
        args.figure,
        output_path=args.out,
        si_window=args.si_window,
        si_grid_offset=args.si_grid_offset,
        handoff_delay=args.handoff_delay,
        skip_first=args.skip_first,
    )
    print(f"📡 figure {args.figure}: {len(table)} rows written to {args.out}")
    return 0


def _stats(args):
    trace = read_trace(getattr(args, "in"))
    if args.skip_first:
        trace = trace.skip_first()
    s = trace.compute_stats(expected_count=args.expected)
    print(s.to_table())
    return 0


def _hexdump(args):
    path = getattr(args, "in")
    if (path is None) == (args.hex is None):
        raise UsageError("Please give exactly one of --in or --hex.")
    if args.hex is not None:
        data = parse_hex(args.hex)
    elif path.endswith(".hex"):
        with open(path) as f:
            data = parse_hex(f.read())
    else:
        with open(path, "rb") as f:
            data = f.read()

    try:
        frames = split_datagram(data)
    except FrameError:
        frames = [data]
    for i, frame in enumerate(frames):
        if len(frames) > 1:
            print(f"\nframe {i}")
        print(hexdump(frame))
    return 0


def build_parser():
    """
    Build the argument parser for every subcommand.
    """
    parser = _Parser(
        prog="pmulink",
        description="Simulate, send, receive, and analyze synchrophasor frames.",
    )
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)

    simulate = commands.add_parser("simulate", help="run a simulated experiment")
    simulate.add_argument("--config", help="a key = value config file (or preset name)")
    simulate.add_argument("--rate", type=float, help="reporting rate (fps)")
    simulate.add_argument("--duration", type=float, help="how long to report (s)")
    simulate.add_argument("--si-window", type=float, help="SI period (ms)")
    simulate.add_argument("--si-grid-offset", type=float, help="SI grid phase (ms)")
    simulate.add_argument("--seed", type=int, help="random seed")
    simulate.add_argument("--phases", type=int, choices=[1, 3], help="phasors per frame")
    simulate.add_argument(
        "--frames-per-datagram", type=int, choices=[1, 2, 3], help="frames per datagram"
    )
    simulate.add_argument("--pmus", type=int, help="how many PMUs")
    simulate.add_argument("--out", help="output directory")
    simulate.add_argument("--skip-first", action="store_true", help="leave out each stream's first frame")
    simulate.add_argument("--connection-setup", action="store_true", help="first frame pays the setup delay")
    simulate.add_argument("--no-progress", action="store_true", help="hide progress bars")
    simulate.set_defaults(func=_simulate)

    client = commands.add_parser("udp-client", help="send live frames to a PDC")
    client.add_argument("--server", required=True, help="host:port of the PDC")
    client.add_argument("--rate", type=float, default=50.0, help="reporting rate (fps)")
    client.add_argument("--duration", type=float, default=10.0, help="how long to send (s)")
    client.add_argument("--phases", type=int, choices=[1, 3], default=1)
    client.add_argument("--frames-per-datagram", type=int, choices=[1, 2, 3], default=1)
    client.add_argument("--idcode", type=int, default=1, help="this PMU's stream id")
    client.add_argument("--no-progress", action="store_true")
    client.set_defaults(func=_udp_client)

    server = commands.add_parser("udp-server", help="receive frames as a PDC")
    server.add_argument("--bind", default="0.0.0.0:4712", help="host:port to listen on")
    server.add_argument("--out", default="records.csv", help="delay record CSV")
    server.add_argument("--rate", type=float, help="reporting rate (fps), for sequence numbers")
    server.add_argument("--max-datagrams", type=int, help="stop after this many datagrams")
    server.add_argument("--snapshot-interval", type=float, default=10.0, help="seconds between stats printouts")
    server.add_argument("--keep-records", type=int, default=10_000, help="recent records held for snapshots")
    server.set_defaults(func=_udp_server)

    report = commands.add_parser("report", help="make a figure's dataset")
    report.add_argument("--figure", required=True, choices=figure_ids)
    report.add_argument("--in", required=True, help="records or synchrophasor CSV")
    report.add_argument("--out", required=True, help="the CSV to write")
    report.add_argument("--si-window", type=float, default=80.0)
    report.add_argument("--si-grid-offset", type=float, default=22.5)
    report.add_argument("--handoff-delay", type=float, default=2.5)
    report.add_argument("--skip-first", action="store_true")
    report.set_defaults(func=_report)

    stats = commands.add_parser("stats", help="summarize a delay record CSV")
    stats.add_argument("--in", required=True, help="delay record CSV")
    stats.add_argument("--expected", type=int, help="how many frames were sent")
    stats.add_argument("--skip-first", action="store_true")
    stats.set_defaults(func=_stats)

    dump = commands.add_parser("hexdump", help="describe a frame field by field")
    dump.add_argument("--in", help="a binary frame, or a .hex text file")
    dump.add_argument("--hex", help="the frame as hex digits")
    dump.set_defaults(func=_hexdump)

    return parser


def main(argv=None):
    """
    Run the command line.

    Parameters
    ----------
    argv : list, optional
        The arguments (by default, from `sys.argv`).

    Returns
    -------
    code : int
        0 for success, 1 for usage errors, 2 for runtime errors.
    """
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("Please choose a subcommand (try --help).")
        return args.func(args)
    except (UsageError, ConfigurationError) as e:
        print(f"📡 usage error: {textwrap.dedent(str(e)).strip()}", file=sys.stderr)
        return 1
    except (PMULinkError, OSError) as e:
        print(f"📡 error: {textwrap.dedent(str(e)).strip()}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
