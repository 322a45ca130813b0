"""Command-line front end.

Exit codes: 0 success, 1 bad input file or data, 2 bad arguments.  The
global ``--threads`` flag only changes how experiment trials are chunked
across worker processes; outputs are byte-identical for any value.
"""

import argparse
import os
import sys
from pathlib import Path

from . import experiments, fileio
from .core import canonicalize, cycle_output_bits, efficiency_ratio
from .gluing import GlueSlot, glue, random_slot
from .sampler import RngStream, derive_seed, sample_bnm
from .search import AcceptRule, Bag, evaluate, hill_climb, run_random_search, run_recombination


def _csv_ints(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8", newline="\n")


def _say(args, message: str) -> None:
    if not args.quiet:
        print(message)


def _fail_args(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _load_machines(path: str) -> list:
    """Machines from a machine file or a bag file (entry order)."""
    text = Path(path).read_text(encoding="utf-8")
    doc = fileio._loads(text, "input file")
    if isinstance(doc, dict) and "entries" in doc:
        return [e.machine for e in fileio.parse_bag(text, strict=False)]
    return [fileio.parse_bnm(text)]


def _cmd_gen(args) -> int:
    bag = Bag()
    for t in range(args.count):
        machine = sample_bnm(args.size, RngStream(derive_seed(args.seed, t)))
        bag.add(evaluate(machine, trial=t))
    _write(Path(args.out), fileio.serialize_bag(bag))
    _say(args, f"wrote {len(bag)} distinct machines (of {args.count} sampled) to {args.out}")
    return 0


def _cmd_run(args) -> int:
    machines = _load_machines(args.infile)
    if not 0 <= args.machine < len(machines):
        return _fail_args(f"--machine {args.machine} out of range (file has {len(machines)})")
    machine = machines[args.machine]
    summary, raw = cycle_output_bits(machine)
    out = canonicalize(raw)
    print(f"size: {machine.size}")
    print(f"transient: {summary.transient_len}")
    print(f"cycle: {summary.cycle_len}")
    print(f"output: {out}")
    print(f"out_len: {len(out)}")
    print(f"ratio: {efficiency_ratio(machine.size, len(out)):.6f}")
    if args.raw_cycle:
        print(f"raw_output: {raw}")
        print(f"raw_len: {len(raw)}")
    return 0


def _cmd_canon(args) -> int:
    try:
        print(canonicalize(args.bits))
    except ValueError as err:
        return _fail_args(str(err))
    return 0


def _cmd_glue(args) -> int:
    feeder = _load_machines(args.a)[0]
    receiver = _load_machines(args.b)[0]
    if args.slot is not None:
        node, sep, port = args.slot.partition(":")
        try:
            slot = GlueSlot(int(node), int(port))
        except ValueError:
            return _fail_args(f"--slot must look like NODE:PORT, got {args.slot!r}")
    else:
        slot = random_slot(receiver, RngStream(args.seed))
    try:
        glued = glue(feeder, receiver, slot)
    except ValueError as err:
        return _fail_args(str(err))
    _write(Path(args.out), fileio.serialize_bnm(glued))
    _say(args, f"glued {feeder.size}+{receiver.size} -> size {glued.size}, "
               f"slot {slot.node}:{slot.port}, wrote {args.out}")
    return 0


def _cmd_search(args) -> int:
    rule = AcceptRule(min_ratio=args.min_ratio, max_size=args.max_size)
    if args.mode == "recombine":
        if args.bag is None:
            return _fail_args("--mode recombine requires --bag")
        initial = fileio.parse_bag(Path(args.bag).read_text(encoding="utf-8"))
        final, stats = run_recombination(initial, args.budget, rule, args.seed)
    elif args.mode == "random":
        if args.size is None:
            return _fail_args("--mode random requires --size")
        final, stats = run_random_search(args.size, args.budget, rule, args.seed)
    else:
        if args.size is None:
            return _fail_args("--mode hillclimb requires --size")
        start = sample_bnm(args.size, RngStream(derive_seed(args.seed, 0)))
        best, trajectory = hill_climb(start, args.budget, RngStream(derive_seed(args.seed, 1)))
        final = Bag([best])
        _write(Path(args.out), fileio.serialize_bag(final))
        _say(args, f"hill climb: out_len {trajectory[0]} -> {trajectory[-1]} "
                   f"in {len(trajectory) - 1} moves; best ratio {best.ratio:.4f}")
        return 0
    _write(Path(args.out), fileio.serialize_bag(final))
    best = final.best()
    best_note = f"; best ratio {best.ratio:.4f}" if best else ""
    _say(args, f"{args.mode}: {stats.trials} trials, {stats.n_accepted} accepted, "
               f"bag size {len(final)}{best_note}; wrote {args.out}")
    return 0


def _report_lines(report) -> list[str]:
    lines = []
    for name in report.histograms:
        slope = report.loglog_slope[name]
        slope_note = f"{slope:.3f}" if slope is not None else "n/a"
        lines.append(f"{name}: mean out_len {report.means[name]:.3f}, "
                     f"tail>={report.config['tail_threshold']} {report.tail_mass[name]:.5f}, "
                     f"log-log slope {slope_note}")
    return lines


def _emit_report(args, report, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, histogram in report.histograms.items():
        _write(out_dir / f"{name}.{args.format}", fileio.emit_histogram(histogram, args.format))
    _write(out_dir / "report.json", fileio.report_to_json(report))
    for line in _report_lines(report):
        _say(args, line)
    _say(args, f"wrote {out_dir}")


def _cmd_fig3(args) -> int:
    report = experiments.fig3(args.sizes, args.trials, args.seed,
                              tail_threshold=args.tail_threshold, threads=args.threads)
    _emit_report(args, report, Path(args.out))
    return 0


def _cmd_fig4(args) -> int:
    report = experiments.fig4(args.trials, args.seed, args.seed_bag_budget,
                              tail_threshold=args.tail_threshold, threads=args.threads)
    _emit_report(args, report, Path(args.out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker processes for experiment trials (never affects results)")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="suppress summary output")

    parser = argparse.ArgumentParser(
        prog="bnmlab",
        description="Boolean network machines: generate, run, glue, search, survey.")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker processes for experiment trials (never affects results)")
    parser.add_argument("--quiet", action="store_true", help="suppress summary output")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    gen = sub.add_parser("gen", parents=[common],
                         help="sample uniform random machines into a bag file")
    gen.add_argument("--size", type=int, required=True)
    gen.add_argument("--count", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=_cmd_gen)

    run = sub.add_parser("run", parents=[common],
                         help="simulate one machine and print its cycle and output")
    run.add_argument("--in", dest="infile", required=True,
                     help="machine file or bag file")
    run.add_argument("--machine", type=int, default=0,
                     help="entry index when the input is a bag (default 0)")
    run.add_argument("--raw-cycle", action="store_true",
                     help="also print the unreduced cycle-period output")
    run.set_defaults(func=_cmd_run)

    canon = sub.add_parser("canon", parents=[common],
                           help="canonical form of a bit string under rotation")
    canon.add_argument("--bits", required=True)
    canon.set_defaults(func=_cmd_canon)

    glue_p = sub.add_parser("glue", parents=[common],
                            help="wire machine A's output into one input port of machine B")
    glue_p.add_argument("--a", required=True, help="feeder machine (machine or bag file)")
    glue_p.add_argument("--b", required=True, help="receiver machine (machine or bag file)")
    slot_group = glue_p.add_mutually_exclusive_group(required=True)
    slot_group.add_argument("--slot", help="receiver input port as NODE:PORT")
    slot_group.add_argument("--seed", type=int, help="draw the port uniformly with this seed")
    glue_p.add_argument("--out", required=True)
    glue_p.set_defaults(func=_cmd_glue)

    search = sub.add_parser("search", parents=[common], help="fill a bag of good machines")
    search.add_argument("--mode", choices=("recombine", "random", "hillclimb"), required=True)
    search.add_argument("--size", type=int, help="machine size (random and hillclimb modes)")
    search.add_argument("--budget", type=int, required=True)
    search.add_argument("--seed", type=int, required=True)
    search.add_argument("--min-ratio", type=float, default=0.8)
    search.add_argument("--max-size", type=int, default=None)
    search.add_argument("--bag", help="initial bag file (recombine mode)")
    search.add_argument("--out", required=True)
    search.set_defaults(func=_cmd_search)

    experiment = sub.add_parser("experiment", parents=[common], help="preset ensemble studies")
    presets = experiment.add_subparsers(dest="preset", required=True, metavar="preset")

    fig3 = presets.add_parser("fig3", parents=[common],
                              help="output-length histograms of random machines, per size")
    fig3.add_argument("--sizes", type=_csv_ints, default=[3, 6, 9],
                      help="comma-separated machine sizes (default 3,6,9)")
    fig3.add_argument("--trials", type=int, required=True)
    fig3.add_argument("--seed", type=int, required=True)
    fig3.add_argument("--tail-threshold", type=int, default=16)
    fig3.add_argument("--format", choices=("csv", "json"), default="csv")
    fig3.add_argument("--out", required=True, help="output directory")
    fig3.set_defaults(func=_cmd_fig3)

    fig4 = presets.add_parser("fig4", parents=[common],
                              help="glued size-6 machines vs random size-6 machines")
    fig4.add_argument("--trials", type=int, required=True)
    fig4.add_argument("--seed-bag-budget", type=int, default=10_000)
    fig4.add_argument("--seed", type=int, required=True)
    fig4.add_argument("--tail-threshold", type=int, default=16)
    fig4.add_argument("--format", choices=("csv", "json"), default="csv")
    fig4.add_argument("--out", required=True, help="output directory")
    fig4.set_defaults(func=_cmd_fig4)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except fileio.FileFormatError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
