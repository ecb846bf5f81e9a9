"""Command-line driver.

    urnwalk exact return-prob --scheme polya -w 1 -b 1 --max-n 3 --format csv
    urnwalk simulate hitting --scheme friedman -w 1 -b 0 --seed 42 --format json
    urnwalk diagnose recurrence --scheme friedman -d 2 -w 1 -b 0
    urnwalk transform rotate2d path.txt

Every run produces a manifest (resolved configuration, seed, version,
timestamp and the normalised argv).  It is kept out of the data so that a
replay is byte-identical: output written with ``--out`` gets a
``<out>.manifest.json`` sidecar, and output on stdout sends the manifest to
stderr.  ``--replay MANIFEST`` re-executes the recorded argv.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .exact import (
    SeriesError,
    eulerian_row,
    recurrence_diagnostic,
    series_partial_sums,
)
from .montecarlo import DEFAULT_CAP, SimConfig, empirical_return_frequency, run_replications
from .urn import UrnError, UrnScheme, validate_start
from .walk import TrajectoryError, map_to_simple_2d


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integer or comma-separated integers, got {text!r}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}")


def _add_urn_flags(p: argparse.ArgumentParser, default_dims: int = 1) -> None:
    p.add_argument("--scheme", default="polya", choices=["bernoulli", "polya", "friedman"])
    p.add_argument("--white", "-w", type=_int_list, default=[1],
                   help="initial white balls (comma-separated per dimension)")
    p.add_argument("--blue", "-b", type=_int_list, default=[1],
                   help="initial blue balls (comma-separated per dimension)")
    p.add_argument("--dims", "-d", type=int, default=default_dims)
    p.add_argument("--prob", type=_fraction, default=Fraction(1, 2),
                   help="white probability of the bernoulli scheme")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", type=Path, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="urnwalk", description="Urn-driven random walks.")
    parser.add_argument("--version", action="version", version=f"urnwalk {__version__}")
    parser.add_argument("--replay", type=Path, metavar="MANIFEST",
                        help="re-run the command recorded in a manifest")
    sub = parser.add_subparsers(dest="command")

    exact = sub.add_parser("exact", help="exact probability tables")
    exact.add_argument("table", choices=["return-prob", "hitting-pmf", "eulerian", "series"])
    _add_urn_flags(exact)
    exact.add_argument("--max-n", type=int, default=10,
                       help="last half-time n (row index for eulerian)")
    exact.add_argument("--kind", default="return_series",
                       choices=["return_series", "hitting_mass", "expected_hitting"],
                       help="series kind for 'exact series'")
    exact.add_argument("--mode", choices=["exact", "log"], default="exact")
    exact.add_argument("--decimal-digits", type=int, default=None)
    _add_output_flags(exact)

    sim = sub.add_parser("simulate", help="Monte Carlo replications")
    sim.add_argument("target", choices=["hitting", "occupancy"])
    _add_urn_flags(sim)
    sim.add_argument("--replicas", type=int, default=10_000)
    sim.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sim.add_argument("--seed", type=int, default=None, help="required")
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--horizon", type=int, default=20, help="last time for occupancy")
    _add_output_flags(sim)

    diag = sub.add_parser("diagnose", help="recurrence diagnostics")
    diag.add_argument("target", choices=["recurrence"])
    _add_urn_flags(diag)
    diag.add_argument("--min-n", type=int, default=100)
    diag.add_argument("--max-n", type=int, default=10_000)
    diag.add_argument("--mode", choices=["log"], default="log")
    _add_output_flags(diag)

    tr = sub.add_parser("transform", help="path transforms")
    tr.add_argument("target", choices=["rotate2d"])
    tr.add_argument("path", help="path file ('-' for stdin): one 'x y' position per line")
    _add_output_flags(tr)
    return parser


# -- validation ------------------------------------------------------------------

def _resolve_urns(args) -> tuple[UrnScheme, list[tuple[int, int]]]:
    scheme = UrnScheme.parse(args.scheme, args.prob)
    d = args.dims
    if d < 1:
        raise UsageError(f"--dims must be positive, got {d}")
    ws, bs = args.white, args.blue
    if len(ws) == 1:
        ws = ws * d
    if len(bs) == 1:
        bs = bs * d
    if len(ws) != d or len(bs) != d:
        raise UsageError(f"--white/--blue need 1 or {d} values")
    starts = list(zip(ws, bs))
    for w, b in starts:
        validate_start(scheme, w, b)
    return scheme, starts


def _validate(args) -> None:
    if args.command == "exact":
        if args.max_n < 1:
            raise UsageError("--max-n must be positive")
        if args.decimal_digits is not None and args.decimal_digits < 1:
            raise UsageError("--decimal-digits must be positive")
        kind = {"return-prob": "return_series", "hitting-pmf": "hitting_mass"}.get(
            args.table, args.kind)
        if args.table != "eulerian" and kind != "return_series" and args.dims != 1:
            raise UsageError(f"{kind} tables are one-dimensional; drop --dims")
    elif args.command == "simulate":
        if args.seed is None:
            raise UsageError("simulate requires --seed")
        if args.replicas < 1:
            raise UsageError("--replicas must be positive")
        if args.cap < 2:
            raise UsageError("--cap must be at least 2")
        if args.workers < 1:
            raise UsageError("--workers must be at least 1")
        if args.target == "occupancy" and not 2 <= args.horizon <= args.cap:
            raise UsageError("--horizon must lie in [2, cap]")
    elif args.command == "diagnose":
        if not 1 <= args.min_n < args.max_n:
            raise UsageError("need 1 <= --min-n < --max-n")


# -- output ----------------------------------------------------------------------

def _manifest(argv: list[str], config: dict) -> dict:
    return {
        "tool": "urnwalk",
        "version": __version__,
        "argv": argv,
        "config": config,
        "seed": config.get("seed"),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(str(v) for v in row) + "\n")
    return buf.getvalue()


def _emit(args, manifest: dict, csv_text: str, payload: dict, stdout, stderr) -> None:
    text = json.dumps(payload, indent=2) + "\n" if args.format == "json" else csv_text
    if args.out is not None:
        args.out.write_text(text)
        sidecar = args.out.with_name(args.out.name + ".manifest.json")
        sidecar.write_text(json.dumps(manifest, indent=2) + "\n")
    else:
        stdout.write(text)
        stderr.write("manifest: " + json.dumps(manifest) + "\n")


# -- subcommands -----------------------------------------------------------------

def _run_exact(args):
    scheme, starts = _resolve_urns(args)
    config = {"command": "exact", "table": args.table, "scheme": scheme.name,
              "p": str(scheme.p), "dims": args.dims, "starts": [list(s) for s in starts],
              "max_n": args.max_n, "mode": args.mode, "decimal_digits": args.decimal_digits}
    if args.table == "eulerian":
        row = eulerian_row(args.max_n)
        records = [{"n": args.max_n, "k": k, "count": str(v)} for k, v in enumerate(row)]
        csv_text = _csv_text(["n", "k", "count"], [(r["n"], r["k"], r["count"]) for r in records])
        return config, csv_text, {"table": "eulerian", "rows": records}
    kind = {"return-prob": "return_series", "hitting-pmf": "hitting_mass"}.get(
        args.table, args.kind)
    table = series_partial_sums(kind, scheme, starts, args.dims, args.max_n, args.mode)
    records = table.records(args.decimal_digits)
    csv_text = _csv_text(["n", "term", "partial_sum"],
                         [(r["n"], r["term"], r["partial_sum"]) for r in records])
    return config, csv_text, {"kind": table.kind, "mode": table.mode, "rows": records}


def _run_simulate(args):
    scheme, starts = _resolve_urns(args)
    cfg = SimConfig(scheme, args.dims, tuple(starts), args.replicas, args.cap, args.seed)
    config = {"command": "simulate", "target": args.target, **cfg.as_dict()}
    if args.target == "hitting":
        samples, stats = run_replications(cfg, workers=args.workers)
        csv_text = _csv_text(["replica", "outcome", "time"], samples)
        payload = {"stats": stats.as_dict(),
                   "pmf": {str(k): v for k, v in sorted(stats.pmf.items())}}
        return config, csv_text, payload
    config["horizon"] = args.horizon
    freq = empirical_return_frequency(cfg, args.horizon, workers=args.workers)
    csv_text = _csv_text(["time", "frequency"], [(t, repr(f)) for t, f in freq.items()])
    return config, csv_text, {"occupancy": {str(t): f for t, f in freq.items()}}


def _run_diagnose(args):
    scheme, starts = _resolve_urns(args)
    config = {"command": "diagnose", "scheme": scheme.name, "p": str(scheme.p),
              "dims": args.dims, "starts": [list(s) for s in starts],
              "min_n": args.min_n, "max_n": args.max_n, "mode": args.mode}
    table = series_partial_sums("return_series", scheme, starts, args.dims, args.max_n, "log")
    diag = recurrence_diagnostic(scheme, starts, args.dims, args.min_n, args.max_n, table=table)
    records = table.records()
    csv_text = _csv_text(["n", "term", "partial_sum"],
                         [(r["n"], r["term"], r["partial_sum"]) for r in records])
    return config, csv_text, {"diagnostic": diag.as_dict(), "rows": records}


def read_path(lines) -> list[tuple[int, int]]:
    points = []
    for lineno, line in enumerate(lines, 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        try:
            if len(parts) != 2:
                raise ValueError
            points.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise UsageError(f"line {lineno}: expected two space-separated integers, got {text!r}")
    return points


def _run_transform(args, stdin):
    if args.path == "-":
        lines = stdin.read().splitlines()
    else:
        try:
            lines = Path(args.path).read_text().splitlines()
        except OSError as exc:
            raise UsageError(f"cannot read {args.path}: {exc.strerror}")
    points = read_path(lines)
    try:
        mapped = map_to_simple_2d(points)
    except TrajectoryError as exc:
        raise UsageError(str(exc))
    config = {"command": "transform", "target": args.target, "path": args.path}
    csv_text = _csv_text(["x", "y"], mapped)
    return config, csv_text, {"path": [list(p) for p in mapped]}


def run_command(argv=None, stdout=None, stderr=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stdin = stdin or sys.stdin
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.replay is not None:
        try:
            recorded = json.loads(args.replay.read_text())["argv"]
        except (OSError, ValueError, KeyError) as exc:
            stderr.write(f"urnwalk: cannot read manifest {args.replay}: {exc}\n")
            return 2
        return run_command(recorded, stdout, stderr, stdin)
    if args.command is None:
        parser.print_usage(stderr)
        return 2

    runners = {"exact": _run_exact, "simulate": _run_simulate, "diagnose": _run_diagnose}
    try:
        _validate(args)
        if args.command == "transform":
            config, csv_text, payload = _run_transform(args, stdin)
        else:
            config, csv_text, payload = runners[args.command](args)
    except (UsageError, UrnError, SeriesError) as exc:
        stderr.write(f"urnwalk: error: {exc}\n")
        return 2
    _emit(args, _manifest(argv, config), csv_text, payload, stdout, stderr)
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
