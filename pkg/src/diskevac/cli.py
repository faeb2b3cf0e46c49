"""Command-line front end: machine-readable sweeps, constants, simulations.

Numbers are emitted with six decimal places and a '.' separator; re-running
a command with identical flags yields byte-identical output. Exit codes:
0 success, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import analysis, bounds
from ._optim import BracketError
from .geometry import TWO_PI, explored_arcs
from .strategies import (ConstructionError, InfeasibleSystemError,
                         build_named, optimize_fast_chord)
from .worstcase import CoverageError, worst_case

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

SWEEP_COLUMNS = [
    "s", "ub_bsp", "ub_half_chord", "ub_fast_chord", "lb_fes",
    "lb_bes_original", "lb_bes_improved", "lb_bes_antipodal",
    "lb_overall", "ub_overall", "ratio", "best_strategy",
]


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


def _max_workers() -> int:
    raw = os.environ.get("EVAC_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return max(1, n) if n > 0 else min(4, os.cpu_count() or 1)


@dataclass(frozen=True)
class SweepRow:
    """One line of the bound-comparison table at a fixed speed."""

    s: float
    ub_bsp: float | None
    ub_half_chord: float
    ub_fast_chord: float | None
    lb_fes: float
    lb_bes_original: float | None
    lb_bes_improved: float | None
    lb_bes_antipodal: float | None
    lb_overall: float
    ub_overall: float
    ratio: float
    best_strategy: str

    def as_record(self) -> dict[str, str]:
        return {
            "s": _fmt(self.s),
            "ub_bsp": _fmt(self.ub_bsp),
            "ub_half_chord": _fmt(self.ub_half_chord),
            "ub_fast_chord": _fmt(self.ub_fast_chord),
            "lb_fes": _fmt(self.lb_fes),
            "lb_bes_original": _fmt(self.lb_bes_original),
            "lb_bes_improved": _fmt(self.lb_bes_improved),
            "lb_bes_antipodal": _fmt(self.lb_bes_antipodal),
            "lb_overall": _fmt(self.lb_overall),
            "ub_overall": _fmt(self.ub_overall),
            "ratio": _fmt(self.ratio),
            "best_strategy": self.best_strategy,
        }


def compute_sweep_row(s: float, cache: analysis.FastChordCache) -> SweepRow:
    in_bes_domain = s < bounds.S_SUP - 1e-12
    fc = cache.value(s)
    ub, label = analysis.ub_overall(s, cache)
    lb = analysis.lb_overall(s)
    return SweepRow(
        s=s,
        ub_bsp=bounds.ub_bsp(s) if s <= 2.0 else None,
        ub_half_chord=bounds.ub_half_chord(s),
        ub_fast_chord=fc if math.isfinite(fc) else None,
        lb_fes=bounds.lb_fes(s),
        lb_bes_original=bounds.lb_bes_original(s) if in_bes_domain else None,
        lb_bes_improved=(bounds.lb_bes_improved_value(s)
                         if in_bes_domain else None),
        lb_bes_antipodal=(bounds.lb_bes_antipodal(s)
                          if s > math.pi + 1.0 else None),
        lb_overall=lb,
        ub_overall=ub,
        ratio=ub / lb,
        best_strategy=label,
    )


def sweep_rows(s_min: float, s_max: float, s_step: float,
               cache: analysis.FastChordCache) -> list[SweepRow]:
    n = int(round((s_max - s_min) / s_step))
    grid = [min(s_min + i * s_step, s_max) for i in range(n + 1)]
    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        return list(pool.map(lambda s: compute_sweep_row(s, cache), grid))


def emit_rows_csv(rows: list[SweepRow], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=SWEEP_COLUMNS)
    writer.writeheader()
    for row in rows:
        writer.writerow(row.as_record())


def emit_rows_json(rows: list[SweepRow], stream) -> None:
    json.dump({"rows": [row.as_record() for row in rows]}, stream, indent=2)
    stream.write("\n")


def parse_rows_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def _open_output(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def cmd_sweep(args: argparse.Namespace) -> int:
    if not (1.0 <= args.s_min < args.s_max <= TWO_PI + 1.0):
        print("error: need 1 <= s-min < s-max <= 2*pi + 1", file=sys.stderr)
        return EXIT_USAGE
    if args.s_step <= 0.0:
        print("error: s-step must be positive", file=sys.stderr)
        return EXIT_USAGE
    cache = analysis.FastChordCache(args.fc_s_step, args.x3_step,
                                    args.time_step)
    rows = sweep_rows(args.s_min, min(args.s_max, bounds.S_SUP - 1e-9),
                      args.s_step, cache)
    stream, close = _open_output(args.output)
    try:
        if args.format == "csv":
            emit_rows_csv(rows, stream)
        else:
            emit_rows_json(rows, stream)
    finally:
        if close:
            stream.close()
    return EXIT_OK


def constants_payload(cache: analysis.FastChordCache) -> dict:
    consts = analysis.compute_constants(cache)
    return {
        name: {
            "value": _fmt(res.s_star),
            "residual": f"{res.residual:.3e}",
            "bracket": [_fmt(res.bracket[0]), _fmt(res.bracket[1])],
        }
        for name, res in consts.items()
    }


def cmd_constants(args: argparse.Namespace) -> int:
    cache = analysis.FastChordCache(args.fc_s_step, args.x3_step,
                                    args.time_step)
    payload = constants_payload(cache)
    stream, close = _open_output(args.output)
    try:
        if args.format == "csv":
            writer = csv.writer(stream)
            writer.writerow(["name", "value", "residual",
                             "bracket_lo", "bracket_hi"])
            for name, rec in payload.items():
                writer.writerow([name, rec["value"], rec["residual"],
                                 rec["bracket"][0], rec["bracket"][1]])
        else:
            json.dump(payload, stream, indent=2)
            stream.write("\n")
    finally:
        if close:
            stream.close()
    return EXIT_OK


def _write_trace(strategy, path: str, step: float) -> None:
    duration = max(strategy.fast.duration, strategy.slow.duration)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "fast_x", "fast_y", "slow_x", "slow_y",
                         "explored_fraction"])
        n = int(duration / step) + 1
        times = [min(i * step, duration) for i in range(n)]
        if times[-1] < duration:
            times.append(duration)
        for t in times:
            pf = strategy.fast.position_at(t)
            ps = strategy.slow.position_at(t)
            frac = explored_arcs(strategy.fast, t).union(
                explored_arcs(strategy.slow, t)).total_length / TWO_PI
            writer.writerow([_fmt(t), _fmt(pf.x), _fmt(pf.y),
                             _fmt(ps.x), _fmt(ps.y), _fmt(frac)])


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.strategy == "fast-chord" and args.x3 is None:
        best = optimize_fast_chord(args.s, args.x3_step, args.time_step)
        strategy = build_named("fast-chord", args.s, best.x3_star)
    else:
        strategy = build_named(args.strategy, args.s, args.x3)
    wc = worst_case(strategy, grid_step=args.grid_step)
    print(f"strategy: {strategy.label}")
    print(f"s: {_fmt(args.s)}")
    print(f"worst_exit_angle: {_fmt(wc.exit_angle)}")
    print(f"discovery_time: {_fmt(wc.discovery_time)}")
    print(f"finder: {wc.finder}")
    print(f"evac_time: {_fmt(wc.evac_time)}")
    if args.trace:
        _write_trace(strategy, args.trace, args.trace_step)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diskevac",
        description="Two-robot wireless disk evacuation: bounds, sweeps, "
                    "and adversarial simulation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_numeric_opts(p):
        p.add_argument("--x3-step", type=float, default=1e-2)
        p.add_argument("--time-step", type=float, default=1e-2)
        p.add_argument("--fc-s-step", type=float, default=2e-2,
                       help="s-grid step for the cached fast-chord curve")

    p_sweep = sub.add_parser("sweep", help="emit the bound-comparison table")
    p_sweep.add_argument("--s-min", type=float, required=True)
    p_sweep.add_argument("--s-max", type=float, required=True)
    p_sweep.add_argument("--s-step", type=float, default=1e-2)
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.add_argument("--output", default=None)
    add_numeric_opts(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_const = sub.add_parser("constants", help="locate crossover speeds")
    p_const.add_argument("--format", choices=["json", "csv"], default="json")
    p_const.add_argument("--output", default=None)
    add_numeric_opts(p_const)
    p_const.set_defaults(func=cmd_constants)

    p_sim = sub.add_parser("simulate",
                           help="adversarial worst case of one strategy")
    p_sim.add_argument("strategy", choices=["bsp", "half-chord", "fast-chord"])
    p_sim.add_argument("--s", type=float, required=True)
    p_sim.add_argument("--x3", type=float, default=None,
                       help="fast-chord residual arc (default: optimized)")
    p_sim.add_argument("--grid-step", type=float, default=TWO_PI / 1e4)
    p_sim.add_argument("--trace", default=None,
                       help="write a (t, positions, explored) CSV here")
    p_sim.add_argument("--trace-step", type=float, default=1e-2)
    add_numeric_opts(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InfeasibleSystemError, ConstructionError, CoverageError,
            BracketError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
