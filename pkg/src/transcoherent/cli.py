"""
Command-line entry point.

    transcoherent fig {1..5}     figure data as CSV or JSON
    transcoherent verify         invariant suite, exit 1 on any failure
    transcoherent state ...      dump a constructed field state as JSON
    transcoherent catalyze ...   run a catalysis trace (CSV + JSON)

Times are always in units of 1/W0.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass

from . import figures
from .analysis import SweepTable
from .catalysis import CatalysisTrace, compare_catalysts, run_catalysis
from .fock import make_coherent, mean_photon
from .jcm import JcmParams
from .pulses import PulseSpec, build, build_truncated, ground_state_for_mean
from .verify import DEFAULT_TOL, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    omega_ratio: float = 0.0
    tol: float = DEFAULT_TOL
    out: str = "."
    fmt: str = "csv"

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")

    @property
    def params(self):
        return JcmParams.from_ratio(self.omega_ratio)


def _write_dict_csv(path, data):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["parameter", "value"])
        for k, v in data.items():
            w.writerow([k, f"{v:.17g}"])


def write_outputs(items, prefix, cfg):
    """Write ``(name, table | trace | dict)`` pairs; returns the paths written."""
    os.makedirs(cfg.out, exist_ok=True)
    paths = []
    for name, obj in items:
        path = os.path.join(cfg.out, f"{prefix}_{name}.{cfg.fmt}")
        if isinstance(obj, dict):
            if cfg.fmt == "csv":
                _write_dict_csv(path, obj)
            else:
                with open(path, "w") as fh:
                    json.dump(obj, fh, indent=1)
        elif cfg.fmt == "csv":
            obj.write_csv(path)
        else:
            obj.write_json(path)
        paths.append(path)
    return paths


def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    p.add_argument("--omega-ratio", type=float, default=0.0, help="w / W0")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="verification tolerance")
    return p


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="transcoherent", description=__doc__.split("\n")[1])
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("fig", parents=[common], help="write figure data")
    fig.add_argument("id", type=int, choices=sorted(figures.FIGURES))
    fig.add_argument("--grid", type=int, default=None,
                     help="sweep points (fig 3) or time-search grid points (figs 4, 5)")
    fig.add_argument("--nbar", type=float, action="append", help="fig 5 mean photon numbers")

    sub.add_parser("verify", parents=[common], help="run the invariant suite")

    st = sub.add_parser("state", parents=[common], help="dump a field state as JSON")
    which = st.add_mutually_exclusive_group()
    which.add_argument("--ground", action="store_true", help="ground-start recursion (default)")
    which.add_argument("--excited", action="store_true", help="excited-start recursion")
    st.add_argument("--nmax", type=int)
    st.add_argument("--nmin", type=int)
    st.add_argument("--k", type=int, default=0)
    st.add_argument("--time", type=float, help="truncated ground-start state for W0 t")

    cat = sub.add_parser("catalyze", parents=[common], help="run a catalysis trace")
    start = cat.add_mutually_exclusive_group(required=True)
    start.add_argument("--nbar", type=float, help="transcoherent start closest to this mean")
    start.add_argument("--nmax", type=int, help="k = 0 ground-start state with this n_max")
    cat.add_argument("--events", type=int, required=True)
    cat.add_argument("--coherent", action="store_true", help="use the mean-matched coherent state")
    cat.add_argument("--compare", action="store_true", help="run both catalysts side by side")
    cat.add_argument("--grid", type=int, default=512)
    return parser


def cmd_fig(args, cfg, parser):
    kwargs = {"params": cfg.params}
    if args.grid is not None:
        if args.grid < 3:
            parser.error("--grid must be at least 3")
        kwargs["grid_points"] = args.grid
    if args.id == 5 and args.nbar:
        kwargs["nbars"] = tuple(args.nbar)
    if args.id in (1, 2):
        kwargs.pop("grid_points", None)
    items = figures.FIGURES[args.id](**kwargs)
    for path in write_outputs(items, f"fig{args.id}", cfg):
        print(path)
    return EXIT_OK


def cmd_verify(args, cfg, parser):
    results = run_checks(cfg.tol)
    report = {
        "tolerance": cfg.tol,
        "passed": all(r.passed for r in results),
        "checks": [r.to_dict() for r in results],
    }
    os.makedirs(cfg.out, exist_ok=True)
    with open(os.path.join(cfg.out, "verify_report.json"), "w") as fh:
        json.dump(report, fh, indent=1)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} error={r.error:.3e} threshold={r.threshold:.1e}")
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_state(args, cfg, parser):
    params = cfg.params
    try:
        if args.time is not None:
            if args.excited:
                parser.error("--time builds a ground-start truncated state")
            state = build_truncated(args.time / params.omega0, params)
            meta = {"spec": "truncated", "t": args.time / params.omega0, "k": 0,
                    "n_min": 0, "n_max": state.n_cut}
        else:
            if args.excited:
                if args.nmin is None:
                    parser.error("--excited needs --nmin")
                spec = PulseSpec.excited(args.nmin, args.nmax, k=args.k, params=params)
            else:
                spec = PulseSpec.ground(args.nmax, k=args.k, n_min=args.nmin, params=params)
            state = build(spec)
            meta = {"spec": spec.start, "t": spec.t, "k": spec.k,
                    "n_min": spec.n_min, "n_max": spec.n_max}
    except ValueError as exc:
        parser.error(str(exc))
    data = state.to_dict()
    data["metadata"] = dict(meta, omega_ratio=params.omega_ratio)
    text = json.dumps(data, indent=1)
    if args.out == ".":
        print(text)
    else:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, "state.json")
        with open(path, "w") as fh:
            fh.write(text + "\n")
        print(path)
    return EXIT_OK


def _write_trace(trace, name, cfg):
    os.makedirs(cfg.out, exist_ok=True)
    base = os.path.join(cfg.out, name)
    trace.write_csv(base + ".csv")
    trace.write_json(base + ".json")
    last = trace.events[-1] if trace.events else None
    cum = last.p_cumulative if last else float("nan")
    print(f"{name}: nbar={trace.initial_mean:.6g} events={len(trace.events)}"
          f" cumulative={cum:.10g}{' (terminated)' if trace.terminated else ''}")


def cmd_catalyze(args, cfg, parser):
    params = cfg.params
    if args.events < 1:
        parser.error("--events must be positive")
    try:
        if args.nbar is not None:
            _, trans = ground_state_for_mean(args.nbar, params)
        else:
            trans = build(PulseSpec.ground(args.nmax, params=params))
    except ValueError as exc:
        parser.error(str(exc))
    coh = make_coherent(math.sqrt(mean_photon(trans)))
    if args.compare:
        a, b = compare_catalysts(trans, coh, args.events, params, grid_points=args.grid)
        _write_trace(a, "catalysis_transcoherent", cfg)
        _write_trace(b, "catalysis_coherent", cfg)
    else:
        field = coh if args.coherent else trans
        name = "catalysis_coherent" if args.coherent else "catalysis_transcoherent"
        _write_trace(run_catalysis(field, args.events, params, grid_points=args.grid), name, cfg)
    return EXIT_OK


COMMANDS = {"fig": cmd_fig, "verify": cmd_verify, "state": cmd_state, "catalyze": cmd_catalyze}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.omega_ratio, args.tol, args.out, args.fmt)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return COMMANDS[args.command](args, cfg, parser)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
