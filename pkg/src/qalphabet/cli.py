"""Command-line interface.

Single results are emitted as JSON records (or a one-row CSV); sweeps are
emitted as CSV with one row per grid point, in grid order. Floats carry 12
significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import secrets
import sys

from . import __version__
from .amplitude import SearchSpec, measure, run_grover, success_probability
from .assembly import AssemblyConfig, alphabet_scorecard, simulate_assembly, trial_stream
from .decoherence import DecoherenceParams, noisy_grover
from .errors import QAlphabetError
from .queries import (
    boolean_capacity,
    comparison_table,
    minimal_queries,
    optimal_database_size,
    residual_error,
)

SIG_DIGITS = 12
PROG = "qalphabet"

# axis name -> (cli dest, integer-valued)
AXES = {
    "database_size": ("n", True),
    "queries": ("q", True),
    "dephasing_rate": ("gamma", False),
    "chain_length": ("length", True),
}
SWEEPABLE = {
    "solve": {"queries"},
    "grover": {"database_size", "queries"},
    "decohere": {"database_size", "queries", "dephasing_rate"},
    "assemble": {"database_size", "queries", "chain_length"},
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _num(x):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return None
        return float(f"{x:.{SIG_DIGITS}g}")
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    return x


def _fmt_cell(x) -> str:
    if isinstance(x, float):
        return f"{x:.{SIG_DIGITS}g}"
    return str(x)


def _require(cond, message):
    if not cond:
        raise UsageError(message)


# --------------------------------------------------------------------------
# commands: each returns (parameters, results, seed-or-None)


def run_solve(args):
    _require(args.q is not None and args.q >= 1, "solve: --q must be an integer >= 1")
    q = args.q
    n_opt = optimal_database_size(q)
    lo, hi = math.floor(n_opt + 1e-12), math.ceil(n_opt - 1e-12)
    results = {
        "n_optimal": n_opt,
        "boolean": boolean_capacity(q),
        "n_floor": lo,
        "n_ceiling": hi,
        "residual_at_floor": residual_error(lo, q),
        "residual_at_ceiling": residual_error(hi, q),
        "minimal_queries_at_ceiling": minimal_queries(hi),
    }
    return {"queries": q}, results, None


def run_grover_cmd(args):
    _require(args.n is not None and args.n >= 2, "grover: --n must be an integer >= 2")
    _require(args.q is not None and args.q >= 0, "grover: --q must be an integer >= 0")
    target = args.target if args.target is not None else 0
    _require(0 <= target < args.n, f"grover: --target must lie in [0, {args.n})")
    spec = SearchSpec(args.n, target)
    state = run_grover(spec, args.q)
    p = success_probability(state, spec)
    params = {"database_size": args.n, "queries": args.q, "target": target}
    results = {"success_probability": p, "residual_error": residual_error(args.n, args.q)}
    if args.emit_state:
        results["amplitudes"] = [float(a.real) for a in state.amplitudes]
    seed = None
    shots = getattr(args, "shots", 0) or 0
    if shots:
        seed = _seed(args)
        params["shots"] = shots
        picks = measure(state, trial_stream(seed, 0), shots)
        hits = int((picks == target).sum())
        results["shots_on_target"] = hits
        results["empirical_success"] = hits / shots
    return params, results, seed


def run_decohere(args):
    _require(args.n is not None and args.n >= 2, "decohere: --n must be an integer >= 2")
    _require(args.q is not None and args.q >= 0, "decohere: --q must be an integer >= 0")
    _require(args.gamma is not None and args.gamma >= 0, "decohere: --gamma must be >= 0")
    p_noisy = noisy_grover(args.n, args.q, DecoherenceParams(args.gamma))
    p_ideal = noisy_grover(args.n, args.q, DecoherenceParams(0.0))
    params = {"database_size": args.n, "queries": args.q, "dephasing_rate": args.gamma}
    results = {"success_probability": p_noisy, "ideal_success_probability": p_ideal, "degradation": p_ideal - p_noisy}
    return params, results, None


def run_assemble(args):
    for flag, lo in (("n", 2), ("q", 1), ("length", 1), ("trials", 1)):
        v = getattr(args, flag)
        _require(v is not None and v >= lo, f"assemble: --{flag} must be an integer >= {lo}")
    seed = _seed(args)
    config = AssemblyConfig(args.n, args.q, args.length, args.trials, seed)
    report = simulate_assembly(config, mode=args.mode)
    params = {
        "alphabet_size": args.n,
        "queries": args.q,
        "chain_length": args.length,
        "trials": args.trials,
        "mode": args.mode,
    }
    return params, report.to_dict(), seed


def run_table(args):
    _require(args.max_q is not None and args.max_q >= 1, "table: --max-q must be an integer >= 1")
    rows = [vars(r) for r in comparison_table(args.max_q)]
    return {"max_queries": args.max_q}, {"rows": rows}, None


def run_scorecard(args):
    _require(args.length >= 1, "scorecard: --length must be an integer >= 1")
    rows = [vars(r) for r in alphabet_scorecard(args.length)]
    return {"chain_length": args.length}, {"rows": rows}, None


COMMANDS = {
    "solve": run_solve,
    "grover": run_grover_cmd,
    "decohere": run_decohere,
    "assemble": run_assemble,
    "table": run_table,
    "scorecard": run_scorecard,
}


def _seed(args) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(64)
    _require(0 <= args.seed < 2**64, "--seed must be an unsigned 64-bit integer")
    return args.seed


def grid_values(start: float, stop: float, step: float, integer: bool) -> list:
    _require(step > 0, "sweep: --step must be > 0")
    _require(start <= stop, "sweep: empty grid (start > stop)")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    values = [start + i * step for i in range(count)]
    if integer:
        _require(
            all(abs(v - round(v)) < 1e-9 for v in values), "sweep: this axis takes integer values"
        )
        return [int(round(v)) for v in values]
    return [float(f"{v:.{SIG_DIGITS}g}") for v in values]


def run_sweep(args):
    target = args.command_name
    _require(
        args.axis in SWEEPABLE[target], f"sweep: axis {args.axis!r} does not apply to {target!r}"
    )
    dest, integer = AXES[args.axis]
    values = grid_values(args.start, args.stop, args.step, integer)
    if target == "assemble":
        _seed(args)
    header = None
    rows = []
    for v in values:
        ns = argparse.Namespace(**vars(args))
        setattr(ns, dest, v)
        params, results, _ = COMMANDS[target](ns)
        flat = {**params, **{k: r for k, r in results.items() if not isinstance(r, (dict, list))}}
        if target == "assemble":
            flat["seed"] = args.seed
        if header is None:
            header = list(flat)
        rows.append(flat)
    params = {
        "target_command": target,
        "axis": args.axis,
        "start": args.start,
        "stop": args.stop,
        "step": args.step,
    }
    return params, {"columns": header, "rows": rows}, (args.seed if target == "assemble" else None)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--seed", type=int, default=None, help="unsigned 64-bit seed for stochastic commands")
    common.add_argument("--out", default=None, help="output path (default: standard output)")

    p = _Parser(prog=PROG, description="Grover search, query optimality and alphabet assembly.")
    p.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", parents=[common], help="optimal database size for Q queries")
    s.add_argument("--q", type=int, required=True)

    g = sub.add_parser("grover", parents=[common], help="state-vector Grover search")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--target", type=int, default=0)
    g.add_argument("--emit-state", action="store_true")
    g.add_argument("--shots", type=int, default=0, help="sample this many measurements (stochastic)")

    d = sub.add_parser("decohere", parents=[common], help="Grover success under dephasing")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--q", type=int, required=True)
    d.add_argument("--gamma", type=float, required=True)

    a = sub.add_parser("assemble", parents=[common], help="Monte Carlo chain assembly")
    _assemble_flags(a, required=True)

    t = sub.add_parser("table", parents=[common], help="quantum vs Boolean capacity table")
    t.add_argument("--max-q", type=int, default=5)

    c = sub.add_parser("scorecard", parents=[common], help="error and fidelity for 4/10/20/21 letters")
    c.add_argument("--length", type=int, default=1000)

    w = sub.add_parser("sweep", parents=[common], help="CSV sweep of one parameter")
    w.add_argument("--command", dest="command_name", choices=sorted(SWEEPABLE), required=True)
    w.add_argument("--axis", choices=sorted(AXES), required=True)
    w.add_argument("--start", type=float, required=True)
    w.add_argument("--stop", type=float, required=True)
    w.add_argument("--step", type=float, required=True)
    w.add_argument("--n", type=int)
    w.add_argument("--q", type=int)
    w.add_argument("--gamma", type=float, default=0.0)
    w.add_argument("--target", type=int, default=0)
    w.add_argument("--shots", type=int, default=0)
    _assemble_flags(w, required=False)
    w.set_defaults(emit_state=False)
    return p


def _assemble_flags(p, required):
    if required:
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
    p.add_argument("--length", type=int, required=required)
    p.add_argument("--trials", type=int, required=required)
    p.add_argument("--mode", choices=("closed_form", "state_vector"), default="closed_form")


def make_record(command, params, results, seed) -> dict:
    record = {"command": command, "version": __version__, "parameters": params, "results": results}
    if seed is not None:
        record["seed"] = seed
    return _num(record)


def render(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    results = record["results"]
    if "rows" in results:
        rows = results["rows"]
        header = results.get("columns") or (list(rows[0]) if rows else [])
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt_cell(row[h]) for h in header])
        return buf.getvalue()
    flat = {"command": record["command"], **record["parameters"]}
    flat.update({k: v for k, v in results.items() if not isinstance(v, (dict, list))})
    if "seed" in record:
        flat["seed"] = record["seed"]
    writer.writerow(list(flat))
    writer.writerow([_fmt_cell(v) for v in flat.values()])
    return buf.getvalue()


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        handler = run_sweep if args.command == "sweep" else COMMANDS[args.command]
        params, results, seed = handler(args)
        fmt = args.format or ("csv" if args.command == "sweep" else "json")
        text = render(make_record(args.command, params, results, seed), fmt)
    except (UsageError, QAlphabetError) as exc:
        print(f"{PROG}: error: {' '.join(str(exc).split())}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0
