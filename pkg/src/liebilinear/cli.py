"""Command-line interface.

Subcommands read one JSON system document (a path, or ``-`` for stdin):

``analyze``   closure, single-point rank test and verdict
``graph``     connectivity criterion for edge-shorthand systems
``orbit``     orbit sample (CSV), rank constancy and local dimension
``simulate``  trajectory under a piecewise-constant schedule (CSV)

Exit codes: 0 controllable / success, 3 not controllable, 4 inconclusive,
1 usage error, 2 invalid input, 5 insufficient samples, 6 numerical
failure, 7 graph and rank criteria disagree.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
import time

from . import __version__
from .algebra import lie_closure
from .documents import (
    SCHEMA_VERSION,
    digest,
    dump_report,
    load_json,
    parse_schedule,
    parse_system,
)
from .errors import (
    AssumptionConflict,
    InputError,
    NumericalError,
    SamplingError,
    SaturationError,
)
from .graphcrit import components, fixed_points, is_connected
from .orbit import DEFAULT_HORIZON, orbit_dim_estimate, sample_orbit, verify_rank_constancy
from .rankcond import analyze, rank_at
from .sim import run

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_NOT_CONTROLLABLE = 3
EXIT_INCONCLUSIVE = 4
EXIT_SAMPLING = 5
EXIT_NUMERICAL = 6
EXIT_DISAGREE = 7

VERDICT_EXIT = {
    "controllable": EXIT_OK,
    "not_controllable": EXIT_NOT_CONTROLLABLE,
    "inconclusive": EXIT_INCONCLUSIVE,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path, stdin):
    if path == "-":
        return stdin.read(), "<stdin>"
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read(), path
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", path) from None


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_probe(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise InputError("probe must be comma-separated numbers", "--probe") from None


def _load_system(args, stdin):
    text, source = _read(args.document, stdin)
    raw = load_json(text, source)
    doc = parse_system(raw)
    if args.probe is not None:
        probe = _parse_probe(args.probe)
        if len(probe) != doc.gens.n:
            raise InputError(f"probe needs {doc.gens.n} coordinates", "--probe")
        doc.probe = probe
    if args.seed is not None:
        doc.seed = args.seed
    if args.tolerance is not None:
        doc.tolerance = args.tolerance
    return doc


def _envelope(command, doc, body, started):
    out = {
        "command": command,
        "input_digest": digest(doc.raw),
        "schema_version": SCHEMA_VERSION,
        "tool": "liebilinear",
        "version": __version__,
    }
    out.update(body)
    out["timing"] = {"elapsed_s": round(time.perf_counter() - started, 6)}
    return out


def _render_text(report):
    lines = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, list) and value and isinstance(value[0], str):
            lines.append(f"{key}:")
            lines.extend(f"  - {v}" for v in value)
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _emit(args, report, stdout):
    text = _render_text(report) if args.format == "text" else dump_report(report)
    if args.out:
        _write_atomic(args.out, text)
    else:
        stdout.write(text)


def cmd_analyze(args, stdin, stdout, stderr):
    started = time.perf_counter()
    doc = _load_system(args, stdin)
    report = analyze(doc.gens, probe=doc.probe, seed=doc.seed, tol=doc.tolerance)
    _emit(args, _envelope("analyze", doc, report.to_dict(), started), stdout)
    return VERDICT_EXIT[report.verdict]


def cmd_graph(args, stdin, stdout, stderr):
    started = time.perf_counter()
    doc = _load_system(args, stdin)
    if doc.edges is None:
        raise InputError("graph needs every generator given as an edge block", "controls")
    spec = doc.edges
    connected = is_connected(spec)
    body = {
        "n": spec.n,
        "edges": [list(e) for e in spec.all_edges()],
        "components": components(spec),
        "connected": connected,
        "fixed_points": [[float(c) for c in p.coords] for p in fixed_points(spec)],
        "criteria_used": ["graph_connectivity"],
        "verdict": "controllable" if connected else "not_controllable",
    }
    code = EXIT_OK if connected else EXIT_NOT_CONTROLLABLE
    if args.cross_check:
        rep = analyze(doc.gens, probe=doc.probe, seed=doc.seed, tol=doc.tolerance)
        agree = rep.verdict == body["verdict"]
        body["cross_check"] = {"rank_verdict": rep.verdict, "agree": agree}
        body["criteria_used"].append("single_point_rank")
        if not agree:
            code = EXIT_DISAGREE
    _emit(args, _envelope("graph", doc, body, started), stdout)
    return code


def cmd_orbit(args, stdin, stdout, stderr):
    started = time.perf_counter()
    doc = _load_system(args, stdin)
    if doc.probe is None:
        raise InputError("orbit needs a base point (document 'probe' or --probe)", "probe")
    gens = doc.gens
    basis = lie_closure(gens, tol=doc.tolerance)
    sample = sample_orbit(gens, doc.probe, args.count, horizon=args.horizon, seed=doc.seed)
    constancy = verify_rank_constancy(basis, sample, tol=doc.tolerance)
    base = sample.base.coords
    body = {
        "base": [float(c) for c in base],
        "count": args.count,
        "horizon": args.horizon,
        "closure_dim": basis.dim,
        "orbit_dim": rank_at(basis, base, tol=doc.tolerance),
        "rank_constant": constancy["constant"],
        "rank_histogram": {str(k): v for k, v in constancy["ranks"].items()},
        "local_dim_estimate": orbit_dim_estimate(basis, base, seed=doc.seed),
        "seed": doc.seed,
    }
    if args.csv:
        _write_atomic(args.csv, sample.to_csv())
        body["csv"] = args.csv
    _emit(args, _envelope("orbit", doc, body, started), stdout)
    return EXIT_OK


def cmd_simulate(args, stdin, stdout, stderr):
    started = time.perf_counter()
    doc = _load_system(args, stdin)
    gens = doc.gens
    text, source = _read(args.schedule, stdin)
    schedule, x0 = parse_schedule(load_json(text, source), gens.m)
    x0 = x0 if x0 is not None else doc.probe
    if x0 is None:
        raise InputError("simulate needs x0 in the schedule or a probe", "x0")
    if len(x0) != gens.n:
        raise InputError(f"x0 needs {gens.n} coordinates", "x0")
    traj = run(gens, x0, schedule, oversample=args.oversample)
    basis = lie_closure(gens, tol=doc.tolerance)
    hist = {}
    for x in traj.states:
        r = rank_at(basis, x, tol=doc.tolerance)
        hist[str(r)] = hist.get(str(r), 0) + 1
    csv_text = traj.to_csv()
    if args.out:
        _write_atomic(args.out, csv_text)
    else:
        stdout.write(csv_text)
    summary = _envelope(
        "simulate",
        doc,
        {
            "steps": int(schedule.intervals),
            "recorded_states": int(traj.states.shape[0]),
            "final_state": [float(c) for c in traj.final],
            "max_norm_drift": traj.norm_drift(),
            "rank_histogram": hist,
        },
        started,
    )
    stderr.write(_render_text(summary) if args.format == "text" else dump_report(summary))
    return EXIT_OK


def build_parser():
    p = _Parser(prog="liebilinear", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("document", help="system document (JSON), or - for stdin")
        sp.add_argument("--probe", help="comma-separated probe coordinates")
        sp.add_argument("--seed", type=int, help="override the document seed")
        sp.add_argument("--tolerance", type=float, help="absolute rank tolerance")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("-o", "--out", help="write the primary output here instead of stdout")

    sp = sub.add_parser("analyze", help="rank condition verdict")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("graph", help="graph connectivity criterion")
    common(sp)
    sp.add_argument("--cross-check", action="store_true", help="also run the rank test")
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("orbit", help="sample the orbit through the probe")
    common(sp)
    sp.add_argument("--count", type=int, default=200)
    sp.add_argument("--horizon", type=float, default=DEFAULT_HORIZON)
    sp.add_argument("--csv", help="write the orbit sample here")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("simulate", help="trajectory under a control schedule")
    common(sp)
    sp.add_argument("schedule", help="schedule document (JSON)")
    sp.add_argument("--oversample", type=int, default=1)
    sp.set_defaults(func=cmd_simulate)
    return p


def main(argv=None, stdin=None, stdout=None, stderr=None):
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "count", 1) < 1 or getattr(args, "horizon", 1.0) <= 0:
            raise UsageError("--count and --horizon must be positive")
        if getattr(args, "oversample", 1) < 1:
            raise UsageError("--oversample must be positive")
        return args.func(args, stdin, stdout, stderr)
    except UsageError as exc:
        parser.print_usage(stderr)
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (InputError, AssumptionConflict) as exc:
        stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except SamplingError as exc:
        stderr.write(f"sampling error: {exc}\n")
        return EXIT_SAMPLING
    except (NumericalError, SaturationError) as exc:
        stderr.write(f"numerical error: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
