"""Command-line front end.

Exit codes: 0 when every checked property passes, 1 when a property fails
(or a search/trace fails), 2 on usage or I/O errors. All randomness flows
from ``--seed``.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import axioms, catalog, geometry, rhoades, sequences, setanalysis
from .errors import DomainError, NoConvergenceError, SNormedError, TraceError, UnknownStructureError
from .structures import Kind

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _resolve(structure_id: str):
    try:
        return catalog.resolve(structure_id)
    except UnknownStructureError as exc:
        raise UsageError(exc.args[0]) from exc


def _parse_point(text: str) -> np.ndarray:
    try:
        return np.array([float(c) for c in text.split(",")])
    except ValueError as exc:
        raise UsageError(f"cannot parse point {text!r}; expected comma-separated numbers") from exc


# -- axioms -------------------------------------------------------------------------

def cmd_axioms(args) -> int:
    h = _resolve(args.structure_id)
    if args.as_kind:
        try:
            h = h.as_kind(Kind(args.as_kind), f"as_{args.as_kind}")
        except SNormedError as exc:
            raise UsageError(str(exc)) from exc
    spec = axioms.SampleSpec.cube(h.dim, count=args.samples, seed=args.seed)
    if args.falsify == "norm-generated":
        reports = [axioms.falsify_norm_generated(h, spec, args.tol)]
    elif args.falsify == "snorm-generated":
        reports = [axioms.falsify_snorm_generated(h, spec, args.tol)]
    else:
        reports = axioms.check_structure(h, spec, args.tol)
        if args.lemma_symmetry:
            reports.append(axioms.check_lemma3_symmetry(h, spec, args.tol))
    _emit({"structure": h.describe(), "reports": [r.to_dict() for r in reports]}, args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- ball ---------------------------------------------------------------------------

PRESETS = {
    "fig1a": (geometry.fig1a, "snorm.sum_abs.d2"),
    "fig1b": (geometry.fig1b, "snorm.example6.d2"),
    "degenerate": (geometry.degenerate, "snorm.sum_abs.d2"),
}


def cmd_ball(args) -> int:
    if args.preset:
        make, default_snorm = PRESETS[args.preset]
        ball = make()
        s = _resolve(args.snorm or default_snorm)
    else:
        if None in (args.x0, args.a1, args.a2, args.r):
            raise UsageError("without --preset, --x0, --a1, --a2 and --r are all required")
        ball = geometry.BallSpec(_parse_point(args.x0), _parse_point(args.a1), _parse_point(args.a2),
                                 args.r, closed=args.closed)
        s = _resolve(args.snorm or f"snorm.sum_abs.d{ball.dim}")
    if args.closed and args.preset:
        ball = geometry.BallSpec(ball.center, ball.anchor1, ball.anchor2, ball.radius, closed=True)
    payload = {
        "snorm": s.describe(),
        "center": ball.center.tolist(),
        "anchor1": ball.anchor1.tolist(),
        "anchor2": ball.anchor2.tolist(),
        "radius": ball.radius,
        "closed": ball.closed,
        "resolution": args.resolution,
    }
    try:
        boundary = geometry.trace_boundary_2d(s, ball, args.resolution)
    except (TraceError, SNormedError) as exc:
        payload["error"] = str(exc)
        _emit(payload, args.out)
        return EXIT_FAIL
    values = geometry.ball_value(s, ball, boundary.points)
    payload["max_level_error"] = float(np.max(np.abs(values - ball.radius)))
    payload["vertices"] = len(boundary.points)
    if args.csv:
        Path(args.csv).write_text(boundary.to_csv())
        payload["csv"] = args.csv
    if args.svg:
        Path(args.svg).write_text(boundary.to_svg())
        payload["svg"] = args.svg
    _emit(payload, args.out)
    return EXIT_OK


# -- fixed points and conditions ----------------------------------------------------

def _map(args):
    try:
        return rhoades.make_map(args.map_id, args.dim)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc


def cmd_fixpoint(args) -> int:
    T = _map(args)
    s = _resolve(args.snorm or f"snorm.sum_abs.d{T.dim}")
    if s.dim != T.dim:
        raise UsageError(f"{s.name} has dimension {s.dim} but map {T.name} has dimension {T.dim}")
    cfg = rhoades.SearchConfig(seed=args.seed)
    payload = {"map": T.name, "snorm": s.describe(), "domain": [T.domain_low.tolist(), T.domain_high.tolist()]}
    try:
        result = rhoades.find_fixed_point(T, s, args.tol, args.budget, cfg)
    except NoConvergenceError as exc:
        payload.update(error=str(exc), best=None if exc.best is None else exc.best.tolist(), residual=exc.residual)
        _emit(payload, args.out)
        return EXIT_FAIL
    except DomainError as exc:
        payload["error"] = str(exc)
        _emit(payload, args.out)
        return EXIT_FAIL
    payload.update(result.to_dict())
    # sampled evidence for the hypotheses; none of it is a proof
    spec = T.sample_spec(count=args.samples, seed=args.seed)
    payload["evidence"] = {
        "ns25": rhoades.condition_pass_rate(T, s, "ns25", spec),
        "normal_structure": _normal_structure_evidence(T, s),
    }
    if args.landscape:
        _write_landscape(T, s, args.landscape)
        payload["landscape"] = args.landscape
    _emit(payload, args.out)
    return EXIT_OK


def _normal_structure_evidence(T, s, per_axis: int = 5) -> dict:
    axes = [np.linspace(lo, hi, per_axis) for lo, hi in zip(T.domain_low, T.domain_high)]
    pts = np.column_stack([m.ravel() for m in np.meshgrid(*axes, indexing="ij")])
    A = setanalysis.PointSet(pts)
    ns = setanalysis.normal_structure_witness(A, s)
    return {"sample_points": len(A), "witness": None if ns.witness is None else ns.witness.tolist(),
            "zero_diameter": ns.zero_diameter}


def _write_landscape(T, s, path, per_axis: int = 101) -> None:
    if T.dim > 2:
        raise UsageError("residual landscapes are only written for 1-D and 2-D domains")
    axes = [np.linspace(lo, hi, per_axis) for lo, hi in zip(T.domain_low, T.domain_high)]
    pts = np.column_stack([m.ravel() for m in np.meshgrid(*axes, indexing="ij")])
    res = np.atleast_1d(rhoades.residual(T, s, pts))
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow([f"x{i + 1}" for i in range(T.dim)] + ["residual"])
        for p, r in zip(pts, res):
            w.writerow([repr(float(c)) for c in p] + [repr(float(r))])


DEFAULT_STRUCTURE = {"ns25": "snorm.sum_abs", "s25": "smetric.from_sum_abs",
                     "nr25": "norm.euclidean", "r25": "metric.euclidean"}


def cmd_rhoades(args) -> int:
    T = _map(args)
    h = _resolve(args.structure or f"{DEFAULT_STRUCTURE[args.condition]}.d{T.dim}")
    if h.dim != T.dim:
        raise UsageError(f"{h.name} has dimension {h.dim} but map {T.name} has dimension {T.dim}")
    spec = T.sample_spec(count=args.samples, seed=args.seed)
    try:
        payload = rhoades.condition_pass_rate(T, h, args.condition, spec)
    except SNormedError as exc:
        raise UsageError(str(exc)) from exc
    _emit(payload, args.out)
    return EXIT_OK if payload["violations"] == 0 else EXIT_FAIL


# -- sets and sequences --------------------------------------------------------------

def read_points_csv(path: str) -> setanalysis.PointSet:
    try:
        with open(path, newline="") as f:
            rows = list(csv.reader(f))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise UsageError(f"{path} is empty")
    header = [h.strip() for h in rows[0]]
    if header != [f"x{i + 1}" for i in range(len(header))]:
        raise UsageError(f"{path}: header must be x1,...,xn, got {','.join(header)}")
    try:
        pts = [[float(c) for c in row] for row in rows[1:] if row]
        return setanalysis.PointSet(np.array(pts, dtype=float).reshape(len(pts), len(header)))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_sets(args) -> int:
    A = read_points_csv(args.file)
    s = _resolve(args.snorm or f"snorm.sum_abs.d{A.dim}")
    if s.dim != A.dim:
        raise UsageError(f"{s.name} has dimension {s.dim} but the points have dimension {A.dim}")
    payload = {"file": args.file, "snorm": s.describe(), "points": len(A)}
    payload.update(setanalysis.set_report(A, s))
    _emit(payload, args.out)
    return EXIT_OK


def cmd_seq(args) -> int:
    if args.seq_id not in sequences.BUILTIN:
        raise UsageError(f"unknown sequence {args.seq_id!r}; known: {', '.join(sequences.BUILTIN)}")
    make, limit = sequences.BUILTIN[args.seq_id]
    seq = make(args.eps, args.horizon)
    s = _resolve(args.snorm)
    if s.dim != 1:
        raise UsageError("the built-in sequences live on the real line; use a .d1 S-norm")
    report = sequences.classify_completeness_witness(seq, s)
    target = report.candidate if limit is None else np.array(limit)
    conv = sequences.check_convergence(seq, target, s)
    payload = {
        "sequence": seq.name,
        "eps": args.eps,
        "horizon": args.horizon,
        "snorm": s.describe(),
        "limit": [float(c) for c in target],
        "convergence": conv.to_dict(),
        **report.to_dict(),
    }
    if args.csv:
        vals = sequences.tail_values(seq, target, s)
        with open(args.csv, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["n", "tail_value"])
            for n, v in enumerate(vals, start=1):
                w.writerow([n, repr(float(v))])
        payload["csv"] = args.csv
    _emit(payload, args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="snormed", description="Computational S-normed spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, samples=10_000):
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        if samples:
            sp.add_argument("--samples", type=int, default=samples)

    a = sub.add_parser("axioms", help="sampled axiom check for a catalog structure")
    a.add_argument("structure_id")
    a.add_argument("--as", dest="as_kind", choices=[k.value for k in Kind])
    a.add_argument("--falsify", choices=["norm-generated", "snorm-generated"])
    a.add_argument("--lemma-symmetry", action="store_true")
    a.add_argument("--tol", type=float, default=axioms.DEFAULT_TOL)
    common(a)
    a.set_defaults(func=cmd_axioms)

    b = sub.add_parser("ball", help="trace a planar ball boundary")
    b.add_argument("--preset", choices=sorted(PRESETS))
    b.add_argument("--snorm")
    b.add_argument("--x0", help="comma-separated centre; write --x0=-1,2 when it starts with a minus")
    b.add_argument("--a1")
    b.add_argument("--a2")
    b.add_argument("--r", type=float)
    b.add_argument("--closed", action="store_true")
    b.add_argument("--resolution", type=int, default=360)
    b.add_argument("--svg")
    b.add_argument("--csv")
    common(b, samples=0)
    b.set_defaults(func=cmd_ball)

    f = sub.add_parser("fixpoint", help="numerical fixed-point demonstration")
    f.add_argument("map_id", choices=sorted(rhoades.MAPS))
    f.add_argument("--dim", type=int)
    f.add_argument("--snorm")
    f.add_argument("--tol", type=float, default=1e-6)
    f.add_argument("--budget", type=int, default=1_000_000)
    f.add_argument("--landscape", help="CSV of (grid point, residual) for 1-D/2-D domains")
    common(f, samples=2000)
    f.set_defaults(func=cmd_fixpoint)

    r = sub.add_parser("rhoades", help="sampled pass rate of a Rhoades-type condition")
    r.add_argument("map_id", choices=sorted(rhoades.MAPS))
    r.add_argument("--dim", type=int)
    r.add_argument("--condition", choices=sorted(rhoades.CONDITIONS), default="ns25")
    r.add_argument("--structure")
    common(r)
    r.set_defaults(func=cmd_rhoades)

    st = sub.add_parser("sets", help="S-diameter / Chebyshev report for a CSV point set")
    st.add_argument("file")
    st.add_argument("--snorm")
    common(st, samples=0)
    st.set_defaults(func=cmd_sets)

    q = sub.add_parser("seq", help="convergence / Cauchy verdicts for a built-in sequence")
    q.add_argument("seq_id")
    q.add_argument("--eps", type=float, default=1e-3)
    q.add_argument("--horizon", type=int, default=10_000)
    q.add_argument("--snorm", default="snorm.sum_abs.d1")
    q.add_argument("--csv")
    common(q, samples=0)
    q.set_defaults(func=cmd_seq)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"snormed: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"snormed: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
