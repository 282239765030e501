"""Command-line interface.

Subcommands: build-lattice, decode, experiment, verify-optimality,
verify-lattice, oracle-compare. Exit codes: 0 success, 1 verification
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import optimality
from .decoder import bch_lattice_decode, enumeration_oracle, make_bch_stack, \
    lattice_list_decode
from .harness import (ExperimentConfig, build_lattice, report_to_json,
                      run_experiment, sample_lattice_vector, sample_noise,
                      trial_rng)
from .lattice import (determinant, hermite_report, lattice_from_json,
                      lattice_to_json, min_distance)

VERIFY_FAIL = 1


def _write_out(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_lattice(path: str):
    with open(path) as fh:
        return lattice_from_json(fh.read())


def _parse_received(path: str):
    with open(path) as fh:
        doc = json.load(fh)
    coords = doc["coords"] if isinstance(doc, dict) else doc
    out = []
    for c in coords:
        if isinstance(c, str):
            out.append(Fraction(c))
        elif isinstance(c, int):
            out.append(Fraction(c))
        else:
            out.append(float(c))
    return out


def cmd_build_lattice(args) -> int:
    lat = build_lattice(args.q, args.ell)
    _write_out(lattice_to_json(lat), args.out)
    return 0


def cmd_decode(args) -> int:
    lat = _load_lattice(args.lattice)
    y = _parse_received(args.received)
    eps = Fraction(args.epsilon)
    res = bch_lattice_decode(lat, y, eps)
    doc = {
        "epsilon": str(eps),
        "radius": res.diagnostics.get("radius"),
        "vectors": [list(w) for w in res.words],
        "distances": [math.sqrt(float(d)) for d in res.distances],
    }
    _write_out(json.dumps(doc, indent=2), args.out)
    return 0


def cmd_experiment(args) -> int:
    config = ExperimentConfig(q=args.q, ell=args.ell, epsilon=args.epsilon,
                              trials=args.trials,
                              noise_fraction=args.noise_frac,
                              seed=args.seed, output_path=args.out)
    report = run_experiment(config)
    _write_out(report_to_json(report), args.out)
    return 0


def cmd_verify_optimality(args) -> int:
    deltas = [float(Fraction(x)) for x in args.deltas.split(",")]
    try:
        rows = optimality.verify_optimality(args.p, deltas)
    except optimality.OptimalityError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return VERIFY_FAIL
    _write_out(json.dumps(rows, indent=2), args.out)
    bad = [r for r in rows
           if r["minimizer_gap_inf"] > 1e-6 or r["max_kkt_violation"] > 1e-12]
    if bad:
        print(f"verification failed for {len(bad)} grid points", file=sys.stderr)
        return VERIFY_FAIL
    return 0


def cmd_verify_lattice(args) -> int:
    lat = _load_lattice(args.lattice)
    failures = []
    det_elim = determinant(lat)
    if det_elim != lat.det_exact:
        failures.append(f"determinant mismatch: {det_elim} != {lat.det_exact}")
    bound = (lat.p - 1) * lat.p**lat.ell * math.sqrt(lat.n)
    if lat.basis_max_norm() > bound + 1e-9:
        failures.append("basis row norm exceeds (p-1) p^ell sqrt(n)")
    herm = hermite_report(lat)
    if herm.get("det_bound_holds") is False:
        failures.append("determinant exceeds q^(2 h^2 / 3)")
    md = None
    try:
        md = min_distance(lat, rng=np.random.default_rng(0),
                          samples=args.samples)
    except Exception as exc:
        failures.append(f"minimum distance check failed: {exc}")
    def _jsonable(v):
        if isinstance(v, bool) or v is None or isinstance(v, (float, str)):
            return v
        if isinstance(v, Fraction) or abs(v) > 2**53:
            return str(v)
        return v

    doc = {
        "det": str(lat.det_exact),
        "det_elimination": str(det_elim),
        "basis_max_norm": lat.basis_max_norm(),
        "basis_norm_bound": bound,
        "hermite": {k: _jsonable(v) for k, v in herm.items()},
        "min_distance": md,
        "failures": failures,
    }
    _write_out(json.dumps(doc, indent=2), args.out)
    return VERIFY_FAIL if failures else 0


def cmd_oracle_compare(args) -> int:
    lat = build_lattice(args.q, args.ell)
    eps = Fraction(args.epsilon)
    stack_radius = (lat.lambda1 or 1) * math.sqrt(float((1 - eps) / 2))
    mismatches = 0
    for t in range(args.targets):
        rng = trial_rng(args.seed, t)
        v = sample_lattice_vector(lat, 1, rng)
        scale = rng.uniform(0.0, 1.1)
        e = sample_noise(lat.n, scale * stack_radius, rng)
        # Dyadic targets keep both the decoder and the oracle exact.
        y = [Fraction(int(round((float(vi) + ei) * 2**20)), 2**20)
             for vi, ei in zip(v, e)]
        stack = make_bch_stack(lat, eps)
        decoded = list(lattice_list_decode(stack, y, lat.ell).words)
        radius_sq = lat.p ** (2 * lat.ell) * (1 - eps) / 2
        expected = enumeration_oracle(lat, y, None, radius_sq=radius_sq)
        if decoded != expected:
            mismatches += 1
            print(f"target {t}: decoder {decoded} != oracle {expected}",
                  file=sys.stderr)
    doc = {"targets": args.targets, "mismatches": mismatches}
    _write_out(json.dumps(doc, indent=2), args.out)
    return VERIFY_FAIL if mismatches else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bchlattice")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build-lattice", help="construct a BCH-tower lattice")
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--ell", type=int, required=True)
    b.add_argument("--out", default=None)
    b.set_defaults(fn=cmd_build_lattice)

    d = sub.add_parser("decode", help="list decode a received word")
    d.add_argument("--lattice", required=True)
    d.add_argument("--received", required=True)
    d.add_argument("--epsilon", required=True)
    d.add_argument("--out", default=None)
    d.set_defaults(fn=cmd_decode)

    e = sub.add_parser("experiment", help="planted-recovery experiment")
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--ell", type=int, required=True)
    e.add_argument("--epsilon", required=True)
    e.add_argument("--trials", type=int, required=True)
    e.add_argument("--noise-frac", type=float, required=True)
    e.add_argument("--seed", type=int, required=True)
    e.add_argument("--out", default=None)
    e.set_defaults(fn=cmd_experiment)

    v = sub.add_parser("verify-optimality", help="KKT optimality grid")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--deltas", required=True)
    v.add_argument("--out", default=None)
    v.set_defaults(fn=cmd_verify_optimality)

    w = sub.add_parser("verify-lattice", help="determinant/norm/Hermite checks")
    w.add_argument("--lattice", required=True)
    w.add_argument("--samples", type=int, default=100_000)
    w.add_argument("--out", default=None)
    w.set_defaults(fn=cmd_verify_lattice)

    o = sub.add_parser("oracle-compare", help="recursive decoder vs enumeration")
    o.add_argument("--q", type=int, required=True)
    o.add_argument("--ell", type=int, required=True)
    o.add_argument("--epsilon", default="0.25")
    o.add_argument("--targets", type=int, default=20)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--out", default=None)
    o.set_defaults(fn=cmd_oracle_compare)
    return ap


def cli_main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())
