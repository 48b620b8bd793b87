"""Command-line front end: one subcommand per verifiable object.

Exit codes: 0 success, 1 domain error, 2 usage error.  All output is CSV
or JSON and byte-identical across repeated runs with the same config.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import bounds, exp_sums, experiments, fourier_smoothing
from .config import RunConfig, load_config
from .constants import Constant, parse_constant
from .primes import divisor_function, iter_prime_arrays
from .pseudo_poly import (
    AmbiguousFloor,
    ParseError,
    PrecisionExceeded,
    parse_pseudo_poly,
    scaled_phase,
)

__all__ = ["main", "run_command"]


def _parse_theta(s: str):
    c = parse_constant(s)
    return c.as_fraction() if c.is_rational else float(c)


def _dyadic_grid(xmax: int, xmin: int = 1024):
    grid = []
    x = xmin
    while x <= xmax:
        grid.append(x)
        x *= 2
    if not grid or grid[-1] != xmax:
        grid.append(xmax)
    return grid


def _emit(doc: dict, cfg: RunConfig, out_path):
    text = json.dumps(doc, indent=2, sort_keys=True, default=str)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ppdio",
        description="Pseudo-polynomials at primes: certified sums and desk-scale checks",
    )
    p.add_argument("--config", help="path to a 'key = value' config file")
    p.add_argument("--epsilon", type=float, help="run-wide epsilon (default 0.01)")
    p.add_argument("--seed", type=int, help="seed for randomized checks")
    p.add_argument("--threads", type=int, help="worker parallelism cap")
    p.add_argument("--out", help="output path (default stdout)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("exponents", help="exponent profile for a degree")
    s.add_argument("--theta", required=True)

    s = sub.add_parser("min-search", help="min ||xi*floor(f(p))|| over primes")
    s.add_argument("--f", required=True)
    s.add_argument("--xi", required=True)
    s.add_argument("--xmax", type=int, required=True)
    s.add_argument("--grid", default="dyadic", help="'dyadic' or comma-separated X values")

    s = sub.add_parser("exp-sum", help="exponential sum over primes or Lambda weights")
    s.add_argument("--f", required=True)
    s.add_argument("--y", default="1")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--kind", choices=["prime", "lambda"], default="prime")

    s = sub.add_parser("type1", help="linear bilinear-range sum with a_m = d_3(m)")
    s.add_argument("--f", required=True)
    s.add_argument("--y", default="1")
    s.add_argument("--m-max", type=int, required=True)
    s.add_argument("--x", type=int, required=True)

    s = sub.add_parser("type2", help="bilinear sum with a=d_4, b=d_3")
    s.add_argument("--f", required=True)
    s.add_argument("--y", default="1")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--x", type=int, required=True)

    s = sub.add_parser("vaaler-check", help="verify the indicator approximation bound")
    s.add_argument("--H", type=int, required=True)
    s.add_argument("--grid", type=int, default=10000)
    s.add_argument("--interval", default="0,0.5", help="a,b")

    s = sub.add_parser("montgomery-check", help="pigeonhole inequality on random data")
    s.add_argument("--n", type=int, default=1000)
    s.add_argument("--m", type=int, default=50)
    s.add_argument("--instances", type=int, default=100)

    s = sub.add_parser("divisibility", help="witness primes with m | floor(f(p))")
    s.add_argument("--f", required=True)
    s.add_argument("--m-min", type=int, default=2)
    s.add_argument("--m-max", type=int, required=True)
    s.add_argument("--p-cap", type=int, required=True)

    s = sub.add_parser("three-sums", help="the three smoothed sums at one X")
    s.add_argument("--f", required=True)
    s.add_argument("--xi", required=True)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--x", type=int, required=True)

    s = sub.add_parser("discrepancy", help="star discrepancy of {f(p) mod 1}")
    s.add_argument("--f", required=True)
    s.add_argument("--xmax", type=int, required=True)

    s = sub.add_parser("params", help="decomposition and smoothing parameters")
    s.add_argument("--y", type=int, required=True)
    s.add_argument("--theta", required=True)
    s.add_argument("--m", type=int, default=1)

    s = sub.add_parser("compare", help="exponent crossover scan over c")
    s.add_argument("--cmin", type=float, default=4.0)
    s.add_argument("--cmax", type=float, default=12.0)
    s.add_argument("--step", type=float, default=0.25)
    s.add_argument("--k", type=int, default=1)
    return p


def run_command(argv) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(
            args.config,
            {
                "epsilon": args.epsilon,
                "seed": args.seed,
                "threads": args.threads,
                "output_path": args.out,
            },
        )
        return _dispatch(args, cfg)
    except (ParseError, AmbiguousFloor, PrecisionExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args, cfg: RunConfig) -> int:
    out = cfg.output_path

    if args.command == "exponents":
        prof = bounds.exponent_profile(_parse_theta(args.theta))
        _emit(
            {
                "theta": prof.theta,
                "rho": str(prof.rho),
                "rho_float": float(prof.rho),
                "rho_d": str(prof.rho_d),
                "rho_d_float": float(prof.rho_d),
                "rho_tilde_max": str(prof.rho_tilde_max),
                "y_range": list(prof.y_range),
            },
            cfg,
            out,
        )
        return 0

    if args.command == "min-search":
        f = parse_pseudo_poly(args.f)
        xi = parse_constant(args.xi)
        if args.grid == "dyadic":
            grid = _dyadic_grid(args.xmax)
        else:
            grid = [int(x) for x in args.grid.split(",")]
        run = experiments.min_search(f, xi, grid, cfg.snapshot())
        if out and cfg.output_format == "csv":
            experiments.write_min_search_csv(run, out)
        else:
            _emit(json.loads(experiments.run_to_json(run)), cfg, out)
        return 0

    if args.command == "exp-sum":
        f = parse_pseudo_poly(args.f)
        y = parse_constant(args.y)
        fn = exp_sums.prime_exp_sum if args.kind == "prime" else exp_sums.lambda_exp_sum
        rec = fn(f, y, args.x)
        exponent = 1.0 - float(bounds.rho(f.theta))
        if out:
            exp_sums.write_csv([rec], out, exponent)
        else:
            _emit(
                {
                    "kind": rec.kind,
                    "params": rec.params,
                    "re": rec.value.real,
                    "im": rec.value.imag,
                    "abs": abs(rec.value),
                    "terms": rec.terms,
                    "phase_error": rec.phase_error_bound,
                    "ratio_vs_exponent": exp_sums.bound_ratio(rec, exponent),
                },
                cfg,
                out,
            )
        return 0

    if args.command == "type1":
        f = parse_pseudo_poly(args.f)
        rec = exp_sums.type1_sum(
            lambda m: divisor_function(m, 3), f, parse_constant(args.y), args.m_max, args.x
        )
        _emit_record(rec, cfg, out)
        return 0

    if args.command == "type2":
        f = parse_pseudo_poly(args.f)
        rec = exp_sums.type2_sum(
            lambda m: divisor_function(m, 4),
            lambda n: divisor_function(n, 3),
            f,
            parse_constant(args.y),
            args.m,
            args.n,
            args.x,
        )
        _emit_record(rec, cfg, out)
        return 0

    if args.command == "vaaler-check":
        a, b = (float(v) for v in args.interval.split(","))
        violation = fourier_smoothing.vaaler_check((a, b), args.H, args.grid)
        _emit({"interval": [a, b], "H": args.H, "grid": args.grid,
               "max_violation": violation, "holds": violation <= 1e-12}, cfg, out)
        return 0 if violation <= 1e-12 else 1

    if args.command == "montgomery-check":
        rng = random.Random(cfg.seed)
        failures = 0
        for _ in range(args.instances):
            xs = [_random_separated(rng, args.m) for _ in range(args.n)]
            rep = fourier_smoothing.montgomery_check(xs, args.m)
            if not rep.holds:
                failures += 1
        _emit({"instances": args.instances, "N": args.n, "M": args.m,
               "failures": failures, "holds": failures == 0}, cfg, out)
        return 0 if failures == 0 else 1

    if args.command == "divisibility":
        f = parse_pseudo_poly(args.f)
        rows = []
        for m in range(args.m_min, args.m_max + 1):
            w = experiments.divisibility_search(f, m, args.p_cap)
            rows.append(w)
        found = [w for w in rows if w.found]
        doc = {
            "f": args.f,
            "p_cap": args.p_cap,
            "all_found": len(found) == len(rows),
            "max_witness": max((w.p for w in found), default=None),
            "rows": [
                {"m": w.m, "found": w.found, "p": w.p, "floor": w.floor_value}
                for w in rows
            ],
        }
        if out and cfg.output_format == "csv":
            import csv as _csv

            with open(out, "w", newline="") as fh:
                wtr = _csv.writer(fh)
                wtr.writerow(["m", "found", "p", "floor"])
                for w in rows:
                    wtr.writerow([w.m, int(w.found), w.p or "", w.floor_value or ""])
        else:
            _emit(doc, cfg, out)
        return 0

    if args.command == "three-sums":
        f = parse_pseudo_poly(args.f)
        rep = experiments.three_sums_report(
            f, parse_constant(args.xi), args.m, args.x, cfg.epsilon
        )
        _emit(
            {k: getattr(rep, k) for k in
             ("X", "m", "q", "H", "sum1", "sum2", "sum3", "context_bound")},
            cfg,
            out,
        )
        return 0

    if args.command == "discrepancy":
        f = parse_pseudo_poly(args.f)
        pts = [
            scaled_phase(f, int(p), 1)[0]
            for arr in iter_prime_arrays(1, args.xmax)
            for p in arr
        ]
        _emit({"f": args.f, "xmax": args.xmax, "points": len(pts),
               "star_discrepancy": experiments.discrepancy(pts)}, cfg, out)
        return 0

    if args.command == "params":
        theta = _parse_theta(args.theta)
        r = bounds.rho(theta)
        d = bounds.decomposition_params(args.y, r)
        s = bounds.smoothing_params(args.m, args.y, r, cfg.epsilon)
        _emit(
            {
                "Y": d.Y, "U": d.U, "V": d.V, "Z": str(d.Z),
                "constraints": {
                    "U_min": d.U_min, "Z_vs_U": d.Z_vs_U,
                    "X_vs_ZU": d.X_vs_ZU, "V_vs_X": d.V_vs_X,
                },
                "q": s.q, "q_clamped": s.q_clamped, "H": s.H,
            },
            cfg,
            out,
        )
        return 0

    if args.command == "compare":
        rows = []
        c = args.cmin
        crossover = None
        prev_better = None
        while c <= args.cmax + 1e-9:
            if abs(c - round(c)) > 1e-9 and c > args.k:
                cmp_ = bounds.compare_exponents(Fraction(c).limit_denominator(1000), args.k)
                rows.append({"c": c, "ours": float(cmp_.ours),
                             "theirs": float(cmp_.theirs),
                             "ours_better": cmp_.ours_better})
                if prev_better is not None and cmp_.ours_better != prev_better:
                    crossover = c
                prev_better = cmp_.ours_better
            c += args.step
        _emit({"k": args.k, "crossover_near": crossover, "rows": rows}, cfg, out)
        return 0

    raise ValueError(f"unknown command {args.command}")


def _emit_record(rec, cfg, out):
    if out:
        exp_sums.write_csv([rec], out)
    else:
        _emit(
            {
                "kind": rec.kind,
                "params": rec.params,
                "re": rec.value.real,
                "im": rec.value.imag,
                "abs": abs(rec.value),
                "terms": rec.terms,
                "phase_error": rec.phase_error_bound,
            },
            cfg,
            out,
        )


def _random_separated(rng: random.Random, M: int) -> float:
    """Uniform point of [0,1) at distance >= 1/M from the integers."""
    return 1.0 / M + rng.random() * (1.0 - 2.0 / M)


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
