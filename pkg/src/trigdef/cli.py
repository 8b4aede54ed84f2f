"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 curve generation failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import surface
from .ivhs import VerificationReport, jsonable, verify_curve
from .trigonal import CurveGenerationError, TrigonalCurve, maroni_verify, random_curve

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GEN = 0, 1, 2, 3
SWEEP_G_RANGE = (6, 14)
DIVISOR_FLAGS = ("--d", "--d1", "--d2")


class UsageError(Exception):
    pass


def divisor_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a,b' with integers, got {text!r}")
    return a, b


def seed_list(text: str) -> list[int]:
    """Parse '1,2,3', '1..5' or mixtures such as '1..3,9'."""
    seeds: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = (int(x) for x in part.split(".."))
                seeds.extend(range(lo, hi + 1))
            else:
                seeds.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad seed list {text!r}")
    if any(s < 0 for s in seeds):
        raise argparse.ArgumentTypeError("seeds must be nonnegative")
    return seeds


def _dump(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def cmd_intersect(args) -> int:
    d1 = surface.DivisorClass(args.n, *args.d1)
    d2 = surface.DivisorClass(args.n, *args.d2)
    value = surface.intersect(d1, d2)
    print(_dump({"n": args.n, "d1": list(args.d1), "d2": list(args.d2), "intersection": value})
          if args.format == "json" else value, end="" if args.format == "json" else "\n")
    return EXIT_OK


def cmd_cohomology(args) -> int:
    d = surface.DivisorClass(args.n, *args.d)
    h = surface.h012(d)
    chi = surface.chi(d)
    if args.format == "json":
        print(_dump({"n": args.n, "d": list(args.d), "h0": h.h0, "h1": h.h1,
                     "h2": h.h2, "chi": chi}), end="")
    else:
        print(f"({h.h0},{h.h1},{h.h2},{chi})")
    return EXIT_OK


def _admissible(g: int, k: int) -> None:
    try:
        ks = surface.maroni_range(g)
    except surface.LatticeError as e:
        raise UsageError(str(e))
    if k not in ks:
        raise UsageError(f"k={k} outside the Maroni range {ks} for g={g}")


def _load_or_generate(args) -> TrigonalCurve:
    if getattr(args, "curve", None):
        return TrigonalCurve.load(args.curve)
    if args.g is None or args.k is None or args.seed is None:
        raise UsageError("give either --curve FILE or all of --g, --k, --seed")
    _admissible(args.g, args.k)
    return random_curve(args.g, args.k, args.seed)


def cmd_maroni(args) -> int:
    if args.curve is None and args.k is None:
        if args.g is None:
            raise UsageError("--g is required")
        try:
            ks = surface.maroni_range(args.g)
        except surface.LatticeError as e:
            raise UsageError(str(e))
        if args.format == "json":
            print(_dump({"g": args.g, "maroni_range": ks}), end="")
        else:
            print(" ".join(map(str, ks)))
        return EXIT_OK
    curve = _load_or_generate(args)
    res = maroni_verify(curve)
    if args.format == "json":
        print(_dump({"g": curve.g, "k": curve.k, "seed": curve.seed, "computed_k": res.k,
                     "h0_jL": list(res.dims), "methods": list(res.methods),
                     "pass": res.matches}), end="")
    else:
        for j, (dim, how) in enumerate(zip(res.dims, res.methods)):
            print(f"h0({j}L) = {dim}  [{how}]")
        print(f"computed k = {res.k} ({'matches' if res.matches else 'MISMATCH'})")
    return EXIT_OK if res.matches else EXIT_FAIL


def cmd_curve_gen(args) -> int:
    _admissible(args.g, args.k)
    curve = random_curve(args.g, args.k, args.seed)
    text = curve.to_json()
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    cert = curve.certificate
    summary = (f"discriminant degree {cert.discriminant_degree}, "
               f"accepted={cert.ok}, degrees={list(curve.degrees)}")
    print(summary, file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def _print_report(rep: VerificationReport) -> None:
    print(f"g={rep.g} k={rep.k} n={rep.n} seed={rep.seed}")
    for c in rep.checks:
        mark = "ok  " if c.passed else "FAIL"
        print(f"  {mark} {c.name}: expected {c.expected}, computed {c.computed}")
    if rep.passed:
        print("PASS")
    else:
        print("FAIL: " + ", ".join(c.name for c in rep.failing()))


def cmd_verify(args) -> int:
    curve = _load_or_generate(args)
    rep = verify_curve(curve, args.curve)
    if args.json:
        _write(args.json, rep.to_json())
    if args.format == "json":
        sys.stdout.write(rep.to_json())
    else:
        _print_report(rep)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _run_cell(job: tuple[int, int, int]) -> dict:
    g, k, seed = job
    try:
        rep = verify_curve(random_curve(g, k, seed))
    except CurveGenerationError as e:
        return {"seed": jsonable(seed), "pass": False, "error": str(e), "checks": []}
    d = rep.to_json_dict()
    return {"seed": d["seed"], "pass": d["pass"], "checks": d["checks"],
            "failing": [c.name for c in rep.failing()]}


def thread_count() -> int:
    raw = os.environ.get("TRIGONAL_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise UsageError(f"TRIGONAL_THREADS must be an integer, got {raw!r}")
    return os.cpu_count() or 1


def run_sweep(g_min: int, g_max: int, seeds: list[int], workers: int = 1) -> dict:
    jobs = [(g, k, s) for g in range(g_min, g_max + 1)
            for k in surface.maroni_range(g) for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_cell, jobs))
    else:
        results = [_run_cell(j) for j in jobs]
    by_cell: dict[tuple[int, int], list[dict]] = {}
    for (g, k, _), res in zip(jobs, results):
        by_cell.setdefault((g, k), []).append(res)
    cells = []
    for (g, k), runs in sorted(by_cell.items()):
        runs.sort(key=lambda r: int(r["seed"]))
        cells.append({"g": g, "k": k, "n": g - 2 - 2 * k, "runs": runs,
                      "pass": all(r["pass"] for r in runs)})
    return {"g_min": g_min, "g_max": g_max, "seeds": [jsonable(s) for s in sorted(set(seeds))],
            "cells": cells, "pass": all(c["pass"] for c in cells)}


def cmd_sweep(args) -> int:
    if not args.seeds:
        raise UsageError("empty seed list")
    lo, hi = SWEEP_G_RANGE
    if not lo <= args.g_min <= args.g_max <= hi:
        raise UsageError(f"need {lo} <= g-min <= g-max <= {hi}")
    agg = run_sweep(args.g_min, args.g_max, sorted(set(args.seeds)), thread_count())
    text = _dump(agg)
    if args.json:
        _write(args.json, text)
    if args.format == "json":
        sys.stdout.write(text)
    else:
        for cell in agg["cells"]:
            bad = [r["seed"] for r in cell["runs"] if not r["pass"]]
            verdict = "pass" if cell["pass"] else f"FAIL seeds {bad}"
            print(f"(g={cell['g']}, k={cell['k']}, n={cell['n']}): {verdict}")
        print("PASS" if agg["pass"] else "FAIL")
    return EXIT_OK if agg["pass"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trigdef", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    sp = common(sub.add_parser("intersect", help="intersection number on F_n"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d1", type=divisor_pair, required=True)
    sp.add_argument("--d2", type=divisor_pair, required=True)
    sp.set_defaults(func=cmd_intersect)

    sp = common(sub.add_parser("cohomology", help="h0, h1, h2 and chi of a class"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=divisor_pair, required=True)
    sp.set_defaults(func=cmd_cohomology)

    sp = common(sub.add_parser("maroni", help="Maroni range, or recover k from a curve"))
    sp.add_argument("--g", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--curve")
    sp.set_defaults(func=cmd_maroni)

    sp = common(sub.add_parser("curve-gen", help="generate a seeded trigonal curve"))
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_curve_gen)

    sp = common(sub.add_parser("verify", help="run the theorem driver on one curve"))
    sp.add_argument("--g", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--curve")
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("sweep", help="verify every admissible (g, k) for a seed list"))
    sp.add_argument("--g-min", type=int, required=True)
    sp.add_argument("--g-max", type=int, required=True)
    sp.add_argument("--seeds", type=seed_list, required=True)
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_sweep)
    return p


def _join_divisor_values(argv: list[str]) -> list[str]:
    # lets "--d -2,-6" through; argparse would read "-2,-6" as an option
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in DIVISOR_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_divisor_values(argv))
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CurveGenerationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GEN
    except (surface.LatticeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
