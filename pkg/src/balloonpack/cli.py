"""Command-line interface.

Subcommands: layout, tree, verify, gen, bench.  Exit codes: 0 success,
1 check failure, 2 bad flags or unparseable input.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

import numpy as np

from .checker import Report, check_drawing, check_layout
from .formats import (ParseError, emit_instance, emit_json, emit_svg,
                      emit_tree, parse_instance, parse_json, parse_tree)
from .layout import Layout, greedy_balloon, greedy_one_free, greedy_two_free
from .treedraw import Drawing, RootedTree, draw_tree

_VARIANTS = {0: greedy_balloon, 1: greedy_one_free, 2: greedy_two_free}


def random_radii(n: int, dist: str, rng: np.random.Generator) -> np.ndarray:
    """n positive radii normalized to sum 1: 'uniform' on (0,1], 'powerlaw'
    with tail exponent 2, or 'equal'."""
    if dist == "uniform":
        r = 1.0 - rng.random(n)  # (0, 1]
    elif dist == "powerlaw":
        r = 1.0 / (1.0 - rng.random(n))  # density ~ x^-2 on [1, inf)
    elif dist == "equal":
        r = np.ones(n)
    else:
        raise ValueError(f"unknown distribution {dist!r}")
    return r / r.sum()


def random_tree(n: int, rng: np.random.Generator) -> RootedTree:
    """Uniform random recursive tree on nodes 0..n-1 rooted at 0."""
    parents = [-1] + [int(rng.integers(0, i)) for i in range(1, n)]
    return RootedTree.from_parents(parents)


def _write_result(obj, out: Optional[str], fmt: str) -> None:
    data = emit_json(obj) if fmt == "json" else emit_svg(obj)
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
    else:
        Path(out).write_bytes(data)


def _print_violations(rep: Report) -> None:
    for viol in rep.violations:
        print(f"FAIL [{viol.kind}] {viol.detail} (by {viol.magnitude:.3g})",
              file=sys.stderr)


def _cmd_layout(args) -> int:
    radii, free = parse_instance(Path(args.infile).read_bytes())
    lay = _VARIANTS[free](radii)
    rep = check_layout(lay)
    _write_result(lay, args.out, args.format)
    _print_violations(rep)
    print(f"n={len(radii)} free_spokes={free} "
          f"covering_radius={lay.covering_radius!r} "
          f"check={'pass' if rep.passed else 'fail'}", file=sys.stderr)
    return 0 if rep.passed else 1


def _cmd_tree(args) -> int:
    t = parse_tree(Path(args.infile).read_bytes())
    d = draw_tree(t)
    rep = check_drawing(d)
    _write_result(d, args.out, args.format)
    _print_violations(rep)
    if args.stats:
        m = rep.measured
        print(f"n={t.n} covering_radius={m['covering_radius']!r} "
              f"exponent={m['exponent']!r} "
              f"min_edge_length={m['min_edge_length']!r} "
              f"min_resolution_slack={m['min_resolution_slack']!r}",
              file=sys.stderr)
    return 0 if rep.passed else 1


def _cmd_verify(args) -> int:
    obj = parse_json(Path(args.infile).read_bytes())
    rep = check_layout(obj) if isinstance(obj, Layout) else check_drawing(obj)
    _print_violations(rep)
    print("pass" if rep.passed else "fail")
    return 0 if rep.passed else 1


def _cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.kind == "radii":
        radii = random_radii(args.n, args.dist, rng)
        data = emit_instance(radii, args.free, seed=args.seed)
    else:
        data = emit_tree(random_tree(args.n, rng))
    if args.out is None or args.out == "-":
        sys.stdout.buffer.write(data)
    else:
        Path(args.out).write_bytes(data)
    return 0


def _cmd_bench(args) -> int:
    sizes = [args.max_n // 4, args.max_n // 2, args.max_n]
    times = []
    for n in sizes:
        radii = np.full(n, 1.0 / n)
        t0 = time.perf_counter()
        greedy_balloon(radii)
        times.append(time.perf_counter() - t0)
        print(f"n={n:>9}  t={times[-1]:.4f}s")
    for prev, cur, n in zip(times, times[1:], sizes[1:]):
        print(f"doubling to n={n:>9}: ratio={cur / prev:.3f}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="balloonpack",
                                description="Balloon layouts and tree drawings "
                                            "with perfect angular resolution.")
    sub = p.add_subparsers(dest="cmd", required=True)

    lay = sub.add_parser("layout", help="lay out an instance file")
    lay.add_argument("--in", dest="infile", required=True)
    lay.add_argument("--out", default=None)
    lay.add_argument("--format", choices=("json", "svg"), default="json")
    lay.set_defaults(func=_cmd_layout)

    tr = sub.add_parser("tree", help="draw a tree file")
    tr.add_argument("--in", dest="infile", required=True)
    tr.add_argument("--out", default=None)
    tr.add_argument("--format", choices=("json", "svg"), default="json")
    tr.add_argument("--stats", action="store_true")
    tr.set_defaults(func=_cmd_tree)

    ver = sub.add_parser("verify", help="re-check a layout or drawing JSON")
    ver.add_argument("--in", dest="infile", required=True)
    ver.set_defaults(func=_cmd_verify)

    gen = sub.add_parser("gen", help="generate a deterministic instance")
    gen.add_argument("--kind", choices=("radii", "tree"), required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--dist", choices=("uniform", "powerlaw", "equal"),
                     default="uniform")
    gen.add_argument("--free", type=int, choices=(0, 1, 2), default=0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=_cmd_gen)

    ben = sub.add_parser("bench", help="time the zero-free layout at three sizes")
    ben.add_argument("--max-n", type=int, dest="max_n", required=True)
    ben.set_defaults(func=_cmd_bench)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
