"""Command-line front end.

Five subcommands: ``distance``, ``mean``, ``polytrope``, ``certify`` and
``bench``.  Results go to stdout as JSON (CSV for bench), diagnostics to
stderr.  Exit codes: 0 success, 2 malformed or unusable input, 3 a point
that fails optimality certification, 4 exhaustive-search budget exceeded.
"""

from __future__ import annotations

import argparse
import functools
import json
import sys
import time
from fractions import Fraction
from random import Random
from typing import Any, Sequence

from .certify import find_certificate, verify_certificate
from .core import SampleSet, TorusPoint, canonicalize, trop_dist
from .errors import (
    BudgetExceeded,
    EmptyPolytrope,
    NotOptimal,
    ParseError,
    Unbounded,
)
from .frechet import FrechetResult, exact_frechet, fm_polytrope, greedy_frechet
from .polytrope import PolytropeMatrix, kleene_star, pseudovertices, tropical_vertices
from .serialize import (
    format_rational,
    load_points,
    matrix_from_json,
    matrix_to_json,
    parse_rational,
    point_to_json,
    result_to_json,
)


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EmptyPolytrope, Unbounded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotOptimal as exc:
        print(f"not optimal: {exc}", file=sys.stderr)
        return 3
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropmean",
        description="Exact Fréchet means and mean polytropes under the tropical metric.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dist = sub.add_parser("distance", help="tropical distance between two sample points")
    p_dist.add_argument("file", help="points file (JSON or CSV), '-' for stdin")
    p_dist.add_argument(
        "--pair",
        nargs=2,
        type=int,
        default=(1, 2),
        metavar=("A", "B"),
        help="1-based indices of the two points (default: 1 2)",
    )
    p_dist.set_defaults(handler=_cmd_distance)

    p_mean = sub.add_parser("mean", help="Fréchet mean and FM polytrope")
    p_mean.add_argument("file", help="points file (JSON or CSV), '-' for stdin")
    p_mean.add_argument("--mode", choices=("greedy", "exact"), default="exact")
    p_mean.add_argument("--tol", type=parse_rational, default=None, help="greedy tolerance")
    p_mean.add_argument("--max-iter", type=int, default=None, help="greedy round cap")
    p_mean.add_argument("--budget", type=int, default=None, help="fallback enumeration budget")
    p_mean.set_defaults(handler=_cmd_mean)

    p_poly = sub.add_parser("polytrope", help="h-description, vertices and plot data")
    p_poly.add_argument("file", nargs="?", help="points file; omit when using --matrix")
    p_poly.add_argument("--matrix", help="polytrope matrix JSON file instead of points")
    p_poly.add_argument("--mean", type=_parse_vector, default=None, help="mean as 'a,b,c'")
    p_poly.add_argument(
        "--trust",
        action="store_true",
        help="skip the optimality certification of --mean",
    )
    p_poly.set_defaults(handler=_cmd_polytrope)

    p_cert = sub.add_parser("certify", help="optimality certificate for a point")
    p_cert.add_argument("file", help="points file (JSON or CSV), '-' for stdin")
    p_cert.add_argument("--point", type=_parse_vector, required=True, help="point as 'a,b,c'")
    p_cert.set_defaults(handler=_cmd_certify)

    p_bench = sub.add_parser("bench", help="timing grid over random samples")
    p_bench.add_argument("--dims", type=_parse_ints, default=(5, 10, 15, 20))
    p_bench.add_argument("--multipliers", type=_parse_ints, default=(1, 2, 3))
    p_bench.add_argument("--reps", type=int, default=10)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--max-iter", type=int, default=200, help="greedy round cap per rep")
    p_bench.add_argument("--tol", type=parse_rational, default=Fraction(1, 10**9))
    p_bench.add_argument(
        "--trace",
        action="store_true",
        help="write per-round objectives to stderr",
    )
    p_bench.add_argument(
        "--no-timing",
        action="store_true",
        help="leave the timing column empty for byte-reproducible output",
    )
    p_bench.set_defaults(handler=_cmd_bench)
    return parser


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_sample(path: str) -> tuple[SampleSet, dict[str, Any]]:
    sample, options = load_points(_read_text(path))
    return sample, options


def _parse_vector(text: str) -> TorusPoint:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) < 2:
        raise argparse.ArgumentTypeError("need at least two comma-separated coordinates")
    try:
        return canonicalize([parse_rational(p) for p in parts])
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(doc: Any) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_distance(args: argparse.Namespace) -> int:
    sample, _ = _load_sample(args.file)
    a, b = args.pair
    if not (1 <= a <= sample.m and 1 <= b <= sample.m):
        raise ParseError(f"point indices must be in 1..{sample.m}")
    d = trop_dist(sample[a - 1], sample[b - 1])
    line = format_rational(d)
    if d.denominator != 1:
        line += f" (= {float(d):.6g})"
    print(line)
    return 0


def _pick(flag: Any, options: dict[str, Any], key: str, default: Any, conv: Any) -> Any:
    if flag is not None:
        return flag
    if key in options:
        return conv(options[key])
    return default


def _cmd_mean(args: argparse.Namespace) -> int:
    sample, options = _load_sample(args.file)
    tol = _pick(args.tol, options, "tol", Fraction(1, 10**9), lambda v: Fraction(str(v)))
    max_iter = _pick(args.max_iter, options, "max_iter", 400, int)
    budget = _pick(args.budget, options, "budget", 10**6, int)

    if args.mode == "greedy":
        mean, value = greedy_frechet(sample, max_iter=max_iter, tol=tol)
        dists = tuple(trop_dist(mean, p) for p in sample)
        result = FrechetResult(
            mean=mean,
            distances=dists,
            min_sum=value,
            fm_polytrope=fm_polytrope(sample, mean),
            exact=False,
        )
        _emit(result_to_json(result))
        return 0

    result = exact_frechet(sample, budget=budget, greedy_max_iter=max_iter, greedy_tol=tol)
    _emit(result_to_json(result))
    if result.exact:
        return 0
    count = (sample.n * (sample.n - 1)) ** sample.m
    return 4 if count > budget else 3


def _cmd_polytrope(args: argparse.Namespace) -> int:
    if (args.matrix is None) == (args.file is None):
        raise ParseError("give either a points file or --matrix, not both or neither")

    if args.matrix is not None:
        mat = matrix_from_json(json.loads(_read_text(args.matrix), parse_float=Fraction))
    else:
        sample, _ = _load_sample(args.file)
        if args.mean is None:
            result = exact_frechet(sample)
            if not result.exact:
                raise NotOptimal("could not certify a mean for this sample; pass --mean")
            mean = result.mean
        else:
            mean = args.mean
            if mean.dim != sample.n:
                raise ParseError(
                    f"--mean has {mean.dim} coordinates, the points have {sample.n}"
                )
            if not args.trust:
                cert = find_certificate(sample, mean)
                if not verify_certificate(sample, cert):
                    raise NotOptimal("certificate for --mean failed verification")
        mat = fm_polytrope(sample, mean)

    starred = kleene_star(mat)
    tverts = tropical_vertices(starred)
    pverts = pseudovertices(starred)
    doc: dict[str, Any] = {
        "matrix": matrix_to_json(mat),
        "starred": matrix_to_json(starred),
        "tropical_vertices": [point_to_json(v) for v in tverts],
        "pseudovertices": [point_to_json(v) for v in pverts],
    }
    if mat.n == 3:
        doc["polygon"] = [
            [format_rational(u), format_rational(v)] for u, v in _polygon_ccw(pverts)
        ]
    _emit(doc)
    return 0


def _cmd_certify(args: argparse.Namespace) -> int:
    from .serialize import certificate_to_json

    sample, _ = _load_sample(args.file)
    if args.point.dim != sample.n:
        raise ParseError(
            f"--point has {args.point.dim} coordinates, the points have {sample.n}"
        )
    cert = find_certificate(sample, args.point)
    ok = verify_certificate(sample, cert)
    _emit(certificate_to_json(cert))
    if not ok:
        print("certificate failed independent verification", file=sys.stderr)
        return 3
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    writer = sys.stdout
    writer.write("n,m,rep,mean_time_ms,objective\n")
    for n in args.dims:
        for mult in args.multipliers:
            m = mult * n
            for rep in range(1, args.reps + 1):
                sample = _random_sample(args.seed, n, m, rep)
                trace = _make_trace(n, m, rep) if args.trace else None
                t0 = time.perf_counter()
                mean, value = greedy_frechet(
                    sample, max_iter=args.max_iter, tol=args.tol, on_round=trace
                )
                fm_polytrope(sample, mean)
                elapsed_ms = (time.perf_counter() - t0) * 1000.0
                cell = "" if args.no_timing else f"{elapsed_ms:.3f}"
                writer.write(f"{n},{m},{rep},{cell},{format_rational(value)}\n")
    return 0


def _make_trace(n: int, m: int, rep: int):
    def emit(rnd: int, value: Fraction) -> None:
        print(
            f"trace n={n} m={m} rep={rep} round={rnd} objective={format_rational(value)}",
            file=sys.stderr,
        )

    return emit


def _random_sample(seed: int, n: int, m: int, rep: int) -> SampleSet:
    """Deterministic sample: integers uniform in [-10n, 10n] over 5.

    The generator is Python's Mersenne Twister seeded with the string
    "seed:n:m:rep", which CPython hashes stably, so output is identical
    across processes and platforms.
    """
    rng = Random(f"{seed}:{n}:{m}:{rep}")
    rows = [
        [Fraction(rng.randint(-10 * n, 10 * n), 5) for _ in range(n)] for _ in range(m)
    ]
    return SampleSet.from_rows(rows)


def _polygon_ccw(points: list[TorusPoint]) -> list[tuple[Fraction, Fraction]]:
    """Pseudovertices as 2D coordinates (x2-x1, x3-x1), counterclockwise.

    Distinct polygon vertices never share a ray from the interior centroid,
    so an exact quadrant-and-cross-product comparator orders them; the cycle
    is rotated to start at the lexicographically smallest vertex.  Collinear
    point sets fall back to lexicographic order.
    """
    pts = [(p[1], p[2]) for p in points]
    if len(pts) <= 2:
        return sorted(pts)
    p0 = pts[0]
    if all(_cross(_sub(p1, p0), _sub(p2, p0)) == 0 for p1 in pts for p2 in pts):
        return sorted(pts)
    k = len(pts)
    gx = sum((u for u, _ in pts), Fraction(0)) / k
    gy = sum((v for _, v in pts), Fraction(0)) / k

    def half(p: tuple[Fraction, Fraction]) -> int:
        dx, dy = p[0] - gx, p[1] - gy
        return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

    def cmp(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> int:
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha - hb
        cr = _cross(_sub(a, (gx, gy)), _sub(b, (gx, gy)))
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return 0

    ordered = sorted(pts, key=functools.cmp_to_key(cmp))
    start = ordered.index(min(ordered))
    return ordered[start:] + ordered[:start]


def _sub(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    return (a[0] - b[0], a[1] - b[1])


def _cross(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]
