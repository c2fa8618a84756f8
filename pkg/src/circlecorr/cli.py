"""Command-line front end.

Subcommands: gen (write points), fstat (F statistic sweeps), gaps
(three-gap census and prediction), cf (continued fraction expansion),
ostrowski (digit representations), verify (named check suites).
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np

from . import cf as cfmod
from .paircorr import f_stat, f_stat_profile
from .sequences import (FixedBatch, RationalBatch, SequenceSpec, generate,
                        kronecker_orbit)
from .threegap import gap_census, predict_gaps
from .verify import SUITES, run_suite

DEFAULT_MAX_POINTS = 1 << 27
_SIG_DIGITS = 20


class UsageError(Exception):
    pass


# --- point serialization -----------------------------------------------------


def format_point(raw: int, precision: int) -> str:
    """Decimal value of raw/2^precision at 20 significant digits."""
    with localcontext() as ctx:
        ctx.prec = 60
        exact = Decimal(raw) / Decimal(1 << precision)
        ctx.prec = _SIG_DIGITS
        return str(+exact)


def parse_point(text: str, precision: int) -> int:
    """Invert format_point: nearest grid value (exact for P=64 at 20 digits)."""
    with localcontext() as ctx:
        ctx.prec = 60
        scaled = Decimal(text) * Decimal(1 << precision)
        return int(scaled.to_integral_value(rounding="ROUND_HALF_EVEN")) % (1 << precision)


def write_points_csv(batch, stream):
    raw, precision = _batch_raw_precision(batch)
    stream.write("value\n")
    for v in raw:
        stream.write(format_point(int(v), precision) + "\n")


def write_points_binary(batch, stream):
    raw, precision = _batch_raw_precision(batch)
    width = precision // 8
    for v in raw:
        stream.write(int(v).to_bytes(width, "little"))


def read_points_csv(stream, precision: int) -> FixedBatch:
    values = []
    for i, line in enumerate(stream):
        line = line.strip()
        if not line or (i == 0 and line == "value"):
            continue
        values.append(parse_point(line, precision))
    if precision == 64:
        return FixedBatch(64, np.array(values, dtype=np.uint64))
    return FixedBatch(precision, values)


def read_points_binary(stream, precision: int) -> FixedBatch:
    data = stream.read()
    width = precision // 8
    if len(data) % width:
        raise UsageError(f"binary point file length is not a multiple of {width}")
    values = [int.from_bytes(data[i:i + width], "little")
              for i in range(0, len(data), width)]
    if precision == 64:
        return FixedBatch(64, np.array(values, dtype=np.uint64))
    return FixedBatch(precision, values)


def _batch_raw_precision(batch):
    if isinstance(batch, RationalBatch):
        batch = batch.to_fixed()
    return batch.raw, batch.precision


# --- argument plumbing -------------------------------------------------------


def _common_flags(parser):
    parser.add_argument("--precision", type=int, choices=(64, 128), default=64,
                        help="fixed-point bits per coordinate (default 64)")
    parser.add_argument("--guard-band", type=int, default=4, metavar="G",
                        help="ulps around the threshold tallied as ambiguous")
    parser.add_argument("--out", metavar="PATH",
                        help="output path (default stdout)")
    parser.add_argument("--format", choices=("csv", "text"), default="csv",
                        help="report format")
    parser.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS,
                        metavar="CAP", help="refuse point counts beyond CAP")


def _sequence_flags(parser):
    parser.add_argument("--seq", choices=("vdc", "kronecker", "sqrt_frac", "iid"),
                        default="kronecker", help="point family")
    parser.add_argument("--base", type=int, default=2, help="vdc base")
    parser.add_argument("--z", default="golden",
                        help="rotation: 'golden', p/q, or a long decimal")
    parser.add_argument("--seed", type=int, default=0, help="iid seed")
    parser.add_argument("--skip-zero", action="store_true",
                        help="start vdc at n=1 instead of n=0")


def _parse_z(text):
    if text == "golden":
        return "golden"
    if "/" in text:
        return Fraction(text)
    return text  # decimal literal; resolve_z validates digit count


def _spec_from_args(args) -> SequenceSpec:
    return SequenceSpec(args.seq, base=args.base, include_zero=not args.skip_zero,
                        z_spec=_parse_z(args.z), seed=args.seed,
                        precision=args.precision)


def _spec_label(spec: SequenceSpec) -> str:
    if spec.kind == "vdc":
        return f"b={spec.base};zero={int(spec.include_zero)}"
    if spec.kind == "kronecker":
        return f"z={spec.z_spec}"
    if spec.kind == "iid":
        return f"seed={spec.seed}"
    return ""


def _check_cap(n, cap):
    if n > cap:
        raise UsageError(f"{n} points exceeds the cap {cap}; raise --max-points")


def _open_out(args):
    if args.out:
        return open(args.out, "w", newline="")
    return sys.stdout


def _parse_list(text, conv=float):
    return [conv(part) for part in text.split(",") if part]


# --- subcommands -------------------------------------------------------------


def cmd_gen(args):
    _check_cap(args.n, args.max_points)
    batch = generate(_spec_from_args(args), args.n)
    if args.binary:
        path = args.out
        if not path:
            raise UsageError("--binary requires --out")
        with open(path, "wb") as stream:
            write_points_binary(batch, stream)
        return 0
    stream = _open_out(args)
    try:
        write_points_csv(batch, stream)
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 0


def cmd_fstat(args):
    alphas = _parse_list(args.alpha)
    svals = _parse_list(args.s)
    n_list = sorted(_parse_list(args.n, int))
    if not (alphas and svals and n_list):
        raise UsageError("need non-empty --n, --alpha and --s lists")
    _check_cap(n_list[-1], args.max_points)
    if args.points:
        mode = "rb" if args.points_format == "binary" else "r"
        with open(args.points, mode) as stream:
            if args.points_format == "binary":
                batch = read_points_binary(stream, args.precision)
            else:
                batch = read_points_csv(stream, args.precision)
        label, params = "file", args.points
        results = []
        for n in n_list:
            if n > len(batch):
                raise UsageError(f"file holds {len(batch)} points, N={n} requested")
            prefix = FixedBatch(batch.precision, batch.raw[:n])
            for alpha in alphas:
                for s in svals:
                    results.append(f_stat(prefix, s, alpha, guard_ulps=args.guard_band))
    else:
        spec = _spec_from_args(args)
        label, params = spec.kind, _spec_label(spec)
        results = f_stat_profile(spec, n_list, alphas, svals,
                                 guard_ulps=args.guard_band)
    stream = _open_out(args)
    try:
        if args.format == "csv":
            stream.write("sequence,params,N,alpha,s,threshold,count,F,"
                         "abs_err_vs_2s,ambiguous\n")
            for r in results:
                thr = float(r.threshold.distance)
                stream.write(f"{label},{params},{r.n},{r.alpha:.17g},{r.s:.17g},"
                             f"{thr:.17g},{r.ordered_pair_count},{r.f_value:.17g},"
                             f"{abs(r.f_value - 2 * r.s):.17g},{r.ambiguous_pairs}\n")
        else:
            for r in results:
                stream.write(f"N={r.n} alpha={r.alpha} s={r.s}: "
                             f"count={r.ordered_pair_count} F={r.f_value:.6f} "
                             f"ambiguous={r.ambiguous_pairs}\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 0


def cmd_gaps(args):
    _check_cap(args.n, args.max_points)
    z = _parse_z(args.z)
    orbit = kronecker_orbit(z, args.n, precision=args.precision)
    census = gap_census(orbit)
    pred = predict_gaps(z, args.n, precision=args.precision)
    stream = _open_out(args)
    try:
        if args.format == "csv":
            stream.write("length_decimal,length_raw_units,multiplicity\n")
            for length, mult in census.entries:
                stream.write(f"{format_point(length, args.precision)},{length},{mult}\n")
            stream.write("\npredicted_length_decimal,predicted_length_raw_units,label\n")
            for label, length in zip(("L1", "L2", "L3"), pred.lengths):
                stream.write(f"{format_point(length, args.precision)},{length},{label}\n")
        else:
            stream.write(f"census of {{n z}}, n = 1..{args.n} (z = {args.z}):\n")
            for length, mult in census.entries:
                stream.write(f"  length {format_point(length, args.precision)} "
                             f"({length} raw) x {mult}\n")
            stream.write(f"predicted L1={pred.l1} L2={pred.l2} L3={pred.l3} "
                         f"(k={pred.k}, m={pred.m}, r={pred.r})\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 0


def cmd_cf(args):
    if args.value == "golden":
        cf = cfmod.golden_cf(args.terms)
    else:
        value = Fraction(args.value) if "/" in args.value or "." in args.value \
            else Fraction(int(args.value))
        cf = cfmod.cf_expand(value, max_terms=args.terms)
    stream = _open_out(args)
    try:
        if args.format == "csv":
            stream.write("i,a_i,p_i,q_i\n")
            for i, (a, (p, q)) in enumerate(zip(cf.quotients, cf.convergents())):
                stream.write(f"{i},{a},{p},{q}\n")
        else:
            stream.write(str(cf) + ("\n" if cf.exact else "  (truncated)\n"))
            for i, (p, q) in enumerate(cf.convergents()):
                stream.write(f"  p_{i}/q_{i} = {p}/{q}\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 0


def cmd_ostrowski(args):
    if args.z == "golden":
        rep = cfmod.golden_ostrowski(args.n)
    else:
        cf = cfmod.cf_expand(Fraction(args.z), max_terms=128)
        rep = cfmod.ostrowski(args.n, cf)
    stream = _open_out(args)
    try:
        if args.format == "csv":
            stream.write("index,digit,weight\n")
            for j in range(len(rep.coeffs)):
                stream.write(f"{rep.indices[j]},{rep.coeffs[j]},{rep.weights[j]}\n")
        else:
            terms = " + ".join(f"{b}*{rep.weights[rep.indices.index(i)]}"
                               for i, b in rep.nonzero())
            stream.write(f"{args.n} = {terms}  (digits {rep})\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 0


def cmd_verify(args):
    failures = 0
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        report = run_suite(name)
        print("\n".join(report.lines()))
        if not report.passed:
            failures += 1
    return 1 if failures else 0


# --- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circlecorr",
        description="pair correlations, gap structure and number-theoretic "
                    "tools for sequences on the unit circle")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write points of a sequence")
    _common_flags(p)
    _sequence_flags(p)
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--binary", action="store_true",
                   help="raw little-endian fixed-point integers instead of CSV")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("fstat", help="pair correlation statistic sweep")
    _common_flags(p)
    _sequence_flags(p)
    p.add_argument("--n", required=True, help="comma-separated N list")
    p.add_argument("--alpha", default="1", help="comma-separated alpha list")
    p.add_argument("--s", default="1", help="comma-separated s list")
    p.add_argument("--points", metavar="FILE",
                   help="read points from a file written by gen")
    p.add_argument("--points-format", choices=("csv", "binary"), default="csv")
    p.set_defaults(fn=cmd_fstat)

    p = sub.add_parser("gaps", help="gap census and three-gap prediction")
    _common_flags(p)
    p.add_argument("--z", default="golden", help="rotation number")
    p.add_argument("--n", type=int, required=True, help="orbit length")
    p.set_defaults(fn=cmd_gaps)

    p = sub.add_parser("cf", help="continued fraction expansion")
    _common_flags(p)
    p.add_argument("value", help="'golden', p/q, integer, or decimal")
    p.add_argument("--terms", type=int, default=32, help="maximum quotients")
    p.set_defaults(fn=cmd_cf)

    p = sub.add_parser("ostrowski", help="digit representation of an integer")
    _common_flags(p)
    p.add_argument("n", type=int, help="integer to expand")
    p.add_argument("--z", default="golden", help="rotation defining the ladder")
    p.set_defaults(fn=cmd_ostrowski)

    p = sub.add_parser("verify", help="run a named verification suite")
    _common_flags(p)
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
