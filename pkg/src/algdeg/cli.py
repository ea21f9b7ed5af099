"""
Command-line interface.

    algdeg degree -n 2 --bits 0001
    algdeg degree -n 6 --hex 0000000000000001 --explain
    algdeg anf -n 3 --bits 01010101 --format bits
    algdeg wlo 4
    algdeg masks 3
    algdeg dist 4
    algdeg bench --words 1000000 --nvars 8 --nvars 12 --runs 3
    algdeg verify exhaustive

Truth-table strings are read left to right as f_0, f_1, ..., f_{2^n-1}.
Hex words are given word 0 first; bit b of word w is f_{64w+b}.

Exit status: 0 success, 1 a computation mismatch, 2 a usage or input error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import bench, verify
from .anft import anft_bitwise, anft_bytewise
from .core import (
    LengthMismatch,
    TruthTable,
    from_bitstring,
    from_hex_words,
    pack,
    parity_check,
    read_binary,
    to_bitstring,
    unpack,
    word_count,
)
from .degree import (
    NEG_INF,
    PipelineKind,
    Tail,
    deg_wlo_bitwise,
    method_bitwise,
    method_bytewise,
    to_int,
)
from .distribution import FORMULA_MAX_N, count_formula, high_degree_fraction
from .wlo import MAX_SEQUENCE_N, masks_direct, masks_from_wlo, wlo_bucket, wlo_recursive

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_input(args) -> TruthTable:
    sources = [s for s in (args.bits, args.hex, args.file) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --bits, --hex, --file")
    if args.bits is not None:
        return from_bitstring(args.bits, args.nvars)
    if args.nvars is None:
        raise UsageError("-n/--nvars is required with --hex and --file")
    if args.hex is not None:
        tokens = [t for part in args.hex for t in part.replace(",", " ").split()]
        return from_hex_words(tokens, args.nvars)
    return read_binary(args.file, args.nvars)


def _format_degree(deg, symbolic: bool) -> str:
    if symbolic and deg is NEG_INF:
        return "-inf"
    return str(to_int(deg))


def _hex_words(words, n) -> str:
    digits = max(1, (1 << n) // 4) if n < 6 else 16
    return " ".join(f"0x{int(w):0{digits}x}" for w in words)


def cmd_degree(args) -> int:
    tt = _read_input(args)
    n = tt.n
    tail = Tail(args.tail or "wlo")
    use_pc = not args.no_pc
    if args.repr == "bitwise":
        if tail is Tail.ES:
            raise UsageError("--tail es needs --repr bytewise")
        masks = masks_direct(n) if tail is Tail.WLO else None
        seq = wlo_bucket(n) if tail is Tail.CBWLO else None
        deg = method_bitwise(tt, masks, seq, tail, use_pc=use_pc)
    else:
        if tail is Tail.CBWLO:
            raise UsageError("--tail cbwlo needs --repr bitwise")
        seq = wlo_bucket(n) if tail is Tail.WLO else None
        deg = method_bytewise(unpack(tt), seq, tail, use_pc=use_pc)
    print(_format_degree(deg, args.symbolic))
    if args.explain:
        parity = parity_check(tt)
        skipped = use_pc and parity == 1
        print(f"parity: {parity}")
        print(f"anft: {'skipped' if skipped else 'computed'}")
        if skipped:
            print(f"layer: {n} (odd weight)")
        else:
            anf = anft_bitwise(tt)
            hit = deg_wlo_bitwise(anf, masks_direct(n))
            print(f"layer: {'none' if hit is NEG_INF else hit}")
    return EXIT_OK


def cmd_anf(args) -> int:
    tt = _read_input(args)
    anf = anft_bitwise(tt) if args.repr == "bitwise" else pack(anft_bytewise(unpack(tt)))
    if args.format == "bits":
        print(to_bitstring(anf))
    else:
        print(_hex_words(anf.words, anf.n))
    return EXIT_OK


def _check_seq_n(n):
    if not 1 <= n <= MAX_SEQUENCE_N:
        raise UsageError(f"n must be in 1..{MAX_SEQUENCE_N}")


def cmd_wlo(args) -> int:
    _check_seq_n(args.n)
    seq = (wlo_bucket if args.route == "bucket" else wlo_recursive)(args.n)
    print(", ".join(map(str, seq.order.tolist())))
    return EXIT_OK


def cmd_masks(args) -> int:
    _check_seq_n(args.n)
    masks = masks_direct(args.n) if args.route == "direct" else masks_from_wlo(wlo_bucket(args.n))
    for row in masks.masks:
        print(_hex_words(row, args.n))
    return EXIT_OK


def cmd_dist(args) -> int:
    n = args.n
    if not 1 <= n <= FORMULA_MAX_N:
        raise UsageError(f"n must be in 1..{FORMULA_MAX_N}")
    print("k\td(n,k)")
    print("-inf\t1")
    for k in range(n + 1):
        print(f"{k}\t{count_formula(n, k)}")
    frac = high_degree_fraction(n)
    print(f"fraction of degree n or n-1: {frac.numerator}/{frac.denominator}")
    return EXIT_OK


def _parse_pipelines(specs):
    if not specs:
        return list(PipelineKind)
    kinds = []
    for spec in specs:
        for label in spec.split(","):
            if label.strip():
                kinds.append(PipelineKind.from_label(label.strip()))
    return kinds


def cmd_bench(args) -> int:
    words = bench.PROTOCOL_WORDS if args.full_protocol else args.words
    nvars = args.nvars or list(bench.PROTOCOL_NVARS if args.full_protocol else bench.DEFAULT_NVARS)
    for n in nvars:
        if not 6 <= n <= MAX_SEQUENCE_N:
            raise UsageError(f"benchmark n must be in 6..{MAX_SEQUENCE_N}")
        if words < word_count(n):
            raise UsageError(f"{words} words hold no function of {n} variables")
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    rows = bench.run_bench(args.seed, words, nvars, _parse_pipelines(args.pipelines), args.runs)
    text = bench.report(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    bad = bench.checksum_mismatches(rows)
    if bad:
        print(f"checksum mismatch between pipelines for n={bad}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args) -> int:
    failures = verify.run(args.level, seed=args.seed)
    if failures:
        print(f"{len(failures)} check(s) failed", file=sys.stderr)
        return EXIT_MISMATCH
    print("all checks passed")
    return EXIT_OK


def _add_input(p):
    p.add_argument("-n", "--nvars", type=int, help="number of variables")
    p.add_argument("--bits", help="truth table as a 0/1 string, f_0 first")
    p.add_argument("--hex", nargs="+", help="truth table as 64-bit hex words, word 0 first")
    p.add_argument("--file", help="binary file of little-endian 64-bit words")
    p.add_argument("--repr", choices=("bitwise", "bytewise"), default="bitwise")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="algdeg", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", help="algebraic degree of one function")
    _add_input(p)
    p.add_argument("--tail", choices=[t.value for t in Tail],
                   help="search after the ANFT (default wlo)")
    p.add_argument("--no-pc", action="store_true", help="skip the parity short-cut")
    p.add_argument("--explain", action="store_true")
    p.add_argument("--symbolic", action="store_true", help="print -inf for the zero function")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("anf", help="ANF coefficient vector of one function")
    _add_input(p)
    p.add_argument("--format", choices=("hex", "bits"), default="hex")
    p.set_defaults(func=cmd_anf)

    p = sub.add_parser("wlo", help="weight-lexicographic order of {0,1}^n")
    p.add_argument("n", type=int)
    p.add_argument("--route", choices=("bucket", "recursive"), default="bucket")
    p.set_defaults(func=cmd_wlo)

    p = sub.add_parser("masks", help="layer masks, layer 0 first")
    p.add_argument("n", type=int)
    p.add_argument("--route", choices=("direct", "wlo"), default="direct")
    p.set_defaults(func=cmd_masks)

    p = sub.add_parser("dist", help="number of functions of each degree")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("bench", help="time the eight pipelines, CSV output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--words", type=int, default=bench.DEFAULT_WORDS)
    p.add_argument("--nvars", type=int, action="append")
    p.add_argument("--pipelines", action="append",
                   help="comma-separated labels, e.g. bitwise:PC+ANFT+WLO (default all)")
    p.add_argument("--runs", type=int, default=bench.DEFAULT_RUNS)
    p.add_argument("--full-protocol", action="store_true",
                   help=f"{bench.PROTOCOL_WORDS} words and n in {list(bench.PROTOCOL_NVARS)}")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="run the self-checks")
    p.add_argument("level", choices=("quick", "exhaustive"), nargs="?", default="quick")
    p.add_argument("--seed", type=int, default=2020)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except LengthMismatch as e:
        print(f"algdeg: length mismatch: {e}", file=sys.stderr)
    except (UsageError, ValueError, OSError) as e:
        print(f"algdeg: error: {e}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
