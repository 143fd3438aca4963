"""Command-line interface: classify and verify games, sample corpora, and
run the Monte Carlo sweeps with CSV output.

Exit codes for `classify`: 0 both perfect, 1 Q-perfect only, 2 neither,
10 classifier disagreement, 64 parse/usage error, 70 other failure.
"""

import argparse
import sys
from fractions import Fraction

from . import experiments
from .classify import cross_check
from .errors import (
    ClassifierDisagreement,
    LengthMismatch,
    ParseError,
    XorGamesError,
)
from .games import (
    Dedup,
    format_game,
    game_from_clause_array,
    parse_game,
    sample_clause_array,
    sampler_rng,
)
from .strategies import MerpStrategy, is_perfect_merp, merp_score, simulate_merp

EXIT_USAGE = 64
EXIT_MISMATCH = 65
EXIT_FAILURE = 70
EXIT_DISAGREE = 10


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_int_range(text):
    """`a:b` inclusive range, or a single integer."""
    if ":" in text:
        lo, hi = text.split(":", 1)
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def _parse_ratio_range(text):
    """`a:b:step` ratio grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected a:b:step, got {text!r}")
    lo, hi, step = (float(p) for p in parts)
    if not (0 < lo <= hi and step > 0):
        raise ValueError(f"invalid ratio grid {text!r}")
    return lo, hi, step


def _parse_n_list(text):
    return [int(p) for p in text.split(",") if p]


def _read_game(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_game(fh.read())


def _read_strategy(path, expected_len):
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split()
    if len(tokens) != expected_len:
        raise LengthMismatch(
            f"strategy has {len(tokens)} entries, expected {expected_len}"
        )
    entries = []
    for no, tok in enumerate(tokens, start=1):
        try:
            entries.append(Fraction(tok))
        except (ValueError, ZeroDivisionError):
            raise ParseError(no, f"bad rational token {tok!r}")
    return MerpStrategy.from_entries(entries)


def _fmt_fraction(v):
    return str(v)


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def _cmd_classify(args):
    game = _read_game(args.game)
    result = cross_check(game)
    merp = (
        " ".join(_fmt_fraction(v) for v in result.merp)
        if result.merp is not None
        else "none"
    )
    classical = (
        " ".join(str(v) for v in result.classical)
        if result.classical is not None
        else "none"
    )
    print(f"n: {game.n}")
    print(f"m: {game.m}")
    print(f"q_perfect: {str(result.q_perfect).lower()}")
    print(f"c_perfect: {str(result.c_perfect).lower()}")
    print(f"pseudotelepathy: {str(result.pseudotelepathy).lower()}")
    print(f"merp: {merp}")
    print(f"classical: {classical}")
    print("agreement: hnf snf dual consistent")
    if result.q_perfect and result.c_perfect:
        return 0
    if result.q_perfect:
        return 1
    return 2


def _cmd_verify(args):
    game = _read_game(args.game)
    strat = _read_strategy(args.strategy, 3 * game.n)
    perfect = is_perfect_merp(game, strat)
    formula = merp_score(game, strat)
    sim = sum(simulate_merp(game, strat)) / game.m
    print(f"perfect: {str(perfect).lower()}")
    print(f"score_formula: {formula:.9g}")
    print(f"score_simulator: {sim:.9g}")
    print(f"difference: {abs(formula - sim):.3g}")
    return 0


def _cmd_sample(args):
    dedup = Dedup(args.dedup)
    for i in range(args.count):
        rng = sampler_rng(args.seed, args.n, args.m, dedup, trial=i)
        arr = sample_clause_array(args.n, args.m, rng, dedup)
        game = game_from_clause_array(args.n, arr)
        path = f"{args.out}_{i:03d}.txt"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(format_game(game))
        print(path)
    return 0


def _write_csv(table, args, manifest):
    stream, close = _open_out(args.out)
    try:
        experiments.write_table(table, stream, manifest)
    finally:
        if close:
            stream.close()


def _cmd_sweep(args):
    lo, hi, step = _parse_ratio_range(args.ratio)
    table = experiments.sweep_grid(
        _parse_n_list(args.n),
        lo,
        hi,
        step,
        args.samples,
        args.seed,
        Dedup(args.dedup),
        args.threads,
    )
    manifest = (
        f"command=sweep n={args.n} ratio={args.ratio} "
        f"samples={args.samples} seed={args.seed} dedup={args.dedup}"
    )
    _write_csv(table, args, manifest)
    return 0


def _cmd_crosssection(args):
    m_min, m_max = _parse_int_range(args.m)
    table = experiments.cross_section(
        args.n,
        m_min,
        m_max,
        args.samples,
        args.seed,
        Dedup(args.dedup),
        args.threads,
    )
    manifest = (
        f"command=crosssection n={args.n} m={args.m} "
        f"samples={args.samples} seed={args.seed} dedup={args.dedup}"
    )
    _write_csv(table, args, manifest)
    return 0


def _cmd_maxpseudo(args):
    m_min, m_max = _parse_int_range(args.m)
    dedup = Dedup(args.dedup)
    table = experiments.cross_section(
        args.n, m_min, m_max, args.samples, args.seed, dedup, args.threads
    )
    peak = experiments.max_pseudotelepathy(
        args.n, m_min, m_max, args.samples, args.seed, dedup, table=table
    )
    manifest = (
        f"command=maxpseudo n={args.n} m={args.m} "
        f"samples={args.samples} seed={args.seed} dedup={args.dedup}"
    )
    if args.out not in (None, "-"):
        _write_csv(table, args, manifest)
    print(
        f"n={peak.n} m_star={peak.m_star} mu={peak.mu:.9g} "
        f"samples={peak.samples}"
    )
    return 0


def _add_common(sub, with_threads=True):
    sub.add_argument("--samples", type=int, default=1000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--dedup", choices=["triple", "full"], default="triple")
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    if with_threads:
        sub.add_argument(
            "--threads", type=int, default=1, help="worker count, 0 = auto"
        )


def build_parser():
    parser = _Parser(prog="xorgames", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("classify", parents=[], help="classify a game file")
    p.add_argument("game")
    p.set_defaults(func=_cmd_classify)

    p = subs.add_parser("verify", help="verify a strategy against a game")
    p.add_argument("game")
    p.add_argument("strategy")
    p.set_defaults(func=_cmd_verify)

    p = subs.add_parser("sample", help="write random game files")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dedup", choices=["triple", "full"], default="triple")
    p.add_argument("--out", default="game", help="output file prefix")
    p.set_defaults(func=_cmd_sample)

    p = subs.add_parser("sweep", help="probability sweep over an (n, ratio) grid")
    p.add_argument("--n", required=True, help="comma-separated n list")
    p.add_argument("--ratio", required=True, help="ratio grid a:b:step")
    _add_common(p)
    p.set_defaults(func=_cmd_sweep)

    p = subs.add_parser("crosssection", help="probability scan over m at fixed n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", required=True, help="m range a:b")
    _add_common(p)
    p.set_defaults(func=_cmd_crosssection)

    p = subs.add_parser("maxpseudo", help="pseudotelepathy maximum at fixed n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", required=True, help="m range a:b")
    _add_common(p)
    p.set_defaults(func=_cmd_maxpseudo)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ValueError as exc:
        print(f"xorgames: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"xorgames: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"xorgames: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LengthMismatch as exc:
        print(f"xorgames: error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ClassifierDisagreement as exc:
        print(f"xorgames: error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except FileNotFoundError as exc:
        print(f"xorgames: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except XorGamesError as exc:
        print(f"xorgames: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
