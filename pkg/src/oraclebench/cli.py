"""Command-line entry point: simulate games, compute dimensions, run
verification suites, and produce benchmark tables."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .adversary import ClassGreedyAdversary, FloodAdversary, FreeAdversary, TernaryAdversary
from .errors import OracleBenchError
from .game import GameConfig, run_game, save_transcript, validate_transcript
from .hypotheses import HypothesisClass, load_class_file
from .learner import CreateAdvancedLearner, PredictLearner, mistake_bound
from .littlestone import SOALearner, find_shattered_tree, format_tree, ldim
from .verification import (
    CheckResult,
    threshold_pair_classes,
    verify_advanced,
    verify_lower,
    verify_prefix,
    verify_props,
    verify_upper,
)


def _parse_adversary(spec: str):
    kind, _, arg = spec.partition(":")
    if kind == "free":
        return FreeAdversary(), None, None
    if kind == "flood":
        d = int(arg)
        return FloodAdversary(d), d, None
    if kind == "ternary":
        d = int(arg)
        return TernaryAdversary(d), d, None
    if kind == "class-greedy":
        c = load_class_file(arg)
        return ClassGreedyAdversary(c), ldim(c), c
    raise argparse.ArgumentTypeError(
        f"unknown adversary {spec!r}; expected flood:<d>, ternary:<d>, "
        f"class-greedy:<classfile>, or free"
    )


def _parse_learner(spec: str, cls: HypothesisClass | None):
    if spec == "predict":
        return PredictLearner()
    if spec == "soa":
        if cls is None:
            raise argparse.ArgumentTypeError(
                "the soa learner needs a class: use --class-file or a "
                "class-greedy adversary"
            )
        return SOALearner(cls)
    kind, _, arg = spec.partition(":")
    if kind == "create-adv":
        return CreateAdvancedLearner(int(arg))
    raise argparse.ArgumentTypeError(
        f"unknown learner {spec!r}; expected predict, create-adv:<k>, or soa"
    )


def cmd_simulate(args: argparse.Namespace) -> int:
    adversary, inferred_d, cls = _parse_adversary(args.adversary)
    if args.class_file:
        cls = load_class_file(args.class_file)
    learner = _parse_learner(args.learner, cls)
    d = args.d if args.d is not None else inferred_d
    config = GameConfig(d=d, round_cap=args.cap, seed=args.seed, validation=args.validate)
    transcript = run_game(learner, adversary, config)
    report = validate_transcript(transcript)
    if args.out:
        save_transcript(transcript, args.out)
    status = "ok" if report.passed else f"INVALID ({report.first_failure})"
    print(
        f"mistakes={transcript.mistake_count} rounds={len(transcript.rounds)} "
        f"stopped_by={transcript.stopped_by} validation={status}"
        + (f" transcript={args.out}" if args.out else "")
    )
    return 0 if report.passed else 1


def cmd_ldim(args: argparse.Namespace) -> int:
    c = load_class_file(args.classfile)
    dim = ldim(c)
    print(dim)
    if args.certificate and dim >= 1:
        tree = find_shattered_tree(c, dim)
        print(format_tree(tree))
    return 0


_SUITES = {
    "advanced": lambda arg, args: verify_advanced(int(arg), seed=args.seed),
    "prefix": lambda arg, args: verify_prefix(int(arg)),
    "lower": lambda arg, args: verify_lower(int(arg), seed=args.seed),
    "upper": lambda arg, args: verify_upper(int(arg), seed=args.seed),
    "props": lambda arg, args: verify_props(seed=args.seed),
}


def cmd_verify(args: argparse.Namespace) -> int:
    kind, _, arg = args.check.partition(":")
    if kind not in _SUITES or (kind != "props" and not arg):
        print(f"unknown check {args.check!r}; expected advanced:<k>, prefix:<k>, "
              f"lower:<d>, upper:<d>, or props", file=sys.stderr)
        return 2
    results: list[CheckResult] = _SUITES[kind](arg, args)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.detail}")
    return 0 if all(r.ok for r in results) else 1


def _bench_cell(learner_spec: str, adversary_spec: str, d: int, seed: int):
    """One benchmark row; returns (mistakes, bound, rounds) or a failure note."""
    if adversary_spec == "ternary":
        adversary, bound, cap = TernaryAdversary(d), 3**d, 3**d + 10
        cls = None
    elif adversary_spec == "flood":
        n = 2 ** (d + 1) - 1
        adversary, bound, cap = FloodAdversary(d), n, n + 10
        cls = None
    elif adversary_spec == "class-greedy":
        if d != 1:
            raise OracleBenchError("class-greedy rows are enumerated for d = 1 only")
        classes = threshold_pair_classes(8)
        bound = mistake_bound(d) if learner_spec == "predict" else d
        worst = rounds = 0
        for c in classes:
            learner = _parse_learner(learner_spec, c)
            t = run_game(learner, ClassGreedyAdversary(c), GameConfig(d=d, round_cap=bound + 29, seed=seed))
            worst = max(worst, t.mistake_count)
            rounds += len(t.rounds)
        return worst, bound, rounds
    else:
        raise OracleBenchError(f"unknown bench adversary {adversary_spec!r}")
    learner = _parse_learner(learner_spec, cls)
    t = run_game(learner, adversary, GameConfig(d=d, round_cap=cap, seed=seed))
    return t.mistake_count, bound, len(t.rounds)


def cmd_bench(args: argparse.Namespace) -> int:
    lo, _, hi = args.dims.partition("-")
    dims = range(int(lo), int(hi or lo) + 1)
    rows = ["d\tlearner\tadversary\tmistakes\tbound\trounds\truntime_s"]
    failed = False
    for d in dims:
        for learner_spec in args.learners.split(","):
            for adversary_spec in args.adversaries.split(","):
                start = time.perf_counter()
                try:
                    mistakes, bound, rounds = _bench_cell(learner_spec, adversary_spec, d, args.seed)
                    elapsed = time.perf_counter() - start
                    rows.append(
                        f"{d}\t{learner_spec}\t{adversary_spec}\t{mistakes}\t{bound}\t{rounds}\t{elapsed:.3f}"
                    )
                except OracleBenchError as exc:
                    failed = True
                    rows.append(f"{d}\t{learner_spec}\t{adversary_spec}\tERROR\t{exc}\t-\t-")
    table = "\n".join(rows) + "\n"
    if args.out:
        Path(args.out).write_text(table)
        print(f"wrote {len(rows) - 1} rows to {args.out}")
    else:
        print(table, end="")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oraclebench",
        description="Online learning with a consistent oracle: games, "
        "dimensions, and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one learner-vs-adversary game")
    sim.add_argument("--learner", required=True, help="predict | create-adv:<k> | soa")
    sim.add_argument("--adversary", required=True,
                     help="flood:<d> | ternary:<d> | class-greedy:<classfile> | free")
    sim.add_argument("--d", type=int, default=None, help="declared dimension bound")
    sim.add_argument("--cap", type=int, default=1000, help="maximum rounds to play")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", default=None, help="write the transcript here")
    sim.add_argument("--validate", choices=["consistency", "full"], default="consistency")
    sim.add_argument("--class-file", default=None, help="class for the soa learner")
    sim.set_defaults(func=cmd_simulate)

    dim = sub.add_parser("ldim", help="exact Littlestone dimension of a class file")
    dim.add_argument("classfile")
    dim.add_argument("--certificate", action="store_true",
                     help="also print a shattered tree of maximal depth")
    dim.set_defaults(func=cmd_ldim)

    ver = sub.add_parser("verify", help="run a named verification suite")
    ver.add_argument("check", help="advanced:<k> | prefix:<k> | lower:<d> | upper:<d> | props")
    ver.add_argument("--seed", type=int, default=0)
    ver.set_defaults(func=cmd_verify)

    bench = sub.add_parser("bench", help="benchmark table over a dimension range")
    bench.add_argument("--dims", default="1-2", help="dimension range, e.g. 1-4")
    bench.add_argument("--learners", default="predict")
    bench.add_argument("--adversaries", default="ternary,flood")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out", default=None)
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OracleBenchError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
