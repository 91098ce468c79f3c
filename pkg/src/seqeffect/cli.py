"""Command-line front end.

Subcommands: ``entropy``, ``refine``, ``check-theorem``, ``axioms``,
``logsum`` and ``example-2-3``.  Results go to stdout as an aligned table;
``--json PATH`` also writes a machine-readable report.

Exit codes: 0 success, 1 a verdict failed, 2 bad input or flags,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from typing import Optional, Sequence

import numpy as np

from . import __version__, spectral
from .core import InconsistentRefinement, SeaError
from .entropy import EntropyOptions, cond_entropy, entropy, eval_state, refinement_entropy
from .serialization import (
    ProblemError,
    build_report,
    dump_problem,
    file_digest,
    load_problem,
    write_json,
)
from .verify import (
    CampaignConfig,
    RetriesExhausted,
    check_sea_axioms,
    run_log_sum_fuzz,
    run_theorem_campaign,
    scenario_example_2_3,
    scenario_nondistributivity,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple:
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return values


def _default_seed() -> int:
    raw = os.environ.get("SEA_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"SEA_SEED={raw!r} is not an integer") from None


def _print_table(rows: Sequence[tuple], out=None) -> None:
    out = out or sys.stdout
    rows = [tuple(str(c) for c in r) for r in rows]
    if not rows:
        return
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip(), file=out)


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "PASS" if x else "FAIL"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _emit(args, report: dict) -> None:
    if getattr(args, "json", None):
        write_json(args.json, report)


# --------------------------------------------------------------------------
# subcommands


def cmd_entropy(args) -> int:
    problem = load_problem(args.input)
    opts = problem.options
    if args.base is not None:
        opts = EntropyOptions(args.base)
    names = args.partitions
    if not 1 <= len(names) <= 2:
        raise UsageError("give one or two partition names")
    A = problem.partition(names[0])
    s = problem.state
    results = {f"H({names[0]})": entropy(s, A, opts)}
    verdicts = {}
    if len(names) == 2:
        B = problem.partition(names[1])
        a, b = names
        h_ab = refinement_entropy(s, A, B, opts)
        h_b_a = cond_entropy(s, B, A, opts)
        r1 = h_ab - h_b_a - results[f"H({a})"]
        results[f"H({a}o{b})"] = h_ab
        results[f"H({b}|{a})"] = h_b_a
        results["r1"] = r1
        verdicts["chain_rule"] = abs(r1) <= problem.tol
    command = {
        "name": "entropy",
        "input_sha256": file_digest(args.input),
        "partitions": list(names),
        "log_base": opts.log_base,
    }
    rows = [("quantity", "value (base %g)" % opts.log_base)]
    rows += [(k, _fmt(v)) for k, v in results.items()]
    rows += [(k, _fmt(v)) for k, v in verdicts.items()]
    _print_table(rows)
    _emit(args, build_report(command, results, verdicts))
    return EXIT_OK if all(verdicts.values()) else EXIT_VIOLATION


def cmd_refine(args) -> int:
    problem = load_problem(args.input)
    A = problem.partition(args.left)
    B = problem.partition(args.right)
    name = args.name or f"{args.left}o{args.right}"
    problem.partitions[name] = problem.sea.refine(A, B)
    out = dump_problem(problem)
    write_json(args.out, out)
    rows = [("index", "pair", "s(element)")]
    for k, el in enumerate(problem.partitions[name]):
        i, j = divmod(k, len(B))
        rows.append((k, f"{args.left}[{i}] o {args.right}[{j}]", _fmt(eval_state(problem.state, el))))
    _print_table(rows)
    print(f"wrote partition {name!r} ({len(problem.partitions[name])} elements) to {args.out}")
    command = {
        "name": "refine",
        "input_sha256": file_digest(args.input),
        "left": args.left,
        "right": args.right,
        "output_name": name,
    }
    results = {"partition": name, "elements": out["partitions"][name]}
    _emit(args, build_report(command, results, {}))
    return EXIT_OK


def cmd_check_theorem(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        config = CampaignConfig(
            instance=args.instance,
            dim=args.dim,
            trials=args.trials,
            seed=seed,
            sizes=args.sizes,
            size_pool=args.size_pool,
            tol=args.tol,
            log_base=args.base,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.workers < 1:
        raise UsageError("--workers must be positive")
    report = run_theorem_campaign(config, workers=args.workers)
    rows = [("law", "passed", "failed", "worst", "worst trial")]
    for name, tally in report.laws.items():
        rows.append((name, tally.passed, tally.failed, _fmt(tally.worst), tally.worst_trial))
    _print_table(rows)
    print(f"{report.trials_passed}/{config.trials} trials passed, "
          f"{report.generator_errors} generator errors, {report.redraws} redraws, "
          f"{report.runtime_s:.2f}s")
    if report.failing_trials:
        first = report.failing_trials[0]
        print(f"reproduce: seed={config.seed} trial={first}", file=sys.stderr)
    command = {"name": "check-theorem", **config.to_dict()}
    results = report.to_dict()
    verdicts = {name: t.failed == 0 for name, t in report.laws.items()}
    verdicts["no_generator_errors"] = report.generator_errors == 0
    timing = {"runtime_s": report.runtime_s} if args.timing else None
    _emit(args, build_report(command, results, verdicts, timing))
    return EXIT_OK if report.all_passed else EXIT_VIOLATION


def cmd_axioms(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    report = check_sea_axioms(args.instance, args.dim, args.trials, np.random.default_rng(seed))
    rows = [("axiom", "passed", "failed", "worst deviation", "tolerance")]
    for name, tally in report.laws.items():
        rows.append((name, tally.passed, tally.failed, _fmt(tally.worst), _fmt(report.tolerances[name])))
    _print_table(rows)
    command = {"name": "axioms", "instance": args.instance, "dim": args.dim,
               "trials": args.trials, "seed": seed}
    verdicts = {name: t.failed == 0 for name, t in report.laws.items()}
    _emit(args, build_report(command, report.to_dict(), verdicts))
    return EXIT_OK if report.all_passed else EXIT_VIOLATION


def cmd_logsum(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    report = run_log_sum_fuzz(args.trials, np.random.default_rng(seed), max_len=args.max_len)
    _print_table([
        ("trials", report.trials),
        ("min residual", _fmt(report.min_residual)),
        ("at trial", report.argmin_trial),
        ("infinite residuals", report.infinite),
        ("max |equality-case residual|", _fmt(report.equality_max)),
    ])
    verdicts = {"nonnegative": report.min_residual >= -args.tol,
                "equality_case": report.equality_max <= args.tol}
    command = {"name": "logsum", "trials": args.trials, "seed": seed,
               "max_len": args.max_len, "tol": args.tol}
    _print_table([(k, _fmt(v)) for k, v in verdicts.items()])
    _emit(args, build_report(command, report.to_dict(), verdicts))
    return EXIT_OK if all(verdicts.values()) else EXIT_VIOLATION


def cmd_example_2_3(args) -> int:
    records = [scenario_example_2_3(), scenario_nondistributivity()]
    rows = [("scenario", "claim", "verdict")]
    verdicts = {}
    for rec in records:
        for claim, ok in rec.verdicts.items():
            rows.append((rec.id, claim, _fmt(ok)))
            verdicts[f"{rec.id}.{claim}"] = ok
    _print_table(rows)
    ex = records[0].values
    print(f"H(A) = {ex['H_A']:.12g}, H(B|A) = {ex['H_B_given_A']:.12g}, H(AoB) = {ex['H_AB']:.12g} bits")
    results = {rec.id: rec.values for rec in records}
    _emit(args, build_report({"name": "example-2-3"}, results, verdicts))
    return EXIT_OK if all(verdicts.values()) else EXIT_VIOLATION


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqeffect",
        description="Partitions, sequential refinements and entropies on sequential effect algebras.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=False):
        p.add_argument("--json", metavar="PATH", help="also write a JSON report here")
        if seed:
            p.add_argument("--seed", type=int, default=None,
                           help="master seed (default: $SEA_SEED, else 0)")

    p = sub.add_parser("entropy", help="H(A); with two names also H(AoB), H(B|A) and the chain-rule gap")
    p.add_argument("input", help="problem JSON file")
    p.add_argument("partitions", nargs="+", metavar="NAME")
    p.add_argument("--base", type=float, default=None, help="log base (default: file option, else 2)")
    common(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("refine", help="write the refinement LEFT o RIGHT as a new partition")
    p.add_argument("input")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--out", required=True, help="output problem JSON file")
    p.add_argument("--name", help="name of the new partition (default LEFToRIGHT)")
    common(p)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("check-theorem", help="randomized campaign over the six entropy laws")
    p.add_argument("--instance", choices=["boolean", "fuzzy", "quantum"], default="quantum")
    p.add_argument("--dim", type=int, default=3, help="ground size or Hilbert dimension")
    p.add_argument("--sizes", type=_int_list, default=(2, 3, 2), help="sizes of A,B,C (default 2,3,2)")
    p.add_argument("--size-pool", type=_int_list, default=None,
                   help="draw each partition size per trial from this list instead")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--base", type=float, default=2.0)
    p.add_argument("--workers", type=int, default=1, help="worker processes; results do not depend on it")
    p.add_argument("--timing", action="store_true", help="add a timing field to the JSON report")
    common(p, seed=True)
    p.set_defaults(func=cmd_check_theorem)

    p = sub.add_parser("axioms", help="randomized checks of the sequential effect algebra axioms")
    p.add_argument("--instance", choices=["boolean", "fuzzy", "quantum"], default="quantum")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=500)
    common(p, seed=True)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("logsum", help="fuzz the log sum inequality")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--max-len", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-12)
    common(p, seed=True)
    p.set_defaults(func=cmd_logsum)

    p = sub.add_parser("example-2-3", help="meet-based versus sequential refinement on C^2")
    common(p)
    p.set_defaults(func=cmd_example_2_3)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", spectral.ClipWarning)
            return args.func(args)
    except (ProblemError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (spectral.SpectralError, InconsistentRefinement, RetriesExhausted) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SeaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
