"""Command-line interface for the verification suite.

Exit codes: 0 all checks pass, 1 any identity failure, 2 usage error,
3 enumeration budget refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import oracle, partitions, sampler, verify
from .sampler import PartitionSampler, SamplerConfig
from .verify import VerificationReport, VerifierConfig, fmt_rat

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def parse_rational(text: str) -> Fraction:
    """Parse 'a/b' or a plain integer string."""
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _emit_reports(reports: list[VerificationReport], as_json: bool) -> int:
    if as_json:
        print(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            params = " ".join(f"{k}={v}" for k, v in sorted(r.parameters.items()))
            line = f"[{r.status.upper():4}] {r.check_name} ({r.kind}) {params}"
            if r.detail:
                line += f" -- {r.detail}"
            print(line)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _print_series(name: str, series, as_json: bool) -> None:
    coeffs = [fmt_rat(c) for c in series.coeffs]
    if as_json:
        print(json.dumps({"series": name, "coefficients": coeffs}, indent=2))
    else:
        for k, c in enumerate(coeffs):
            print(f"u^{k}: {c}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clpartitions",
        description=(
            "Exact verification of generating-function identities for "
            "mutually annihilating matrices over finite fields, and of the "
            "Cohen-Lenstra partition sampler."
        ),
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument(
        "suite", choices=["eq1", "eq2", "lemmas", "sampler", "all"]
    )
    p_verify.add_argument("--order", type=int, default=8, help="series truncation order")
    p_verify.add_argument("--n-max", type=int, default=3, help="largest oracle dimension")
    p_verify.add_argument("--budget", type=int, default=oracle.DEFAULT_OUTER_BUDGET)
    p_verify.add_argument("--u", type=parse_rational, default=Fraction(1, 2))
    p_verify.add_argument("--seed", type=int, default=1)
    p_verify.add_argument("--trials", type=int, default=100_000)
    p_verify.add_argument(
        "--include-n4", action="store_true", help="add the long n=4, p=2 oracle runs"
    )

    p_series = sub.add_parser("series", help="print exact series coefficients")
    p_series.add_argument(
        "which", choices=["eq1-rhs", "eq2-rhs", "eq1-middle", "eq2-middle"]
    )
    p_series.add_argument("--q", type=parse_rational, required=True)
    p_series.add_argument("--order", type=int, default=8)

    p_oracle = sub.add_parser("oracle", help="brute-force matrix counts")
    p_oracle.add_argument(
        "which", choices=["count-pairs", "count-nilpotent-pairs", "by-type"]
    )
    p_oracle.add_argument("--n", type=int, required=True)
    p_oracle.add_argument("--p", type=int, required=True)
    p_oracle.add_argument("--budget", type=int, default=oracle.DEFAULT_OUTER_BUDGET)

    p_sample = sub.add_parser("sample", help="draw random partitions")
    p_sample.add_argument("--q", type=int, required=True)
    p_sample.add_argument("--u", type=parse_rational, required=True)
    p_sample.add_argument("--seed", type=int, default=1)
    p_sample.add_argument("--trials", type=int, default=10)
    return parser


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "all":
        config = VerifierConfig(
            u=args.u,
            order=args.order,
            n_max=args.n_max,
            trials=args.trials,
            seed=args.seed,
            budget=args.budget,
            include_n4=args.include_n4,
        )
        return _emit_reports(verify.run_all(config), args.json)
    reports: list[VerificationReport] = []
    if args.suite == "eq1":
        for q in (2, 3):
            reports.append(
                verify.run_eq1_check(q, args.n_max, args.order, args.budget)[0]
            )
    elif args.suite == "eq2":
        for q in (2, 3):
            reports.append(
                verify.run_eq2_check(q, args.n_max, args.order, args.budget)[0]
            )
    elif args.suite == "lemmas":
        for p in (2, 3):
            for n in range(1, 4):
                reports.append(verify.run_lemma2_check(n, p, args.budget))
                reports.append(verify.run_lemma3_check(n, p, args.budget))
                reports.append(verify.run_jordan_type_count_check(n, p, args.budget))
    elif args.suite == "sampler":
        cfg = SamplerConfig(q=2, u=args.u, seed=args.seed, trials=args.trials)
        reports.append(verify.run_kernel_row_check(2, args.u))
        reports.append(verify.run_corollary_consistency_check(2, args.u))
        reports.append(verify.run_sampler_check(cfg)[0])
    return _emit_reports(reports, args.json)


def _cmd_series(args: argparse.Namespace) -> int:
    builders = {
        "eq1-rhs": verify.eq1_rhs_series,
        "eq2-rhs": verify.eq2_rhs_series,
        "eq1-middle": partitions.eq1_middle_series,
        "eq2-middle": partitions.eq2_middle_series,
    }
    _print_series(args.which, builders[args.which](args.q, args.order), args.json)
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    if args.which == "count-pairs":
        result = oracle.count_pairs(args.n, args.p, args.budget)
        print(
            json.dumps({"count": result}) if args.json else f"{result}"
        )
    elif args.which == "count-nilpotent-pairs":
        result = oracle.count_nilpotent_pairs(args.n, args.p, args.budget)
        print(json.dumps({"count": result}) if args.json else f"{result}")
    else:
        counts = oracle.count_nilpotent_by_type(args.n, args.p, args.budget)
        rows = {str(lam): c for lam, c in sorted(counts.items(), reverse=True)}
        if args.json:
            print(json.dumps(rows, indent=2))
        else:
            for lam, c in rows.items():
                print(f"{lam}: {c}")
    return EXIT_OK


def _cmd_sample(args: argparse.Namespace) -> int:
    cfg = SamplerConfig(q=args.q, u=args.u, seed=args.seed, trials=args.trials)
    drawn = PartitionSampler(cfg).sample_many(cfg.trials)
    if args.json:
        print(json.dumps([list(lam.parts) for lam in drawn]))
    else:
        for lam in drawn:
            print(str(lam))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; normalize others
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "series":
            return _cmd_series(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "sample":
            return _cmd_sample(args)
        return EXIT_USAGE
    except oracle.BudgetExceededError as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, sampler.KernelDomainError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
