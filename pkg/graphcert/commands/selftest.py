import argparse

from graphcert.core.exceptions import InternalCheckFailed
from graphcert.utils.selftest import run_selftest


def register(subparsers) -> None:
    parser = subparsers.add_parser("selftest", help="Run the seeded numeric self-checks")
    parser.add_argument("--max-d", type=int, default=None, help="Largest prime dimension to test")
    parser.add_argument("--seed", type=int, default=None, help="Seed for randomized checks")
    parser.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    report = run_selftest(max_d=args.max_d, seed=args.seed, fault=args.inject_fault)
    print(report.render_text(), end="")
    return 0 if report.passed else InternalCheckFailed.exit_code
