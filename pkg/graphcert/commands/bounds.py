import argparse

from graphcert.core.exceptions import InvalidArgumentError
from graphcert.utils.bounds import fidelity_threshold


def register(subparsers) -> None:
    parser = subparsers.add_parser("bounds", help="Fidelity radius excluded together with the graph state")
    parser.add_argument("--d", type=int, default=None, help="Prime local dimension")
    parser.add_argument("--q-overlap", type=int, default=1, help="Inflation chain length")
    parser.add_argument("--analytic-limit", action="store_true", help="Use the large-d limit")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    if args.d is None and not args.analytic_limit:
        raise InvalidArgumentError("--d is required unless --analytic-limit is given")
    bound = fidelity_threshold(args.d, args.q_overlap, analytic_limit=args.analytic_limit)
    if args.format == "json":
        print(bound.model_dump_json(indent=2))
    else:
        print(bound.render_text())
    return 0
