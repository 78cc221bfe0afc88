import argparse
import logging

from graphcert.core.exceptions import GraphCertError
from graphcert.utils.analysis import analyze_graph
from graphcert.utils.certificate import serialize
from graphcert.utils.multigraph import load_graph

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "analyze",
        help="Certify that a graph state cannot be prepared with bipartite sources",
    )
    parser.add_argument("graph", help="Graph file")
    parser.add_argument("--out", default=None, help="Write the certificate JSON here")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    report = analyze_graph(graph, certificate_path=args.out)

    if args.out:
        try:
            with open(args.out, "wb") as fh:
                fh.write(serialize(report.certificate))
        except OSError as e:
            raise GraphCertError(f"cannot write {args.out}: {e}")
        logger.info(f"Certificate written to {args.out}")

    if args.format == "json":
        print(report.model_dump_json(indent=2, by_alias=True))
    else:
        print(report.render_text(), end="")
    return 0
