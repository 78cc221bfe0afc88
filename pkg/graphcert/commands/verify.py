import argparse
import logging

from graphcert.core.exceptions import CertificateFormatError
from graphcert.utils.certificate import deserialize
from graphcert.utils.multigraph import load_graph
from graphcert.utils.verifier import verify_certificate

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="Check a certificate against its graph file")
    parser.add_argument("certificate", help="Certificate JSON")
    parser.add_argument("graph", help="Graph file the certificate claims to cover")
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    try:
        with open(args.certificate, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise CertificateFormatError(f"cannot read {args.certificate}: {e}")
    cert = deserialize(data)
    graph = load_graph(args.graph)

    if graph.d != cert.d or graph.n != cert.n or graph.digest() != cert.graph_sha256:
        raise CertificateFormatError("certificate was issued for a different graph", "/graph_sha256")

    verdict = verify_certificate(cert)
    print(verdict.describe())
    return 0 if verdict.accepted else CertificateFormatError.exit_code
