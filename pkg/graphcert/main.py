import argparse
import logging
import sys
from typing import List, Optional

from graphcert.commands import analyze, bounds, selftest, verify
from graphcert.core.config import settings
from graphcert.core.exceptions import GraphCertError, InvalidArgumentError, NormalizationExhausted

# Configure logging
logging.basicConfig(
    level=getattr(logging, settings.LOG_LEVEL),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors are reported like any other bad argument (exit 1)."""

    def error(self, message):
        raise InvalidArgumentError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog=settings.PROJECT_NAME,
        description="Certificates that qudit graph states cannot be prepared in networks "
        "of bipartite sources with shared randomness",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (analyze, verify, bounds, selftest):
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except GraphCertError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        if isinstance(e, NormalizationExhausted):
            print(f"search trace ({len(e.trace)} rejected candidates):", file=sys.stderr)
            for entry in e.trace:
                print("  " + " ".join(str(part) for part in entry), file=sys.stderr)
        return e.exit_code


def start():
    """Console entry point"""
    sys.exit(main())


if __name__ == "__main__":
    start()
