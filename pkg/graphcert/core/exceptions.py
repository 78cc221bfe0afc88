"""Error hierarchy shared by the library and the command layer.

Every error carries the process exit code the CLI reports for it, so commands can
translate failures without a lookup table.
"""
from typing import Optional


class GraphCertError(Exception):
    """Base error with an exit code and a human-readable detail."""

    exit_code: int = 3

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class GraphParseError(GraphCertError):
    """Malformed graph file."""

    exit_code = 1

    def __init__(self, detail: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {detail}" if line is not None else detail)


class InvalidArgumentError(GraphCertError, ValueError):
    exit_code = 1


class PreconditionFailed(GraphCertError):
    exit_code = 2


class PauliMismatchError(GraphCertError, ValueError):
    """Operands disagree on dimension or site count."""


class DenseLimitExceeded(GraphCertError):
    pass


class NormalizationExhausted(GraphCertError):
    """Candidate search ran dry; carries the trace of rejected candidates."""

    def __init__(self, detail: str, trace: Optional[list] = None):
        super().__init__(detail)
        self.trace = trace or []


class CaseMismatch(GraphCertError):
    pass


class InternalCheckFailed(GraphCertError):
    pass


class CertificateFormatError(GraphCertError):
    """Certificate JSON does not match the schema; `path` is a JSON pointer."""

    exit_code = 4

    def __init__(self, detail: str, path: str = ""):
        self.path = path
        super().__init__(f"{path or '/'}: {detail}")
