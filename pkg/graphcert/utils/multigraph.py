"""Weighted multigraphs over Z_d: data model, text format, relabeling and local complementation.

Vertices are 1-based in files and reports and 0-based everywhere in code.
"""
import hashlib
import json
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from graphcert.core.config import settings
from graphcert.core.exceptions import GraphParseError, InvalidArgumentError
from graphcert.utils.finite_field import is_prime, require_prime

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Multigraph:
    """Symmetric edge-weight matrix with entries in {0..d-1} and zero diagonal."""

    d: int
    n: int
    gamma: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        require_prime(self.d)
        if self.n < 1:
            raise InvalidArgumentError(f"vertex count must be at least 1, got {self.n}")
        if len(self.gamma) != self.n or any(len(row) != self.n for row in self.gamma):
            raise InvalidArgumentError(f"weight matrix is not {self.n}x{self.n}")
        for i in range(self.n):
            if self.gamma[i][i]:
                raise InvalidArgumentError(f"self-loop at vertex {i + 1}")
            for j in range(self.n):
                w = self.gamma[i][j]
                if not 0 <= w < self.d:
                    raise InvalidArgumentError(
                        f"weight {w} on {i + 1}-{j + 1} is outside 0..{self.d - 1}"
                    )
                if w != self.gamma[j][i]:
                    raise InvalidArgumentError(f"weights on {i + 1}-{j + 1} are not symmetric")

    @classmethod
    def from_matrix(cls, d: int, matrix: Sequence[Sequence[int]]) -> "Multigraph":
        """Build from any integer matrix, reducing entries mod d."""
        return cls(d, len(matrix), tuple(tuple(int(w) % d for w in row) for row in matrix))

    @classmethod
    def from_edges(cls, d: int, n: int, edges: Iterable[Tuple[int, int, int]]) -> "Multigraph":
        """Build from 1-based `(u, v, w)` triples; repeated pairs accumulate mod d."""
        rows = [[0] * n for _ in range(n)]
        for u, v, w in edges:
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise InvalidArgumentError(f"bad edge {u}-{v} for {n} vertices")
            rows[u - 1][v - 1] = (rows[u - 1][v - 1] + w) % d
            rows[v - 1][u - 1] = rows[u - 1][v - 1]
        return cls.from_matrix(d, rows)

    def weight(self, i: int, j: int) -> int:
        return self.gamma[i][j]

    def neighbors(self, i: int) -> FrozenSet[int]:
        self._check_vertex(i)
        return frozenset(j for j, w in enumerate(self.gamma[i]) if w)

    def degree(self, i: int) -> int:
        return len(self.neighbors(i))

    def edges(self) -> List[Tuple[int, int, int]]:
        """1-based `(u, v, w)` triples with u < v and nonzero w."""
        return [
            (i + 1, j + 1, self.gamma[i][j])
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.gamma[i][j]
        ]

    def to_text(self) -> str:
        lines = [f"dim {self.d}", f"vertices {self.n}"]
        lines.extend(f"edge {u} {v} {w}" for u, v, w in self.edges())
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        """SHA-256 of the canonical edge list."""
        payload = json.dumps(
            {"d": self.d, "n": self.n, "edges": self.edges()}, separators=(",", ":")
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def _check_vertex(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise InvalidArgumentError(f"vertex index {i} out of range for {self.n} vertices")


@dataclass(frozen=True)
class Neighborhood:
    vertex: int
    members: FrozenSet[int]


def neighborhood(graph: Multigraph, i: int) -> Neighborhood:
    return Neighborhood(vertex=i, members=graph.neighbors(i))


def local_complement(graph: Multigraph, pivot: int, a: int) -> Multigraph:
    """Γ'_ij = Γ_ij + a·Γ_in·Γ_jn for i ≠ j; row and column of the pivot are unchanged."""
    graph._check_vertex(pivot)
    d = graph.d
    a %= d
    if a == 0:
        return graph
    gamma = np.array(graph.gamma, dtype=np.int64)
    col = gamma[:, pivot]
    updated = (gamma + a * np.outer(col, col)) % d
    np.fill_diagonal(updated, 0)
    return Multigraph.from_matrix(d, updated.tolist())


def relabel(graph: Multigraph, perm: Sequence[int]) -> Multigraph:
    """Γ'[perm[i]][perm[j]] = Γ[i][j]; `perm` is 0-based."""
    if sorted(perm) != list(range(graph.n)):
        raise InvalidArgumentError(f"{list(perm)} is not a permutation of {graph.n} vertices")
    inverse = np.argsort(np.asarray(perm, dtype=np.int64))
    gamma = np.array(graph.gamma, dtype=np.int64)
    return Multigraph.from_matrix(graph.d, gamma[np.ix_(inverse, inverse)].tolist())


def _parse_int(token: str, what: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(f"{what} must be an integer, got {token!r}", line_no)


def parse_graph(text: Union[str, Iterable[str]]) -> Multigraph:
    """Parse the line-oriented graph format.

    `#` starts a comment, `dim <d>` and `vertices <n>` come first, then any number of
    `edge <u> <v> <w>` lines with 1-based endpoints and 1 <= w <= d-1. Repeated edges
    accumulate mod d.
    """
    lines = text.splitlines() if isinstance(text, str) else list(text)
    d: Optional[int] = None
    n: Optional[int] = None
    rows: List[List[int]] = []

    for line_no, raw in enumerate(lines, start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]

        if keyword == "dim":
            if d is not None:
                raise GraphParseError("duplicate dim line", line_no)
            if len(args) != 1:
                raise GraphParseError("expected `dim <d>`", line_no)
            d = _parse_int(args[0], "dim", line_no)
            if not 2 <= d <= settings.MAX_DIMENSION:
                raise GraphParseError(f"dimension {d} out of range 2..{settings.MAX_DIMENSION}", line_no)
            if not is_prime(d):
                raise GraphParseError(f"dimension {d} is not prime", line_no)
        elif keyword == "vertices":
            if n is not None:
                raise GraphParseError("duplicate vertices line", line_no)
            if len(args) != 1:
                raise GraphParseError("expected `vertices <n>`", line_no)
            n = _parse_int(args[0], "vertices", line_no)
            if not 1 <= n <= settings.MAX_VERTICES:
                raise GraphParseError(f"vertex count {n} out of range 1..{settings.MAX_VERTICES}", line_no)
            rows = [[0] * n for _ in range(n)]
        elif keyword == "edge":
            if d is None or n is None:
                raise GraphParseError("`dim` and `vertices` must precede edges", line_no)
            if len(args) != 3:
                raise GraphParseError("expected `edge <u> <v> <w>`", line_no)
            u, v, w = (_parse_int(t, name, line_no) for t, name in zip(args, ("u", "v", "w")))
            for vertex in (u, v):
                if not 1 <= vertex <= n:
                    raise GraphParseError(f"vertex {vertex} out of range 1..{n}", line_no)
            if u == v:
                raise GraphParseError(f"self-loop on vertex {u}", line_no)
            if not 1 <= w <= d - 1:
                raise GraphParseError(f"weight {w} out of range 1..{d - 1}", line_no)
            rows[u - 1][v - 1] = (rows[u - 1][v - 1] + w) % d
            rows[v - 1][u - 1] = rows[u - 1][v - 1]
        else:
            raise GraphParseError(f"unknown directive {keyword!r}", line_no)

    if d is None:
        raise GraphParseError("missing `dim` line")
    if n is None:
        raise GraphParseError("missing `vertices` line")

    graph = Multigraph.from_matrix(d, rows)
    logger.debug(f"Parsed graph with d={d}, n={n}, {len(graph.edges())} edges")
    return graph


def load_graph(path: str) -> Multigraph:
    """Read and parse a graph file; I/O failures surface as parse errors."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as e:
        raise GraphParseError(f"cannot read {path}: {e}")
    return parse_graph(text)
