"""Two-copy inflations of a fully connected bipartite-source network.

Each party p has an unprimed copy (site p) and a primed copy (site n + p). An inflation is
fixed by the set T of unprimed parties wired to 2′ instead of 2; the primed side is the
mirror image. Party "2" is index 1.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Tuple

import networkx as nx

from graphcert.core.exceptions import InvalidArgumentError
from graphcert.utils.pauli import PauliWord

logger = logging.getLogger(__name__)

SECOND = 1


@lru_cache(maxsize=256)
def inflation_graph(n: int, t: FrozenSet[int]) -> nx.Graph:
    """Connectivity of the inflation: an edge joins two sites sharing a source."""
    g = nx.Graph()
    g.add_nodes_from(range(2 * n))
    others = [p for p in range(n) if p != SECOND]
    for idx, i in enumerate(others):
        for j in others[idx + 1:]:
            g.add_edge(i, j)
            g.add_edge(n + i, n + j)
        if i in t:
            g.add_edge(i, n + SECOND)
            g.add_edge(n + i, SECOND)
        else:
            g.add_edge(i, SECOND)
            g.add_edge(n + i, n + SECOND)
    return g


@dataclass(frozen=True)
class InflationSpec:
    n: int
    t: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "t", frozenset(self.t))
        if SECOND in self.t:
            raise InvalidArgumentError("party 2 cannot be rewired to its own copy")
        if any(not 0 <= p < self.n for p in self.t):
            raise InvalidArgumentError(f"inflation set {sorted(self.t)} out of range")

    @property
    def graph(self) -> nx.Graph:
        return inflation_graph(self.n, self.t)

    def induced(self, sites: Iterable[int]) -> nx.Graph:
        return self.graph.subgraph(sites)


def site_index(n: int, party: int, primed: bool) -> int:
    return n + party if primed else party


def site_party(n: int, site: int) -> Tuple[int, bool]:
    """(party, primed) of a site index."""
    return (site - n, True) if site >= n else (site, False)


def swap_map(n: int, swap: Iterable[int]) -> List[int]:
    """Site permutation exchanging both copies of every party in `swap`."""
    mapping = list(range(2 * n))
    for p in swap:
        mapping[p], mapping[n + p] = n + p, p
    return mapping


def embed(word: PauliWord) -> PauliWord:
    """Place an N-site word on the unprimed copies of a 2N-site register."""
    return PauliWord(word.d, word.phase, word.sites + ((0, 0),) * word.n)


def apply_swap(word: PauliWord, swap: Iterable[int]) -> PauliWord:
    """Move each swapped party's factor to the other copy."""
    n = word.n // 2
    mapping = swap_map(n, swap)
    sites = [(0, 0)] * word.n
    for s, factor in enumerate(word.sites):
        sites[mapping[s]] = factor
    return PauliWord(word.d, word.phase, tuple(sites))


def project(word: PauliWord) -> PauliWord:
    """Fold a 2N-site word onto N sites; each party may act on at most one copy."""
    n = word.n // 2
    sites = []
    for p in range(n):
        u, v = word.sites[p], word.sites[n + p]
        if u != (0, 0) and v != (0, 0):
            raise InvalidArgumentError(f"party {p + 1} acts on both copies")
        sites.append(u if u != (0, 0) else v)
    return PauliWord(word.d, word.phase, tuple(sites))
