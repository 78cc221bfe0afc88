"""Stabilizer generators of graph states and exact expectation values of Pauli words.

Expectations are computed symbolically (membership in the stabilizer group with phase
bookkeeping) and, for small registers, by a dense state-vector oracle.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from graphcert.core.config import settings
from graphcert.core.exceptions import InternalCheckFailed, PauliMismatchError
from graphcert.utils.finite_field import solve_mod_p
from graphcert.utils.multigraph import Multigraph
from graphcert.utils.pauli import (
    PauliWord,
    check_dense_size,
    omega_power,
    pw_apply,
    pw_mul,
    pw_pow,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorSet:
    graph: Multigraph
    generators: Tuple[PauliWord, ...]

    def __getitem__(self, i: int) -> PauliWord:
        return self.generators[i]

    def __len__(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class StabilizerVerdict:
    """Expectation of a Pauli word on a graph state.

    `value` is 0 when the word's unsigned part is outside the stabilizer group and ω^phase
    otherwise; `exponents` are the generator powers reproducing it.
    """

    value: complex
    in_group: bool
    exponents: Optional[Tuple[int, ...]] = None
    phase: Optional[int] = None

    @property
    def is_one(self) -> bool:
        return self.in_group and self.phase == 0


def generators(graph: Multigraph) -> GeneratorSet:
    """g_i = X_i ∏_j Z_j^{Γ_ij}, all with phase 0."""
    words = []
    for i in range(graph.n):
        xs = [1 if j == i else 0 for j in range(graph.n)]
        words.append(PauliWord.from_exponents(graph.d, xs, graph.gamma[i]))
    return GeneratorSet(graph=graph, generators=tuple(words))


def expectation(graph: Multigraph, word: PauliWord) -> StabilizerVerdict:
    if word.d != graph.d or word.n != graph.n:
        raise PauliMismatchError(
            f"word on {word.n} sites (d={word.d}) does not fit graph with "
            f"{graph.n} vertices (d={graph.d})"
        )
    gens = generators(graph)
    d, n = graph.d, graph.n

    # X-block of the generators, one column per generator
    x_block = [[gens[i].xs[j] for i in range(n)] for j in range(n)]
    exponents = solve_mod_p(x_block, word.xs, d)
    if exponents is None:
        return StabilizerVerdict(value=0j, in_group=False)

    element = PauliWord.identity(d, n)
    for g, c in zip(gens.generators, exponents):
        if c:
            element = pw_mul(element, pw_pow(g, c))

    if element.sites != word.sites:
        return StabilizerVerdict(value=0j, in_group=False)

    phase = (word.phase - element.phase) % d
    return StabilizerVerdict(
        value=omega_power(d, phase),
        in_group=True,
        exponents=tuple(exponents),
        phase=phase,
    )


def dense_state(graph: Multigraph, limit: Optional[int] = None) -> np.ndarray:
    """|G⟩ = d^{-N/2} Σ_k ω^{Σ_{i<j} Γ_ij k_i k_j} |k⟩, checked against every generator."""
    d, n = graph.d, graph.n
    check_dense_size(d, n, limit)
    digits = np.indices((d,) * n).reshape(n, -1)
    exponent = np.zeros(digits.shape[1], dtype=np.int64)
    for i, j, w in ((u - 1, v - 1, w) for u, v, w in graph.edges()):
        exponent += w * digits[i] * digits[j]
    state = np.exp(2j * np.pi * (exponent % d) / d) / np.sqrt(d ** n)

    for i, g in enumerate(generators(graph).generators):
        if not np.allclose(pw_apply(g, state, limit), state, atol=settings.ORACLE_TOLERANCE):
            raise InternalCheckFailed(f"dense graph state is not stabilized by g_{i + 1}")
    return state


def dense_expectation(
    graph: Multigraph,
    word: PauliWord,
    state: Optional[np.ndarray] = None,
    limit: Optional[int] = None,
) -> complex:
    """⟨G|P|G⟩ by applying the word to the state vector; pass `state` to reuse one."""
    if word.d != graph.d or word.n != graph.n:
        raise PauliMismatchError("word does not fit the graph")
    if state is None:
        state = dense_state(graph, limit)
    return complex(np.vdot(state, pw_apply(word, state, limit)))
