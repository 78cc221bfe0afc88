"""Bring a multigraph into one of four canonical condition sets.

Vertex "1" of the canonical form is index 0 and vertex "2" is index 1. The transformation
uses only relabelings and local complementations and is recorded step by step so it can
be replayed by an independent checker.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, List, NamedTuple, Optional, Tuple, Union

from graphcert.core.exceptions import InternalCheckFailed, NormalizationExhausted, PreconditionFailed
from graphcert.utils.multigraph import Multigraph, local_complement, relabel

logger = logging.getLogger(__name__)

NOT_COVERED = (
    "not covered: the graph needs at least 3 vertices and a vertex with two or more neighbours"
)


class CaseLabel(str, Enum):
    CASE1 = "case1"
    CASE2 = "case2"
    CASE3 = "case3"
    CASE4 = "case4"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class Relabel:
    perm: Tuple[int, ...]

    def apply(self, graph: Multigraph) -> Multigraph:
        return relabel(graph, self.perm)


@dataclass(frozen=True)
class LocalComplement:
    pivot: int
    a: int

    def apply(self, graph: Multigraph) -> Multigraph:
        return local_complement(graph, self.pivot, self.a)


TransformStep = Union[Relabel, LocalComplement]


@dataclass
class TransformLog:
    steps: List[TransformStep] = field(default_factory=list)

    def append(self, step: TransformStep) -> None:
        self.steps.append(step)

    def replay(self, graph: Multigraph) -> Multigraph:
        for step in self.steps:
            graph = step.apply(graph)
        return graph

    def __len__(self) -> int:
        return len(self.steps)


class NormalizationResult(NamedTuple):
    graph: Multigraph
    log: TransformLog
    case: CaseLabel


def check_preconditions(graph: Multigraph) -> bool:
    """At least 3 vertices and some vertex with two or more neighbours."""
    return graph.n >= 3 and any(graph.degree(i) >= 2 for i in range(graph.n))


def _has_core_form(graph: Multigraph) -> bool:
    """Γ_12 ≠ 0 and |N_1∖N_2| ≥ 2, where N_1 contains vertex 2 itself."""
    if graph.n < 3 or not graph.weight(0, 1):
        return False
    return len(graph.neighbors(0) - graph.neighbors(1)) >= 2


def neighborhoods_agree(graph: Multigraph, n: int) -> bool:
    """N_2∖{n} == N_n∖{2}."""
    return graph.neighbors(1) - {n} == graph.neighbors(n) - {1}


def overlap(graph: Multigraph) -> FrozenSet[int]:
    """N_1 ∩ N_2."""
    return graph.neighbors(0) & graph.neighbors(1)


def cancellation_witness(graph: Multigraph) -> Optional[Tuple[int, int]]:
    """Smallest (n, a) with agreeing neighbourhoods and Γ_2i + a·Γ_2n·Γ_ni = 0 on N_n∖{2}."""
    d = graph.d
    for n in sorted(overlap(graph)):
        if not neighborhoods_agree(graph, n):
            continue
        others = sorted(graph.neighbors(n) - {1})
        for a in range(1, d):
            if all(
                (graph.weight(1, i) + a * graph.weight(1, n) * graph.weight(n, i)) % d == 0
                for i in others
            ):
                return n, a
    return None


def classify(graph: Multigraph) -> CaseLabel:
    if not _has_core_form(graph):
        return CaseLabel.NOT_APPLICABLE
    shared = overlap(graph)
    if not shared:
        return CaseLabel.CASE1
    agreeing = [n for n in sorted(shared) if neighborhoods_agree(graph, n)]
    if not agreeing:
        return CaseLabel.CASE2
    if len(shared) == 1:
        return CaseLabel.CASE3
    if cancellation_witness(graph) is not None:
        return CaseLabel.CASE4
    return CaseLabel.NOT_APPLICABLE


def q_overlap(graph: Multigraph, case: CaseLabel) -> int:
    """Chain length entering the fidelity bound: |N_1∩N_2|+1 in case 2, otherwise 1."""
    if case == CaseLabel.CASE2:
        return len(overlap(graph)) + 1
    return 1


def _front_permutation(n: int, first: int, second: int) -> Tuple[int, ...]:
    """Permutation sending `first` to 0, `second` to 1 and the rest ascending."""
    perm = [0] * n
    perm[first], perm[second] = 0, 1
    rest = [v for v in range(n) if v not in (first, second)]
    for target, v in enumerate(rest, start=2):
        perm[v] = target
    return tuple(perm)


def _establish_core_form(graph: Multigraph, log: TransformLog, trace: list) -> Multigraph:
    if _has_core_form(graph):
        return graph
    n = graph.n
    for first in range(n):
        if graph.degree(first) < 2:
            continue
        for second in sorted(graph.neighbors(first)):
            perm = _front_permutation(n, first, second)
            moved = relabel(graph, perm)
            for a in range(graph.d):
                candidate = local_complement(moved, 0, a)
                if not _has_core_form(candidate):
                    trace.append(("core", first + 1, second + 1, a))
                    logger.debug(f"Rejected vertex pair ({first + 1}, {second + 1}) with a={a}")
                    continue
                if perm != tuple(range(n)):
                    log.append(Relabel(perm))
                if a:
                    log.append(LocalComplement(0, a))
                logger.debug(f"Core form from vertices ({first + 1}, {second + 1}), a={a}")
                return candidate
    raise NormalizationExhausted("no vertex pair reaches Γ_12 ≠ 0 with |N_1∖N_2| ≥ 2", trace)


def _shrink_second_neighborhood(graph: Multigraph, trace: list) -> Optional[LocalComplement]:
    n2 = len(graph.neighbors(1))
    for n in sorted(overlap(graph)):
        if not neighborhoods_agree(graph, n):
            continue
        for a in range(1, graph.d):
            candidate = local_complement(graph, n, a)
            if len(candidate.neighbors(1)) < n2 and _has_core_form(candidate):
                return LocalComplement(n, a)
            trace.append(("shrink", n + 1, a))
    return None


def normalize(graph: Multigraph) -> NormalizationResult:
    if not check_preconditions(graph):
        raise PreconditionFailed(NOT_COVERED)

    log = TransformLog()
    trace: list = []
    current = _establish_core_form(graph, log, trace)

    for _ in range(graph.n + 1):
        case = classify(current)
        if case != CaseLabel.NOT_APPLICABLE:
            logger.info(f"Normalized into {case.value} after {len(log)} steps")
            return NormalizationResult(current, log, case)

        step = _shrink_second_neighborhood(current, trace)
        if step is None:
            break
        before = len(current.neighbors(1))
        current = step.apply(current)
        if len(current.neighbors(1)) >= before:
            raise InternalCheckFailed(f"local complement at {step.pivot + 1} did not shrink N_2")
        log.append(step)
        logger.debug(f"Local complement at {step.pivot + 1} with a={step.a}")

    raise NormalizationExhausted("no local complementation reduces N_2", trace)
