"""Independent checker for non-preparability certificates.

The checker trusts nothing the builder annotates: it replays the normalization, recomputes
every claim id, and re-derives each step's side-conditions from the claim contents.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from graphcert.core.config import settings
from graphcert.core.exceptions import GraphCertError
from graphcert.models.certificate import (
    BaseStep,
    Certificate,
    CombineStep,
    PowerStep,
    RelabelModel,
    TransferStep,
    Verdict,
)
from graphcert.utils.graph_state import expectation
from graphcert.utils.inflation import InflationSpec, apply_swap, project, swap_map
from graphcert.utils.multigraph import Multigraph
from graphcert.utils.normalization import (
    CaseLabel,
    LocalComplement,
    Relabel,
    TransformLog,
    classify,
)
from graphcert.utils.pauli import PauliWord, pw_commutation_exponent, pw_mul, pw_pow

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecodedClaim:
    spec: InflationSpec
    word: PauliWord


class StepRejected(Exception):
    def __init__(self, condition: str, detail: Optional[str] = None):
        super().__init__(condition)
        self.condition = condition
        self.detail = detail


def decode_log(cert: Certificate) -> TransformLog:
    log = TransformLog()
    for step in cert.normalization.steps:
        if isinstance(step, RelabelModel):
            log.append(Relabel(tuple(p - 1 for p in step.perm)))
        else:
            log.append(LocalComplement(step.pivot - 1, step.a))
    return log


def check_base(graph: Multigraph, spec: InflationSpec, word: PauliWord) -> Optional[str]:
    """Why a word's value 1 cannot be inherited from the original network, or None if it can."""
    n = graph.n
    for p in range(n):
        if word.sites[p] != (0, 0) and word.sites[n + p] != (0, 0):
            return f"party {p + 1} acts on both copies"
    support = word.support
    sub = spec.induced(support)
    k = len(support)
    if sub.number_of_edges() != k * (k - 1) // 2:
        return "support is not a fully connected subnetwork"
    verdict = expectation(graph, project(word))
    if not verdict.is_one:
        return "original-network expectation is not 1"
    return None


def check_transfer(
    src: DecodedClaim, dst: DecodedClaim, swap: List[int]
) -> Optional[str]:
    n = src.spec.n
    if len(set(swap)) != len(swap) or any(not 0 <= p < n for p in swap):
        return "swap set invalid"
    if apply_swap(src.word, swap) != dst.word:
        return "operators do not match under the swap"
    mapping = swap_map(n, swap)
    before = src.spec.induced(src.word.support)
    after = dst.spec.induced(dst.word.support)
    mapped_edges = {frozenset((mapping[u], mapping[v])) for u, v in before.edges()}
    if {mapping[s] for s in before.nodes} != set(after.nodes):
        return "subnetwork sites differ"
    if mapped_edges != {frozenset(e) for e in after.edges()}:
        return "subnetworks are not isomorphic under the swap"
    return None


def check_combine(
    first: DecodedClaim, second: DecodedClaim, conclusion: DecodedClaim
) -> Optional[str]:
    if not (first.spec == second.spec == conclusion.spec):
        return "premises and conclusion live on different inflations"
    if pw_commutation_exponent(first.word, second.word):
        return "premises do not commute"
    d = first.word.d
    if not (pw_pow(first.word, d).is_identity and pw_pow(second.word, d).is_identity):
        return "premise raised to d is not the identity"
    if pw_mul(first.word, second.word) != conclusion.word:
        return "conclusion is not the product of the premises"
    return None


def check_power(base: DecodedClaim, exponent: int, conclusion: DecodedClaim) -> Optional[str]:
    if base.spec != conclusion.spec:
        return "power changes the inflation"
    if exponent < 1:
        return "exponent must be positive"
    if pw_pow(base.word, exponent) != conclusion.word:
        return "conclusion is not the stated power"
    return None


class CertificateChecker:
    def __init__(self, cert: Certificate):
        self.cert = cert
        self.claims: Dict[str, DecodedClaim] = {}
        self.established: Set[str] = set()
        self.source: Optional[Multigraph] = None
        self.graph: Optional[Multigraph] = None

    def run(self) -> Verdict:
        cert = self.cert
        stages = (
            ("graph", self._check_graph),
            ("normalization", self._check_normalization),
            ("claims", self._decode_claims),
        )
        for stage, check in stages:
            try:
                check()
            except StepRejected as e:
                return self._reject(stage, e)
            except GraphCertError as e:
                return self._reject(stage, StepRejected("malformed", e.detail))

        for index, step in enumerate(cert.steps):
            try:
                self._check_step(step)
            except StepRejected as e:
                return self._reject("steps", e, index, step.kind)
            logger.debug(f"Step {index} ({step.kind}) accepted")

        try:
            self._check_contradiction()
        except StepRejected as e:
            return self._reject("contradiction", e)

        logger.info(f"Certificate accepted: {len(cert.claims)} claims, {len(cert.steps)} steps")
        return Verdict(accepted=True)

    def _reject(
        self, stage: str, e: StepRejected, index: Optional[int] = None, kind: Optional[str] = None
    ) -> Verdict:
        verdict = Verdict(
            accepted=False,
            stage=stage,
            step_index=index,
            kind=kind,
            condition=e.condition,
            detail=e.detail,
        )
        logger.warning(f"Certificate {verdict.describe()}")
        return verdict

    def _check_graph(self) -> None:
        cert = self.cert
        source = Multigraph.from_edges(cert.d, cert.n, [(e.u, e.v, e.w) for e in cert.graph])
        if source.edges() != [(e.u, e.v, e.w) for e in cert.graph]:
            raise StepRejected("edge list is not canonical")
        if source.digest() != cert.graph_sha256:
            raise StepRejected("graph digest mismatch")
        self.source = source

    def _check_normalization(self) -> None:
        graph = decode_log(self.cert).replay(self.source)
        case = classify(graph)
        if case == CaseLabel.NOT_APPLICABLE or case != self.cert.normalization.case:
            raise StepRejected("case predicate does not hold", f"classified as {case.value}")
        self.graph = graph

    def _decode_claims(self) -> None:
        cert = self.cert
        for k, claim in enumerate(cert.claims):
            if claim.id in self.claims:
                raise StepRejected("duplicate claim id", claim.id)
            if claim.expected_id() != claim.id:
                raise StepRejected("claim id does not match its content", claim.id)
            spec = InflationSpec(cert.n, frozenset(p - 1 for p in claim.T))
            word = claim.operator.to_word(cert.d, cert.n, f"/claims/{k}/operator")
            self.claims[claim.id] = DecodedClaim(spec, word)

    def _lookup(self, claim_id: str, established: bool = True) -> DecodedClaim:
        if claim_id not in self.claims:
            raise StepRejected("unknown claim", claim_id)
        if established and claim_id not in self.established:
            raise StepRejected("premise not yet established", claim_id)
        return self.claims[claim_id]

    def _check_step(self, step) -> None:
        if isinstance(step, BaseStep):
            claim = self._lookup(step.claim, established=False)
            failure = check_base(self.graph, claim.spec, claim.word)
            concluded = step.claim
        elif isinstance(step, TransferStep):
            src = self._lookup(step.from_claim)
            dst = self._lookup(step.to_claim, established=False)
            failure = check_transfer(src, dst, [p - 1 for p in step.swap])
            concluded = step.to_claim
        elif isinstance(step, CombineStep):
            first = self._lookup(step.premise1)
            second = self._lookup(step.premise2)
            conclusion = self._lookup(step.conclusion, established=False)
            failure = check_combine(first, second, conclusion)
            concluded = step.conclusion
        elif isinstance(step, PowerStep):
            base = self._lookup(step.base_claim)
            conclusion = self._lookup(step.conclusion, established=False)
            failure = check_power(base, step.exponent, conclusion)
            concluded = step.conclusion
        else:
            raise StepRejected("unknown step kind")
        if failure:
            raise StepRejected(failure)
        self.established.add(concluded)

    def _power_family(self, ids: List[str]) -> Tuple[DecodedClaim, List[DecodedClaim]]:
        d = self.cert.d
        if len(ids) != d - 1:
            raise StepRejected(f"expected {d - 1} power claims, got {len(ids)}")
        family = [self._lookup(i) for i in ids]
        head = family[0]
        for k, claim in enumerate(family, start=1):
            if claim.word != pw_pow(head.word, k):
                raise StepRejected(f"claim {k} is not power {k} of the first")
        return head, family

    def _check_contradiction(self) -> None:
        c = self.cert.contradiction
        d = self.cert.d
        a1, family1 = self._power_family(c.a1_claims)
        a2, family2 = self._power_family(c.a2_claims)
        if any(claim.spec != a1.spec for claim in family1 + family2):
            raise StepRejected("power claims live on different inflations")
        exponent = pw_commutation_exponent(a1.word, a2.word)
        if exponent == 0:
            raise StepRejected("operators commute")
        if exponent != c.comm_exponent:
            raise StepRejected(
                "recorded commutation exponent is wrong", f"{c.comm_exponent} != {exponent}"
            )
        if not (pw_pow(a1.word, d).is_identity and pw_pow(a2.word, d).is_identity):
            raise StepRejected("operator raised to d is not the identity")
        if c.lhs != 2 * d:
            raise StepRejected(f"left-hand side must be {2 * d}")
        if abs(c.bound - (d + math.sqrt(d))) > settings.TOLERANCE:
            raise StepRejected("bound is not d + √d")
        # 2d > d + √d  ⇔  d² > d
        if not d * d > d:
            raise StepRejected("2d does not exceed d + √d")


def verify_certificate(cert: Certificate) -> Verdict:
    return CertificateChecker(cert).run()
