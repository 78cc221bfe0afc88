"""Construction and serialization of non-preparability certificates.

The builder emits claims of the form ⟨operator⟩ = 1 on a two-copy inflation and the
steps deriving them, ending in a pair of non-commuting operators whose powers all have
expectation 1. Every step is checked with the verifier's own side-condition functions as
it is emitted, and the finished certificate is verified once more before it is returned.
"""
import logging
import math
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

from pydantic import ValidationError

from graphcert.core.config import settings
from graphcert.core.exceptions import CaseMismatch, CertificateFormatError, InternalCheckFailed
from graphcert.models.certificate import (
    BaseStep,
    Certificate,
    ClaimModel,
    CombineStep,
    ConstructionModel,
    ContradictionModel,
    EdgeModel,
    LocalComplementModel,
    NormalizationModel,
    PowerStep,
    RelabelModel,
    TransferStep,
)
from graphcert.utils.finite_field import is_prime, mod_inverse
from graphcert.utils.graph_state import generators
from graphcert.utils.inflation import SECOND, InflationSpec, apply_swap, embed
from graphcert.utils.multigraph import Multigraph
from graphcert.utils.normalization import (
    CaseLabel,
    LocalComplement,
    TransformLog,
    cancellation_witness,
    classify,
    overlap,
)
from graphcert.utils.pauli import PauliWord, pw_commutation_exponent, pw_mul, pw_pow
from graphcert.utils.verifier import (
    DecodedClaim,
    check_base,
    check_combine,
    check_power,
    check_transfer,
    verify_certificate,
)

logger = logging.getLogger(__name__)

_UNION_TAGS = {"base", "transfer", "combine", "power", "relabel", "local_complement"}


class CertificateBuilder:
    """Accumulates content-addressed claims and the steps establishing them."""

    def __init__(self, graph: Multigraph):
        self.graph = graph
        self.d = graph.d
        self.n = graph.n
        self.gens = generators(graph)
        self.claims: Dict[str, ClaimModel] = {}
        self.decoded: Dict[str, DecodedClaim] = {}
        self.steps: list = []
        self.established: Set[str] = set()

    def spec(self, parties: Iterable[int]) -> InflationSpec:
        return InflationSpec(self.n, frozenset(parties))

    def product(self, *factors: Tuple[int, int]) -> PauliWord:
        """∏ g_v^k over `(v, k)` pairs in the given order, embedded on unprimed sites."""
        word = PauliWord.identity(self.d, self.n)
        for v, k in factors:
            word = pw_mul(word, pw_pow(self.gens[v], k % self.d))
        return embed(word)

    def _claim(self, spec: InflationSpec, word: PauliWord) -> str:
        claim = ClaimModel.create(spec, word)
        if claim.id not in self.claims:
            self.claims[claim.id] = claim
            self.decoded[claim.id] = DecodedClaim(spec, word)
        return claim.id

    def _record(self, step, failure: Optional[str], concluded: str) -> str:
        if failure:
            raise InternalCheckFailed(f"emitted {step.kind} step does not check: {failure}")
        self.steps.append(step)
        self.established.add(concluded)
        return concluded

    def base(self, spec: InflationSpec, word: PauliWord) -> str:
        cid = self._claim(spec, word)
        if cid in self.established:
            return cid
        return self._record(BaseStep(claim=cid), check_base(self.graph, spec, word), cid)

    def transfer(self, source: str, spec: InflationSpec, swap: Iterable[int]) -> str:
        swap = sorted(swap)
        src = self.decoded[source]
        cid = self._claim(spec, apply_swap(src.word, swap))
        if cid in self.established:
            return cid
        step = TransferStep(from_claim=source, to_claim=cid, swap=[p + 1 for p in swap])
        return self._record(step, check_transfer(src, self.decoded[cid], swap), cid)

    def combine(self, first: str, second: str) -> str:
        a, b = self.decoded[first], self.decoded[second]
        cid = self._claim(a.spec, pw_mul(a.word, b.word))
        if cid in self.established:
            return cid
        step = CombineStep(premise1=first, premise2=second, conclusion=cid)
        return self._record(step, check_combine(a, b, self.decoded[cid]), cid)

    def power(self, base: str, k: int) -> str:
        b = self.decoded[base]
        cid = self._claim(b.spec, pw_pow(b.word, k))
        if cid in self.established:
            return cid
        step = PowerStep(base_claim=base, exponent=k, conclusion=cid)
        return self._record(step, check_power(b, k, self.decoded[cid]), cid)

    def powers(self, base: str) -> List[str]:
        return [base] + [self.power(base, k) for k in range(2, self.d)]

    def expect(self, cid: str, spec: InflationSpec, word: PauliWord) -> None:
        got = self.decoded[cid]
        if got.spec != spec or got.word != word:
            raise InternalCheckFailed(f"derived {got.word} where {word} was expected")

    # -- inflation chain: overlap empty, or no overlap vertex mirrors vertex 2 --

    def _advance(self, current: str, t_next: FrozenSet[int], t_here: FrozenSet[int], n: int) -> str:
        """Move ⟨g_1⟩ = 1 from the inflation t_next to t_here = t_next ∪ {n}."""
        g, d = self.graph, self.d
        differing = (g.neighbors(SECOND) - {n}) ^ (g.neighbors(n) - {SECOND})
        i = min(differing)
        here, there = self.spec(t_here), self.spec(t_next)

        if g.weight(SECOND, i) == 0:
            l = (-g.weight(0, n) * mod_inverse(g.weight(i, n), d)) % d
            gi_l = self.base(there, self.product((i, l)))
            mixed = self.combine(current, gi_l)
            moved = self.transfer(mixed, here, ())
            back = self.base(here, self.product((i, d - l)))
            result = self.combine(moved, back)
        else:
            l = (-g.weight(0, SECOND) * mod_inverse(g.weight(SECOND, i), d)) % d
            v_word = self.product((0, 1), (i, l))
            v_there = self.base(there, v_word)
            gi_inv = self.combine(current, self.power(v_there, d - 1))
            moved = self.transfer(gi_inv, here, ())
            result = self.combine(self.base(here, v_word), moved)

        logger.debug(f"Chain link via vertex {n + 1} with witness {i + 1}")
        self.expect(result, here, self.product((0, 1)))
        return result

    def build_chain(self) -> Tuple[str, str, int]:
        g, d = self.graph, self.d
        n1, n2 = g.neighbors(0), g.neighbors(SECOND)
        outside = n1 - n2 - {SECOND}
        t0 = outside | {0}

        chain = [frozenset(n1 & n2)]
        while chain[-1]:
            chain.append(chain[-1] - {min(chain[-1])})
        q = len(chain)

        current = self.base(self.spec(chain[-1]), self.product((0, 1)))
        for k in range(q - 1, 0, -1):
            t_here, t_next = chain[k - 1], chain[k]
            current = self._advance(current, t_next, t_here, min(t_here))
        a1 = self.transfer(current, self.spec(t0), (SECOND,))

        i = min(outside)
        l = (-g.weight(0, SECOND) * mod_inverse(g.weight(0, i), d)) % d
        start = self.spec({0})
        g2 = self.combine(
            self.base(start, self.product((SECOND, 1), (i, l))),
            self.base(start, self.product((i, d - l))),
        )
        self.expect(g2, start, self.product((SECOND, 1)))
        a2 = self.transfer(g2, self.spec(t0), ())
        return a1, a2, q

    # -- single overlap vertex mirroring vertex 2 --

    def build_single_overlap(self) -> Tuple[str, str]:
        g, d = self.graph, self.d
        (n,) = overlap(g)
        rest = g.neighbors(SECOND) - {0, n}
        inv = mod_inverse(g.weight(0, n), d)
        l = (-g.weight(0, SECOND) * inv) % d
        m = (g.weight(SECOND, n) * inv) % d

        t1 = self.spec({n})
        s = self.combine(
            self.base(t1, self.product((0, d - m), (SECOND, 1))),
            self.base(t1, self.product((0, m), (n, l))),
        )
        a1 = self.transfer(s, self.spec(rest), (SECOND,))
        a2 = self.base(self.spec(rest), self.product((0, 1)))
        return a1, a2

    # -- overlap vertex whose local complement clears N_2 --

    def build_cancelled_overlap(self) -> Tuple[str, str, str]:
        g, d = self.graph, self.d
        witness = cancellation_witness(g)
        if witness is None:
            raise CaseMismatch("no cancelling overlap vertex")
        n, a = witness
        l = (a * g.weight(SECOND, n)) % d
        t1 = self.spec({n})

        candidates: List[Tuple[str, int]] = []
        for rule, m in (
            ("literal", -g.weight(SECOND, n) * g.weight(0, n)),
            ("inverse", -g.weight(SECOND, n) * mod_inverse(g.weight(0, n), d)),
        ):
            if all(m % d != other for _, other in candidates):
                candidates.append((rule, m % d))

        for rule, m in candidates:
            first = self.product((0, m), (SECOND, 1))
            second = self.product((0, d - m), (n, l))
            if check_base(g, t1, first) is None and check_base(g, t1, second) is None:
                break
            logger.debug(f"Multiplier m={m} ({rule}) rejected")
        else:
            raise InternalCheckFailed("no multiplier closes the overlap combination")

        s = self.combine(self.base(t1, first), self.base(t1, second))
        empty = self.spec(())
        a1 = self.transfer(s, empty, (SECOND,))
        a2 = self.base(empty, self.product((0, 1)))
        return a1, a2, rule


def _normalization_model(log: TransformLog, case: CaseLabel) -> NormalizationModel:
    steps = []
    for step in log.steps:
        if isinstance(step, LocalComplement):
            steps.append(LocalComplementModel(pivot=step.pivot + 1, a=step.a))
        else:
            steps.append(RelabelModel(perm=[p + 1 for p in step.perm]))
    return NormalizationModel(steps=steps, case=case)


def build_certificate(
    graph: Multigraph,
    case: CaseLabel,
    source: Optional[Multigraph] = None,
    log: Optional[TransformLog] = None,
) -> Certificate:
    """Certificate for a normalized graph; `source` and `log` record how it was reached."""
    actual = classify(graph)
    if case == CaseLabel.NOT_APPLICABLE or actual != case:
        raise CaseMismatch(f"graph classifies as {actual.value}, not {case.value}")
    source = graph if source is None else source
    log = TransformLog() if log is None else log
    if log.replay(source) != graph:
        raise CaseMismatch("transformation log does not reproduce the normalized graph")

    builder = CertificateBuilder(graph)
    m_rule = None
    if case in (CaseLabel.CASE1, CaseLabel.CASE2):
        a1, a2, q = builder.build_chain()
        strategy = "chain"
    elif case == CaseLabel.CASE3:
        a1, a2 = builder.build_single_overlap()
        q, strategy = 1, "single_overlap"
    else:
        a1, a2, m_rule = builder.build_cancelled_overlap()
        q, strategy = 1, "cancelled_overlap"

    d = graph.d
    a1_claims, a2_claims = builder.powers(a1), builder.powers(a2)
    exponent = pw_commutation_exponent(builder.decoded[a1].word, builder.decoded[a2].word)

    cert = Certificate(
        d=d,
        n=graph.n,
        graph=[EdgeModel(u=u, v=v, w=w) for u, v, w in source.edges()],
        graph_sha256=source.digest(),
        normalization=_normalization_model(log, case),
        claims=list(builder.claims.values()),
        steps=builder.steps,
        contradiction=ContradictionModel(
            a1_claims=a1_claims,
            a2_claims=a2_claims,
            comm_exponent=exponent,
            lhs=2 * d,
            bound=d + math.sqrt(d),
        ),
        construction=ConstructionModel(strategy=strategy, q_overlap=q, m_rule=m_rule),
    )

    verdict = verify_certificate(cert)
    if not verdict.accepted:
        raise InternalCheckFailed(f"built certificate {verdict.describe()}")
    logger.info(f"Built certificate with {len(cert.claims)} claims and {len(cert.steps)} steps")
    return cert


def serialize(cert: Certificate) -> bytes:
    return (cert.model_dump_json(indent=2, by_alias=True) + "\n").encode("utf-8")


def _pointer(loc: tuple) -> str:
    parts = []
    for k, part in enumerate(loc):
        # discriminated unions insert the tag into the location
        if part in _UNION_TAGS and k > 0 and isinstance(loc[k - 1], int):
            continue
        parts.append(str(part))
    return "/" + "/".join(parts) if parts else ""


def _check_ranges(cert: Certificate) -> None:
    d, n = cert.d, cert.n
    if not 2 <= d <= settings.MAX_DIMENSION:
        raise CertificateFormatError(f"dimension {d} out of range 2..{settings.MAX_DIMENSION}", "/d")
    if not is_prime(d):
        raise CertificateFormatError(f"dimension {d} is not prime", "/d")
    if not 1 <= n <= settings.MAX_VERTICES:
        raise CertificateFormatError(f"vertex count {n} out of range 1..{settings.MAX_VERTICES}", "/n")
    for k, edge in enumerate(cert.graph):
        if not (1 <= edge.u < edge.v <= n) or not 1 <= edge.w < d:
            raise CertificateFormatError(f"edge {edge.u}-{edge.v} ({edge.w}) out of range", f"/graph/{k}")
    for k, step in enumerate(cert.normalization.steps):
        where = f"/normalization/steps/{k}"
        if isinstance(step, RelabelModel):
            if sorted(step.perm) != list(range(1, n + 1)):
                raise CertificateFormatError("not a permutation", f"{where}/perm")
        elif not (1 <= step.pivot <= n and 0 <= step.a < d):
            raise CertificateFormatError("pivot or multiplier out of range", where)
    for k, claim in enumerate(cert.claims):
        if any(not 1 <= p <= n or p == SECOND + 1 for p in claim.T):
            raise CertificateFormatError("inflation set out of range", f"/claims/{k}/T")
        claim.operator.to_word(d, n, f"/claims/{k}/operator")
    for k, step in enumerate(cert.steps):
        if isinstance(step, TransferStep) and any(not 1 <= p <= n for p in step.swap):
            raise CertificateFormatError("swap party out of range", f"/steps/{k}/swap")


def deserialize(data: Union[bytes, str]) -> Certificate:
    try:
        cert = Certificate.model_validate_json(data)
    except ValidationError as e:
        error = e.errors()[0]
        raise CertificateFormatError(error["msg"], _pointer(tuple(error["loc"])))
    _check_ranges(cert)
    return cert
