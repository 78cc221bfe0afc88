import hashlib
import json
from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from graphcert.core.config import settings
from graphcert.core.exceptions import CertificateFormatError
from graphcert.utils.inflation import InflationSpec, site_index, site_party
from graphcert.utils.normalization import CaseLabel
from graphcert.utils.pauli import PauliWord


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class EdgeModel(_Strict):
    """Edge of the input graph, 1-based endpoints."""

    u: int = Field(..., description="First endpoint (1-based)")
    v: int = Field(..., description="Second endpoint (1-based)")
    w: int = Field(..., description="Edge multiplicity in 1..d-1")


class RelabelModel(_Strict):
    op: Literal["relabel"] = "relabel"
    perm: List[int] = Field(..., description="perm[i-1] is the new label of vertex i (1-based)")


class LocalComplementModel(_Strict):
    op: Literal["local_complement"] = "local_complement"
    pivot: int = Field(..., description="Pivot vertex (1-based)")
    a: int = Field(..., description="Multiplier in 0..d-1")


NormalizationStepModel = Annotated[
    Union[RelabelModel, LocalComplementModel], Field(discriminator="op")
]


class NormalizationModel(_Strict):
    steps: List[NormalizationStepModel] = Field(default_factory=list)
    case: CaseLabel = Field(..., description="Condition set met by the transformed graph")


class SiteModel(_Strict):
    # `copy` would shadow BaseModel.copy, so the attribute carries an alias
    model_config = ConfigDict(extra="forbid", validate_by_name=True, serialize_by_alias=True)

    party: int = Field(..., description="Party index (1-based)")
    copy_: Literal["u", "p"] = Field(..., alias="copy", description="Unprimed or primed copy")
    x: int = Field(..., description="X exponent")
    z: int = Field(..., description="Z exponent")


class OperatorModel(_Strict):
    """Pauli word on the 2N-site inflation register; only nontrivial sites are listed."""

    phase: int = Field(..., description="Exponent of ω")
    sites: List[SiteModel] = Field(default_factory=list)

    @classmethod
    def from_word(cls, word: PauliWord) -> "OperatorModel":
        n = word.n // 2
        sites = []
        for s in word.support:
            party, primed = site_party(n, s)
            x, z = word.sites[s]
            sites.append(SiteModel(party=party + 1, copy_="p" if primed else "u", x=x, z=z))
        return cls(phase=word.phase, sites=sites)

    def to_word(self, d: int, n: int, path: str = "") -> PauliWord:
        """Decode with range checks; failures carry a JSON pointer below `path`."""
        if not 0 <= self.phase < d:
            raise CertificateFormatError(f"phase {self.phase} outside 0..{d - 1}", f"{path}/phase")
        factors = [(0, 0)] * (2 * n)
        seen = set()
        for k, site in enumerate(self.sites):
            where = f"{path}/sites/{k}"
            if not 1 <= site.party <= n:
                raise CertificateFormatError(f"party {site.party} outside 1..{n}", f"{where}/party")
            for name in ("x", "z"):
                value = getattr(site, name)
                if not 0 <= value < d:
                    raise CertificateFormatError(f"{name}={value} outside 0..{d - 1}", f"{where}/{name}")
            idx = site_index(n, site.party - 1, site.copy_ == "p")
            if idx in seen:
                raise CertificateFormatError("site listed twice", where)
            seen.add(idx)
            factors[idx] = (site.x, site.z)
        return PauliWord(d, self.phase, tuple(factors))


def claim_id(t: List[int], operator: OperatorModel) -> str:
    """Content address of a claim: `c` + 16 hex digits of SHA-256 over its canonical JSON."""
    payload = json.dumps(
        {"T": sorted(t), "operator": operator.model_dump(mode="json", by_alias=True)},
        sort_keys=True,
        separators=(",", ":"),
    )
    return "c" + hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


class ClaimModel(_Strict):
    """The assertion ⟨operator⟩ = 1 on the inflation given by T."""

    id: str = Field(..., description="Content hash of T and operator")
    T: List[int] = Field(..., description="Unprimed parties wired to 2′ (1-based, sorted)")
    operator: OperatorModel

    @classmethod
    def create(cls, spec: InflationSpec, word: PauliWord) -> "ClaimModel":
        t = sorted(p + 1 for p in spec.t)
        operator = OperatorModel.from_word(word)
        return cls(id=claim_id(t, operator), T=t, operator=operator)

    def expected_id(self) -> str:
        return claim_id(self.T, self.operator)


class BaseStep(_Strict):
    kind: Literal["base"] = "base"
    claim: str = Field(..., description="Claim inherited from the original network")


class TransferStep(_Strict):
    kind: Literal["transfer"] = "transfer"
    from_claim: str
    to_claim: str
    swap: List[int] = Field(default_factory=list, description="Parties whose copies are exchanged (1-based)")


class CombineStep(_Strict):
    kind: Literal["combine"] = "combine"
    premise1: str
    premise2: str
    conclusion: str


class PowerStep(_Strict):
    kind: Literal["power"] = "power"
    base_claim: str
    exponent: int
    conclusion: str


StepModel = Annotated[
    Union[BaseStep, TransferStep, CombineStep, PowerStep], Field(discriminator="kind")
]


class ContradictionModel(_Strict):
    a1_claims: List[str] = Field(..., description="Claims for A_1^k, k = 1..d-1")
    a2_claims: List[str] = Field(..., description="Claims for A_2^k, k = 1..d-1")
    comm_exponent: int = Field(..., description="c with A_1 A_2 = ω^c A_2 A_1")
    lhs: int = Field(..., description="Sum of all 2d expectation values, equal to 2d")
    bound: float = Field(..., description="Upper bound d + √d for non-commuting pairs")


class ConstructionModel(_Strict):
    strategy: Literal["chain", "single_overlap", "cancelled_overlap"]
    q_overlap: int = Field(..., description="Length of the inflation chain")
    m_rule: Optional[Literal["literal", "inverse"]] = Field(
        default=None, description="Which multiplier closed the cancelled-overlap combination"
    )


class Certificate(_Strict):
    """Self-contained non-preparability certificate for one graph."""

    version: Literal[settings.CERTIFICATE_VERSION] = settings.CERTIFICATE_VERSION
    d: int
    n: int
    graph: List[EdgeModel] = Field(..., description="Input graph before normalization")
    graph_sha256: str = Field(..., description="Digest of the canonical input edge list")
    normalization: NormalizationModel
    claims: List[ClaimModel]
    steps: List[StepModel]
    contradiction: ContradictionModel
    construction: ConstructionModel


class Verdict(BaseModel):
    """Outcome of certificate verification; on rejection names where it failed."""

    accepted: bool
    stage: Optional[str] = Field(default=None, description="graph, normalization, claims, steps or contradiction")
    step_index: Optional[int] = None
    kind: Optional[str] = None
    condition: Optional[str] = None
    detail: Optional[str] = None

    def describe(self) -> str:
        if self.accepted:
            return "accepted"
        where = self.stage or "certificate"
        if self.step_index is not None:
            where = f"step {self.step_index} ({self.kind})"
        return f"rejected at {where}: {self.condition}" + (f" ({self.detail})" if self.detail else "")
