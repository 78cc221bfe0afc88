from typing import List, Optional

from pydantic import BaseModel, Field

from graphcert.models.bounds import FidelityBound
from graphcert.models.certificate import Certificate, EdgeModel, NormalizationModel


class GraphSummary(BaseModel):
    d: int = Field(..., description="Local dimension")
    n: int = Field(..., description="Number of vertices")
    edges: List[EdgeModel] = Field(default_factory=list)


class AnalysisReport(BaseModel):
    """Outcome of the analyze pipeline for one graph file."""

    graph: GraphSummary
    preconditions: bool = Field(..., description="At least 3 vertices and a vertex of degree ≥ 2")
    case: str = Field(..., description="Condition set of the normalized graph")
    normalization: NormalizationModel
    normalized_edges: List[EdgeModel] = Field(default_factory=list)
    accepted: bool = Field(..., description="Verifier verdict on the emitted certificate")
    claim_count: int
    step_count: int
    q_overlap: int
    fidelity: FidelityBound
    certificate_path: Optional[str] = Field(default=None, description="Where the certificate was written")
    certificate: Certificate

    def render_text(self) -> str:
        c = self.certificate.contradiction
        lines = [
            f"graph: d={self.graph.d}, n={self.graph.n}, {len(self.graph.edges)} edges",
            f"case: {self.case}",
        ]
        if self.normalization.steps:
            lines.append("normalization:")
            for step in self.normalization.steps:
                if step.op == "relabel":
                    lines.append(f"  relabel {step.perm}")
                else:
                    lines.append(f"  local complement at {step.pivot} with a={step.a}")
        else:
            lines.append("normalization: none")
        lines.extend(
            [
                f"certificate: {self.claim_count} claims, {self.step_count} steps, "
                f"{'accepted' if self.accepted else 'rejected'}",
                f"contradiction: {c.lhs} > {c.bound!r} (commutation exponent {c.comm_exponent})",
                f"q_overlap: {self.q_overlap}",
                f"delta_max: {self.fidelity.delta_max!r}",
                f"f_min: {self.fidelity.f_min!r}",
            ]
        )
        if self.certificate_path:
            lines.append(f"written to: {self.certificate_path}")
        return "\n".join(lines) + "\n"
