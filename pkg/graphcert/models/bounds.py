from typing import Optional

from pydantic import BaseModel, Field


class FidelityBound(BaseModel):
    """Fidelity above which a state is excluded alongside the graph state."""

    d: Optional[int] = Field(default=None, description="Local dimension; None in the analytic limit")
    q_overlap: int = Field(..., description="Inflation chain length")
    analytic_limit: bool = Field(default=False, description="Large-d limit with gamma = 1")
    beta: float = Field(..., description="2·q_overlap − 1")
    gamma: float = Field(..., description="(d − √d)/(d − 1), or 1 in the analytic limit")
    delta_max: float = Field(..., description="Largest excluded infidelity")
    f_min: float = Field(..., description="1 − delta_max")

    def render_text(self) -> str:
        dim = "analytic limit" if self.analytic_limit else f"d={self.d}"
        return (
            f"{dim}, q_overlap={self.q_overlap}: beta={self.beta!r}, gamma={self.gamma!r}, "
            f"delta_max={self.delta_max!r}, f_min={self.f_min!r}"
        )
