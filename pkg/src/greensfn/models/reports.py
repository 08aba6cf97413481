"""Report records produced by the solvers and serialized by the CLI."""
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class KernelNorms(BaseModel):
    """Kernel quantities entering the existence conditions."""
    model_config = ConfigDict(frozen=True)

    sup_l2_rows: float = Field(..., ge=0.0, description="sup_t ||G(t, .)||_2")
    sup_l2_rows_dt: float = Field(..., ge=0.0, description="sup_t ||dG/dt(t, .)||_2")
    sup_abs: float = Field(..., ge=0.0, description="sup_(t,s) |G(t, s)|")
    l2_of_l2_dt2: Optional[float] = Field(default=None, description="|| ||d2G/dt2(t, .)||_2 ||_2")

    @property
    def m_threshold(self) -> float:
        return 1.0 / self.sup_l2_rows if self.sup_l2_rows > 0 else float("inf")

    @property
    def mu_l1_threshold(self) -> float:
        return 1.0 / self.sup_abs if self.sup_abs > 0 else float("inf")

    @property
    def eta_l2_threshold(self) -> float:
        return 0.5 / self.sup_l2_rows if self.sup_l2_rows > 0 else float("inf")

    def thresholds(self) -> Dict[str, float]:
        return {
            "eta_l2": self.eta_l2_threshold,
            "m": self.m_threshold,
            "m_perturbed": self.m_threshold - 1.0,
            "mu_l1": self.mu_l1_threshold,
        }


class KernelDiagnostics(BaseModel):
    """Maximal defects of a discretized kernel against the defining properties of G."""
    continuity: float = Field(..., description="max_i |G_low(t_i, t_i) - G_up(t_i, t_i)|")
    jump: float = Field(..., description="max interior |[dG/dt] jump - 1/a2|")
    ode_residual: float = Field(..., description="max homogeneous ODE residual off the diagonal band")
    bc_residual: float = Field(..., description="max |B_i G(., s)| over interior s")


class Condition(BaseModel):
    """One inequality lhs < rhs; ``passed`` is None when the metadata is missing."""
    model_config = ConfigDict(populate_by_name=True)

    condition_id: str = Field(..., description="Identifier such as 'growth' or 'lipschitz'")
    lhs: Optional[float] = Field(default=None, description="Left-hand side value")
    rhs: float = Field(default=1.0, description="Right-hand side value")
    margin: Optional[float] = Field(default=None, description="rhs - lhs")
    passed: Optional[bool] = Field(default=None, serialization_alias="pass", description="Outcome")
    evaluable: bool = Field(default=True, description="False when required metadata is missing")
    note: str = Field(default="", description="Human-readable statement of the condition")


class ConditionReport(BaseModel):
    """All condition outcomes plus the Lipschitz contraction constant q."""
    conditions: List[Condition] = Field(default_factory=list)
    q: Optional[float] = Field(default=None, description="||mu||_1 * sup|G|")
    thresholds: Dict[str, float] = Field(default_factory=dict)

    def get(self, condition_id: str) -> Condition:
        for c in self.conditions:
            if c.condition_id == condition_id:
                return c
        raise KeyError(condition_id)

    @property
    def all_evaluable_pass(self) -> bool:
        return all(c.passed for c in self.conditions if c.evaluable)


class AprioriBounds(BaseModel):
    sup_norm_bound: float = Field(..., ge=0.0, description="Bound on ||x||_sup")
    c1_bound: float = Field(..., ge=0.0, description="Radius R of the C1 ball containing all solutions")


class LipschitzBounds(BaseModel):
    selection_l1_bound: float = Field(..., ge=0.0, description="Bound on ||w||_1")
    sup_norm_bound: float = Field(..., ge=0.0, description="Bound on ||x||_sup")
    q: float = Field(..., ge=0.0, description="Contraction constant")


class ResidualReport(BaseModel):
    ode_res: float = Field(..., description="||Lx - nearest selection||_1")
    bc_res: float = Field(..., description="|B1 x - d1| + |B2 x - d2|")
    selection_gap: float = Field(..., description="max_i dist(Lx(t_i), F(t_i, x(t_i)))")


class SchemeEntry(BaseModel):
    """Per-n outcome of the F + x/n approximation scheme."""
    n: int
    eps_n: Optional[float] = None
    measured_gap: float = Field(..., description="max over samples of ||H(x/n)||_C1")
    condition_a: Optional[bool] = Field(default=None, description="measured_gap <= eps_n")
    spread: Optional[float] = Field(default=None, description="multi-start uniqueness spread")
    condition_b: Optional[bool] = Field(default=None, description="spread <= spread tolerance")
    converged_starts: int = 0
    diverged_starts: int = 0
    note: str = ""


class SchemeReport(BaseModel):
    radius: Optional[float] = Field(default=None, description="Uniform C1 a-priori radius R")
    spread_tol: float = 1e-6
    entries: List[SchemeEntry] = Field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(e.condition_a is not False and e.condition_b is not False for e in self.entries)


class FunnelManifest(BaseModel):
    seed: int
    members: int
    converged_count: int
    diameter_c1: float
    max_residual: float
    bound_R: Optional[float] = None
    sup_bound: Optional[float] = None
    within_bounds: bool = True
    low_confidence: bool = False
    member_seeds: List[int] = Field(default_factory=list)
