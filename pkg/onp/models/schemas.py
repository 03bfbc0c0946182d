"""Pydantic schemas for table and verification output."""
from pydantic import BaseModel, Field
from typing import List, Dict, Any, Optional


class TableRow(BaseModel):
    """One alpha_u row: u, f(u), Q(f(u)), excess, alpha_u."""
    u: int = Field(..., ge=2, description="Prime u != p")
    f: int = Field(..., ge=1, description="Multiplicative order of p mod u")
    Q: List[int] = Field(default_factory=list, description="Q(f(u)), decreasing prime")
    excess: int = Field(..., ge=0, description="m with alpha_u = [chi_f(u) + m]")
    alpha_cnf: str = Field(..., description="alpha_u in Cantor normal form")
    alpha_p: str = Field(..., description="alpha_u as a base-p expansion")


class TablesDocument(BaseModel):
    """Tables JSON document; also the on-disk alpha cache format."""
    p: int = Field(..., ge=2)
    rows: List[TableRow] = Field(default_factory=list)


class CacheMetrics(BaseModel):
    """Sizes of the per-Context memo tables."""
    alphas: int = 0
    chis: int = 0
    degrees: int = 0
    generator_powers: int = 0
    monomial_products: int = 0


class SuiteResult(BaseModel):
    """Outcome of one verification suite."""
    suite: str
    p: int
    passed: bool
    gating: bool = Field(True, description="False for report-only suites")
    checked: int = Field(0, description="Number of cases examined")
    failures: List[str] = Field(default_factory=list, description="First few failing cases")
    stats: Dict[str, Any] = Field(default_factory=dict)
    elapsed_seconds: float = 0.0


class VerificationReport(BaseModel):
    """Response of the verify command."""
    p: int
    results: List[SuiteResult]
    passed: bool
    usage: Optional[Dict[str, int]] = None
    cache: Optional[CacheMetrics] = None
