from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from src.models.permutation import Subcoset
from src.models.reduction import PipelineResult
from src.models.report import SuiteResult


class SubcosetReport(BaseModel):
    order: int
    representative: Optional[List[int]] = None
    generators: List[List[int]] = Field(default_factory=list)
    reason: Optional[str] = None

    @classmethod
    def from_domain(cls, coset: Subcoset) -> "SubcosetReport":
        if coset.is_empty:
            return cls(order=0, reason=coset.reason)
        return cls(
            order=coset.order,
            representative=list(coset.representative.images),
            generators=[list(g.images) for g in coset.group.generators],
        )


class PipelineReport(BaseModel):
    iso_order: int
    instances: int
    certified_factors: List[str] = Field(default_factory=list)
    generators: List[List[int]] = Field(default_factory=list)
    representative: Optional[List[int]] = None
    reason: Optional[str] = None
    factor_shapes: List[str] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, result: PipelineResult) -> "PipelineReport":
        iso = result.iso
        labels = [label.display() for label in result.certificate.labels] if result.certificate else []
        return cls(
            iso_order=result.iso_order,
            instances=result.instances,
            certified_factors=labels,
            generators=[] if iso.is_empty else [list(g.images) for g in iso.group.generators],
            representative=None if iso.is_empty else list(iso.representative.images),
            reason=result.reason,
            factor_shapes=list(result.factor_shapes),
        )


class SuiteReport(BaseModel):
    suite: str
    seed: int
    checks: int
    skipped: int
    passed: bool
    failures: List[str] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, result: SuiteResult) -> "SuiteReport":
        return cls(
            suite=result.name,
            seed=result.seed,
            checks=result.checks,
            skipped=result.skipped,
            passed=result.passed,
            failures=list(result.failures),
        )


class RunReport(BaseModel):
    """One CLI invocation: what ran, on which inputs, with which seed, and what came out."""

    command: str
    inputs: Dict[str, str] = Field(default_factory=dict)
    seed: int
    outputs: Dict[str, Any] = Field(default_factory=dict)
    wall_time: Optional[float] = None

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)
