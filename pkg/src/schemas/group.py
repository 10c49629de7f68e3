from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.abelian import AbelianDecomposition, HRMatrix
from src.models.group import FiniteGroup
from src.services.group_core import construct_group


class GroupFile(BaseModel):
    """{"name", "order", "table"}: row i, column j holds the index of i*j."""

    model_config = ConfigDict(extra="forbid")

    name: str = ""
    order: Optional[int] = None
    table: List[List[int]]

    @model_validator(mode="after")
    def check_order(self):
        if self.order is not None and self.order != len(self.table):
            raise ValueError(f"order {self.order} does not match a table with {len(self.table)} rows")
        return self

    def to_domain(self) -> FiniteGroup:
        return construct_group(self.table, name=self.name)

    @classmethod
    def from_domain(cls, G: FiniteGroup) -> "GroupFile":
        return cls(name=G.name, order=G.order, table=G.rows)


class DecompositionFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    factors: List[Tuple[int, int]] = Field(default_factory=list)

    def to_domain(self) -> AbelianDecomposition:
        return AbelianDecomposition.from_pairs(self.factors)

    @classmethod
    def from_domain(cls, decomp: AbelianDecomposition) -> "DecompositionFile":
        return cls(factors=list(decomp.factors))


class HRMatrixFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p: int
    exponents: List[int]
    entries: List[List[int]]

    def to_domain(self) -> HRMatrix:
        return HRMatrix.build(self.p, self.exponents, self.entries)

    @classmethod
    def from_domain(cls, M: HRMatrix) -> "HRMatrixFile":
        return cls(p=M.p, exponents=list(M.exponents), entries=[list(row) for row in M.entries])
