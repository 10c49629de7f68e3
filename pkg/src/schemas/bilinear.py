from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.models.bilinear import BilinearMap
from src.schemas.group import DecompositionFile
from src.services.abelian_aut import coordinates, index_of
from src.services.bilinear_isometry import build_bilinear
from src.utils.errors import MalformedInput


class BilinearMapFile(BaseModel):
    """table[x][y] is f(x, y) as a coordinate list of A; x, y are C(B) indices."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    A: DecompositionFile
    B: DecompositionFile
    table: List[List[List[int]]]

    def to_domain(self) -> BilinearMap:
        A, B = self.A.to_domain(), self.B.to_domain()
        values = np.asarray(self.table, dtype=np.int64)
        if values.shape != (B.order, B.order, len(A.factors)):
            raise MalformedInput(
                f"bilinear table must have shape ({B.order}, {B.order}, {len(A.factors)}), got {values.shape}"
            )
        indices = index_of(A, values.reshape(-1, len(A.factors))).reshape(B.order, B.order)
        return build_bilinear(A, B, indices)

    @classmethod
    def from_domain(cls, f: BilinearMap) -> "BilinearMapFile":
        coords = coordinates(f.A)
        return cls(
            A=DecompositionFile.from_domain(f.A),
            B=DecompositionFile.from_domain(f.B),
            table=coords[f.table].tolist(),
        )
