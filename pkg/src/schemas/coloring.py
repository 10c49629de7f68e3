from typing import List, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.models.coloring import Coloring, ColorIsoInstance
from src.schemas.permutation import SubcosetFile
from src.services.color_iso import multiplication_coloring
from src.services.group_core import construct_group
from src.utils.errors import MalformedInput

ColoringValues = Union[List[int], List[List[int]]]


class InstanceFile(BaseModel):
    """A color isomorphism instance.

    points: f1, f2 are color lists. pairs: f1, f2 are n x n color matrices.
    triples: f1, f2 are Cayley tables and the colorings are the
    multiplication indicators of the two groups.
    """

    model_config = ConfigDict(extra="forbid")

    mode: Literal["points", "pairs", "triples"]
    coset: SubcosetFile
    f1: ColoringValues
    f2: ColoringValues

    def _coloring(self, values) -> Coloring:
        if self.mode == "triples":
            return multiplication_coloring(construct_group(values))
        coloring = Coloring(np.asarray(values, dtype=np.int64))
        if coloring.kind != self.mode:
            raise MalformedInput(f"{self.mode} instance with a {coloring.kind} coloring")
        return coloring

    def to_domain(self) -> ColorIsoInstance:
        return ColorIsoInstance(self.coset.to_domain(), self._coloring(self.f1), self._coloring(self.f2))

    @classmethod
    def from_domain(cls, instance: ColorIsoInstance) -> "InstanceFile":
        if instance.f1.kind == "triples":
            raise MalformedInput("triples instances are stored through their Cayley tables")
        return cls(
            mode=instance.f1.kind,
            coset=SubcosetFile.from_domain(instance.coset),
            f1=instance.f1.values.tolist(),
            f2=instance.f2.values.tolist(),
        )
