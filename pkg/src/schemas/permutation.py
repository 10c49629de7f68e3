from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.permutation import Permutation, PermGroup, Subcoset
from src.services.perm_core import build_chain
from src.utils.errors import MalformedInput


class PermutationFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int
    images: List[int]

    @model_validator(mode="after")
    def check_degree(self):
        if len(self.images) != self.n:
            raise ValueError(f"{len(self.images)} images for a permutation of degree {self.n}")
        return self

    def to_domain(self) -> Permutation:
        return Permutation.checked(self.images)

    @classmethod
    def from_domain(cls, perm: Permutation) -> "PermutationFile":
        return cls(n=perm.degree, images=list(perm.images))


class PermGroupFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int
    generators: List[List[int]] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_degree(self):
        for gen in self.generators:
            if len(gen) != self.n:
                raise ValueError(f"generator of length {len(gen)} in a group of degree {self.n}")
        return self

    def to_domain(self) -> PermGroup:
        return build_chain([Permutation.checked(g) for g in self.generators], degree=self.n)

    @classmethod
    def from_domain(cls, group: PermGroup) -> "PermGroupFile":
        return cls(n=group.degree, generators=[list(g.images) for g in group.generators])


class SubcosetFile(BaseModel):
    """{"rep": [int] | null, "group": PermGroup}; a null rep is the empty subcoset."""

    model_config = ConfigDict(extra="forbid")

    rep: Optional[List[int]] = None
    group: PermGroupFile

    def to_domain(self) -> Subcoset:
        group = self.group.to_domain()
        if self.rep is None:
            return Subcoset(None, group, reason="input")
        rep = Permutation.checked(self.rep)
        if rep.degree != group.degree:
            raise MalformedInput(f"representative of degree {rep.degree} for a group of degree {group.degree}")
        return Subcoset(rep, group)

    @classmethod
    def from_domain(cls, coset: Subcoset) -> "SubcosetFile":
        rep = None if coset.is_empty else list(coset.representative.images)
        return cls(rep=rep, group=PermGroupFile.from_domain(coset.group))
