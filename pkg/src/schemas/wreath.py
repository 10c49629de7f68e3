from typing import List

from pydantic import BaseModel, ConfigDict, Field

from src.models.permutation import Permutation
from src.models.wreath import WreathElement, WreathTower
from src.schemas.permutation import PermGroupFile
from src.services.wreath_holomorph import tower_from_groups
from src.utils.errors import MalformedInput


class TowerLevelFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    group: PermGroupFile
    domain: int


class TowerFile(BaseModel):
    """Levels bottom first: level 0 acts on the least significant coordinate."""

    model_config = ConfigDict(extra="forbid")

    levels: List[TowerLevelFile]

    def to_domain(self) -> WreathTower:
        groups = []
        for level in self.levels:
            if level.group.n != level.domain:
                raise MalformedInput(f"level group of degree {level.group.n} on a domain of {level.domain} points")
            groups.append(level.group.to_domain())
        return tower_from_groups(groups)

    @classmethod
    def from_domain(cls, tower: WreathTower) -> "TowerFile":
        return cls(levels=[
            TowerLevelFile(group=PermGroupFile.from_domain(level.group), domain=level.size)
            for level in tower.levels
        ])


class ComponentFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    level: int
    suffix: List[int] = Field(default_factory=list)
    elem: List[int]


class WreathElementFile(BaseModel):
    """Every (level, suffix) of the tower appears exactly once, identities included."""

    model_config = ConfigDict(extra="forbid")

    components: List[ComponentFile] = Field(default_factory=list)

    def to_domain(self, tower: WreathTower) -> WreathElement:
        components = {}
        k = len(tower.levels)
        for c in self.components:
            if not 0 <= c.level < k or len(c.suffix) != k - c.level - 1:
                raise MalformedInput(f"component key ({c.level}, {c.suffix}) does not fit a tower of {k} levels")
            if any(not 0 <= x < size for x, size in zip(c.suffix, tower.sizes[c.level + 1:])):
                raise MalformedInput(f"suffix {c.suffix} leaves the domain at level {c.level}")
            perm = Permutation.checked(c.elem)
            if perm.degree != tower.sizes[c.level] or perm not in tower.levels[c.level].group:
                raise MalformedInput(f"component at ({c.level}, {c.suffix}) is outside the level group")
            key = (c.level, tuple(c.suffix))
            if key in components:
                raise MalformedInput(f"component ({c.level}, {c.suffix}) given twice")
            components[key] = perm
        return WreathElement(tower, components)

    @classmethod
    def from_domain(cls, element: WreathElement) -> "WreathElementFile":
        return cls(components=[
            ComponentFile(level=level, suffix=list(suffix), elem=list(perm.images))
            for (level, suffix), perm in sorted(element.components.items())
        ])
