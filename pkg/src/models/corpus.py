from dataclasses import dataclass, field
from typing import FrozenSet

from src.models.group import FiniteGroup


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    group: FiniteGroup = field(compare=False)
    tags: FrozenSet[str] = frozenset()

    @property
    def order(self) -> int:
        return self.group.order
