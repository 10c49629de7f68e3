from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.models.graph import Graph


class GraphFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int
    edges: List[Tuple[int, int]] = Field(default_factory=list)

    def to_domain(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)

    @classmethod
    def from_domain(cls, X: Graph) -> "GraphFile":
        return cls(n=X.n, edges=X.edges)
