from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from fockcrystal.domain.models.partition import BipartitionText, NodeCoord


class NodeKind(str, Enum):
    ADDABLE = "A"
    REMOVABLE = "R"


class SignatureEntry(BaseModel):
    """One letter of an i-signature."""
    model_config = ConfigDict(frozen=True)

    node: Tuple[int, int, int]
    kind: NodeKind

    @property
    def coord(self) -> NodeCoord:
        return NodeCoord(*self.node)


class ReducedSignature(BaseModel):
    """Outcome of RA-cancellation: surviving A's then surviving (normal) R's."""
    model_config = ConfigDict(frozen=True)

    addables: List[SignatureEntry] = Field(default_factory=list)
    normals: List[SignatureEntry] = Field(default_factory=list)

    @property
    def word(self) -> str:
        return "A" * len(self.addables) + "R" * len(self.normals)


class CrystalEdge(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    source: BipartitionText = Field(alias="from")
    target: BipartitionText = Field(alias="to")
    label: int


class EnumerationDocument(BaseModel):
    """Listing of one rank of a crystal."""
    e: str
    order: str
    n: int
    count: int
    bipartitions: List[BipartitionText]
    flotw_agrees: Optional[bool] = None


class CrystalGraphDocument(BaseModel):
    """
    JSON form of a crystal graph: one list of vertices per rank and the
    good-node edges between consecutive ranks.
    """
    model_config = ConfigDict(populate_by_name=True)

    e: str
    order: str
    max_rank: int
    levels: List[List[BipartitionText]]
    edges: List[CrystalEdge]
