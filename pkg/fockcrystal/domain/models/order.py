from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict

from fockcrystal.core.exceptions import CrystalInvariantException
from fockcrystal.core.validators import split_charge
from fockcrystal.domain.models.partition import Charge, NodeCoord, reduce_mod


class OrderKind(str, Enum):
    UGLOV = "uglov"
    PLUS = "plus"
    MINUS = "minus"


class NodeOrder(BaseModel):
    """
    A total order on same-residue nodes.

    For the Uglov variant `charge` is the charge itself. For the two
    asymptotic variants it holds (v0, v1), which only fixes residues.
    """
    model_config = ConfigDict(frozen=True)

    kind: OrderKind = OrderKind.UGLOV
    charge: Charge

    @classmethod
    def uglov(cls, s0: int, s1: int) -> "NodeOrder":
        return cls(kind=OrderKind.UGLOV, charge=Charge(s0=s0, s1=s1))

    @classmethod
    def plus(cls, v0: int, v1: int) -> "NodeOrder":
        return cls(kind=OrderKind.PLUS, charge=Charge(s0=v0, s1=v1))

    @classmethod
    def minus(cls, v0: int, v1: int) -> "NodeOrder":
        return cls(kind=OrderKind.MINUS, charge=Charge(s0=v0, s1=v1))

    @classmethod
    def parse(cls, text: str) -> "NodeOrder":
        """`s0,s1` is an Uglov order, `v0,v1+` and `v0,v1-` are asymptotic."""
        first, second, marker = split_charge(text)
        kind = {"": OrderKind.UGLOV, "+": OrderKind.PLUS, "-": OrderKind.MINUS}[marker]
        return cls(kind=kind, charge=Charge(s0=first, s1=second))

    @property
    def is_asymptotic(self) -> bool:
        return self.kind != OrderKind.UGLOV

    def content(self, node: NodeCoord) -> int:
        return node.b - node.a + self.charge[node.c]

    def residue(self, node: NodeCoord, e: int) -> int:
        return reduce_mod(self.content(node), e)

    def key(self, node: NodeCoord) -> Tuple[int, int]:
        """Sort key: ascending keys list nodes from smallest to largest."""
        if self.kind == OrderKind.UGLOV:
            return (self.content(node), -node.c)
        if self.kind == OrderKind.PLUS:
            return (-node.c, -node.a)
        return (node.c, -node.a)

    def compare(self, x: NodeCoord, y: NodeCoord) -> int:
        """-1 if x < y, 1 if x > y."""
        if x == y:
            raise CrystalInvariantException(f"cannot compare node {x} with itself")
        kx, ky = self.key(x), self.key(y)
        if kx == ky:
            raise CrystalInvariantException(
                f"nodes {x} and {y} tie under {self}",
                details={"order": str(self)}
            )
        return -1 if kx < ky else 1

    def __str__(self) -> str:
        marker = {OrderKind.UGLOV: "", OrderKind.PLUS: "+", OrderKind.MINUS: "-"}[self.kind]
        return f"{self.charge}{marker}"
