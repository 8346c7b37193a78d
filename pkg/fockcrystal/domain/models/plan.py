from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from fockcrystal.domain.models.order import NodeOrder
from fockcrystal.domain.models.partition import Charge, BipartitionText


class StepOp(str, Enum):
    SHIFT = "shift"
    SWAP = "swap"
    UPSILON = "upsilon"
    UPSILON_INVERSE = "upsilon_inverse"
    STABILIZE = "stabilize"


class PsiStep(BaseModel):
    """
    One atomic move. `t` is only meaningful for shifts, `variant` only for
    stabilization ("plus" or "minus").
    """
    model_config = ConfigDict(frozen=True)

    op: StepOp
    t: Optional[int] = None
    variant: Optional[str] = None

    @classmethod
    def shift(cls, t: int) -> "PsiStep":
        return cls(op=StepOp.SHIFT, t=t)

    @classmethod
    def swap(cls) -> "PsiStep":
        return cls(op=StepOp.SWAP)

    @classmethod
    def upsilon(cls) -> "PsiStep":
        return cls(op=StepOp.UPSILON)

    @classmethod
    def upsilon_inverse(cls) -> "PsiStep":
        return cls(op=StepOp.UPSILON_INVERSE)

    @classmethod
    def stabilize(cls, variant: str) -> "PsiStep":
        return cls(op=StepOp.STABILIZE, variant=variant)

    def apply_to_charge(self, charge: Charge, e: int) -> Charge:
        if self.op == StepOp.SHIFT:
            return charge.shifted(self.t, e)
        if self.op == StepOp.SWAP:
            return Charge(s0=charge.s1, s1=charge.s0 + e)
        if self.op == StepOp.UPSILON:
            return Charge(s0=charge.s0, s1=charge.s1 + e)
        if self.op == StepOp.UPSILON_INVERSE:
            return Charge(s0=charge.s0, s1=charge.s1 - e)
        return charge

    def __str__(self) -> str:
        if self.op == StepOp.SHIFT:
            return f"shift({self.t})"
        if self.op == StepOp.STABILIZE:
            return f"stabilize({self.variant})"
        return self.op.value


class PsiPlan(BaseModel):
    """Ordered steps taking the source charge to the target."""
    e: int
    source: Charge
    target: NodeOrder
    n: Optional[int] = None
    steps: List[PsiStep] = Field(default_factory=list)

    def charges(self) -> List[Charge]:
        """The charge before the first step and after each step."""
        trail = [self.source]
        for step in self.steps:
            trail.append(step.apply_to_charge(trail[-1], self.e))
        return trail

    def steps_json(self) -> List[dict]:
        return [step.model_dump(exclude_none=True, mode="json") for step in self.steps]


class MapResult(BaseModel):
    """Image of one bipartition under a composed bijection."""
    bipartition: BipartitionText
    image: BipartitionText
    e: int
    source: str
    target: str
    steps: List[str]
    oracle: Optional[BipartitionText] = None
