from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from fockcrystal.domain.models.partition import BipartitionText, Charge


class HeckeSolution(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int
    p: int


class HeckeParams(BaseModel):
    """
    Parameters Q = ζ_l^b, q = ζ_l^a of a type B Hecke algebra and the
    charge (d + pe, 0) whose Uglov bipartitions label its simple modules.
    """
    a: int = Field(..., gt=0)
    b: int = Field(..., gt=0)
    l: int = Field(..., ge=2)
    e: int
    d: int
    p: int
    charge: Charge
    solutions: List[HeckeSolution]
    n: Optional[int] = None
    basic_set: Optional[List[BipartitionText]] = None
