from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from fockcrystal.domain.models.partition import Charge


class Symbol(BaseModel):
    """
    Two rows of beta-numbers, both stored strictly decreasing.

    `top` is the component-1 row (length m + s1), `bottom` the component-0
    row (length m + s0).
    """
    model_config = ConfigDict(frozen=True)

    charge: Charge
    m: int
    top: Tuple[int, ...]
    bottom: Tuple[int, ...]

    @model_validator(mode="after")
    def _well_formed(self) -> "Symbol":
        for name, row, s in (("top", self.top, self.charge.s1), ("bottom", self.bottom, self.charge.s0)):
            if len(row) != self.m + s:
                raise ValueError(f"{name} row has length {len(row)}, expected m + s = {self.m + s}")
            if any(row[k] <= row[k + 1] for k in range(len(row) - 1)):
                raise ValueError(f"{name} row is not strictly decreasing")
            if row and row[-1] < 0:
                raise ValueError(f"{name} row contains a negative entry")
        return self

    def is_standard(self) -> bool:
        """
        Rows aligned at their smallest entries, every top entry sits at or
        below the bottom entry under it.
        """
        offset = self.charge.s1 - self.charge.s0
        if offset < 0:
            return False
        return all(self.top[j + offset] <= self.bottom[j] for j in range(len(self.bottom)))

    def render(self) -> str:
        """Two lines, each row ascending, top row first."""
        return "\n".join(" ".join(str(x) for x in reversed(row)) for row in (self.top, self.bottom))


class Pairing(BaseModel):
    """A greedy injection from the bottom row into the top row."""
    model_config = ConfigDict(frozen=True)

    mapping: Dict[int, int]
    pairs: List[Tuple[int, int]] = Field(default_factory=list)

    @classmethod
    def from_mapping(cls, mapping: Dict[int, int]) -> "Pairing":
        pairs = sorted(((x, y) for x, y in mapping.items() if x != y), reverse=True)
        return cls(mapping=mapping, pairs=pairs)
