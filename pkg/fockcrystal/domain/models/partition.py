from pydantic import BaseModel, ConfigDict, field_validator, PlainSerializer, PlainValidator
from typing import Tuple, NamedTuple, Any
from typing_extensions import Annotated

from fockcrystal.core.validators import split_bipartition, split_charge
from fockcrystal.core.exceptions import ValidationException

# e = 0 stands for Z/0Z = Z, the sl_infinity setting: residues are raw contents.
INFINITE_MODULUS = 0


def reduce_mod(value: int, e: int) -> int:
    """Residue of value modulo e, or value itself when e is infinite."""
    return value % e if e != INFINITE_MODULUS else value


class NodeCoord(NamedTuple):
    """A node (a, b, c): row a and column b are 1-based, component c is 0 or 1."""
    a: int
    b: int
    c: int

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


class Charge(BaseModel):
    """An ordered pair of integers (s0, s1)."""
    model_config = ConfigDict(frozen=True)

    s0: int
    s1: int

    def __getitem__(self, c: int) -> int:
        return self.s1 if c else self.s0

    def shifted(self, t: int, e: int) -> "Charge":
        return Charge(s0=self.s0 + t * e, s1=self.s1 + t * e)

    def residues(self, e: int) -> Tuple[int, int]:
        """The multiset {s0, s1} mod e, sorted."""
        return tuple(sorted((reduce_mod(self.s0, e), reduce_mod(self.s1, e))))

    @classmethod
    def parse(cls, text: str) -> "Charge":
        s0, s1, marker = split_charge(text)
        if marker:
            raise ValidationException(f"'{text}' names an asymptotic order, an exact charge s0,s1 is required")
        return cls(s0=s0, s1=s1)

    def __str__(self) -> str:
        return f"{self.s0},{self.s1}"


class Partition(BaseModel):
    """
    A partition stored as its positive parts, weakly decreasing.
    Indexing past the last stored row yields 0.
    """
    model_config = ConfigDict(frozen=True)

    parts: Tuple[int, ...] = ()

    @field_validator("parts")
    @classmethod
    def _weakly_decreasing(cls, parts: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(part <= 0 for part in parts):
            raise ValueError("parts must be positive; trailing zeros are not stored")
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise ValueError("parts must be weakly decreasing")
        return parts

    @classmethod
    def of(cls, parts) -> "Partition":
        """Build from any sequence of parts, dropping zeros."""
        return cls(parts=tuple(part for part in parts if part != 0))

    @property
    def rank(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, k: int) -> int:
        """The k-th part (1-based), 0 beyond the length."""
        return self.parts[k - 1] if 1 <= k <= len(self.parts) else 0

    def __str__(self) -> str:
        return ",".join(str(part) for part in self.parts) if self.parts else "-"


class Bipartition(BaseModel):
    """An ordered pair of partitions, component 0 first."""
    model_config = ConfigDict(frozen=True)

    first: Partition = Partition()
    second: Partition = Partition()

    @classmethod
    def of(cls, first=(), second=()) -> "Bipartition":
        return cls(first=Partition.of(first), second=Partition.of(second))

    @classmethod
    def empty(cls) -> "Bipartition":
        return cls()

    @classmethod
    def parse(cls, text: str) -> "Bipartition":
        first, second = split_bipartition(text)
        return cls(first=Partition(parts=first), second=Partition(parts=second))

    @property
    def rank(self) -> int:
        return self.first.rank + self.second.rank

    def component(self, c: int) -> Partition:
        return self.second if c else self.first

    def swapped(self) -> "Bipartition":
        return Bipartition(first=self.second, second=self.first)

    def add_node(self, node: NodeCoord) -> "Bipartition":
        return self._with_row(node, node.b)

    def remove_node(self, node: NodeCoord) -> "Bipartition":
        return self._with_row(node, node.b - 1)

    def _with_row(self, node: NodeCoord, new_length: int) -> "Bipartition":
        parts = list(self.component(node.c).parts)
        if node.a == len(parts) + 1:
            parts.append(new_length)
        else:
            parts[node.a - 1] = new_length
        updated = Partition.of(parts)
        if node.c:
            return Bipartition(first=self.first, second=updated)
        return Bipartition(first=updated, second=self.second)

    def sort_key(self) -> Tuple[int, Tuple[int, ...], Tuple[int, ...]]:
        return (self.rank, self.first.parts, self.second.parts)

    def __str__(self) -> str:
        return f"[{self.first}|{self.second}]"


def _coerce_bipartition(value: Any) -> Bipartition:
    if isinstance(value, Bipartition):
        return value
    if isinstance(value, str):
        return Bipartition.parse(value)
    if isinstance(value, dict):
        return Bipartition.model_validate(value)
    raise ValueError(f"cannot read a bipartition from {value!r}")


# A bipartition carried in documents as its canonical text `[4,3,1,1|4]`.
BipartitionText = Annotated[
    Bipartition,
    PlainValidator(_coerce_bipartition),
    PlainSerializer(str, return_type=str),
]
