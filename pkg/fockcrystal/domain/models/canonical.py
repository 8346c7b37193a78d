from typing import List

from pydantic import BaseModel, ConfigDict

from fockcrystal.domain.models.partition import BipartitionText, Charge


class CanonicalTerm(BaseModel):
    model_config = ConfigDict(frozen=True)

    bipartition: BipartitionText
    degree: int


class CanonicalElement(BaseModel):
    """b(head) as a list of monomial terms v^degree * bipartition."""
    head: BipartitionText
    charge: Charge
    terms: List[CanonicalTerm]

    @property
    def max_degree(self) -> int:
        return max(term.degree for term in self.terms)

    def render(self) -> str:
        pieces = []
        for term in self.terms:
            if term.degree == 0:
                pieces.append(str(term.bipartition))
            elif term.degree == 1:
                pieces.append(f"v·{term.bipartition}")
            else:
                pieces.append(f"v^{term.degree}·{term.bipartition}")
        return "b = " + " + ".join(pieces)
