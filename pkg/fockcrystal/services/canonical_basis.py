from itertools import combinations
from typing import List

from fockcrystal.core.config import settings
from fockcrystal.core.exceptions import (
    ChargeException, CrystalInvariantException, NotInCrystalException, PairLimitException
)
from fockcrystal.core.logging import get_logger
from fockcrystal.domain.models.canonical import CanonicalElement, CanonicalTerm
from fockcrystal.domain.models.partition import Bipartition, Charge
from fockcrystal.services.symbols import from_symbol, swap_pairs, theta, to_symbol

logger = get_logger("canonical_basis")


def is_sl_infinity_member(bipartition: Bipartition, charge: Charge) -> bool:
    """λ^(0)_i >= λ^(1)_(i+s1-s0) for every i >= 1."""
    if charge.s0 > charge.s1:
        raise ChargeException(f"sl_infinity membership needs s0 <= s1, got ({charge})")
    shift = charge.s1 - charge.s0
    rows = max(bipartition.first.length, bipartition.second.length - shift, 0)
    return all(
        bipartition.first.part(i) >= bipartition.second.part(i + shift)
        for i in range(1, rows + 1)
    )


def pair_orbit(bipartition: Bipartition, charge: Charge) -> CanonicalElement:
    """
    b(λ) for the level-2 sl_infinity module: one term per subset of the
    θ-pairs of λ's symbol, with the subset size as degree.
    """
    if not is_sl_infinity_member(bipartition, charge):
        raise NotInCrystalException(
            bipartition=str(bipartition),
            message=f"Not in the sl_infinity crystal of charge ({charge})"
        )
    symbol = to_symbol(bipartition, charge)
    pairs = theta(symbol).pairs
    if len(pairs) > settings.MAX_PAIRS:
        raise PairLimitException(len(pairs), settings.MAX_PAIRS)

    terms: List[CanonicalTerm] = []
    for degree in range(len(pairs) + 1):
        level = [
            CanonicalTerm(bipartition=from_symbol(swap_pairs(symbol, chosen)), degree=degree)
            for chosen in combinations(pairs, degree)
        ]
        terms.extend(sorted(level, key=lambda term: term.bipartition.sort_key()))

    if len({term.bipartition for term in terms}) != len(terms):
        raise CrystalInvariantException(f"pair swaps of {bipartition} produced repeated bipartitions")
    logger.debug("Canonical basis element", extra={"head": str(bipartition), "terms": len(terms)})
    return CanonicalElement(head=bipartition, charge=charge, terms=terms)


def degree_max_term(bipartition: Bipartition, charge: Charge) -> Bipartition:
    """The unique term of maximal degree in b(λ)."""
    element = pair_orbit(bipartition, charge)
    top = element.max_degree
    leaders = [term.bipartition for term in element.terms if term.degree == top]
    if len(leaders) != 1:
        raise CrystalInvariantException(
            f"maximal degree {top} attained {len(leaders)} times for {bipartition}"
        )
    return leaders[0]
