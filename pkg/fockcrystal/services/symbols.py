from typing import Dict, Iterable, Optional, Tuple

from fockcrystal.core.exceptions import (
    ChargeException, CrystalInvariantException, NonStandardSymbolException,
    NotInImageException, ValidationException
)
from fockcrystal.core.logging import get_logger
from fockcrystal.domain.models.partition import Bipartition, Charge, Partition
from fockcrystal.domain.models.symbol import Pairing, Symbol

logger = get_logger("symbols")


def _check_charge(charge: Charge) -> None:
    if not 0 <= charge.s0 <= charge.s1:
        raise ChargeException(
            f"symbols need 0 <= s0 <= s1, got ({charge})",
            details={"charge": str(charge)}
        )


def canonical_m(bipartition: Bipartition, charge: Charge) -> int:
    """Smallest m >= 1 with m > r_c - s_c for both components."""
    return max(
        1,
        bipartition.first.length - charge.s0 + 1,
        bipartition.second.length - charge.s1 + 1,
    )


def beta_numbers(partition: Partition, s: int, m: int) -> Tuple[int, ...]:
    return tuple(partition.part(j) - j + s + m for j in range(1, m + s + 1))


def to_symbol(bipartition: Bipartition, charge: Charge, m: Optional[int] = None) -> Symbol:
    _check_charge(charge)
    if m is None:
        m = canonical_m(bipartition, charge)
    elif m < 0 or m <= max(bipartition.first.length - charge.s0, bipartition.second.length - charge.s1):
        raise ValidationException(
            f"m={m} is too small for {bipartition} at charge ({charge})",
            details={"minimum": canonical_m(bipartition, charge)}
        )
    return Symbol(
        charge=charge,
        m=m,
        top=beta_numbers(bipartition.second, charge.s1, m),
        bottom=beta_numbers(bipartition.first, charge.s0, m),
    )


def _row_to_partition(row: Tuple[int, ...], s: int, m: int) -> Partition:
    parts = [beta + j - s - m for j, beta in enumerate(row, start=1)]
    if any(part < 0 for part in parts):
        raise ValidationException(f"beta row {list(row)} decodes to a negative part")
    return Partition.of(parts)


def from_symbol(symbol: Symbol) -> Bipartition:
    return Bipartition(
        first=_row_to_partition(symbol.bottom, symbol.charge.s0, symbol.m),
        second=_row_to_partition(symbol.top, symbol.charge.s1, symbol.m),
    )


def theta(symbol: Symbol) -> Pairing:
    """Bottom entries from the smallest up, each to the largest unused top entry at most itself."""
    if not symbol.is_standard():
        raise NonStandardSymbolException(
            "Symbol is not standard, the pairing does not exist",
            details={"top": list(symbol.top), "bottom": list(symbol.bottom)}
        )
    unused = sorted(symbol.top)
    mapping: Dict[int, int] = {}
    for x in sorted(symbol.bottom):
        candidates = [y for y in unused if y <= x]
        if not candidates:
            raise CrystalInvariantException(f"standard symbol left bottom entry {x} unmatched")
        mapping[x] = candidates[-1]
        unused.remove(candidates[-1])
    return Pairing.from_mapping(mapping)


def tau(symbol: Symbol) -> Pairing:
    """Bottom entries from the largest down, each to the smallest unused top entry at least itself."""
    unused = sorted(symbol.top)
    mapping: Dict[int, int] = {}
    for x in sorted(symbol.bottom, reverse=True):
        candidates = [y for y in unused if y >= x]
        if not candidates:
            raise NotInImageException(
                f"bottom entry {x} has no free top entry above it",
                details={"top": list(symbol.top), "bottom": list(symbol.bottom)}
            )
        mapping[x] = candidates[0]
        unused.remove(candidates[0])
    return Pairing.from_mapping(mapping)


def swap_pairs(symbol: Symbol, pairs: Iterable[Tuple[int, int]]) -> Symbol:
    """Exchange each (bottom x, top y) between the rows and re-sort."""
    bottom = set(symbol.bottom)
    top = set(symbol.top)
    for x, y in pairs:
        if x not in bottom or y not in top or y in bottom or x in top:
            raise CrystalInvariantException(f"pair ({x},{y}) cannot be exchanged in {symbol.render()!r}")
        bottom.remove(x)
        top.remove(y)
        bottom.add(y)
        top.add(x)
    return Symbol(
        charge=symbol.charge,
        m=symbol.m,
        top=tuple(sorted(top, reverse=True)),
        bottom=tuple(sorted(bottom, reverse=True)),
    )


def upsilon(bipartition: Bipartition, charge: Charge, m: Optional[int] = None) -> Bipartition:
    """Image of a bipartition of Φ^(s0,s1) in Φ^(s0,s1+e): swap every θ-pair."""
    symbol = to_symbol(bipartition, charge, m)
    pairing = theta(symbol)
    image = from_symbol(swap_pairs(symbol, pairing.pairs))
    logger.debug("upsilon", extra={"source": str(bipartition), "image": str(image), "pairs": len(pairing.pairs)})
    return image


def upsilon_inverse(bipartition: Bipartition, charge: Charge, m: Optional[int] = None) -> Bipartition:
    """
    Preimage under upsilon. `charge` is the charge of upsilon's source, the
    bipartition itself lives in Φ^(s0,s1+e).
    """
    symbol = to_symbol(bipartition, charge, m)
    try:
        pairing = tau(symbol)
    except NotInImageException as exc:
        raise NotInImageException(
            f"{bipartition} is not in the image of upsilon at charge ({charge}): {exc.message}",
            details=exc.details
        )
    return from_symbol(swap_pairs(symbol, pairing.pairs))
