from typing import List, Optional

from sympy import Rational, floor, igcd

from fockcrystal.core.exceptions import (
    CrystalInvariantException, HeckeParameterException, ValidationException
)
from fockcrystal.core.logging import get_logger
from fockcrystal.domain.models.hecke import HeckeParams, HeckeSolution
from fockcrystal.domain.models.order import NodeOrder
from fockcrystal.domain.models.partition import Charge
from fockcrystal.services.crystal import enumerate_uglov, sorted_bipartitions

logger = get_logger("hecke_params")


def root_order(a: int, l: int) -> int:
    """Multiplicative order of ζ_l^a."""
    return l // igcd(l, a)


def solve_d(a: int, b: int, l: int) -> List[int]:
    """All d in [0, l) with ζ_l^b = -ζ_l^(a·d), i.e. a·d ≡ b - l/2 (mod l)."""
    return [d for d in range(l) if (a * d - (b - l // 2)) % l == 0]


def pin_p(a: int, b: int, d: int, e: int) -> int:
    """The p with d + pe < b/a < d + (p+1)e."""
    position = (Rational(b, a) - d) / e
    if position.is_integer:
        raise HeckeParameterException(
            reason="lattice_point",
            message=f"b/a = {Rational(b, a)} lies on d + eZ for d={d}, e={e}; p is not determined",
            details={"a": a, "b": b, "d": d, "e": e}
        )
    return int(floor(position))


def basic_set_charge(a: int, b: int, l: int, n: Optional[int] = None) -> HeckeParams:
    """
    From Q = ζ_l^b and q = ζ_l^a derive e, d, p and the charge (d + pe, 0).
    With n, also list the Uglov bipartitions labelling the simple modules.
    """
    if a <= 0 or b <= 0 or l < 2:
        raise ValidationException(f"need a, b > 0 and l >= 2, got a={a}, b={b}, l={l}")
    if l % 2:
        raise HeckeParameterException(
            reason="odd_l",
            message=f"l={l} is odd, so -1 is not a power of ζ_l",
            details={"l": l}
        )
    e = root_order(a, l)
    if e == 1:
        raise HeckeParameterException(
            reason="order_one",
            message=f"ζ_l^a has order 1 for a={a}, l={l}; e >= 2 is required",
            details={"a": a, "l": l}
        )
    ds = solve_d(a, b, l)
    if not ds:
        raise HeckeParameterException(
            reason="unsolvable_d",
            message=f"a·d ≡ b - l/2 (mod l) has no solution: gcd({a},{l}) does not divide {b - l // 2}",
            details={"a": a, "b": b, "l": l}
        )
    solutions = [HeckeSolution(d=d, p=pin_p(a, b, d, e)) for d in ds]
    charges = {solution.d + solution.p * e for solution in solutions}
    if len(charges) != 1:
        raise CrystalInvariantException(f"solutions give different charges {sorted(charges)}")
    first = solutions[0]
    charge = Charge(s0=first.d + first.p * e, s1=0)
    params = HeckeParams(a=a, b=b, l=l, e=e, d=first.d, p=first.p, charge=charge, solutions=solutions)
    if n is not None:
        if n < 0:
            raise ValidationException(f"rank must be non-negative, got {n}")
        level = enumerate_uglov(e, NodeOrder(charge=charge), n)
        params = params.model_copy(update={"n": n, "basic_set": sorted_bipartitions(level)})
    logger.info("Hecke parameters", extra={"a": a, "b": b, "l": l, "e": e, "d": first.d, "p": first.p})
    return params
