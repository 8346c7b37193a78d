import re
from typing import List, Tuple

from fockcrystal.core.exceptions import ValidationException

BIPARTITION_PATTERN = re.compile(r"^\s*\[\s*([^|\]]*?)\s*\|\s*([^|\]]*?)\s*\]\s*$")
CHARGE_PATTERN = re.compile(r"^\s*(-?\d+)\s*,\s*(-?\d+)\s*([+-]?)\s*$")
RANGE_PATTERN = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+))?\s*$")
INFINITY_WORDS = {"inf", "infinity", "oo", "∞"}


def parse_parts(text: str) -> Tuple[int, ...]:
    """Parse one side of a bipartition, `-` being the empty partition."""
    text = text.strip()
    if text in ("-", ""):
        return ()
    try:
        parts = tuple(int(chunk) for chunk in text.split(","))
    except ValueError:
        raise ValidationException(f"'{text}' is not a comma separated list of integers")
    if any(part <= 0 for part in parts):
        raise ValidationException(f"'{text}' contains a non-positive part")
    if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
        raise ValidationException(f"'{text}' is not weakly decreasing")
    return parts


def split_bipartition(text: str) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Split the canonical text form `[a1,a2,...|b1,b2,...]`."""
    match = BIPARTITION_PATTERN.match(text)
    if not match:
        raise ValidationException(
            f"'{text}' is not a bipartition; expected the form [4,3,1,1|4] or [-|3,2]"
        )
    return parse_parts(match.group(1)), parse_parts(match.group(2))


def split_charge(text: str) -> Tuple[int, int, str]:
    """
    Split `s0,s1` with an optional trailing `+` or `-` marking an asymptotic
    order. Returns (first, second, marker).
    """
    match = CHARGE_PATTERN.match(text)
    if not match:
        raise ValidationException(f"'{text}' is not a charge; expected s0,s1 or v0,v1+ / v0,v1-")
    return int(match.group(1)), int(match.group(2)), match.group(3)


def parse_range(text: str) -> List[int]:
    """Parse `a..b` (inclusive) or a single integer."""
    match = RANGE_PATTERN.match(text)
    if not match:
        raise ValidationException(f"'{text}' is not a range; expected a..b or a single integer")
    low = int(match.group(1))
    high = int(match.group(2)) if match.group(2) is not None else low
    if high < low:
        raise ValidationException(f"empty range '{text}'")
    return list(range(low, high + 1))


def parse_modulus(text: str) -> int:
    """Parse e; `inf` selects the sl_infinity setting, encoded as 0."""
    if text.strip().lower() in INFINITY_WORDS:
        return 0
    try:
        e = int(text)
    except ValueError:
        raise ValidationException(f"'{text}' is not a modulus")
    if e < 2:
        raise ValidationException(f"modulus e must be at least 2 or 'inf', got {e}")
    return e


