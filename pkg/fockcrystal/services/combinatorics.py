"""
Nodes, residues and node orders on bipartitions.

Rows and columns are 1-based, components are 0 and 1. A modulus of
INFINITE_MODULUS keeps contents unreduced.
"""
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

from fockcrystal.core.exceptions import CrystalInvariantException, ValidationException
from fockcrystal.domain.models.order import NodeOrder
from fockcrystal.domain.models.partition import (
    Bipartition, Charge, NodeCoord, Partition, reduce_mod, INFINITE_MODULUS
)


def residue(node: NodeCoord, e: int, charge: Charge) -> int:
    return reduce_mod(node.b - node.a + charge[node.c], e)


def compare_nodes(x: NodeCoord, y: NodeCoord, order: NodeOrder) -> int:
    """-1 when x < y under order, 1 when x > y."""
    return order.compare(x, y)


def addable_corners(partition: Partition, c: int) -> Iterator[NodeCoord]:
    parts = partition.parts
    for a in range(1, len(parts) + 2):
        if a == 1 or partition.part(a - 1) > partition.part(a):
            yield NodeCoord(a, partition.part(a) + 1, c)


def removable_corners(partition: Partition, c: int) -> Iterator[NodeCoord]:
    for a in range(1, partition.length + 1):
        if partition.part(a) > partition.part(a + 1):
            yield NodeCoord(a, partition.part(a), c)


def _sorted_nodes(nodes: List[NodeCoord], order: NodeOrder) -> List[NodeCoord]:
    nodes = sorted(nodes, key=order.key)
    for x, y in zip(nodes, nodes[1:]):
        if order.key(x) == order.key(y):
            raise CrystalInvariantException(
                f"nodes {x} and {y} tie under {order}",
                details={"order": str(order)}
            )
    return nodes


def addable_nodes(bipartition: Bipartition, i: int, e: int, order: NodeOrder) -> List[NodeCoord]:
    """Addable i-nodes, ascending under order."""
    nodes = [
        node
        for c in (0, 1)
        for node in addable_corners(bipartition.component(c), c)
        if order.residue(node, e) == i
    ]
    return _sorted_nodes(nodes, order)


def removable_nodes(bipartition: Bipartition, i: int, e: int, order: NodeOrder) -> List[NodeCoord]:
    """Removable i-nodes, ascending under order."""
    nodes = [
        node
        for c in (0, 1)
        for node in removable_corners(bipartition.component(c), c)
        if order.residue(node, e) == i
    ]
    return _sorted_nodes(nodes, order)


def candidate_residues(bipartition: Bipartition, e: int, order: NodeOrder) -> List[int]:
    """
    Residues worth inspecting for crystal operators: all of Z/eZ, or for
    e = ∞ the contents of the corners actually present.
    """
    if e != INFINITE_MODULUS:
        return list(range(e))
    found = set()
    for c in (0, 1):
        part = bipartition.component(c)
        for node in addable_corners(part, c):
            found.add(order.content(node))
        for node in removable_corners(part, c):
            found.add(order.content(node))
    return sorted(found)


def check_modulus(e: int) -> int:
    if e != INFINITE_MODULUS and e < 2:
        raise ValidationException(f"modulus e must be at least 2 or infinite, got {e}")
    return e


@lru_cache(maxsize=None)
def partitions_of(n: int, largest: Optional[int] = None) -> Tuple[Tuple[int, ...], ...]:
    """All partitions of n with parts at most `largest`, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    result = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - first, first):
            result.append((first,) + rest)
    return tuple(result)


def bipartitions_of(n: int) -> Iterator[Bipartition]:
    """Every bipartition of rank n."""
    if n < 0:
        raise ValidationException(f"rank must be non-negative, got {n}")
    for k in range(n, -1, -1):
        for first in partitions_of(k):
            for second in partitions_of(n - k):
                yield Bipartition(first=Partition(parts=first), second=Partition(parts=second))
