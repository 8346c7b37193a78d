import threading
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
from cachetools import LRUCache

from fockcrystal.core.config import settings
from fockcrystal.core.exceptions import (
    ChargeException, CrystalInvariantException, NotInCrystalException, ValidationException
)
from fockcrystal.core.logging import get_logger
from fockcrystal.core.metrics import CRYSTAL_LEVELS_BUILT
from fockcrystal.domain.models.crystal import NodeKind, ReducedSignature, SignatureEntry
from fockcrystal.domain.models.order import NodeOrder
from fockcrystal.domain.models.partition import (
    Bipartition, Charge, NodeCoord, INFINITE_MODULUS, reduce_mod
)
from fockcrystal.services.combinatorics import (
    addable_nodes, removable_nodes, candidate_residues, check_modulus
)

logger = get_logger("crystal")


def signature(bipartition: Bipartition, i: int, e: int, order: NodeOrder) -> List[SignatureEntry]:
    """The i-signature of the bipartition, ascending under order."""
    entries = [
        SignatureEntry(node=tuple(node), kind=NodeKind.ADDABLE)
        for node in addable_nodes(bipartition, i, e, order)
    ] + [
        SignatureEntry(node=tuple(node), kind=NodeKind.REMOVABLE)
        for node in removable_nodes(bipartition, i, e, order)
    ]
    entries.sort(key=lambda entry: order.key(entry.coord))
    for x, y in zip(entries, entries[1:]):
        if order.key(x.coord) == order.key(y.coord):
            raise CrystalInvariantException(
                f"addable {x.coord} and removable {y.coord} tie under {order}"
            )
    return entries


def reduce_signature(entries: List[SignatureEntry]) -> ReducedSignature:
    """
    Delete adjacent RA pairs until none is left, in one pass: an A cancels
    the nearest pending R on its left.
    """
    pending: List[SignatureEntry] = []
    addables: List[SignatureEntry] = []
    for entry in entries:
        if entry.kind == NodeKind.REMOVABLE:
            pending.append(entry)
        elif pending:
            pending.pop()
        else:
            addables.append(entry)
    return ReducedSignature(addables=addables, normals=pending)


def _reduced(bipartition: Bipartition, i: int, e: int, order: NodeOrder) -> ReducedSignature:
    return reduce_signature(signature(bipartition, i, e, order))


def normal_nodes(bipartition: Bipartition, i: int, e: int, order: NodeOrder) -> List[NodeCoord]:
    return [entry.coord for entry in _reduced(bipartition, i, e, order).normals]


def good_node(bipartition: Bipartition, i: int, e: int, order: NodeOrder) -> Optional[NodeCoord]:
    """The leftmost normal i-node, or None."""
    normals = _reduced(bipartition, i, e, order).normals
    return normals[0].coord if normals else None


def good_node_addable(bipartition: Bipartition, i: int, e: int, order: NodeOrder) -> Optional[NodeCoord]:
    """The addable i-node that becomes good once added: the rightmost surviving A."""
    addables = _reduced(bipartition, i, e, order).addables
    return addables[-1].coord if addables else None


def f_tilde(bipartition: Bipartition, i: int, e: int, order: NodeOrder) -> Optional[Bipartition]:
    node = good_node_addable(bipartition, i, e, order)
    return bipartition.add_node(node) if node else None


def e_tilde(bipartition: Bipartition, i: int, e: int, order: NodeOrder) -> Optional[Bipartition]:
    node = good_node(bipartition, i, e, order)
    return bipartition.remove_node(node) if node else None


def phi(bipartition: Bipartition, i: int, e: int, order: NodeOrder) -> int:
    return len(_reduced(bipartition, i, e, order).addables)


def epsilon(bipartition: Bipartition, i: int, e: int, order: NodeOrder) -> int:
    return len(_reduced(bipartition, i, e, order).normals)


def successors(bipartition: Bipartition, e: int, order: NodeOrder) -> List[Tuple[int, Bipartition]]:
    """All (i, f̃_i λ) that exist."""
    result = []
    for i in candidate_residues(bipartition, e, order):
        target = f_tilde(bipartition, i, e, order)
        if target is not None:
            result.append((i, target))
    return result


class _CrystalLevels:
    """Levels 0..k of one crystal, extended under the crystal's own lock."""

    def __init__(self):
        self.lock = threading.Lock()
        self.levels: Tuple[FrozenSet[Bipartition], ...] = (frozenset([Bipartition.empty()]),)


class CrystalLevelCache:
    """
    Thread-safe memo of crystal levels per (e, order), holding at most
    MAX_CACHED_CRYSTALS crystals (least recently used evicted first).

    The shared lock only guards key lookup. A crystal is extended under
    its own lock; built levels are published as a new tuple and read
    without locking.
    """
    _lock = threading.Lock()
    _crystals: LRUCache = LRUCache(maxsize=settings.MAX_CACHED_CRYSTALS)

    @classmethod
    def _entry(cls, e: int, order: NodeOrder) -> _CrystalLevels:
        key = (e, order)
        with cls._lock:
            entry = cls._crystals.get(key)
            if entry is None:
                entry = _CrystalLevels()
                cls._crystals[key] = entry
            return entry

    @classmethod
    def get_level(cls, e: int, order: NodeOrder, n: int) -> FrozenSet[Bipartition]:
        entry = cls._entry(e, order)
        levels = entry.levels
        if n < len(levels):
            return levels[n]
        with entry.lock:
            while len(entry.levels) <= n:
                frontier = entry.levels[-1]
                following = frozenset(
                    target for source in frontier for _, target in successors(source, e, order)
                )
                entry.levels = entry.levels + (following,)
                CRYSTAL_LEVELS_BUILT.inc()
                logger.debug(
                    "Built crystal level",
                    extra={"e": e, "order": str(order), "rank": len(entry.levels) - 1, "size": len(following)}
                )
            return entry.levels[n]

    @classmethod
    def cached_crystals(cls) -> int:
        with cls._lock:
            return len(cls._crystals)

    @classmethod
    def clear(cls) -> None:
        with cls._lock:
            cls._crystals.clear()


def enumerate_uglov(e: int, order: NodeOrder, n: int) -> FrozenSet[Bipartition]:
    """
    Rank-n vertices of the crystal component of the empty bipartition.
    Uglov orders give Uglov bipartitions, asymptotic ones Kleshchev bipartitions.
    """
    check_modulus(e)
    if n < 0:
        raise ValidationException(f"rank must be non-negative, got {n}")
    return CrystalLevelCache.get_level(e, order, n)


def sorted_bipartitions(bipartitions) -> List[Bipartition]:
    return sorted(bipartitions, key=lambda b: b.sort_key())


def strip_labels(bipartition: Bipartition, e: int, order: NodeOrder, strip: str = "smallest") -> List[int]:
    """
    Remove good nodes down to the empty bipartition. Returns the residues
    in the order they were removed. `strip` picks the smallest or the
    largest residue having a good node at each step.
    """
    check_modulus(e)
    labels: List[int] = []
    current = bipartition
    while current.rank > 0:
        residues = candidate_residues(current, e, order)
        if strip == "largest":
            residues = list(reversed(residues))
        for i in residues:
            node = good_node(current, i, e, order)
            if node is not None:
                current = current.remove_node(node)
                labels.append(i)
                break
        else:
            raise NotInCrystalException(
                bipartition=str(bipartition),
                message=f"Not in the crystal of {order} for e={format_modulus(e)}",
                details={"stuck_at": str(current)}
            )
    return labels


def is_in_crystal(bipartition: Bipartition, e: int, order: NodeOrder) -> bool:
    try:
        strip_labels(bipartition, e, order)
    except NotInCrystalException:
        return False
    return True


def stable_modulus(charge: Charge, n: int) -> int:
    """Smallest valid modulus above max(s0, s1) + n; rank-n crystals agree with e = ∞ from there on."""
    return max(2, charge.s0 + n + 1, charge.s1 + n + 1)


def is_flotw(bipartition: Bipartition, e: int, charge: Charge) -> bool:
    """Non-recursive membership test for 0 <= s0 <= s1 < e."""
    if e == INFINITE_MODULUS or not 0 <= charge.s0 <= charge.s1 < e:
        raise ChargeException(
            f"FLOTW test needs 0 <= s0 <= s1 < e, got charge ({charge}) with e={format_modulus(e)}"
        )
    first, second = bipartition.first, bipartition.second
    shift = charge.s1 - charge.s0
    rows = max(first.length, second.length)
    for k in range(1, rows + 1):
        if first.part(k) < second.part(k + shift):
            return False
        if second.part(k) < first.part(k + e - shift):
            return False

    ends: Dict[int, set] = {}
    for c in (0, 1):
        part = bipartition.component(c)
        for a in range(1, part.length + 1):
            length = part.part(a)
            ends.setdefault(length, set()).add(reduce_mod(length - a + charge[c], e))
    return all(len(found) < e for found in ends.values())


def format_modulus(e: int) -> str:
    return "inf" if e == INFINITE_MODULUS else str(e)


class CrystalGraph:
    """Levels 0..max_rank of a crystal with their good-node edges."""

    def __init__(self, e: int, order: NodeOrder, max_rank: int):
        self.e = e
        self.order = order
        self.max_rank = max_rank
        self.levels: List[List[Bipartition]] = []
        self.graph = nx.DiGraph()

    @property
    def root(self) -> Bipartition:
        return Bipartition.empty()

    def edges(self) -> List[Tuple[Bipartition, int, Bipartition]]:
        return [(u, data["label"], v) for u, v, data in self.graph.edges(data=True)]

    def all_reachable(self) -> bool:
        reached = nx.descendants(self.graph, self.root) | {self.root}
        return reached == set(self.graph.nodes)


def build_crystal(e: int, order: NodeOrder, max_rank: int) -> CrystalGraph:
    check_modulus(e)
    if max_rank < 0:
        raise ValidationException(f"max rank must be non-negative, got {max_rank}")
    crystal = CrystalGraph(e, order, max_rank)
    for rank in range(max_rank + 1):
        level = sorted_bipartitions(enumerate_uglov(e, order, rank))
        crystal.levels.append(level)
        crystal.graph.add_nodes_from(level, rank=rank)
    for level in crystal.levels[:-1]:
        for source in level:
            for i, target in successors(source, e, order):
                crystal.graph.add_edge(source, target, label=i)
    logger.info(
        "Built crystal graph",
        extra={"e": e, "order": str(order), "max_rank": max_rank, "edges": crystal.graph.number_of_edges()}
    )
    return crystal
