"""Text, JSON and DOT renderings of computed objects."""
import json
from typing import Dict, Iterable, List

from fockcrystal.domain.models.crystal import CrystalEdge, CrystalGraphDocument, EnumerationDocument
from fockcrystal.domain.models.order import NodeOrder
from fockcrystal.domain.models.partition import Bipartition
from fockcrystal.services.crystal import CrystalGraph, format_modulus, sorted_bipartitions


def enumeration_document(e: int, order: NodeOrder, n: int, level: Iterable[Bipartition], flotw_agrees=None) -> EnumerationDocument:
    listing = sorted_bipartitions(level)
    return EnumerationDocument(
        e=format_modulus(e),
        order=str(order),
        n=n,
        count=len(listing),
        bipartitions=listing,
        flotw_agrees=flotw_agrees,
    )


def graph_document(crystal: CrystalGraph) -> CrystalGraphDocument:
    edges = sorted(
        crystal.edges(),
        key=lambda edge: (edge[0].sort_key(), edge[1], edge[2].sort_key())
    )
    return CrystalGraphDocument(
        e=format_modulus(crystal.e),
        order=str(crystal.order),
        max_rank=crystal.max_rank,
        levels=crystal.levels,
        edges=[CrystalEdge(source=u, target=v, label=i) for u, i, v in edges],
    )


def graph_from_document(document: CrystalGraphDocument) -> Dict[Bipartition, List[Bipartition]]:
    """Adjacency read back from a JSON document."""
    adjacency: Dict[Bipartition, List[Bipartition]] = {v: [] for level in document.levels for v in level}
    for edge in document.edges:
        adjacency[edge.source].append(edge.target)
    return adjacency


def to_dot(crystal: CrystalGraph) -> str:
    """Vertices are numbered by rank then canonical order; labels carry the text form."""
    ids: Dict[Bipartition, int] = {}
    lines = [f'digraph "crystal e={format_modulus(crystal.e)} {crystal.order}" {{']
    for level in crystal.levels:
        for vertex in level:
            ids[vertex] = len(ids)
            lines.append(f'  v{ids[vertex]} [label="{vertex}"];')
    document = graph_document(crystal)
    for edge in document.edges:
        lines.append(f'  v{ids[edge.source]} -> v{ids[edge.target]} [label="{edge.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_json(model) -> str:
    """Deterministic JSON: sorted keys, aliases applied, no timestamps."""
    payload = model.model_dump(mode="json", by_alias=True)
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
