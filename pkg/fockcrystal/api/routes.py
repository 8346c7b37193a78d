from typing import Optional, Union

from fastapi import APIRouter, Depends, Query
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from fockcrystal.core.config import settings
from fockcrystal.core.exceptions import CrystalInvariantException
from fockcrystal.core.validators import parse_modulus
from fockcrystal.domain.models.canonical import CanonicalElement
from fockcrystal.domain.models.crystal import CrystalGraphDocument, EnumerationDocument
from fockcrystal.domain.models.hecke import HeckeParams
from fockcrystal.domain.models.order import NodeOrder
from fockcrystal.domain.models.partition import Bipartition, Charge
from fockcrystal.domain.models.plan import MapResult, PsiPlan
from fockcrystal.domain.models.symbol import Symbol
from fockcrystal.services.export import enumeration_document, graph_document, to_dot
from fockcrystal.services.providers import (
    get_enumeration_service,
    get_psi_service,
    get_oracle_service,
    get_plan_service,
    get_symbol_service,
    get_canonical_service,
    get_basic_set_service,
    get_graph_service
)

router = APIRouter()


class MapRequest(BaseModel):
    bipartition: str
    e: Union[int, str]
    source: str
    target: str
    strategy: str = "ladder"
    oracle: bool = False


@router.get("/enumerate", response_model=EnumerationDocument)
def enumerate_bipartitions(
    e: str = Query(..., description="modulus, or 'inf'"),
    order: str = Query(..., description="s0,s1 or v0,v1+ / v0,v1-"),
    n: int = Query(..., ge=0, le=settings.MAX_API_RANK),
    enumerate_uglov=Depends(get_enumeration_service)
):
    """
    List the rank-n vertices of the crystal of the given order.
    """
    modulus, node_order = parse_modulus(e), NodeOrder.parse(order)
    return enumeration_document(modulus, node_order, n, enumerate_uglov(modulus, node_order, n))


@router.post("/map", response_model=MapResult)
def map_bipartition(
    request: MapRequest,
    psi=Depends(get_psi_service),
    psi_recursive=Depends(get_oracle_service),
    plan=Depends(get_plan_service)
):
    """
    Image of a bipartition under the crystal isomorphism between two charges.
    """
    e = parse_modulus(str(request.e))
    bipartition = Bipartition.parse(request.bipartition)
    source = Charge.parse(request.source)
    target = NodeOrder.parse(request.target)
    steps = plan(e, source, target, n=bipartition.rank, strategy=request.strategy).steps
    image = psi(bipartition, e, source, target, strategy=request.strategy)
    oracle = None
    if request.oracle:
        oracle = psi_recursive(bipartition, e, NodeOrder(charge=source), target)
        if oracle != image:
            raise CrystalInvariantException(
                f"composed map gives {image} but the crystal gives {oracle} for {bipartition}"
            )
    return MapResult(
        bipartition=bipartition,
        image=image,
        e=e,
        source=str(source),
        target=str(target),
        steps=[str(step) for step in steps],
        oracle=oracle,
    )


@router.get("/symbol", response_model=Symbol)
def symbol_of(
    bipartition: str,
    charge: str,
    m: Optional[int] = None,
    to_symbol=Depends(get_symbol_service)
):
    return to_symbol(Bipartition.parse(bipartition), Charge.parse(charge), m)


@router.get("/canonical", response_model=CanonicalElement)
def canonical_element(
    bipartition: str,
    charge: str,
    pair_orbit=Depends(get_canonical_service)
):
    """
    Canonical basis element of the level-2 sl_infinity module.
    """
    return pair_orbit(Bipartition.parse(bipartition), Charge.parse(charge))


@router.get("/basic-set", response_model=HeckeParams)
def basic_set(
    a: int = Query(..., gt=0),
    b: int = Query(..., gt=0),
    l: int = Query(..., ge=2),
    n: Optional[int] = Query(None, ge=0, le=settings.MAX_API_RANK),
    basic_set_charge=Depends(get_basic_set_service)
):
    return basic_set_charge(a, b, l, n)


@router.get("/graph", response_model=CrystalGraphDocument, response_model_by_alias=True)
def crystal_graph(
    e: str,
    order: str,
    max_rank: int = Query(..., ge=0, le=settings.MAX_API_RANK),
    build_crystal=Depends(get_graph_service)
):
    crystal = build_crystal(parse_modulus(e), NodeOrder.parse(order), max_rank)
    return graph_document(crystal)


@router.get("/graph.dot", response_class=PlainTextResponse)
def crystal_graph_dot(
    e: str,
    order: str,
    max_rank: int = Query(..., ge=0, le=settings.MAX_API_RANK),
    build_crystal=Depends(get_graph_service)
):
    return to_dot(build_crystal(parse_modulus(e), NodeOrder.parse(order), max_rank))


@router.get("/plan", response_model=PsiPlan)
def bijection_plan(
    e: int,
    source: str,
    target: str,
    n: Optional[int] = Query(None, ge=0),
    strategy: str = "ladder",
    plan=Depends(get_plan_service)
):
    """
    Step list decomposing the map between two charges.
    """
    return plan(e, Charge.parse(source), NodeOrder.parse(target), n=n, strategy=strategy)
