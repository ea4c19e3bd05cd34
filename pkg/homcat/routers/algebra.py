from __future__ import annotations
from typing import NoReturn
import json

from fastapi import APIRouter, HTTPException

from ..errors import BudgetExceeded, HomcatError, InvariantViolation
from ..models.schemas import AxiomReport, HomGroupSpec, HomRingSpec, ReduceRequest, ReduceResponse, RingReport
from ..services import catalog
from ..services.free_homgroup import reduce_request
from ..services.homgroup import FiniteHomGroup, check_hom_group
from ..services.homring import FiniteHomRing, check_hom_ring
from ..utils.parsing import parse_tree

router = APIRouter(prefix="/api", tags=["algebra"])


def _plain(value: object) -> object:
    return int(value) if hasattr(value, "__index__") else str(value)


def _raise(exc: HomcatError) -> NoReturn:
    if isinstance(exc, InvariantViolation):
        status = 500
    elif isinstance(exc, BudgetExceeded):
        status = 413
    else:
        status = 422
    witness = json.loads(json.dumps(exc.witness, default=_plain))
    raise HTTPException(status_code=status, detail={"error": exc.message, "witness": witness})


@router.post("/reduce", response_model=ReduceResponse)
def reduce(payload: ReduceRequest):
    try:
        return reduce_request(parse_tree(payload.tree), strict=payload.strict, strategy=payload.strategy)
    except HomcatError as exc:
        _raise(exc)


@router.post("/check/group", response_model=AxiomReport)
def check_group(payload: HomGroupSpec):
    try:
        return check_hom_group(FiniteHomGroup.from_spec(payload))
    except HomcatError as exc:
        _raise(exc)


@router.post("/check/ring", response_model=RingReport)
def check_ring(payload: HomRingSpec):
    try:
        return check_hom_ring(FiniteHomRing.from_spec(payload))
    except HomcatError as exc:
        _raise(exc)


@router.get("/catalog")
def catalog_index():
    return {kind: catalog.names(kind) for kind in ("group", "ring", "module")}


@router.get("/catalog/{name}")
def catalog_entry(name: str):
    if name not in catalog.names():
        raise HTTPException(status_code=404, detail=f"No catalog entry named {name}")
    try:
        return catalog.describe(name)
    except HomcatError as exc:
        _raise(exc)
