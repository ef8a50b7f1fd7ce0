from app.dependencies import http_error
from app.errors import RootNumberError
from app.local_fields.schemas import (
    CoboundaryReport,
    ConductorCheckRequest,
    GlobalizationRequest,
    GlobalizationResponse,
    JInvariantResponse,
    RingRequest,
    RingSummary,
    ValidityReport,
    WitnessRequest,
    WitnessResult,
)
from app.local_fields.service import local_field_service
from fastapi import APIRouter, HTTPException, Query

router = APIRouter(prefix="/local-fields", tags=["Local fields"])


def _summary(ring) -> dict:
    return {
        "name": ring.name,
        "p": ring.p,
        "m": ring.m,
        "splitting": ring.splitting,
        "trace": ring.trace,
        "norm_constant": ring.norm_constant,
        "e": ring.e,
        "depth": ring.depth,
        "size": ring.size,
        "different_exponent": local_field_service.different_exponent(ring),
    }


@router.post("/rings", response_model=RingSummary)
async def build_ring(request: RingRequest):
    """Validate a quadratic presentation and describe the truncated ring"""
    try:
        ring = local_field_service.build_truncated_ring(
            request.p, request.m, request.splitting, request.datum
        )
        return _summary(ring)
    except RootNumberError as e:
        raise http_error(e)


@router.get("/presets/{name}", response_model=RingSummary)
async def describe_preset(name: str, m: int = Query(None, ge=1)):
    """Describe a named extension at the requested (or default) truncation"""
    try:
        return _summary(local_field_service.ring_from_preset(name, m))
    except RootNumberError as e:
        raise http_error(e)


@router.get("/presets/{name}/j", response_model=JInvariantResponse)
async def j_invariant(name: str, m: int = Query(None, ge=1)):
    """Norm-group depth j of a named extension"""
    try:
        ring = local_field_service.ring_from_preset(name, m)
        return {
            "preset": name,
            "m": ring.m,
            "j": local_field_service.compute_j_invariant(ring),
            "norm_group_size": len(local_field_service.norm_group_units(ring)),
        }
    except RootNumberError as e:
        raise http_error(e)


@router.get("/presets/{name}/coboundaries", response_model=CoboundaryReport)
async def coboundaries(
    name: str, k: int = Query(..., ge=0), m: int = Query(None, ge=1)
):
    """Compare phi(1 + p_w^k) with the norm-one elements of 1 + (D cap p_w^k)"""
    try:
        ring = local_field_service.ring_from_preset(name, m)
        return local_field_service.verify_coboundary_lemma(ring, k)
    except RootNumberError as e:
        raise http_error(e)


@router.post("/witness", response_model=WitnessResult)
async def witness_search(request: WitnessRequest):
    """Search for A with w conj(A)^T w^-1 = yA over a named truncated ring"""
    try:
        ring = local_field_service.ring_from_preset(request.preset, request.m)
        return local_field_service.matrix_witness_search(ring, request.N, request.y)
    except RootNumberError as e:
        raise http_error(e)


@router.post("/conductors/validity", response_model=ValidityReport)
async def conductor_validity(request: ConductorCheckRequest):
    """Valid / 0-valid conductor check with witnessing and failing places"""
    try:
        return local_field_service.valid_conductor(
            request.conductor, request.places, request.N, request.mode
        )
    except RootNumberError as e:
        raise http_error(e)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/conductors/globalization", response_model=GlobalizationResponse)
async def conductor_globalization(request: GlobalizationRequest):
    """Whether a conjugate self-dual character of this conductor globalizes"""
    try:
        return {
            "holds": local_field_service.cchar_globalization_check(
                request.conductor, request.places
            ),
            "shifted": local_field_service.shifted_conductor(
                request.conductor, request.places
            ),
        }
    except RootNumberError as e:
        raise http_error(e)
