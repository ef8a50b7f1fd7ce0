from typing import List, Optional

from app.dependencies import http_error
from app.errors import RootNumberError
from app.segments.schemas import (
    BernsteinRequest,
    BernsteinResponse,
    CharacterExistenceRequest,
    ExistenceWitness,
    PairRule,
    PairRulesRequest,
    SegmentData,
    SegmentSummary,
    WitnessRequest,
)
from app.segments.service import segment_service
from fastapi import APIRouter

router = APIRouter(prefix="/segments", tags=["Segments"])


@router.post("/summary", response_model=SegmentSummary)
async def summarize(segments: SegmentData):
    """Rank, conductor and root number of a segment datum"""
    try:
        return {
            "N": segments.N,
            "conductor": segment_service.segment_conductor(segments),
            "root_number": segment_service.segment_root_number(segments),
        }
    except RootNumberError as e:
        raise http_error(e)


@router.post("/bernstein-constant", response_model=BernsteinResponse)
async def bernstein_constant(request: BernsteinRequest):
    try:
        constant = segment_service.bernstein_constant(request.component, request.k)
    except RootNumberError as e:
        raise http_error(e)
    return {"k": request.k, "constant": constant}


@router.post("/character-existence")
async def character_existence(request: CharacterExistenceRequest):
    """Existence of a conjugate self-dual character with conductor k and sign kappa"""
    try:
        exists = segment_service.character_existence_conj(
            request.place, request.k, request.kappa
        )
    except RootNumberError as e:
        raise http_error(e)
    return {"exists": exists}


@router.post("/witness", response_model=Optional[ExistenceWitness])
async def selfdual_witness(request: WitnessRequest):
    """Self-dual representation with prescribed conductor and central character"""
    try:
        return segment_service.construct_selfdual_witness(
            request.N, request.k, request.eta, request.target, request.root_number
        )
    except RootNumberError as e:
        raise http_error(e)


@router.post("/achievable-pairs", response_model=List[PairRule])
async def achievable_pairs(request: PairRulesRequest):
    """Conductor / central-conductor rules at one place for U_N^+"""
    try:
        return segment_service.achievable_pairs_conj(request.place, request.N)
    except RootNumberError as e:
        raise http_error(e)
