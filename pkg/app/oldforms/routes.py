from app.dependencies import http_error
from app.errors import RootNumberError
from app.oldforms.schemas import (
    DimensionResponse,
    OldformIndex,
    TraceCase,
    TraceProfile,
    TraceResponse,
)
from app.oldforms.service import oldform_service
from fastapi import APIRouter, Query

router = APIRouter(prefix="/oldforms", tags=["Oldforms"])


@router.get("/dimension", response_model=DimensionResponse)
async def oldform_dimension(N: int = Query(..., ge=2), k: int = Query(..., ge=0)):
    """Dimension of the level-k oldform space of GL_N"""
    return {"N": N, "k": k, "dimension": oldform_service.oldform_dimension(N, k)}


@router.get("/trace", response_model=TraceResponse)
async def twisted_trace(
    case: TraceCase, N: int = Query(..., ge=2), k: int = Query(..., ge=0)
):
    """Twisted trace by enumeration, next to its binomial closed form"""
    try:
        fixed = oldform_service.involution_fixed_points(case, N, k)
    except RootNumberError as e:
        raise http_error(e)
    closed = oldform_service.closed_form_trace(case, N, k)
    return {
        "case": case,
        "N": N,
        "k": k,
        "fixed_points": fixed,
        "closed_form": closed,
        "agrees": fixed == closed,
    }


@router.get("/profile", response_model=TraceProfile)
async def trace_profile(
    case: TraceCase, N: int = Query(..., ge=2), k: int = Query(..., ge=0)
):
    """Trace values T(0..k)"""
    return oldform_service.trace_profile(case, N, k)


@router.post("/involution", response_model=OldformIndex)
async def involution(index: OldformIndex):
    """Image of a basis label under the twisting involution"""
    return oldform_service.involution_image(index)
