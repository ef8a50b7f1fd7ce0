from app.combinatorics.schemas import (
    BinomialResponse,
    EulerSumResponse,
    TriangularSystem,
    UnitriangularResponse,
)
from app.combinatorics.service import combinatorics_service
from app.dependencies import http_error
from app.errors import RootNumberError
from fastapi import APIRouter, Query

router = APIRouter(prefix="/combinatorics", tags=["Combinatorics"])


@router.get("/binomial", response_model=BinomialResponse)
async def binomial(n: int, k: int):
    """Binomial coefficient, zero outside the Pascal triangle"""
    return {"n": n, "k": k, "value": combinatorics_service.binomial(n, k)}


@router.get("/euler-sum", response_model=EulerSumResponse)
async def euler_sum(b: int = Query(..., ge=0), k: int = Query(..., ge=0)):
    """Alternating binomial power sum"""
    try:
        value = combinatorics_service.euler_alternating_sum(b, k)
    except RootNumberError as e:
        raise http_error(e)
    return {"b": b, "k": k, "value": value}


@router.post("/unitriangular", response_model=UnitriangularResponse)
async def solve_unitriangular(system: TriangularSystem):
    """Solve a unitriangular Toeplitz system against the delta sequence"""
    return {"coefficients": combinatorics_service.solve_unitriangular(system)}
