from typing import Optional

from app.dependencies import http_error
from app.errors import RootNumberError
from app.shapes.schemas import (
    AssignRequest,
    BoxRequest,
    BoxResponse,
    ClassifyRequest,
    DimensionRequest,
    DimensionResponse,
    GroupDescriptor,
    InfChar,
    IntegralClassification,
)
from app.shapes.service import shape_service
from fastapi import APIRouter, Query

router = APIRouter(prefix="/shapes", tags=["Shapes"])


@router.post("/bracket", response_model=InfChar)
async def bracket(lam: InfChar, d: int = Query(..., ge=1)):
    """lambda[d] = lambda * (X^{(d-1)/2} + ... + X^{-(d-1)/2})"""
    try:
        return shape_service.lambda_bracket_d(lam, d)
    except RootNumberError as e:
        raise http_error(e)


@router.post("/classify", response_model=IntegralClassification)
async def classify(request: ClassifyRequest):
    return shape_service.classify_integral(request.case, request.lam, request.lam.rank)


@router.post("/group", response_model=Optional[GroupDescriptor])
async def assign_group(request: AssignRequest):
    """Endoscopic group of an integral refined shape"""
    try:
        return shape_service.assign_group(request.shape, request.case)
    except RootNumberError as e:
        raise http_error(e)


@router.post("/dimension", response_model=DimensionResponse)
async def dimension(request: DimensionRequest):
    """Weyl dimension, norm and positive-root count"""
    try:
        return {
            "group": str(request.group),
            "dimension": str(shape_service.weyl_dim(request.group, request.lam)),
            "m_norm": str(shape_service.m_norm(request.group, request.lam)),
            "positive_roots": shape_service.positive_root_count(request.group),
        }
    except RootNumberError as e:
        raise http_error(e)


@router.post("/box", response_model=BoxResponse)
async def dim_box(request: BoxRequest):
    try:
        shapes = shape_service.refined_shapes(request.box, request.lam, request.case)
        value = shape_service.dim_box(request.group, request.box, request.lam, request.case)
        holds = shape_service.dim_bound_holds(
            request.group, request.box, request.lam, request.case
        )
    except RootNumberError as e:
        raise http_error(e)
    return {"dim_box": str(value), "refined_count": len(shapes), "bound_holds": holds}
