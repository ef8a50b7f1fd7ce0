from app.dependencies import http_error
from app.epsilon.schemas import (
    ArchimedeanRequest,
    ArchimedeanRootNumber,
    CaseRequest,
    CentralTransferProfile,
    CoefficientSchedule,
    LambdaRequest,
    LambdaSignReport,
    LocalProfileRequest,
    PositivityReport,
    PositivityRequest,
    TransferRequest,
    TransferResponse,
)
from app.epsilon.service import epsilon_service
from app.errors import RootNumberError
from fastapi import APIRouter

router = APIRouter(prefix="/epsilon", tags=["Epsilon"])


@router.post("/schedule", response_model=CoefficientSchedule)
async def coefficient_schedule(request: CaseRequest):
    """Coefficients a_N(k, i) of the weighted-count test function"""
    try:
        return epsilon_service.coefficient_schedule(request.case, request.N, request.k)
    except RootNumberError as e:
        raise http_error(e)


@router.post("/transfer-at-identity", response_model=TransferResponse)
async def transfer_at_identity(request: TransferRequest):
    """Self-dual transfer at the identity, up to a positive constant"""
    try:
        value = epsilon_service.selfdual_transfer_at_identity(request.N, request.conductor)
    except RootNumberError as e:
        raise http_error(e)
    return {"N": request.N, "value": value}


@router.post("/local-profile", response_model=CentralTransferProfile)
async def local_profile(request: LocalProfileRequest):
    """Central transfer profile of one place in the conjugate case"""
    try:
        return epsilon_service.conj_local_profile(request.place, request.k)
    except RootNumberError as e:
        raise http_error(e)


@router.post("/lambda", response_model=LambdaSignReport)
async def lambda_sign(request: LambdaRequest):
    """Vanishing and sign of the main term"""
    try:
        return epsilon_service.lambda_sign(
            request.case, request.N, request.conductor, request.places, request.omega
        )
    except RootNumberError as e:
        raise http_error(e)


@router.post("/positivity", response_model=PositivityReport)
async def positivity(request: PositivityRequest):
    """Hypotheses of the transfer-positivity theorems"""
    try:
        return epsilon_service.c_positivity(
            request.case,
            request.N,
            request.conductor,
            request.places,
            request.omega_infty,
            request.central_conductors,
        )
    except RootNumberError as e:
        raise http_error(e)


@router.post("/archimedean", response_model=ArchimedeanRootNumber)
async def archimedean(request: ArchimedeanRequest):
    try:
        return epsilon_service.archimedean_root_number(request.infchars)
    except RootNumberError as e:
        raise http_error(e)
