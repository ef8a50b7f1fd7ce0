from app.dependencies import http_error
from app.errors import RootNumberError
from app.prediction.schemas import PredictionReport, Scenario
from app.prediction.service import prediction_service
from fastapi import APIRouter
from fastapi.responses import PlainTextResponse

router = APIRouter(prefix="/predict", tags=["Prediction"])


@router.post("", response_model=PredictionReport)
async def predict(scenario: Scenario):
    """Equidistribution or bias of root numbers for a scenario"""
    try:
        return prediction_service.predict(scenario)
    except RootNumberError as e:
        raise http_error(e)


@router.post("/text", response_class=PlainTextResponse)
async def predict_text(scenario: Scenario):
    try:
        report = prediction_service.predict(scenario)
    except RootNumberError as e:
        raise http_error(e)
    return prediction_service.render_text(report)
