from contextlib import asynccontextmanager

from app.combinatorics.routes import router as combinatorics_router
from app.config import RequestResponseLoggingMiddleware, logger, settings
from app.epsilon.routes import router as epsilon_router
from app.local_fields.routes import router as local_fields_router
from app.oldforms.routes import router as oldforms_router
from app.prediction.routes import router as prediction_router
from app.segments.routes import router as segments_router
from app.shapes.routes import router as shapes_router
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware


@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info(
        f"Lifespan: budgets enumeration={settings.enumeration_budget}, "
        f"witness={settings.witness_search_budget}, ring={settings.ring_element_budget}"
    )
    yield
    logger.info("Lifespan: shutting down.")


app = FastAPI(
    title=settings.app_name,
    description="Exact calculators for root-number equidistribution of (conjugate) self-dual representations",
    version="1.0.0",
    docs_url="/docs",
    redoc_url="/redoc",
    lifespan=lifespan,
)


def cors_origins() -> list[str]:
    if settings.allow_all_origins:
        logger.debug("Development mode: CORS configured to allow all origins")
        return ["*"]
    origins = [o.strip() for o in settings.allowed_origins.split(",") if o.strip()]
    return origins or ["*"]


allowed_origins = cors_origins()
logger.info(f"Allowed CORS origins: {allowed_origins}")

app.add_middleware(RequestResponseLoggingMiddleware)

app.add_middleware(
    CORSMiddleware,
    allow_origins=allowed_origins,
    allow_credentials=True,
    allow_methods=["GET", "POST", "OPTIONS"],
    allow_headers=["Accept", "Content-Type", "Origin"],
    expose_headers=["X-Computation-Time-Ms"],
    max_age=3600,
)


@app.get("/health")
async def health_check():
    """
    Returns the health status of the calculator service.
    """
    return {
        "status": "healthy",
        "service": settings.app_name,
        "budgets": {
            "enumeration": settings.enumeration_budget,
            "witness_search": settings.witness_search_budget,
            "ring_elements": settings.ring_element_budget,
        },
    }


app.include_router(combinatorics_router)
app.include_router(local_fields_router)
app.include_router(oldforms_router)
app.include_router(epsilon_router)
app.include_router(segments_router)
app.include_router(shapes_router)
app.include_router(prediction_router)

if __name__ == "__main__":
    import uvicorn

    uvicorn.run("main:app", host="0.0.0.0", port=8000, reload=settings.debug)
