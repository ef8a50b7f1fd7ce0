import logging
import time
from logging.config import dictConfig

from pydantic import Field
from pydantic_settings import BaseSettings
from starlette.middleware.base import BaseHTTPMiddleware
from starlette.requests import Request


class Settings(BaseSettings):
    app_name: str = "Root Number Bias API"

    # Enumeration budgets
    enumeration_budget: int = Field(10_000_000, gt=0)
    witness_search_budget: int = Field(5_000_000, gt=0)
    ring_element_budget: int = Field(2_000_000, gt=0)
    shape_max_rank: int = Field(8, ge=1)
    witness_max_size: int = Field(5, ge=1)

    # Default truncation depth is 2 * (d_exp + slack) powers of p_w
    truncation_target_slack: int = Field(2, ge=1)

    # App
    debug: bool = False
    log_level: str = "INFO"

    # CORS
    allowed_origins: str = "http://localhost:3000,http://localhost:5173"
    allow_all_origins: bool = False

    class Config:
        env_file = ".env"


settings = Settings()

# stdout carries CLI payloads, so every record goes to stderr
LOGGING_CONFIG = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "default": {
            "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "default",
            "stream": "ext://sys.stderr",
        },
    },
    "root": {
        "level": settings.log_level.upper(),
        "handlers": ["console"],
    },
}

dictConfig(LOGGING_CONFIG)
logger = logging.getLogger("rootnumbers")


class RequestResponseLoggingMiddleware(BaseHTTPMiddleware):
    """Logs each calculator call with its status and wall-clock cost."""

    async def dispatch(self, request: Request, call_next):
        target = request.url.path
        if request.url.query:
            target += f"?{request.url.query}"
        logger.info(f"Incoming request: {request.method} {target}")

        started = time.perf_counter()
        response = await call_next(request)
        elapsed_ms = (time.perf_counter() - started) * 1000

        logger.info(f"Response status: {response.status_code} for {request.method} {target}")
        logger.info(f"Computation time: {elapsed_ms:.1f} ms")
        response.headers["X-Computation-Time-Ms"] = f"{elapsed_ms:.1f}"
        return response
