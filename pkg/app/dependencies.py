from app.config import logger
from app.errors import RootNumberError
from fastapi import HTTPException


def http_error(err: RootNumberError) -> HTTPException:
    """Translate a service error into the HTTP response its class maps to."""
    if err.status_code >= 422:
        logger.warning(f"Unresolved computation: {err}")
    return HTTPException(status_code=err.status_code, detail=str(err))
