import sys
from pathlib import Path

import pytest
from httpx import ASGITransport, AsyncClient

# Add project root to sys.path to allow imports from app and main
project_root = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(project_root))

FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
async def async_client():
    from main import app

    async with AsyncClient(
        transport=ASGITransport(app=app), base_url="http://test"
    ) as ac:
        yield ac
