import pytest
from fastapi import status
from httpx import AsyncClient


class TestOldformRoutes:
    """Test cases for the oldform endpoints"""

    @pytest.mark.asyncio
    async def test_dimension(self, async_client: AsyncClient):
        response = await async_client.get("/oldforms/dimension", params={"N": 4, "k": 2})
        assert response.status_code == status.HTTP_200_OK
        assert response.json() == {"N": 4, "k": 2, "dimension": 10}

    @pytest.mark.asyncio
    async def test_trace_agrees(self, async_client: AsyncClient):
        response = await async_client.get(
            "/oldforms/trace", params={"case": "selfdual", "N": 4, "k": 1}
        )
        assert response.status_code == status.HTTP_200_OK
        data = response.json()
        assert data["fixed_points"] == 0
        assert data["closed_form"] == 0
        assert data["agrees"] is True

    @pytest.mark.asyncio
    async def test_trace_unknown_case(self, async_client: AsyncClient):
        response = await async_client.get(
            "/oldforms/trace", params={"case": "orthogonal", "N": 4, "k": 1}
        )
        assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY

    @pytest.mark.asyncio
    async def test_trace_rejects_rank_one(self, async_client: AsyncClient):
        response = await async_client.get(
            "/oldforms/trace", params={"case": "selfdual", "N": 1, "k": 1}
        )
        assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY

    @pytest.mark.asyncio
    async def test_profile(self, async_client: AsyncClient):
        response = await async_client.get(
            "/oldforms/profile", params={"case": "selfdual", "N": 4, "k": 4}
        )
        assert response.status_code == status.HTTP_200_OK
        assert response.json()["values"] == [1, 0, 2, 0, 3]

    @pytest.mark.asyncio
    async def test_involution(self, async_client: AsyncClient):
        response = await async_client.post(
            "/oldforms/involution", json={"entries": [1, 0, 2], "k": 3}
        )
        assert response.status_code == status.HTTP_200_OK
        assert response.json() == {"entries": [0, 1, 0], "k": 3}

    @pytest.mark.asyncio
    async def test_involution_rejects_index_over_level(self, async_client: AsyncClient):
        response = await async_client.post(
            "/oldforms/involution", json={"entries": [2, 2], "k": 3}
        )
        assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY
