import pytest
from fastapi import status
from httpx import AsyncClient

TAME_V3 = {"id": "v3", "p": 3, "splitting": "tame_ramified", "b": -2}


class TestSegmentRoutes:
    """Test cases for the segment endpoints"""

    @pytest.mark.asyncio
    async def test_summary(self, async_client: AsyncClient):
        response = await async_client.post(
            "/segments/summary", json={"blocks": [{"kind": "steinberg", "size": 2}]}
        )
        assert response.status_code == status.HTTP_200_OK
        assert response.json() == {"N": 2, "conductor": 1, "root_number": -1}

    @pytest.mark.asyncio
    async def test_summary_unpaired_partner(self, async_client: AsyncClient):
        response = await async_client.post(
            "/segments/summary",
            json={
                "blocks": [
                    {"kind": "supercuspidal", "conductor": 2, "ramified": True, "partner": "a"}
                ]
            },
        )
        assert response.status_code == status.HTTP_400_BAD_REQUEST

    @pytest.mark.asyncio
    async def test_bernstein_constant(self, async_client: AsyncClient):
        response = await async_client.post(
            "/segments/bernstein-constant", json={"component": [{}, {}], "k": 1}
        )
        assert response.status_code == status.HTTP_200_OK
        assert response.json() == {"k": 1, "constant": -1}

    @pytest.mark.asyncio
    async def test_bernstein_constant_below_floor(self, async_client: AsyncClient):
        response = await async_client.post(
            "/segments/bernstein-constant",
            json={"component": [{"conductor": 3, "ramified": True}], "k": 2},
        )
        assert response.status_code == status.HTTP_200_OK
        assert response.json()["constant"] is None

    @pytest.mark.asyncio
    async def test_character_existence(self, async_client: AsyncClient):
        response = await async_client.post(
            "/segments/character-existence", json={"place": TAME_V3, "k": 1, "kappa": -1}
        )
        assert response.status_code == status.HTTP_200_OK
        assert response.json() == {"exists": True}

    @pytest.mark.asyncio
    async def test_character_existence_bad_kappa(self, async_client: AsyncClient):
        response = await async_client.post(
            "/segments/character-existence", json={"place": TAME_V3, "k": 1, "kappa": 2}
        )
        assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY

    @pytest.mark.asyncio
    async def test_witness(self, async_client: AsyncClient):
        response = await async_client.post("/segments/witness", json={"N": 4, "k": 1})
        assert response.status_code == status.HTTP_200_OK
        data = response.json()
        assert data["root_number"] == -1
        assert data["segments"]["blocks"][0] == {
            "kind": "steinberg",
            "size": 2,
            "partner": None,
        }

    @pytest.mark.asyncio
    async def test_witness_none(self, async_client: AsyncClient):
        response = await async_client.post(
            "/segments/witness", json={"N": 1, "k": 2, "target": "orthogonal"}
        )
        assert response.status_code == status.HTTP_200_OK
        assert response.json() is None

    @pytest.mark.asyncio
    async def test_achievable_pairs_rank_two(self, async_client: AsyncClient):
        response = await async_client.post(
            "/segments/achievable-pairs", json={"place": TAME_V3, "N": 2}
        )
        assert response.status_code == status.HTTP_400_BAD_REQUEST

    @pytest.mark.asyncio
    async def test_achievable_pairs(self, async_client: AsyncClient):
        response = await async_client.post(
            "/segments/achievable-pairs", json={"place": TAME_V3, "N": 4}
        )
        assert response.status_code == status.HTTP_200_OK
        families = [rule["family"] for rule in response.json()]
        assert families == ["shifted", "trivial_central"]
