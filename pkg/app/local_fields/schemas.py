from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from app.combinatorics.schemas import HalfInt
from pydantic import BaseModel, Field, computed_field, model_serializer, model_validator
from sympy import isprime


class Splitting(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    TAME_RAMIFIED = "tame_ramified"
    WILD_RAMIFIED = "wild_ramified"

    @property
    def is_ramified(self) -> bool:
        return self in (Splitting.TAME_RAMIFIED, Splitting.WILD_RAMIFIED)


class PlaceData(BaseModel):
    """A finite place v of F together with the local behaviour of E/F at v."""

    id: str = Field(..., min_length=1)
    p: int
    f: int = Field(1, ge=1)
    splitting: Splitting
    j: HalfInt
    b: int = Field(..., ge=-2)
    d_exp: int = Field(..., ge=0)

    @model_validator(mode="before")
    @classmethod
    def fill_local_defaults(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        splitting = data.get("splitting")
        if splitting in (Splitting.SPLIT, Splitting.INERT, "split", "inert"):
            data.setdefault("j", HalfInt(doubled=1))
            data.setdefault("d_exp", 0)
        elif splitting in (Splitting.TAME_RAMIFIED, "tame_ramified"):
            data.setdefault("j", 1)
            data.setdefault("d_exp", 1)
        return data

    @model_validator(mode="after")
    def check_invariants(self) -> "PlaceData":
        if not isprime(self.p):
            raise ValueError(f"residue characteristic {self.p} is not prime")
        if self.splitting == Splitting.TAME_RAMIFIED:
            if self.p == 2 or self.d_exp != 1 or self.j != 1:
                raise ValueError(
                    f"place {self.id}: tame ramification needs p odd, d_exp = 1, j = 1"
                )
        elif self.splitting == Splitting.WILD_RAMIFIED:
            if self.p != 2 or self.j < 1 or self.d_exp < 2:
                raise ValueError(
                    f"place {self.id}: wild ramification needs p = 2, j >= 1, d_exp >= 2"
                )
        else:
            if self.d_exp != 0 or self.j != Fraction(1, 2):
                raise ValueError(
                    f"place {self.id}: unramified places have d_exp = 0 and j = 1/2"
                )
        return self

    @computed_field
    @property
    def e(self) -> int:
        return 2 if self.splitting.is_ramified else 1


class Conductor(BaseModel):
    """Formal product of p_v^{k_v} in global indexing (half-integers allowed)."""

    exponents: Dict[str, HalfInt] = Field(default_factory=dict)

    @model_validator(mode="before")
    @classmethod
    def coerce(cls, data: Any) -> Any:
        if isinstance(data, list):
            exponents: Dict[str, Any] = {}
            for entry in data:
                place = entry["place"]
                if place in exponents:
                    raise ValueError(f"place {place} listed twice in conductor")
                exponents[place] = entry["exp"]
            return {"exponents": exponents}
        if isinstance(data, dict) and "exponents" not in data:
            return {"exponents": data}
        return data

    @model_validator(mode="after")
    def check_positive(self) -> "Conductor":
        for place, k in self.exponents.items():
            if k <= 0:
                raise ValueError(f"exponent at {place} must be positive, got {k}")
        return self

    @model_serializer
    def serialize(self) -> List[Dict[str, str]]:
        return [{"place": v, "exp": str(k)} for v, k in self.items()]

    def exponent(self, place_id: str) -> HalfInt:
        return self.exponents.get(place_id, HalfInt(doubled=0))

    def items(self) -> List[Tuple[str, HalfInt]]:
        return sorted(self.exponents.items())

    @property
    def support(self) -> List[str]:
        return sorted(self.exponents)

    @property
    def is_integral(self) -> bool:
        return all(k.is_integral for k in self.exponents.values())

    @property
    def is_trivial(self) -> bool:
        return not self.exponents

    def __str__(self) -> str:
        if not self.exponents:
            return "1"
        return "*".join(f"{v}^{k}" for v, k in self.items())


class QuadraticDatum(BaseModel):
    """Presentation x^2 - trace*x + norm of a generator of O_E over O_F.

    For tame ramification `unit` may be given instead, meaning alpha^2 = unit*p.
    """

    trace: Optional[int] = None
    norm: Optional[int] = None
    unit: Optional[int] = None


class RingRequest(BaseModel):
    p: int
    m: int = Field(..., ge=1)
    splitting: Splitting
    datum: QuadraticDatum = Field(default_factory=QuadraticDatum)


class RingSummary(BaseModel):
    name: Optional[str] = None
    p: int
    m: int
    splitting: Splitting
    trace: int
    norm_constant: int
    e: int
    depth: int
    size: int
    different_exponent: int


class UnitSubgroup(BaseModel):
    """Explicit subset of (O_E / p_w^level)^x given by canonical representatives."""

    level: int
    elements: List[Tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.elements)

    def as_set(self) -> set:
        return set(self.elements)


class CoboundaryReport(BaseModel):
    k: int
    level: int
    image_size: int
    target_size: int
    inclusion: bool
    equality: bool
    equality_claimed: bool


class WitnessResult(BaseModel):
    found: bool
    matrix: Optional[List[List[Tuple[int, int]]]] = None
    candidates_examined: int = 0
    predicted: bool


class ValidityMode(str, Enum):
    VALID = "valid"
    ZERO_VALID = "zero_valid"


class ValidityReport(BaseModel):
    holds: bool
    mode: ValidityMode
    witnesses: List[str] = Field(default_factory=list)
    failing: List[str] = Field(default_factory=list)
    reasons: List[str] = Field(default_factory=list)


class ConductorCheckRequest(BaseModel):
    conductor: Conductor
    places: List[PlaceData]
    N: int = Field(4, ge=1)
    mode: ValidityMode = ValidityMode.VALID


def parse_places(raw: List[Any]) -> Dict[str, PlaceData]:
    places = [p if isinstance(p, PlaceData) else PlaceData.model_validate(p) for p in raw]
    by_id: Dict[str, PlaceData] = {}
    for place in places:
        if place.id in by_id:
            raise ValueError(f"place {place.id} declared twice")
        by_id[place.id] = place
    return by_id


class PresetQuery(BaseModel):
    preset: str
    m: Optional[int] = Field(None, ge=1)


class JInvariantResponse(BaseModel):
    preset: str
    m: int
    j: HalfInt
    norm_group_size: int


class WitnessRequest(PresetQuery):
    N: int = Field(3, ge=1)
    y: Tuple[int, int] = (1, 0)


class GlobalizationRequest(BaseModel):
    conductor: Conductor
    places: List[PlaceData]


class GlobalizationResponse(BaseModel):
    holds: bool
    shifted: Conductor
