from enum import Enum
from typing import Dict, List, Optional

from app.epsilon.schemas import Duality, OmegaInfinity, OmegaPattern, PositivityReport
from app.local_fields.schemas import Conductor, PlaceData, parse_places
from app.shapes.schemas import InfChar
from pydantic import BaseModel, Field, model_validator


class Scenario(BaseModel):
    """Inputs of one equidistribution question: case, rank, places and level."""

    case: Duality
    N: int = Field(..., ge=1)
    places: List[PlaceData] = Field(default_factory=list)
    conductor: Conductor = Field(default_factory=Conductor)
    infchar: Optional[InfChar] = None
    omega_pattern: Optional[OmegaPattern] = None
    omega_infty: OmegaInfinity = OmegaInfinity.NONTRIVIAL
    central_conductors: Dict[str, int] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_places(self) -> "Scenario":
        by_id = parse_places(self.places)
        missing = [v for v in self.conductor.support if v not in by_id]
        if missing:
            raise ValueError(f"conductor names undeclared places: {', '.join(missing)}")
        unknown = [v for v in self.central_conductors if v not in by_id]
        if unknown:
            raise ValueError(f"central conductors name undeclared places: {', '.join(unknown)}")
        self.places = sorted(self.places, key=lambda v: v.id)
        return self


class Equidistribution(str, Enum):
    YES = "yes"
    NO = "no"
    CONJECTURAL_NO = "conjectural-no"
    BLOCKED = "blocked"


class Condition(BaseModel):
    tag: str
    clause: str


class BiasFactor(BaseModel):
    source: str
    sign: int
    convention_dependent: bool = False


class PredictionReport(BaseModel):
    case: Duality
    N: int
    conductor: Conductor
    equidistributes: Equidistribution
    bias_sign: Optional[int] = None
    bias_factors: List[BiasFactor] = Field(default_factory=list)
    c_positivity: PositivityReport
    conditions: List[Condition] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_bias(self) -> "PredictionReport":
        biased = self.equidistributes in (Equidistribution.NO, Equidistribution.CONJECTURAL_NO)
        if biased != (self.bias_sign is not None):
            raise ValueError("bias_sign is reported exactly when root numbers are biased")
        return self
