from enum import Enum
from typing import Dict, List, Optional, Tuple

from app.combinatorics.schemas import LaurentPoly
from app.local_fields.schemas import Conductor, PlaceData, Splitting
from app.oldforms.schemas import TraceCase
from pydantic import BaseModel, Field, model_validator


class CoefficientSchedule(BaseModel):
    """Nonzero a_N(k, i) by shift i; convolving with the trace profile gives the delta."""

    case: TraceCase
    N: int
    k: int
    coefficients: Dict[int, int]

    @model_validator(mode="after")
    def check_leading(self) -> "CoefficientSchedule":
        if self.coefficients.get(0) != 1:
            raise ValueError("a_N(k, 0) must equal 1")
        return self

    def as_sequence(self) -> List[int]:
        return [self.coefficients.get(i, 0) for i in range(self.k + 1)]


class Duality(str, Enum):
    SELF_DUAL = "self_dual"
    CONJUGATE_SELF_DUAL = "conjugate_self_dual"


class SupportKind(str, Enum):
    CONGRUENT_TO_ONE = "congruent_to_one"
    NEGATIVE_IN_PHI_IMAGE = "negative_in_phi_image"
    MINUS_ONE_MOD_DIFFERENT = "minus_one_mod_different"
    EMPTY = "empty"


class CentralTransferProfile(BaseModel):
    """Transfer of the level-k test function at v, restricted to central gamma.

    The magnitude is a positive constant that is only known symbolically.
    """

    place_id: str
    splitting: Splitting
    k: int
    support: SupportKind
    level: int
    sign: int
    magnitude: str = "c_v > 0"

    @property
    def vanishes(self) -> bool:
        return self.sign == 0


class OmegaInfinity(str, Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"


class OmegaPattern(BaseModel):
    """Triviality of omega on the subgroups (1 + n'D) cap O_E^x for n' | n_ur.

    `trivial_on_n_ur` is omega on n' = n_ur itself; `nontrivial_below[v]`
    records whether omega is nontrivial on n' = n_ur / p_v. Unknown entries
    are left out.
    """

    trivial_on_n_ur: Optional[bool] = None
    nontrivial_below: Dict[str, bool] = Field(default_factory=dict)


class LambdaSignReport(BaseModel):
    vanishes: bool
    sign: Optional[int] = None
    conjectural: bool = False
    n_ur: Conductor = Field(default_factory=Conductor)
    omega_constraints: List[str] = Field(default_factory=list)
    reasons: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_sign(self) -> "LambdaSignReport":
        if self.vanishes and self.sign is not None:
            raise ValueError("a vanishing main term has no sign")
        if not self.vanishes and self.sign not in (1, -1):
            raise ValueError("a nonvanishing main term needs a sign")
        return self


class PositivityReport(BaseModel):
    holds: bool
    reasons: List[str] = Field(default_factory=list)


class ArchimedeanRootNumber(BaseModel):
    value: int
    factors: List[Tuple[int, int]] = Field(default_factory=list)
    convention: str = "eps(1/2, I_w) = i^(w+1)"
    convention_dependent: bool = True


class CaseRequest(BaseModel):
    case: TraceCase
    N: int = Field(..., ge=2)
    k: int = Field(..., ge=0)


class TransferRequest(BaseModel):
    N: int
    conductor: Conductor


class TransferResponse(BaseModel):
    N: int
    value: int


class LocalProfileRequest(BaseModel):
    place: PlaceData
    k: int = Field(..., ge=0)


class LambdaRequest(BaseModel):
    case: Duality = Duality.SELF_DUAL
    N: int
    conductor: Conductor
    places: List[PlaceData] = Field(default_factory=list)
    omega: Optional[OmegaPattern] = None


class PositivityRequest(LambdaRequest):
    omega_infty: OmegaInfinity = OmegaInfinity.NONTRIVIAL
    central_conductors: Dict[str, int] = Field(default_factory=dict)


class ArchimedeanRequest(BaseModel):
    infchars: List[LaurentPoly] = Field(..., min_length=1)
