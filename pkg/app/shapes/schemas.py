from enum import Enum
from typing import List, Optional, Tuple

from app.combinatorics.schemas import LaurentPoly
from app.epsilon.schemas import Duality
from pydantic import BaseModel, Field, field_validator, model_validator


class InfChar(BaseModel):
    """Infinitesimal character: one generating function per archimedean place."""

    components: List[LaurentPoly] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_components(self) -> "InfChar":
        masses = set()
        for lam in self.components:
            if any(c < 0 for _, c in lam.items()):
                raise ValueError(f"{lam} has a negative coefficient")
            masses.add(lam.evaluate_at_one())
        if len(masses) != 1:
            raise ValueError("all places must carry the same rank")
        return self

    @classmethod
    def single(cls, lam: LaurentPoly) -> "InfChar":
        return cls(components=[lam])

    @property
    def rank(self) -> int:
        return self.components[0].evaluate_at_one()


class IntegralFamily(str, Enum):
    """Pattern of an integral character, named by the group G it belongs to."""

    SP = "Sp"  # 1 + symmetric integer 0/1 pattern, dual SO_{2n+1}
    SO_ODD = "SO_odd"  # symmetric half-integer 0/1 pattern, dual Sp_{2n}
    SO_EVEN = "SO_even"  # symmetric integer pattern, constant term 0 or 2
    UNITARY_ODD_RANK = "U_odd"
    UNITARY_EVEN_RANK = "U_even"


class IntegralClassification(BaseModel):
    integral: bool
    families: List[Optional[IntegralFamily]]
    regular: bool

    @property
    def family(self) -> Optional[IntegralFamily]:
        return self.families[0] if self.integral else None


class ShapeSummand(BaseModel):
    """(T, d, lambda, eta): eta is a quadratic-character label set (self-dual) or a sign."""

    T: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    lam: InfChar
    eta: Tuple[str, ...] = ()
    sign: int = 1

    @field_validator("eta")
    @classmethod
    def sort_labels(cls, value: Tuple[str, ...]) -> Tuple[str, ...]:
        return tuple(sorted(set(value)))

    @model_validator(mode="after")
    def check_rank(self) -> "ShapeSummand":
        if self.lam.rank != self.T:
            raise ValueError(f"lambda has rank {self.lam.rank}, expected T = {self.T}")
        if self.sign not in (1, -1):
            raise ValueError("eta sign must be +1 or -1")
        return self

    def key(self) -> tuple:
        return (
            self.T,
            self.d,
            self.eta,
            self.sign,
            tuple(lam.terms for lam in self.lam.components),
        )


class RefinedShape(BaseModel):
    summands: List[ShapeSummand] = Field(..., min_length=1)

    @property
    def N(self) -> int:
        return sum(s.T * s.d for s in self.summands)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RefinedShape):
            return NotImplemented
        return sorted(s.key() for s in self.summands) == sorted(
            s.key() for s in other.summands
        )

    def __hash__(self) -> int:
        return hash(tuple(sorted(s.key() for s in self.summands)))


class BoxSummand(BaseModel):
    """Unrefined summand (T, d, eta); `half_integral` folds in the type of lambda."""

    T: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    eta: Tuple[str, ...] = ()
    sign: int = 1
    half_integral: Optional[bool] = None


class GroupFamily(str, Enum):
    SP = "Sp"
    SO_ODD = "SO_odd"
    SO_EVEN = "SO_even"
    U_PLUS = "U_plus"
    U_MINUS = "U_minus"


class GroupFactor(BaseModel):
    """A simple group: Sp_size, SO_size, or U_size with its eta data."""

    family: GroupFamily
    size: int = Field(..., ge=0)
    eta: Tuple[str, ...] = ()

    @model_validator(mode="after")
    def check_size(self) -> "GroupFactor":
        if self.family == GroupFamily.SP and self.size % 2:
            raise ValueError("Sp needs even size")
        if self.family == GroupFamily.SO_ODD and self.size % 2 == 0:
            raise ValueError("SO_odd needs odd size")
        if self.family == GroupFamily.SO_EVEN and self.size % 2:
            raise ValueError("SO_even needs even size")
        return self

    @property
    def rank(self) -> int:
        if self.family in (GroupFamily.U_PLUS, GroupFamily.U_MINUS):
            return self.size
        return self.size // 2

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0

    def __str__(self) -> str:
        names = {
            GroupFamily.SP: "Sp",
            GroupFamily.SO_ODD: "SO",
            GroupFamily.SO_EVEN: "SO",
            GroupFamily.U_PLUS: "U+",
            GroupFamily.U_MINUS: "U-",
        }
        tag = f"^{'*'.join(self.eta)}" if self.eta else ""
        return f"{names[self.family]}_{self.size}{tag}"


class GroupDescriptor(BaseModel):
    factors: List[GroupFactor] = Field(default_factory=list)

    def nontrivial(self) -> List[GroupFactor]:
        return [f for f in self.factors if not f.is_trivial]

    def __str__(self) -> str:
        factors = self.nontrivial()
        return " x ".join(str(f) for f in factors) if factors else "1"


class ClassifyRequest(BaseModel):
    case: Duality = Duality.SELF_DUAL
    lam: InfChar


class AssignRequest(BaseModel):
    case: Duality = Duality.SELF_DUAL
    shape: RefinedShape


class DimensionRequest(BaseModel):
    group: GroupFactor
    lam: LaurentPoly


class DimensionResponse(BaseModel):
    group: str
    dimension: str
    m_norm: str
    positive_roots: int


class BoxRequest(BaseModel):
    case: Duality = Duality.SELF_DUAL
    group: GroupFactor
    box: List[BoxSummand] = Field(..., min_length=1)
    lam: LaurentPoly


class BoxResponse(BaseModel):
    dim_box: str
    refined_count: int
    bound_holds: bool
