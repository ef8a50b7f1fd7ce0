from enum import Enum
from typing import Annotated, Any, List, Literal, Optional, Tuple, Union

from app.local_fields.schemas import PlaceData
from pydantic import BaseModel, Field, field_validator, model_validator


class SupercuspidalBlock(BaseModel):
    """One supercuspidal constituent rho_i, given by its invariants as axioms.

    Blocks sharing a `partner` tag form a pair rho, rho^v; each carries the
    product eps(rho) eps(rho^v) as its root number, which is counted once.
    """

    kind: Literal["supercuspidal"] = "supercuspidal"
    rank: int = Field(1, ge=1)
    conductor: int = Field(0, ge=0)
    root_number: int = 1
    ramified: bool = False
    partner: Optional[str] = None
    central: Tuple[str, ...] = ()

    @field_validator("root_number")
    @classmethod
    def check_sign(cls, value: int) -> int:
        if value not in (1, -1):
            raise ValueError("root numbers are +1 or -1")
        return value

    @field_validator("central")
    @classmethod
    def sort_labels(cls, value: Tuple[str, ...]) -> Tuple[str, ...]:
        return tuple(sorted(set(value)))

    @model_validator(mode="after")
    def check_ramification(self) -> "SupercuspidalBlock":
        if not self.ramified:
            if self.rank != 1 or self.conductor != 0 or self.root_number != 1:
                raise ValueError(
                    "unramified supercuspidals are rank-1 characters with conductor 0 and root number 1"
                )
        elif self.conductor < 1:
            raise ValueError("ramified supercuspidals have positive conductor")
        return self


class SteinbergBlock(BaseModel):
    """St(t): a segment of t unramified constituents."""

    kind: Literal["steinberg"] = "steinberg"
    size: int = Field(..., ge=2)
    partner: Optional[str] = None

    @property
    def rank(self) -> int:
        return self.size


Block = Annotated[Union[SupercuspidalBlock, SteinbergBlock], Field(discriminator="kind")]


class SegmentData(BaseModel):
    blocks: List[Block] = Field(default_factory=list)

    @property
    def N(self) -> int:
        return sum(block.rank for block in self.blocks)

    def supercuspidals(self) -> List[SupercuspidalBlock]:
        return [b for b in self.blocks if isinstance(b, SupercuspidalBlock)]

    def steinbergs(self) -> List[SteinbergBlock]:
        return [b for b in self.blocks if isinstance(b, SteinbergBlock)]


class CentralCharacter(BaseModel):
    """Quadratic character of F_v^x as a set of basic labels.

    Products are symmetric differences, so the empty set is the trivial
    character. `root_number` is the axiom value used when the character
    itself appears as a block.
    """

    labels: Tuple[str, ...] = ()
    conductor: int = Field(0, ge=0)
    root_number: int = 1

    @field_validator("labels")
    @classmethod
    def sort_labels(cls, value: Tuple[str, ...]) -> Tuple[str, ...]:
        return tuple(sorted(set(value)))

    @model_validator(mode="after")
    def check_trivial(self) -> "CentralCharacter":
        if not self.labels and self.conductor:
            raise ValueError("the trivial character has conductor 0")
        if self.root_number not in (1, -1):
            raise ValueError("root numbers are +1 or -1")
        return self

    @property
    def is_trivial(self) -> bool:
        return not self.labels


class GroupTarget(str, Enum):
    SYMPLECTIC = "symplectic"
    ORTHOGONAL = "orthogonal"


class ExistenceWitness(BaseModel):
    N: int
    k: int
    eta: CentralCharacter
    target: GroupTarget
    root_number: int
    segments: SegmentData


class RecipeTag(str, Enum):
    RANK2_PRINCIPAL_SERIES = "rank2_principal_series"
    RANK4_PRINCIPAL_SERIES = "rank4_principal_series"
    STEINBERG = "steinberg"
    TRIVIAL = "trivial"
    SPLIT_PRINCIPAL_SERIES = "split_principal_series"


class PairFamily(str, Enum):
    SHIFTED = "shifted"
    TRIVIAL_CENTRAL = "trivial_central"
    SPLIT = "split"


class PairRule(BaseModel):
    """(k, l) pairs of one family, admitted for k <= small_k_max or k >= large_k_min.

    With both bounds unset every k >= 0 is admitted.
    """

    family: PairFamily
    description: str
    small_k_max: Optional[int] = None
    large_k_min: Optional[int] = None
    recipes: List[RecipeTag]

    def admits(self, k: int) -> bool:
        if k < 0:
            return False
        if self.small_k_max is None and self.large_k_min is None:
            return True
        small = self.small_k_max is not None and k <= self.small_k_max
        large = self.large_k_min is not None and k >= self.large_k_min
        return small or large


class BernsteinRequest(BaseModel):
    component: List[SupercuspidalBlock]
    k: int = Field(..., ge=0)


class BernsteinResponse(BaseModel):
    k: int
    constant: Optional[int] = None


class SegmentSummary(BaseModel):
    N: int
    conductor: int
    root_number: int


class CharacterExistenceRequest(BaseModel):
    place: PlaceData
    k: int = Field(..., ge=0)
    kappa: int

    @field_validator("kappa")
    @classmethod
    def check_kappa(cls, value: Any) -> int:
        if value not in (1, -1):
            raise ValueError("kappa is +1 or -1")
        return value


class WitnessRequest(BaseModel):
    N: int = Field(..., ge=1)
    k: int = Field(..., ge=0)
    eta: CentralCharacter = Field(default_factory=CentralCharacter)
    target: GroupTarget = GroupTarget.SYMPLECTIC
    root_number: Optional[int] = None


class PairRulesRequest(BaseModel):
    place: PlaceData
    N: int
