from enum import Enum
from typing import List, Tuple

from pydantic import BaseModel, Field, model_validator


class TraceCase(str, Enum):
    SELFDUAL = "selfdual"
    CONJ_NONSPLIT = "conj_nonsplit"
    CONJ_SPLIT = "conj_split"


class OldformIndex(BaseModel):
    """Basis label T(a_1, ..., a_{N-1}) of the level-k oldform space."""

    entries: Tuple[int, ...] = Field(..., min_length=1)
    k: int = Field(..., ge=0)

    @model_validator(mode="after")
    def check_budget(self) -> "OldformIndex":
        if any(a < 0 for a in self.entries):
            raise ValueError("oldform indices are non-negative")
        if sum(self.entries) > self.k:
            raise ValueError(f"index {self.entries} exceeds level {self.k}")
        return self

    @property
    def N(self) -> int:
        return len(self.entries) + 1


class TraceProfile(BaseModel):
    case: TraceCase
    N: int = Field(..., ge=2)
    values: List[int] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_normalized(self) -> "TraceProfile":
        if self.values[0] != 1:
            raise ValueError("trace profiles start with T(0) = 1")
        return self


class DimensionResponse(BaseModel):
    N: int
    k: int
    dimension: int


class TraceResponse(BaseModel):
    case: TraceCase
    N: int
    k: int
    fixed_points: int
    closed_form: int
    agrees: bool
