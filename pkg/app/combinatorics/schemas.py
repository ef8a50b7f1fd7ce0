from collections import Counter
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_serializer, model_validator


def _parse_doubled(value: Any) -> int:
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"{value!r} is not an exact half-integer")
    if isinstance(value, int):
        return 2 * value
    if isinstance(value, HalfInt):
        return value.doubled
    if isinstance(value, (Fraction, str)):
        try:
            frac = Fraction(value.strip() if isinstance(value, str) else value)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"{value!r} is not a half-integer") from e
        twice = 2 * frac
        if twice.denominator != 1:
            raise ValueError(f"{value!r} is not a half-integer")
        return twice.numerator
    raise ValueError(f"{value!r} is not a half-integer")


class HalfInt(BaseModel):
    """An element of (1/2)Z, stored as twice its value."""

    model_config = ConfigDict(frozen=True)

    doubled: int

    @model_validator(mode="before")
    @classmethod
    def coerce(cls, data: Any) -> Any:
        if isinstance(data, dict):
            return data
        return {"doubled": _parse_doubled(data)}

    @model_serializer
    def serialize(self) -> str:
        return str(self)

    @property
    def value(self) -> Fraction:
        return Fraction(self.doubled, 2)

    @property
    def is_integral(self) -> bool:
        return self.doubled % 2 == 0

    def floor(self) -> int:
        return self.doubled // 2

    def to_int(self) -> int:
        if not self.is_integral:
            raise ValueError(f"{self} is not an integer")
        return self.doubled // 2

    def __add__(self, other: "HalfIntLike") -> "HalfInt":
        return HalfInt(doubled=self.doubled + _parse_doubled(other))

    __radd__ = __add__

    def __sub__(self, other: "HalfIntLike") -> "HalfInt":
        return HalfInt(doubled=self.doubled - _parse_doubled(other))

    def __rsub__(self, other: "HalfIntLike") -> "HalfInt":
        return HalfInt(doubled=_parse_doubled(other) - self.doubled)

    def __neg__(self) -> "HalfInt":
        return HalfInt(doubled=-self.doubled)

    def __mul__(self, other: int) -> "HalfInt":
        if not isinstance(other, int) or isinstance(other, bool):
            return NotImplemented
        return HalfInt(doubled=self.doubled * other)

    __rmul__ = __mul__

    def _other_value(self, other: Any) -> Fraction:
        if isinstance(other, HalfInt):
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fraction(other)
        raise TypeError(f"cannot compare HalfInt with {type(other).__name__}")

    def __eq__(self, other: Any) -> bool:
        try:
            return self.value == self._other_value(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __lt__(self, other: Any) -> bool:
        return self.value < self._other_value(other)

    def __le__(self, other: Any) -> bool:
        return self.value <= self._other_value(other)

    def __gt__(self, other: Any) -> bool:
        return self.value > self._other_value(other)

    def __ge__(self, other: Any) -> bool:
        return self.value >= self._other_value(other)

    def __str__(self) -> str:
        if self.is_integral:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


HalfIntLike = Union[HalfInt, int, str, Fraction]


def half_int(value: HalfIntLike) -> HalfInt:
    return HalfInt.model_validate(value)


def _normalize_terms(pairs: Iterable[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    merged: Dict[int, int] = {}
    for exp, coeff in pairs:
        merged[exp] = merged.get(exp, 0) + coeff
    return tuple(
        sorted(((e, c) for e, c in merged.items() if c != 0), reverse=True)
    )


class LaurentPoly(BaseModel):
    """Finite sum of c * X^e with e in (1/2)Z and integer c.

    Terms are kept as (doubled exponent, coefficient) pairs, highest exponent
    first, with no zero coefficients, so equality is structural.
    """

    model_config = ConfigDict(frozen=True)

    terms: Tuple[Tuple[int, int], ...] = ()

    @model_validator(mode="before")
    @classmethod
    def coerce(cls, data: Any) -> Any:
        if isinstance(data, LaurentPoly):
            return {"terms": data.terms}
        if isinstance(data, dict) and set(data) == {"terms"}:
            return {"terms": _normalize_terms(data["terms"])}
        if isinstance(data, dict):
            pairs = []
            for exp, coeff in data.items():
                if isinstance(coeff, bool) or not isinstance(coeff, int):
                    raise ValueError(f"coefficient {coeff!r} is not an integer")
                pairs.append((_parse_doubled(exp), coeff))
            return {"terms": _normalize_terms(pairs)}
        raise ValueError("LaurentPoly expects a mapping from exponents to coefficients")

    @model_serializer
    def serialize(self) -> Dict[str, int]:
        return {str(HalfInt(doubled=e)): c for e, c in self.terms}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls.model_validate({"terms": ()})

    @classmethod
    def monomial(cls, exponent: HalfIntLike, coefficient: int = 1) -> "LaurentPoly":
        return cls.model_validate({"terms": ((_parse_doubled(exponent), coefficient),)})

    @classmethod
    def from_exponents(cls, exponents: Iterable[HalfIntLike]) -> "LaurentPoly":
        counts = Counter(_parse_doubled(e) for e in exponents)
        return cls.model_validate({"terms": tuple(counts.items())})

    def coefficient(self, exponent: HalfIntLike) -> int:
        return dict(self.terms).get(_parse_doubled(exponent), 0)

    def items(self) -> List[Tuple[HalfInt, int]]:
        return [(HalfInt(doubled=e), c) for e, c in self.terms]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def evaluate_at_one(self) -> int:
        return sum(c for _, c in self.terms)

    def invert(self) -> "LaurentPoly":
        """Substitute X -> X^{-1}."""
        return LaurentPoly.model_validate({"terms": [(-e, c) for e, c in self.terms]})

    def is_symmetric(self) -> bool:
        return self == self.invert()

    def expand(self) -> List[HalfInt]:
        """Exponent multiset, highest first. Requires non-negative coefficients."""
        if any(c < 0 for _, c in self.terms):
            raise ValueError("cannot expand a polynomial with negative coefficients")
        return [HalfInt(doubled=e) for e, c in self.terms for _ in range(c)]

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly.model_validate({"terms": self.terms + other.terms})

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly.model_validate({"terms": [(e, -c) for e, c in self.terms]})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentPoly.model_validate(
                {"terms": [(e, c * other) for e, c in self.terms]}
            )
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly.model_validate(
            {
                "terms": [
                    (e1 + e2, c1 * c2)
                    for e1, c1 in self.terms
                    for e2, c2 in other.terms
                ]
            }
        )

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = f"X^{HalfInt(doubled=e)}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


class TriangularSystem(BaseModel):
    """Unitriangular Toeplitz system with diagonal sequence T(0), ..., T(k)."""

    values: List[int] = Field(..., min_length=1)
    target: int = Field(..., ge=0)

    @model_validator(mode="after")
    def check_unitriangular(self) -> "TriangularSystem":
        if self.values[0] != 1:
            raise ValueError("T(0) must equal 1")
        if len(self.values) < self.target + 1:
            raise ValueError(
                f"need T(0..{self.target}), got {len(self.values)} values"
            )
        return self


class BinomialResponse(BaseModel):
    n: int
    k: int
    value: int


class EulerSumResponse(BaseModel):
    b: int
    k: int
    value: int


class UnitriangularResponse(BaseModel):
    coefficients: List[int]
