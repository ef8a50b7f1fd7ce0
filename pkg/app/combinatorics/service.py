from math import comb
from typing import List, Sequence

from app.combinatorics.schemas import TriangularSystem
from app.config import logger
from app.errors import InputValidationError


class CombinatoricsService:
    """Exact integer helpers shared by every other module."""

    def binomial(self, n: int, k: int) -> int:
        """C(n, k), and 0 outside 0 <= k <= n (including negative n)."""
        if n < 0 or k < 0 or k > n:
            return 0
        return comb(n, k)

    def euler_alternating_sum(self, b: int, k: int) -> int:
        """Sum over 0 <= i <= b+1 of (-1)^i C(b+1, i) i^k, with 0^0 = 1.

        The sum vanishes whenever k < b + 1.
        """
        if b < 0 or k < 0:
            raise InputValidationError(f"b and k must be non-negative, got b={b}, k={k}")
        total = 0
        for i in range(b + 2):
            power = 1 if (i == 0 and k == 0) else i**k
            total += (-1) ** i * comb(b + 1, i) * power
        return total

    def solve_unitriangular(self, system: TriangularSystem) -> List[int]:
        """Convolution inverse of T truncated at the target index.

        Returns a(0..k) with sum_{i<=j} a(i) T(j-i) = delta_{j,0} for j <= k.
        Back-substitution stays integral because T(0) = 1.
        """
        values = system.values
        coefficients: List[int] = [1]
        for j in range(1, system.target + 1):
            coefficients.append(
                -sum(coefficients[i] * values[j - i] for i in range(j))
            )
        logger.debug(f"Solved unitriangular system of size {system.target + 1}")
        return coefficients

    def convolve(self, left: Sequence[int], right: Sequence[int], length: int) -> List[int]:
        """First `length` terms of the Cauchy product of two sequences."""
        return [
            sum(
                left[i] * right[j - i]
                for i in range(j + 1)
                if i < len(left) and j - i < len(right)
            )
            for j in range(length)
        ]


combinatorics_service = CombinatoricsService()
