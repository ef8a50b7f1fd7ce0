from collections import defaultdict
from typing import Dict, Iterator, List, Tuple

from app.combinatorics.service import combinatorics_service
from app.config import logger, settings
from app.errors import BudgetExceededError, InputValidationError
from app.oldforms.schemas import OldformIndex, TraceCase, TraceProfile

Index = Tuple[int, ...]


class OldformService:
    """Index combinatorics of oldform spaces and their twisted traces.

    The level-k oldforms of a generic representation of GL_N are indexed by
    tuples (a_1, ..., a_{N-1}) of non-negative integers with sum at most k.
    The twisted operator permutes this basis, so its trace is a fixed-point
    count.
    """

    def _check_rank(self, N: int, k: int) -> None:
        if N < 2:
            raise InputValidationError(f"N must be at least 2, got {N}")
        if k < 0:
            raise InputValidationError(f"k must be non-negative, got {k}")

    def oldform_dimension(self, N: int, k: int) -> int:
        self._check_rank(N, k)
        return combinatorics_service.binomial(k + N - 1, N - 1)

    def oldform_indices(self, N: int, k: int) -> Iterator[Index]:
        """All tuples of length N-1 with non-negative entries summing to at most k."""
        self._check_rank(N, k)
        size = self.oldform_dimension(N, k)
        if size > settings.enumeration_budget:
            logger.warning(f"Oldform enumeration of size {size} refused")
            raise BudgetExceededError(
                f"{size} oldform indices exceed the budget {settings.enumeration_budget}"
            )
        return self._compositions(N - 1, k)

    def _compositions(self, length: int, remaining: int) -> Iterator[Index]:
        if length == 0:
            yield ()
            return
        for first in range(remaining + 1):
            for rest in self._compositions(length - 1, remaining - first):
                yield (first,) + rest

    def involution(self, index: Index, k: int) -> Index:
        """(a_1, ..., a_{N-1}) -> (a_{N-2}, ..., a_1, k - sum(a))."""
        return tuple(reversed(index[:-1])) + (k - sum(index),)

    def involution_image(self, index: OldformIndex) -> OldformIndex:
        return OldformIndex(entries=self.involution(index.entries, index.k), k=index.k)

    def involution_fixed_points(self, case: TraceCase, N: int, k: int) -> int:
        """Trace of the twisted operator, counted by exhaustive enumeration."""
        count = 0
        if case == TraceCase.CONJ_SPLIT:
            count = self._split_fixed_pairs(N, k)
        else:
            for a in self.oldform_indices(N, k):
                if self.involution(a, k) == a:
                    count += 1
        logger.debug(f"{case.value} N={N} k={k}: {count} fixed oldform indices")
        return count

    def _split_fixed_pairs(self, N: int, k: int) -> int:
        """Pairs (A, B) with (i(B), i(A)) == (A, B).

        Grouping B by i(B) leaves only the pairs with i(B) == A, so this
        matches a count over every pair without the quadratic loop.
        """
        valid = list(self.oldform_indices(N, k))
        preimages: Dict[Index, List[Index]] = defaultdict(list)
        for b in valid:
            preimages[self.involution(b, k)].append(b)
        count = 0
        for a in valid:
            image = self.involution(a, k)
            count += sum(1 for b in preimages.get(a, ()) if b == image)
        return count

    def closed_form_trace(self, case: TraceCase, N: int, k: int) -> int:
        """Binomial formula for the twisted trace, up to the sign tau."""
        self._check_rank(N, k)
        binomial = combinatorics_service.binomial
        if case == TraceCase.CONJ_SPLIT:
            return binomial(k + N - 1, N - 1)
        if N % 2 == 0:
            if k % 2:
                return 0
            return binomial(k // 2 + N // 2 - 1, N // 2 - 1)
        return binomial(k // 2 + (N - 1) // 2, (N - 1) // 2)

    def trace_profile(self, case: TraceCase, N: int, k: int) -> TraceProfile:
        """T(0), ..., T(k) for the given case."""
        return TraceProfile(
            case=case,
            N=N,
            values=[self.closed_form_trace(case, N, j) for j in range(k + 1)],
        )


oldform_service = OldformService()
