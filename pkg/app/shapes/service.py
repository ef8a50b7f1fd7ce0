from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterator, List, Optional, Sequence, Tuple

from app.combinatorics.schemas import LaurentPoly
from app.config import logger, settings
from app.epsilon.schemas import Duality
from app.errors import BudgetExceededError, InputValidationError
from app.shapes import roots
from app.shapes.schemas import (
    BoxSummand,
    GroupDescriptor,
    GroupFactor,
    GroupFamily,
    InfChar,
    IntegralClassification,
    IntegralFamily,
    RefinedShape,
    ShapeSummand,
)


def bracket_poly(d: int) -> LaurentPoly:
    """X^{(d-1)/2} + X^{(d-3)/2} + ... + X^{-(d-1)/2}."""
    return LaurentPoly.model_validate(
        {"terms": [(d + 1 - 2 * l, 1) for l in range(1, d + 1)]}
    )


class ShapeService:
    """Infinitesimal characters, shapes and the groups they factor through."""

    def lambda_bracket_d(self, lam: InfChar, d: int) -> InfChar:
        if d < 1:
            raise InputValidationError(f"d must be positive, got {d}")
        shift = bracket_poly(d)
        return InfChar(components=[component * shift for component in lam.components])

    def _pattern(self, case: Duality, lam: LaurentPoly, N: int) -> Optional[IntegralFamily]:
        if lam.evaluate_at_one() != N or lam.is_zero:
            return None
        coefficients = dict(lam.terms)
        parities = {e % 2 for e in coefficients}
        if len(parities) != 1:
            return None
        half = parities == {1}
        off_zero_ok = all(c == 1 for e, c in coefficients.items() if e != 0)

        if case == Duality.CONJUGATE_SELF_DUAL:
            if half != (N % 2 == 1) or not off_zero_ok or coefficients.get(0, 0) > 1:
                return None
            return IntegralFamily.UNITARY_ODD_RANK if N % 2 else IntegralFamily.UNITARY_EVEN_RANK

        if not lam.is_symmetric() or not off_zero_ok:
            return None
        if half:
            return IntegralFamily.SO_ODD
        constant = coefficients.get(0, 0)
        if N % 2:
            return IntegralFamily.SP if constant == 1 else None
        return IntegralFamily.SO_EVEN if constant in (0, 2) else None

    def _regular(self, case: Duality, lam: LaurentPoly, N: int) -> bool:
        zero_cap = 1
        if case == Duality.SELF_DUAL and N % 2 == 0 and all(e % 2 == 0 for e, _ in lam.terms):
            zero_cap = 2
        return all(c <= (zero_cap if e == 0 else 1) for e, c in lam.terms)

    def classify_integral(
        self, case: Duality, lam: InfChar, N: int
    ) -> IntegralClassification:
        """Match each place against the coefficient patterns of finite-dimensional characters."""
        families = [self._pattern(case, component, N) for component in lam.components]
        integral = all(f is not None for f in families) and len(set(families)) == 1
        regular = all(self._regular(case, component, N) for component in lam.components)
        return IntegralClassification(integral=integral, families=families, regular=regular)

    def total_character(self, shape: RefinedShape) -> InfChar:
        places = len(shape.summands[0].lam.components)
        if any(len(s.lam.components) != places for s in shape.summands):
            raise InputValidationError("summands disagree on the number of places")
        totals = [LaurentPoly.zero() for _ in range(places)]
        for summand in shape.summands:
            bracketed = self.lambda_bracket_d(summand.lam, summand.d)
            totals = [t + b for t, b in zip(totals, bracketed.components)]
        return InfChar(components=totals)

    def simple_shape(
        self,
        N: int,
        lam: InfChar,
        eta: Tuple[str, ...] = (),
        case: Duality = Duality.SELF_DUAL,
        sign: int = 1,
    ) -> RefinedShape:
        """The trivial refined shape (N, 1, lam, eta)."""
        classification = self.classify_integral(case, lam, N)
        if not classification.integral:
            raise InputValidationError(f"infinitesimal character is not integral for rank {N}")
        if classification.family == IntegralFamily.SO_ODD and eta:
            raise InputValidationError("half-integral characters need trivial eta")
        return RefinedShape(
            summands=[ShapeSummand(T=N, d=1, lam=lam, eta=eta, sign=sign)]
        )

    def simple_group(
        self, case: Duality, T: int, family: IntegralFamily, eta: Tuple[str, ...], sign: int
    ) -> Optional[GroupFactor]:
        """Simple endoscopic group of rank T carrying a summand with the given pattern."""
        if case == Duality.CONJUGATE_SELF_DUAL:
            return GroupFactor(
                family=GroupFamily.U_PLUS if sign == 1 else GroupFamily.U_MINUS, size=T
            )
        if family == IntegralFamily.SO_ODD:
            if eta:
                return None
            return GroupFactor(family=GroupFamily.SO_ODD, size=T + 1)
        if T % 2:
            return GroupFactor(family=GroupFamily.SP, size=T - 1, eta=eta)
        return GroupFactor(family=GroupFamily.SO_EVEN, size=T, eta=eta)

    def assign_group(
        self, shape: RefinedShape, case: Duality = Duality.SELF_DUAL
    ) -> Optional[GroupDescriptor]:
        """Group through which every parameter of an integral refined shape factors.

        None when a summand is not integral or pairs a half-integral
        character with a nontrivial eta.
        """
        total = self.total_character(shape)
        if not self.classify_integral(case, total, shape.N).integral:
            raise InputValidationError("refined shape is not integral")

        if case == Duality.CONJUGATE_SELF_DUAL:
            sizes = {1: 0, -1: 0}
            for s in shape.summands:
                if not self.classify_integral(case, s.lam, s.T).integral:
                    return None
                sizes[s.sign * (-1) ** (s.d - 1)] += s.T * s.d
            factors = []
            if sizes[1]:
                factors.append(GroupFactor(family=GroupFamily.U_PLUS, size=sizes[1]))
            if sizes[-1]:
                factors.append(GroupFactor(family=GroupFamily.U_MINUS, size=sizes[-1]))
            return GroupDescriptor(factors=factors)

        n_orthogonal = n_symplectic = 0
        eta: set = set()
        for s in shape.summands:
            classification = self.classify_integral(case, s.lam, s.T)
            if not classification.integral:
                return None
            half = classification.family == IntegralFamily.SO_ODD
            if half and s.eta:
                return None
            # tau[d] = tau x Sym^{d-1}: the type flips exactly when d is even
            orthogonal = (not half) == (s.d % 2 == 1)
            if orthogonal:
                n_orthogonal += s.T * s.d
                if s.d % 2:
                    eta ^= set(s.eta)
            else:
                n_symplectic += s.T * s.d

        factors = []
        if n_symplectic:
            factors.append(GroupFactor(family=GroupFamily.SO_ODD, size=n_symplectic + 1))
        labels = tuple(sorted(eta))
        if n_orthogonal % 2:
            factors.append(GroupFactor(family=GroupFamily.SP, size=n_orthogonal - 1, eta=labels))
        elif n_orthogonal:
            factors.append(GroupFactor(family=GroupFamily.SO_EVEN, size=n_orthogonal, eta=labels))
        logger.debug(f"Shape of rank {shape.N} factors through N_O={n_orthogonal}, N_S={n_symplectic}")
        return GroupDescriptor(factors=factors)

    def so_even_discrete_series(self, n: int, eta_trivial_at: Sequence[bool]) -> bool:
        """SO_{2n}^eta has discrete series at infinity iff eta_v is trivial exactly when n is even."""
        if not eta_trivial_at:
            raise InputValidationError("need the triviality of eta at each archimedean place")
        return all(trivial == (n % 2 == 0) for trivial in eta_trivial_at)

    # -- dimensions and norms -------------------------------------------

    def _simple(self, g) -> GroupFactor:
        if isinstance(g, GroupFactor):
            return g
        factors = g.nontrivial()
        if len(factors) != 1:
            raise InputValidationError(f"{g} is not simple; split lambda across its factors")
        return factors[0]

    def _component(self, lam) -> LaurentPoly:
        if isinstance(lam, InfChar):
            if len(lam.components) != 1:
                raise InputValidationError("expected the character at a single place")
            return lam.components[0]
        return lam

    def weyl_dim(self, g, lam) -> Fraction:
        """Product of coroot pairings with lam, normalized so that dim rho = 1."""
        group = self._simple(g)
        coords = roots.coordinates(group, self._component(lam))
        numerator = roots.raw_product(group, coords)
        if numerator <= 0 or any(v <= 0 for v in roots.pairings(group.family, coords)):
            raise InputValidationError(f"character is singular for {group}")
        return numerator / roots.raw_product(group, roots.rho(group))

    def m_norm(self, g, lam) -> Fraction:
        group = self._simple(g)
        values = roots.pairings(group.family, roots.coordinates(group, self._component(lam)))
        if not values:
            raise InputValidationError(f"{group} has no positive roots")
        return min(values)

    def positive_root_count(self, g) -> int:
        if isinstance(g, GroupFactor):
            return roots.positive_root_count(g)
        return sum(roots.positive_root_count(f) for f in g.factors)

    def group_dimension(self, g) -> int:
        if isinstance(g, GroupFactor):
            return roots.group_dimension(g)
        return sum(roots.group_dimension(f) for f in g.factors)

    def group_rank(self, g) -> int:
        if isinstance(g, GroupFactor):
            return g.rank
        return sum(f.rank for f in g.factors)

    # -- refined shapes over a box --------------------------------------

    def _pieces(
        self, remaining: Counter, summand: BoxSummand, counter: List[int]
    ) -> Iterator[Tuple[LaurentPoly, Counter]]:
        top = summand.d - 1
        candidates = sorted({e - top for e in remaining})
        for choice in combinations_with_replacement(candidates, summand.T):
            counter[0] += 1
            if counter[0] > settings.enumeration_budget:
                raise BudgetExceededError(
                    f"refined shape enumeration exceeded {settings.enumeration_budget} candidates"
                )
            used = Counter(y + top - 2 * i for y in choice for i in range(summand.d))
            if any(remaining[e] < c for e, c in used.items()):
                continue
            piece = LaurentPoly.model_validate({"terms": tuple(Counter(choice).items())})
            yield piece, remaining - used

    def refined_shapes(
        self, box: Sequence[BoxSummand], lam, case: Duality = Duality.SELF_DUAL
    ) -> List[RefinedShape]:
        """Refined shapes over box whose total character is lam at one place."""
        lam = self._component(lam)
        N = lam.evaluate_at_one()
        if sum(s.T * s.d for s in box) != N:
            raise InputValidationError(f"box has rank {sum(s.T * s.d for s in box)}, lambda has rank {N}")
        if N > settings.shape_max_rank:
            raise BudgetExceededError(
                f"rank {N} exceeds the shape enumeration limit {settings.shape_max_rank}"
            )
        counter = [0]
        found = set()

        def extend(index: int, remaining: Counter, chosen: List[ShapeSummand]) -> None:
            if index == len(box):
                if not +remaining:
                    found.add(RefinedShape(summands=list(chosen)))
                return
            summand = box[index]
            for piece, rest in self._pieces(remaining, summand, counter):
                family = self._pattern(case, piece, summand.T)
                if family is None:
                    continue
                half = family == IntegralFamily.SO_ODD
                if summand.half_integral is not None and summand.half_integral != half:
                    continue
                if case == Duality.SELF_DUAL and half and summand.eta:
                    continue
                chosen.append(
                    ShapeSummand(
                        T=summand.T,
                        d=summand.d,
                        lam=InfChar.single(piece),
                        eta=summand.eta,
                        sign=summand.sign,
                    )
                )
                extend(index + 1, rest, chosen)
                chosen.pop()

        extend(0, Counter(dict(lam.terms)), [])
        logger.debug(f"{len(found)} refined shapes over a box of {len(box)} summands")
        return sorted(found, key=lambda shape: sorted(s.key() for s in shape.summands))

    def _summand_group(self, case: Duality, summand: ShapeSummand) -> Optional[GroupFactor]:
        family = self._pattern(case, summand.lam.components[0], summand.T)
        if family is None:
            return None
        return self.simple_group(case, summand.T, family, summand.eta, summand.sign)

    def _shape_groups(self, case: Duality, shape: RefinedShape) -> Optional[List[GroupFactor]]:
        groups = [self._summand_group(case, s) for s in shape.summands]
        return None if any(g is None for g in groups) else groups

    def dim_box(self, g, box: Sequence[BoxSummand], lam, case: Duality = Duality.SELF_DUAL) -> Fraction:
        """Largest product of summand dimensions over the refined shapes of box; 0 if none."""
        self._simple(g)
        best = Fraction(0)
        for shape in self.refined_shapes(box, lam, case):
            groups = self._shape_groups(case, shape)
            if groups is None:
                continue
            product = Fraction(1)
            for group, summand in zip(groups, shape.summands):
                product *= self.weyl_dim(group, summand.lam)
            best = max(best, product)
        return best

    def dim_bound_holds(
        self, g, box: Sequence[BoxSummand], lam, case: Duality = Duality.SELF_DUAL
    ) -> bool:
        """Raw coroot products over box never exceed those of lam times m(lam)^(P_box - P_G)."""
        group = self._simple(g)
        component = self._component(lam)
        coords = roots.coordinates(group, component)
        raw = roots.raw_product(group, coords)
        p_g = roots.positive_root_count(group)
        m = min(roots.pairings(group.family, coords)) if p_g else Fraction(1)
        if m <= 0:
            raise InputValidationError(f"character is singular for {group}")
        for shape in self.refined_shapes(box, component, case):
            groups = self._shape_groups(case, shape)
            if groups is None:
                continue
            raw_box = Fraction(1)
            for factor, summand in zip(groups, shape.summands):
                raw_box *= roots.raw_product(
                    factor, roots.coordinates(factor, summand.lam.components[0])
                )
            p_box = sum(roots.positive_root_count(f) for f in groups)
            if raw_box > raw * m ** (p_box - p_g):
                logger.warning(f"Dimension bound fails for {group} on {component}")
                return False
        return True


shape_service = ShapeService()
