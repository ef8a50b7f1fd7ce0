from fractions import Fraction

import pytest
from app.combinatorics.schemas import LaurentPoly
from app.epsilon.schemas import Duality
from app.errors import BudgetExceededError, InputValidationError
from app.shapes.schemas import (
    BoxSummand,
    GroupFactor,
    GroupFamily,
    InfChar,
    IntegralFamily,
    RefinedShape,
    ShapeSummand,
)
from app.shapes.service import ShapeService, bracket_poly
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError


def poly(*exponents) -> LaurentPoly:
    return LaurentPoly.from_exponents(str(e) for e in exponents)


def inf(*exponents) -> InfChar:
    return InfChar.single(poly(*exponents))


HALF_RHO_4 = poly("3/2", "1/2", "-1/2", "-3/2")
SO5 = GroupFactor(family=GroupFamily.SO_ODD, size=5)
SP4 = GroupFactor(family=GroupFamily.SP, size=4)


def boxes(N, max_parts=4):
    """Every multiset of (T, d) with sum T*d = N."""
    pairs = [(T, d) for T in range(1, N + 1) for d in range(1, N + 1) if T * d <= N]

    def extend(start, remaining, chosen):
        if remaining == 0:
            yield list(chosen)
            return
        if len(chosen) == max_parts:
            return
        for i in range(start, len(pairs)):
            T, d = pairs[i]
            if T * d <= remaining:
                chosen.append(BoxSummand(T=T, d=d))
                yield from extend(i, remaining - T * d, chosen)
                chosen.pop()

    return list(extend(0, N, []))


class TestBracket:
    """Test cases for lambda[d]"""

    def setup_method(self):
        self.service = ShapeService()

    def test_identity_at_one(self):
        lam = inf("1/2", "-1/2")
        assert self.service.lambda_bracket_d(lam, 1) == lam

    def test_rank_one_doubled(self):
        assert self.service.lambda_bracket_d(inf(0), 2) == inf("1/2", "-1/2")

    def test_product(self):
        result = self.service.lambda_bracket_d(inf(1, -1), 3)
        assert result.components[0] == poly(2, 1, 0, 0, -1, -2)

    def test_rejects_zero_d(self):
        with pytest.raises(InputValidationError):
            self.service.lambda_bracket_d(inf(0), 0)

    def test_bracket_poly(self):
        assert bracket_poly(1) == poly(0)
        assert bracket_poly(4) == poly("3/2", "1/2", "-1/2", "-3/2")

    @given(
        st.lists(st.integers(1, 9), min_size=1, max_size=4, unique=True),
        st.integers(1, 4),
    )
    def test_mass_and_symmetry(self, doubled, d):
        lam = LaurentPoly.model_validate(
            {"terms": [(e, 1) for e in doubled] + [(-e, 1) for e in doubled]}
        )
        result = self.service.lambda_bracket_d(InfChar.single(lam), d).components[0]
        assert result.evaluate_at_one() == d * lam.evaluate_at_one()
        assert result.is_symmetric()


class TestClassification:
    def setup_method(self):
        self.service = ShapeService()

    def test_half_integral_selfdual(self):
        result = self.service.classify_integral(Duality.SELF_DUAL, InfChar.single(HALF_RHO_4), 4)
        assert result.integral
        assert result.family == IntegralFamily.SO_ODD
        assert result.regular

    def test_doubled_coefficient_off_zero(self):
        result = self.service.classify_integral(Duality.SELF_DUAL, inf(1, 1, -1, -1), 4)
        assert not result.integral

    def test_conjugate_even_rank(self):
        result = self.service.classify_integral(Duality.CONJUGATE_SELF_DUAL, inf(1, -1), 2)
        assert result.family == IntegralFamily.UNITARY_EVEN_RANK

    def test_conjugate_odd_rank_needs_half_integers(self):
        assert not self.service.classify_integral(
            Duality.CONJUGATE_SELF_DUAL, inf(1, 0, -1), 3
        ).integral
        assert self.service.classify_integral(
            Duality.CONJUGATE_SELF_DUAL, inf("5/2", "1/2", "-3/2"), 3
        ).integral

    def test_odd_rank_symplectic_pattern(self):
        result = self.service.classify_integral(Duality.SELF_DUAL, inf(1, 0, -1), 3)
        assert result.family == IntegralFamily.SP

    def test_double_zero_is_regular_for_even_orthogonal(self):
        result = self.service.classify_integral(Duality.SELF_DUAL, inf(1, 0, 0, -1), 4)
        assert result.family == IntegralFamily.SO_EVEN
        assert result.regular

    def test_places_must_agree(self):
        lam = InfChar(components=[HALF_RHO_4, poly(2, 1, -1, -2)])
        result = self.service.classify_integral(Duality.SELF_DUAL, lam, 4)
        assert not result.integral
        assert result.families == [IntegralFamily.SO_ODD, IntegralFamily.SO_EVEN]

    def test_wrong_rank(self):
        assert not self.service.classify_integral(Duality.SELF_DUAL, inf(1, -1), 4).integral

    def test_infchar_rejects_unequal_mass(self):
        with pytest.raises(ValidationError):
            InfChar(components=[poly(1, -1), poly(0)])

    @given(st.lists(st.integers(1, 6), min_size=1, max_size=3, unique=True), st.integers(1, 4))
    def test_parity_follows_d(self, doubled, d):
        """Integer characters stay integer for odd d and turn half-integral for even d"""
        lam = LaurentPoly.model_validate(
            {"terms": [(2 * e, 1) for e in doubled] + [(-2 * e, 1) for e in doubled]}
        )
        result = self.service.lambda_bracket_d(InfChar.single(lam), d).components[0]
        parities = {e % 2 for e, _ in result.terms}
        assert parities == {(d - 1) % 2}


class TestAssignGroup:
    def setup_method(self):
        self.service = ShapeService()

    def test_simple_half_integral(self):
        shape = self.service.simple_shape(4, InfChar.single(HALF_RHO_4))
        group = self.service.assign_group(shape)
        assert str(group) == "SO_5"

    def test_simple_odd_rank(self):
        shape = self.service.simple_shape(3, inf(1, 0, -1), eta=("a",))
        group = self.service.assign_group(shape)
        assert str(group) == "Sp_2^a"

    def test_simple_even_orthogonal(self):
        shape = self.service.simple_shape(4, inf(2, 1, -1, -2), eta=("a",))
        group = self.service.assign_group(shape)
        assert group.factors == [GroupFactor(family=GroupFamily.SO_EVEN, size=4, eta=("a",))]

    def test_half_integral_with_eta(self):
        shape = RefinedShape(
            summands=[ShapeSummand(T=4, d=1, lam=InfChar.single(HALF_RHO_4), eta=("a",))]
        )
        assert self.service.assign_group(shape) is None
        with pytest.raises(InputValidationError):
            self.service.simple_shape(4, InfChar.single(HALF_RHO_4), eta=("a",))

    def test_type_flips_with_even_d(self):
        shape = RefinedShape(summands=[ShapeSummand(T=1, d=2, lam=inf(0))])
        assert str(self.service.assign_group(shape)) == "SO_3"

    def test_symplectic_pieces_accumulate(self):
        shape = RefinedShape(
            summands=[
                ShapeSummand(T=1, d=2, lam=inf(0)),
                ShapeSummand(T=2, d=1, lam=inf("3/2", "-3/2")),
            ]
        )
        assert str(self.service.assign_group(shape)) == "SO_5"

    def test_orthogonal_pieces_accumulate(self):
        shape = RefinedShape(
            summands=[
                ShapeSummand(T=2, d=2, lam=inf("3/2", "-3/2")),
                ShapeSummand(T=1, d=1, lam=inf(0), eta=("c",)),
            ]
        )
        group = self.service.assign_group(shape)
        assert group.factors == [GroupFactor(family=GroupFamily.SP, size=4, eta=("c",))]

    def test_non_integral_total(self):
        shape = RefinedShape(summands=[ShapeSummand(T=4, d=1, lam=inf(1, 1, -1, -1))])
        with pytest.raises(InputValidationError):
            self.service.assign_group(shape)

    def test_conjugate_signs(self):
        shape = RefinedShape(
            summands=[
                ShapeSummand(T=2, d=1, lam=inf(2, -2)),
                ShapeSummand(T=1, d=2, lam=inf("1/2")),
            ]
        )
        group = self.service.assign_group(shape, Duality.CONJUGATE_SELF_DUAL)
        assert str(group) == "U+_2 x U-_2"

    def test_shape_equality_ignores_order(self):
        first = ShapeSummand(T=1, d=2, lam=inf(0))
        second = ShapeSummand(T=1, d=1, lam=inf(0), eta=("c",))
        assert RefinedShape(summands=[first, second]) == RefinedShape(summands=[second, first])

    def test_so_even_discrete_series(self):
        assert self.service.so_even_discrete_series(2, [True, True])
        assert not self.service.so_even_discrete_series(3, [True])
        assert self.service.so_even_discrete_series(3, [False])
        with pytest.raises(InputValidationError):
            self.service.so_even_discrete_series(2, [])


class TestWeylDimension:
    def setup_method(self):
        self.service = ShapeService()

    @pytest.mark.parametrize(
        "group,lam",
        [
            (SP4, poly(2, 1, 0, -1, -2)),
            (SO5, HALF_RHO_4),
            (GroupFactor(family=GroupFamily.SO_EVEN, size=6), poly(2, 1, 0, 0, -1, -2)),
            (GroupFactor(family=GroupFamily.U_PLUS, size=3), poly(1, 0, -1)),
        ],
    )
    def test_rho_has_dimension_one(self, group, lam):
        assert self.service.weyl_dim(group, lam) == 1
        assert self.service.m_norm(group, lam) == 1

    def test_standard_representations(self):
        assert self.service.weyl_dim(SP4, poly(3, 1, 0, -1, -3)) == 4
        assert self.service.weyl_dim(SO5, poly("5/2", "1/2", "-1/2", "-5/2")) == 5
        u3 = GroupFactor(family=GroupFamily.U_PLUS, size=3)
        assert self.service.weyl_dim(u3, poly(2, 0, -1)) == 3

    def test_more_sp4_dimensions(self):
        assert self.service.weyl_dim(SP4, poly(3, 2, 0, -2, -3)) == 5
        assert self.service.weyl_dim(SP4, poly(4, 1, 0, -1, -4)) == 10

    def test_singular(self):
        with pytest.raises(InputValidationError):
            self.service.weyl_dim(SP4, poly(1, 1, 0, -1, -1))

    def test_wrong_rank(self):
        with pytest.raises(InputValidationError):
            self.service.weyl_dim(SP4, HALF_RHO_4)

    def test_positive_roots(self):
        assert self.service.positive_root_count(SP4) == 4
        assert self.service.group_dimension(SP4) == 10
        assert self.service.group_rank(SP4) == 2
        for n in range(1, 7):
            u = GroupFactor(family=GroupFamily.U_MINUS, size=n)
            assert self.service.positive_root_count(u) == n * (n - 1) // 2

    def test_rank_zero_group(self):
        trivial = GroupFactor(family=GroupFamily.SO_ODD, size=1)
        assert trivial.is_trivial
        assert self.service.weyl_dim(trivial, LaurentPoly.zero()) == 1
        with pytest.raises(InputValidationError):
            self.service.m_norm(trivial, LaurentPoly.zero())

    def test_group_factor_parity(self):
        with pytest.raises(ValidationError):
            GroupFactor(family=GroupFamily.SP, size=3)
        with pytest.raises(ValidationError):
            GroupFactor(family=GroupFamily.SO_ODD, size=4)


class TestBoxes:
    def setup_method(self):
        self.service = ShapeService()

    def test_trivial_box(self):
        lam = poly("5/2", "1/2", "-1/2", "-5/2")
        box = [BoxSummand(T=4, d=1)]
        assert self.service.dim_box(SO5, box, lam) == self.service.weyl_dim(SO5, lam)

    def test_toral_box(self):
        so3 = GroupFactor(family=GroupFamily.SO_ODD, size=3)
        assert self.service.dim_box(so3, [BoxSummand(T=1, d=2)], poly("1/2", "-1/2")) == 1

    def test_incompatible_parity(self):
        so3 = GroupFactor(family=GroupFamily.SO_ODD, size=3)
        assert self.service.dim_box(so3, [BoxSummand(T=1, d=2)], poly(1, -1)) == 0
        assert self.service.refined_shapes([BoxSummand(T=1, d=2)], poly(1, -1)) == []

    def test_half_integral_flag(self):
        box = [BoxSummand(T=2, d=1, half_integral=False)]
        assert self.service.refined_shapes(box, poly("1/2", "-1/2")) == []

    def test_two_summand_box(self):
        box = [BoxSummand(T=2, d=1), BoxSummand(T=2, d=1)]
        shapes = self.service.refined_shapes(box, HALF_RHO_4)
        assert len(shapes) == 1
        assert self.service.dim_box(SO5, box, HALF_RHO_4) == Fraction(3)

    def test_box_rank_mismatch(self):
        with pytest.raises(InputValidationError):
            self.service.refined_shapes([BoxSummand(T=3, d=1)], HALF_RHO_4)

    def test_rank_limit(self, mocker):
        mocker.patch("app.shapes.service.settings.shape_max_rank", 2)
        with pytest.raises(BudgetExceededError):
            self.service.refined_shapes([BoxSummand(T=4, d=1)], HALF_RHO_4)

    @pytest.mark.oracle
    @pytest.mark.parametrize(
        "lam",
        [
            HALF_RHO_4,
            poly("5/2", "1/2", "-1/2", "-5/2"),
            poly("7/2", "3/2", "-3/2", "-7/2"),
            poly("5/2", "3/2", "-3/2", "-5/2"),
        ],
    )
    def test_dim_bound_symplectic_type(self, lam):
        for box in boxes(4):
            assert self.service.dim_bound_holds(SO5, box, lam), box

    @pytest.mark.oracle
    @pytest.mark.parametrize(
        "size,lam",
        [
            (2, poly(1, -1)),
            (3, poly("3/2", "1/2", "-1/2")),
            (3, poly("5/2", "1/2", "-5/2")),
            (4, poly(2, 1, -1, -2)),
            (4, poly(3, 1, 0, -2)),
        ],
    )
    def test_dim_bound_unitary(self, size, lam):
        group = GroupFactor(family=GroupFamily.U_PLUS, size=size)
        for box in boxes(size):
            assert self.service.dim_bound_holds(
                group, box, lam, Duality.CONJUGATE_SELF_DUAL
            ), box
