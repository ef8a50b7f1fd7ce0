import pytest
from app.errors import InputValidationError, OutOfScopeError
from app.local_fields.schemas import PlaceData
from app.segments.schemas import (
    CentralCharacter,
    GroupTarget,
    PairFamily,
    RecipeTag,
    SegmentData,
    SteinbergBlock,
    SupercuspidalBlock,
)
from app.segments.service import SegmentService
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

INERT = PlaceData(id="v5", p=5, splitting="inert", b=-2)
TAME = PlaceData(id="v3", p=3, splitting="tame_ramified", b=-2)
WILD = PlaceData(id="w2", p=2, splitting="wild_ramified", j=2, d_exp=3, b=-2)
SPLIT = PlaceData(id="v7", p=7, splitting="split", b=-2)

UNRAMIFIED = SupercuspidalBlock()


def ramified(conductor, sign=1, rank=1, partner=None):
    return SupercuspidalBlock(
        rank=rank, conductor=conductor, root_number=sign, ramified=True, partner=partner
    )


ramified_blocks = st.builds(
    ramified,
    conductor=st.integers(1, 4),
    sign=st.sampled_from([1, -1]),
    rank=st.integers(1, 3),
)


class TestSegmentCalculus:
    """Test cases for conductors and root numbers of segment data"""

    def setup_method(self):
        self.service = SegmentService()

    def test_steinberg(self):
        s = SegmentData(blocks=[SteinbergBlock(size=2)])
        assert s.N == 2
        assert self.service.segment_conductor(s) == 1
        assert self.service.segment_root_number(s) == -1

    def test_unramified_principal_series(self):
        s = SegmentData(blocks=[UNRAMIFIED, UNRAMIFIED])
        assert self.service.segment_conductor(s) == 0
        assert self.service.segment_root_number(s) == 1

    def test_supercuspidal_pair_counted_once(self):
        s = SegmentData(
            blocks=[ramified(2, -1, rank=2, partner="a"), ramified(2, -1, rank=2, partner="a")]
        )
        assert s.N == 4
        assert self.service.segment_conductor(s) == 4
        assert self.service.segment_root_number(s) == -1

    def test_pairing_is_label_free(self):
        first = SegmentData(
            blocks=[ramified(1, -1, partner="x"), ramified(1, -1, partner="x"), SteinbergBlock(size=3)]
        )
        second = SegmentData(
            blocks=[SteinbergBlock(size=3), ramified(1, -1, partner="y"), ramified(1, -1, partner="y")]
        )
        assert self.service.segment_root_number(first) == self.service.segment_root_number(second)

    def test_unpaired_partner_rejected(self):
        s = SegmentData(blocks=[ramified(2, partner="a"), UNRAMIFIED])
        with pytest.raises(InputValidationError):
            self.service.segment_root_number(s)

    def test_mismatched_partners_rejected(self):
        s = SegmentData(blocks=[ramified(2, partner="a"), ramified(3, partner="a")])
        with pytest.raises(InputValidationError):
            self.service.segment_root_number(s)

    def test_unramified_block_must_be_a_character(self):
        with pytest.raises(ValidationError):
            SupercuspidalBlock(rank=2)
        with pytest.raises(ValidationError):
            SupercuspidalBlock(ramified=True, conductor=0)
        with pytest.raises(ValidationError):
            SteinbergBlock(size=1)

    def test_central_labels_multiply_as_symmetric_difference(self):
        s = SegmentData(
            blocks=[
                SupercuspidalBlock(central=("a",)),
                SupercuspidalBlock(conductor=1, ramified=True, central=("a", "b")),
            ]
        )
        assert self.service.central_labels(s) == ("b",)


class TestBernsteinConstant:
    def setup_method(self):
        self.service = SegmentService()

    def test_unramified_rank_two(self):
        component = [UNRAMIFIED, UNRAMIFIED]
        assert self.service.bernstein_constant(component, 1) == -1
        assert self.service.bernstein_constant(component, 0) == 1
        assert self.service.bernstein_constant(component, 2) is None

    def test_below_conductor_floor(self):
        assert self.service.bernstein_constant([ramified(3, -1)], 2) is None

    def test_members_enumerated(self):
        members = list(self.service.enumerate_component_members([UNRAMIFIED] * 4))
        assert len(members) == 5
        assert all(member.N == 4 for member in members)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(ramified_blocks, max_size=3),
        st.integers(0, 5),
    )
    def test_root_number_constant_on_component(self, ramified_part, unramified):
        """Every member of a conductor shares the component's constant"""
        component = ramified_part + [UNRAMIFIED] * unramified
        floor = sum(block.conductor for block in ramified_part)
        reached = set()
        for member in self.service.enumerate_component_members(component):
            k = self.service.segment_conductor(member)
            reached.add(k)
            assert self.service.segment_root_number(member) == self.service.bernstein_constant(
                component, k
            )
        for k in range(floor + 7):
            constant = self.service.bernstein_constant(component, k)
            assert (constant is not None) == (k in reached)


class TestCharacterExistence:
    def setup_method(self):
        self.service = SegmentService()

    def test_inert_any_level(self):
        assert self.service.character_existence_conj(INERT, 5, -1)
        assert self.service.character_existence_conj(INERT, 5, 1)

    def test_tame_branches(self):
        assert self.service.character_existence_conj(TAME, 1, -1)
        assert not self.service.character_existence_conj(TAME, 3, 1)
        assert self.service.character_existence_conj(TAME, 4, 1)

    def test_wild_branches(self):
        assert self.service.character_existence_conj(WILD, 3, -1)
        assert self.service.character_existence_conj(WILD, 4, -1)
        assert not self.service.character_existence_conj(WILD, 2, -1)
        assert not self.service.character_existence_conj(WILD, 5, -1)

    def test_split_rejected(self):
        with pytest.raises(InputValidationError):
            self.service.character_existence_conj(SPLIT, 1, 1)


class TestSelfDualWitness:
    def setup_method(self):
        self.service = SegmentService()

    def test_rank_two_principal_series(self):
        witness = self.service.construct_selfdual_witness(
            2, 4, CentralCharacter(), GroupTarget.SYMPLECTIC
        )
        assert witness is not None
        blocks = witness.segments.blocks
        assert len(blocks) == 2
        assert all(block.conductor == 2 for block in blocks)
        assert self.service.witness_round_trips(witness)

    def test_rank_four_steinberg(self):
        witness = self.service.construct_selfdual_witness(
            4, 1, CentralCharacter(), GroupTarget.SYMPLECTIC
        )
        assert len(witness.segments.steinbergs()) == 1
        assert witness.root_number == -1

    def test_rank_one_large_level(self):
        assert (
            self.service.construct_selfdual_witness(
                1, 2, CentralCharacter(), GroupTarget.ORTHOGONAL
            )
            is None
        )

    def test_rank_one_ramified_character(self):
        eta = CentralCharacter(labels=("a",), conductor=1, root_number=-1)
        witness = self.service.construct_selfdual_witness(1, 1, eta, GroupTarget.ORTHOGONAL)
        assert witness.root_number == -1
        assert self.service.witness_round_trips(witness)

    def test_symplectic_needs_trivial_eta(self):
        eta = CentralCharacter(labels=("a",), conductor=1)
        assert self.service.construct_selfdual_witness(4, 2, eta, GroupTarget.SYMPLECTIC) is None

    def test_orthogonal_below_eta_conductor(self):
        eta = CentralCharacter(labels=("a",), conductor=2)
        assert self.service.construct_selfdual_witness(4, 1, eta, GroupTarget.ORTHOGONAL) is None

    def test_bad_root_number(self):
        with pytest.raises(InputValidationError):
            self.service.construct_selfdual_witness(
                4, 2, CentralCharacter(), GroupTarget.SYMPLECTIC, root_number=0
            )

    def test_witnesses_round_trip(self):
        etas = [
            CentralCharacter(),
            CentralCharacter(labels=("u",)),
            CentralCharacter(labels=("r",), conductor=1, root_number=-1),
        ]
        built = 0
        for N in (2, 3, 4, 6):
            for k in range(9):
                for eta in etas:
                    for target in GroupTarget:
                        witness = self.service.construct_selfdual_witness(N, k, eta, target)
                        if witness is None:
                            continue
                        built += 1
                        assert self.service.witness_round_trips(witness), (N, k, eta, target)
        assert built > 0

    def test_both_signs_reachable(self):
        for N in (4, 6):
            for k in range(2, 9):
                for sign in (1, -1):
                    assert self.service.construct_selfdual_witness(
                        N, k, CentralCharacter(), GroupTarget.SYMPLECTIC, sign
                    ), (N, k, sign)
        for k in (2, 4, 6):
            for sign in (1, -1):
                assert self.service.construct_selfdual_witness(
                    3, k, CentralCharacter(), GroupTarget.ORTHOGONAL, sign
                )

    def test_level_one_has_one_sign(self):
        witness = self.service.construct_selfdual_witness(
            4, 1, CentralCharacter(), GroupTarget.SYMPLECTIC
        )
        assert witness.root_number == -1
        assert (
            self.service.construct_selfdual_witness(
                4, 1, CentralCharacter(), GroupTarget.SYMPLECTIC, 1
            )
            is None
        )


class TestAchievablePairs:
    def setup_method(self):
        self.service = SegmentService()

    def test_inert_diagonal(self):
        for k in range(10):
            assert self.service.is_achievable_conj(INERT, 4, k, k)

    def test_tame_trivial_central(self):
        assert self.service.is_achievable_conj(TAME, 4, 2, 0)
        rules = self.service.achievable_pairs_conj(TAME, 4)
        trivial = next(r for r in rules if r.family == PairFamily.TRIVIAL_CENTRAL)
        assert RecipeTag.RANK4_PRINCIPAL_SERIES in trivial.recipes

    def test_tame_shift_rounds_to_even(self):
        assert self.service.shifted_central_conductor(TAME, 4) == 2
        assert self.service.is_achievable_conj(TAME, 4, 4, 2)
        assert not self.service.is_achievable_conj(TAME, 4, 4, 3)

    def test_wild_windows(self):
        assert self.service.is_achievable_conj(WILD, 4, 2, 0)
        assert not self.service.is_achievable_conj(WILD, 4, 3, 0)
        assert not self.service.is_achievable_conj(WILD, 4, 11, 0)
        assert self.service.is_achievable_conj(WILD, 4, 12, 0)
        assert self.service.is_achievable_conj(WILD, 4, 7, 4)

    def test_split(self):
        assert self.service.is_achievable_conj(SPLIT, 4, 3, 2)
        assert not self.service.is_achievable_conj(SPLIT, 4, 2, 3)
        rules = self.service.achievable_pairs_conj(SPLIT, 4)
        assert [r.family for r in rules] == [PairFamily.SPLIT]
        assert self.service.split_achievable(3, 2, 0)
        with pytest.raises(InputValidationError):
            self.service.split_achievable(2, 2, 0)

    def test_rank_two_out_of_scope(self):
        with pytest.raises(OutOfScopeError):
            self.service.achievable_pairs_conj(INERT, 2)

    def test_odd_rank_rejected(self):
        with pytest.raises(InputValidationError):
            self.service.achievable_pairs_conj(INERT, 5)
