from collections import defaultdict
from typing import Dict, Iterator, List, Optional, Sequence

from app.config import logger
from app.errors import InputValidationError, OutOfScopeError
from app.local_fields.schemas import PlaceData, Splitting
from app.segments.schemas import (
    Block,
    CentralCharacter,
    ExistenceWitness,
    GroupTarget,
    PairFamily,
    PairRule,
    RecipeTag,
    SegmentData,
    SteinbergBlock,
    SupercuspidalBlock,
)
from sympy.utilities.iterables import partitions


class SegmentService:
    """Conductors and root numbers of (conjugate) self-dual local representations."""

    # -- segment calculus -------------------------------------------------

    def check_pairing(self, blocks: Sequence[Block]) -> Dict[str, List[Block]]:
        """Group partnered blocks by tag; every tag must name exactly two matching blocks."""
        groups: Dict[str, List[Block]] = defaultdict(list)
        for block in blocks:
            if block.partner is not None:
                groups[block.partner].append(block)
        for tag, members in groups.items():
            if len(members) != 2:
                raise InputValidationError(
                    f"partner tag {tag} has {len(members)} blocks, expected 2"
                )
            first, second = members
            if first.model_dump(exclude={"central"}) != second.model_dump(exclude={"central"}):
                raise InputValidationError(f"blocks tagged {tag} are not dual partners")
        return groups

    def segment_conductor(self, s: SegmentData) -> int:
        total = 0
        for block in s.blocks:
            if isinstance(block, SteinbergBlock):
                total += block.size - 1
            elif block.ramified:
                total += block.conductor
        return total

    def _supercuspidal_sign(self, blocks: Sequence[Block]) -> int:
        self.check_pairing(blocks)
        sign = 1
        seen = set()
        for block in blocks:
            if not isinstance(block, SupercuspidalBlock):
                continue
            if block.partner is not None:
                if block.partner in seen:
                    continue
                seen.add(block.partner)
            sign *= block.root_number
        return sign

    def segment_root_number(self, s: SegmentData) -> int:
        """(-1)^(sum of t-1 over Steinbergs) times the supercuspidal root numbers."""
        steinberg = sum(block.size - 1 for block in s.steinbergs())
        return (-1) ** steinberg * self._supercuspidal_sign(s.blocks)

    def central_labels(self, s: SegmentData) -> tuple:
        """Central character of s; partnered blocks cancel."""
        labels: set = set()
        for block in s.supercuspidals():
            if block.partner is None:
                labels ^= set(block.central)
        return tuple(sorted(labels))

    def bernstein_constant(
        self, component: Sequence[SupercuspidalBlock], k: int
    ) -> Optional[int]:
        """Root number shared by the conductor-k self-dual members of a component.

        None when no member has conductor k: below the supercuspidal floor, or
        above it by more than the unramified constituents can supply.
        """
        sign = self._supercuspidal_sign(component)
        floor = sum(block.conductor for block in component if block.ramified)
        unramified = sum(1 for block in component if not block.ramified)
        if k < floor or k > floor + max(unramified - 1, 0):
            return None
        return (-1) ** (k - floor) * sign

    def enumerate_component_members(
        self, component: Sequence[SupercuspidalBlock]
    ) -> Iterator[SegmentData]:
        """Every segmentation of the unramified constituents into Steinberg blocks."""
        self.check_pairing(component)
        ramified = [block for block in component if block.ramified]
        unramified = sum(1 for block in component if not block.ramified)
        if unramified == 0:
            yield SegmentData(blocks=list(ramified))
            return
        for partition in partitions(unramified):
            blocks: List[Block] = list(ramified)
            for part, multiplicity in sorted(partition.items()):
                for _ in range(multiplicity):
                    blocks.append(
                        SupercuspidalBlock() if part == 1 else SteinbergBlock(size=part)
                    )
            yield SegmentData(blocks=blocks)

    # -- existence ----------------------------------------------------------

    def character_existence_conj(self, v: PlaceData, k: int, kappa: int) -> bool:
        """Conjugate self-dual character of E_w^x with conductor k and sign kappa."""
        if v.splitting == Splitting.SPLIT:
            raise InputValidationError(f"place {v.id} is split")
        if k < 0 or kappa not in (1, -1):
            raise InputValidationError("need k >= 0 and kappa = +1 or -1")
        if not v.splitting.is_ramified:
            return True
        if kappa == 1:
            return k % 2 == 0
        two_j = (2 * v.j).to_int()
        return k == two_j - 1 or (k >= two_j and k % 2 == 0)

    def _character_pair(self, tag: str, conductor: int, sign: int) -> List[Block]:
        block = SupercuspidalBlock(
            conductor=conductor,
            ramified=conductor > 0,
            root_number=sign if conductor > 0 else 1,
            partner=tag,
        )
        return [block, block.model_copy()]

    def _sigma_options(
        self, m: int, k_sigma: int, eta: CentralCharacter, target: GroupTarget
    ) -> List[List[Block]]:
        """Self-dual representations of GL_m with conductor k_sigma and central character eta."""
        if m == 1:
            if k_sigma != eta.conductor:
                return []
            ramified = eta.conductor > 0
            return [
                [
                    SupercuspidalBlock(
                        conductor=eta.conductor,
                        ramified=ramified,
                        root_number=eta.root_number if ramified else 1,
                        central=eta.labels,
                    )
                ]
            ]

        if eta.is_trivial:
            if k_sigma == 0:
                return [self._character_pair("sigma", 0, 1)]
            if k_sigma % 2 == 0:
                return [self._character_pair("sigma", k_sigma // 2, s) for s in (1, -1)]
            if target == GroupTarget.ORTHOGONAL:
                return []
            if k_sigma == 1:
                return [[SteinbergBlock(size=2)]]
            return [
                [SupercuspidalBlock(rank=2, conductor=k_sigma, ramified=True, root_number=s)]
                for s in (1, -1)
            ]

        # orthogonal with eta nontrivial: 1 + eta, or a cuspidal through SO_2^eta
        options: List[List[Block]] = []
        if k_sigma == eta.conductor:
            options.append(
                [SupercuspidalBlock()] + self._sigma_options(1, k_sigma, eta, target)[0]
            )
        elif k_sigma > eta.conductor and k_sigma >= 2:
            if eta.conductor > 0 or k_sigma % 2 == 0:
                options.extend(
                    [
                        SupercuspidalBlock(
                            rank=2,
                            conductor=k_sigma,
                            ramified=True,
                            root_number=s,
                            central=eta.labels,
                        )
                    ]
                    for s in (1, -1)
                )
        return options

    def _chi_options(self, pairs: int, rest: int) -> List[List[Block]]:
        if pairs == 0:
            return [[]]
        tail: List[Block] = []
        for i in range(2, pairs + 1):
            tail.extend(self._character_pair(f"chi{i}", 0, 1))
        signs = (1, -1) if rest > 0 else (1,)
        return [self._character_pair("chi1", rest // 2, s) + tail for s in signs]

    def construct_selfdual_witness(
        self,
        N: int,
        k: int,
        eta: CentralCharacter,
        target: GroupTarget,
        root_number: Optional[int] = None,
    ) -> Optional[ExistenceWitness]:
        """chi_1 + ... + sigma_m + ... + chi_1^-1 with conductor k and central character eta.

        With root_number given, only witnesses of that sign are returned. Both
        signs occur for N > 2 and k >= 2. At k = 1 the conductor is carried by a
        single Steinberg block, which fixes the sign, so the other sign gives None.
        """
        if N < 1 or k < 0:
            raise InputValidationError("need N >= 1 and k >= 0")
        if root_number not in (None, 1, -1):
            raise InputValidationError("root number must be +1 or -1")
        if target == GroupTarget.SYMPLECTIC and (N % 2 or not eta.is_trivial):
            return None
        if target == GroupTarget.ORTHOGONAL and k < eta.conductor:
            return None
        if N == 1 and k > 1:
            return None

        m = 2 if N % 2 == 0 else 1
        pairs = (N - m) // 2
        for k_sigma in range(k + 1):
            rest = k - k_sigma
            if rest % 2 or (pairs == 0 and rest):
                continue
            for sigma in self._sigma_options(m, k_sigma, eta, target):
                for chis in self._chi_options(pairs, rest):
                    segments = SegmentData(blocks=sigma + chis)
                    sign = self.segment_root_number(segments)
                    if root_number is None or sign == root_number:
                        logger.debug(f"Witness for N={N} k={k}: sigma conductor {k_sigma}")
                        return ExistenceWitness(
                            N=N,
                            k=k,
                            eta=eta,
                            target=target,
                            root_number=sign,
                            segments=segments,
                        )
        return None

    def witness_round_trips(self, witness: ExistenceWitness) -> bool:
        segments = witness.segments
        return (
            segments.N == witness.N
            and self.segment_conductor(segments) == witness.k
            and self.central_labels(segments) == witness.eta.labels
            and self.segment_root_number(segments) == witness.root_number
        )

    def split_achievable(self, N: int, k: int, l: int) -> bool:
        """Split places: every central conductor l <= k occurs."""
        if N < 3:
            raise InputValidationError(f"split existence needs N >= 3, got {N}")
        return 0 <= l <= k

    def shifted_central_conductor(self, v: PlaceData, k: int) -> int:
        """max(k - (2j - 1), 0), rounded down to even when E_w/F_v is ramified."""
        l = max(k - (2 * v.j - 1).to_int(), 0)
        if v.e == 2:
            l -= l % 2
        return l

    def achievable_pairs_conj(self, v: PlaceData, N: int) -> List[PairRule]:
        """Rules describing (conductor, central conductor) pairs realized for U_N^+."""
        if N % 2:
            raise InputValidationError(f"N must be even, got {N}")
        if N < 4:
            raise OutOfScopeError(
                "conjugate existence for N = 2 needs extra congruence conditions"
            )
        if v.splitting == Splitting.SPLIT:
            return [
                PairRule(
                    family=PairFamily.SPLIT,
                    description="all l <= k",
                    recipes=[RecipeTag.SPLIT_PRINCIPAL_SERIES],
                )
            ]

        two_j_minus_one = (2 * v.j - 1).to_int()
        shifted = f"l = max(k - {two_j_minus_one}, 0)"
        if v.e == 2:
            shifted += ", rounded down to even"
        base = [RecipeTag.RANK2_PRINCIPAL_SERIES, RecipeTag.STEINBERG, RecipeTag.TRIVIAL]
        if v.splitting != Splitting.WILD_RAMIFIED:
            return [
                PairRule(family=PairFamily.SHIFTED, description=shifted, recipes=base),
                PairRule(
                    family=PairFamily.TRIVIAL_CENTRAL,
                    description="l = 0",
                    recipes=base
                    + ([RecipeTag.RANK4_PRINCIPAL_SERIES] if v.e == 2 else []),
                ),
            ]
        return [
            PairRule(
                family=PairFamily.SHIFTED,
                description=shifted,
                small_k_max=N // 2,
                large_k_min=(4 * v.j - 1).to_int(),
                recipes=base,
            ),
            PairRule(
                family=PairFamily.TRIVIAL_CENTRAL,
                description="l = 0",
                small_k_max=N // 2,
                large_k_min=(8 * v.j - 4).to_int(),
                recipes=base + [RecipeTag.RANK4_PRINCIPAL_SERIES],
            ),
        ]

    def is_achievable_conj(self, v: PlaceData, N: int, k: int, l: int) -> bool:
        if v.splitting == Splitting.SPLIT:
            return self.split_achievable(N, k, l)
        for rule in self.achievable_pairs_conj(v, N):
            if not rule.admits(k):
                continue
            if rule.family == PairFamily.SHIFTED and l == self.shifted_central_conductor(v, k):
                return True
            if rule.family == PairFamily.TRIVIAL_CENTRAL and l == 0:
                return True
        return False


segment_service = SegmentService()
