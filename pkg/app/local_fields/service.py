from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Dict, Iterable, List, Optional, Sequence, Union

from app.combinatorics.schemas import HalfInt
from app.config import logger, settings
from app.errors import BudgetExceededError, InconclusiveError, InputValidationError
from app.local_fields.presets import PRESETS
from app.local_fields.rings import Element, TruncatedQuadRing
from app.local_fields.schemas import (
    CoboundaryReport,
    Conductor,
    PlaceData,
    QuadraticDatum,
    Splitting,
    UnitSubgroup,
    ValidityMode,
    ValidityReport,
    WitnessResult,
)
from sympy import isprime

Places = Union[Dict[str, PlaceData], Iterable[PlaceData]]
Matrix = List[List[Element]]

HALF = HalfInt(doubled=1)


def index_places(places: Places) -> Dict[str, PlaceData]:
    if isinstance(places, dict):
        return places
    indexed: Dict[str, PlaceData] = {}
    for place in places:
        if place.id in indexed:
            raise InputValidationError(f"place {place.id} declared twice")
        indexed[place.id] = place
    return indexed


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


class LocalFieldService:
    """Places, conductors and the residue-ring oracles for E_w / F_v."""

    # -- conductors -------------------------------------------------------

    def check_conductor(self, c: Conductor, places: Places) -> Dict[str, PlaceData]:
        by_id = index_places(places)
        for place_id, k in c.items():
            if place_id not in by_id:
                raise InputValidationError(
                    f"conductor place {place_id} is not a declared place"
                )
            if not k.is_integral and not by_id[place_id].splitting.is_ramified:
                raise InputValidationError(
                    f"half-integral exponent {k} at unramified place {place_id}"
                )
        return by_id

    def local_exponent(self, c: Conductor, v: PlaceData) -> int:
        """Local conductor index at v: k_v when unramified, 2*k_v when ramified."""
        k = c.exponent(v.id)
        if v.splitting.is_ramified:
            return (2 * k).to_int()
        if not k.is_integral:
            raise InputValidationError(
                f"half-integral exponent {k} at unramified place {v.id}"
            )
        return k.to_int()

    def shifted_conductor(self, c: Conductor, places: Places) -> Conductor:
        """The conductor prod p_v^{max(floor(k_v - (j_v - 1/2)), 0)}."""
        by_id = self.check_conductor(c, places)
        shifted = {
            v.id: self._shift(c, v)
            for v in by_id.values()
            if self._shift(c, v) > 0
        }
        return Conductor(exponents=shifted)

    def _shift(self, c: Conductor, v: PlaceData) -> int:
        return max((c.exponent(v.id) - v.j + HALF).floor(), 0)

    def b_for_trivial_roots_of_unity(self) -> int:
        """b_v to use when the roots of unity of E meet 1 + D only in 1."""
        return -2

    def _witness_levels(self, v: PlaceData, value: int) -> tuple:
        strong = value >= v.b + Fraction(2, v.e)
        weak = value >= v.b + Fraction(1, v.e)
        return strong, weak

    def valid_conductor(
        self,
        c: Conductor,
        places: Places,
        N: int,
        mode: ValidityMode = ValidityMode.VALID,
    ) -> ValidityReport:
        if N < 2 or N % 2:
            raise InputValidationError(f"valid conductors are defined for even N, got {N}")
        by_id = self.check_conductor(c, places)
        report = ValidityReport(holds=True, mode=mode)

        quarter = Fraction(N, 4)
        for v in sorted(by_id.values(), key=lambda place: place.id):
            if v.splitting != Splitting.WILD_RAMIFIED:
                continue
            k = c.exponent(v.id).value
            bound = (2 * v.j - 1) if mode == ValidityMode.VALID else (4 * v.j - 2)
            if k <= quarter or k > bound.value:
                report.reasons.append(
                    f"wild place {v.id}: k={k} satisfies k <= {quarter} or k > {bound}"
                )
            else:
                report.holds = False
                report.failing.append(v.id)
                report.reasons.append(
                    f"wild place {v.id}: {quarter} < k={k} <= {bound}"
                )

        if mode == ValidityMode.VALID:
            strong_places, weak_places = [], []
            for v in sorted(by_id.values(), key=lambda place: place.id):
                strong, weak = self._witness_levels(v, self._shift(c, v))
                if strong:
                    strong_places.append(v.id)
                if weak:
                    weak_places.append(v.id)
            if strong_places:
                report.witnesses = strong_places[:1]
                report.reasons.append(
                    f"place {strong_places[0]} meets the b_v + 2/e_v bound"
                )
            elif len(weak_places) >= 2:
                report.witnesses = weak_places[:2]
                report.reasons.append(
                    f"places {weak_places[0]}, {weak_places[1]} meet the b_v + 1/e_v bound"
                )
            else:
                report.holds = False
                report.reasons.append("no place witnesses the central character bound")

        logger.debug(f"Conductor {c} is {mode.value}: {report.holds}")
        return report

    def cchar_globalization_check(self, c: Conductor, places: Places) -> bool:
        """Whether a conjugate self-dual character of conductor c globalizes."""
        by_id = self.check_conductor(c, places)
        if not c.is_integral:
            return False
        strong_count = weak_count = 0
        for v in by_id.values():
            strong, weak = self._witness_levels(v, c.exponent(v.id).value)
            strong_count += strong
            weak_count += weak
        return strong_count >= 1 or weak_count >= 2

    # -- truncated rings --------------------------------------------------

    def default_truncation(self, splitting: Splitting, d_exp: int) -> int:
        """Smallest m whose p_w-depth reaches 2 * (d_exp + slack)."""
        e = 2 if splitting.is_ramified else 1
        return _ceil_div(2 * (d_exp + settings.truncation_target_slack), e)

    def build_truncated_ring(
        self,
        p: int,
        m: int,
        splitting: Splitting,
        datum: Optional[QuadraticDatum] = None,
        name: Optional[str] = None,
    ) -> TruncatedQuadRing:
        if not isprime(p):
            raise InputValidationError(f"{p} is not prime")
        if m < 1:
            raise InputValidationError("truncation level must be at least 1")
        datum = datum or QuadraticDatum()

        if splitting == Splitting.SPLIT:
            trace, norm = 1, 0
        elif splitting == Splitting.TAME_RAMIFIED and datum.unit is not None:
            if datum.unit % p == 0:
                raise InputValidationError(f"{datum.unit} is not a unit mod {p}")
            trace, norm = 0, -datum.unit * p
        else:
            if datum.trace is None or datum.norm is None:
                raise InputValidationError(f"{splitting.value} rings need a presentation")
            trace, norm = datum.trace, datum.norm

        if splitting == Splitting.INERT and not self._irreducible_mod_p(p, trace, norm):
            raise InputValidationError(
                f"x^2 - {trace}x + {norm} is not irreducible mod {p}"
            )
        if splitting.is_ramified:
            if trace % p or norm % p or norm % (p * p) == 0:
                raise InputValidationError(
                    f"x^2 - {trace}x + {norm} is not Eisenstein at {p}"
                )
            if splitting == Splitting.TAME_RAMIFIED and p == 2:
                raise InputValidationError("tame ramification needs p odd")
            if splitting == Splitting.WILD_RAMIFIED and p != 2:
                raise InputValidationError("wild quadratic ramification needs p = 2")

        ring = TruncatedQuadRing(
            p=p, m=m, splitting=splitting, trace=trace, norm_constant=norm, name=name
        )
        logger.debug(f"Built truncated ring {name or ''} of size {ring.size}")
        return ring

    def _irreducible_mod_p(self, p: int, trace: int, norm: int) -> bool:
        if p == 2:
            return trace % 2 == 1 and norm % 2 == 1
        disc = (trace * trace - 4 * norm) % p
        return disc != 0 and pow(disc, (p - 1) // 2, p) == p - 1

    def ring_from_preset(self, name: str, m: Optional[int] = None) -> TruncatedQuadRing:
        if name not in PRESETS:
            raise InputValidationError(
                f"unknown preset {name}; choose from {', '.join(sorted(PRESETS))}"
            )
        preset = PRESETS[name]
        datum = QuadraticDatum(trace=preset.trace, norm=preset.norm)
        if m is None:
            probe = self.build_truncated_ring(preset.p, 4, preset.splitting, datum)
            m = self.default_truncation(preset.splitting, self.different_exponent(probe))
        return self.build_truncated_ring(preset.p, m, preset.splitting, datum, name=name)

    def with_truncation(self, ring: TruncatedQuadRing, m: int) -> TruncatedQuadRing:
        return ring.model_copy(update={"m": m})

    def _check_enumeration(self, ring: TruncatedQuadRing) -> None:
        if ring.size > settings.ring_element_budget:
            logger.warning(f"Ring of size {ring.size} exceeds the enumeration budget")
            raise BudgetExceededError(
                f"ring has {ring.size} elements, budget is {settings.ring_element_budget}"
            )

    def different_exponent(self, ring: TruncatedQuadRing) -> int:
        """Valuation of the different D_{E_w/F_v} in p_w."""
        deep = ring if ring.m >= 4 else self.with_truncation(ring, 4)
        value = deep.valuation(deep.different_element())
        if value >= deep.depth:
            raise InconclusiveError("different not resolved by the presentation")
        return value

    def resolution_level(self, ring: TruncatedQuadRing) -> int:
        """Deepest p_w-level at which truncated norm-one elements lift to O_E.

        Norms of 1 + p_w^{2m - t} cover 1 + p^m, where t = d_exp - 1 is the
        ramification break, so the top t levels are lost.
        """
        if not ring.splitting.is_ramified:
            return ring.depth
        brk = max(self.different_exponent(ring) - 1, 0)
        return ring.depth - brk

    def _check_resolution(self, ring: TruncatedQuadRing, k: int) -> int:
        if k < 0:
            raise InputValidationError("k must be non-negative")
        level = self.resolution_level(ring)
        d_exp = self.different_exponent(ring)
        if max(k, d_exp) >= level:
            logger.warning(
                f"Truncation m={ring.m} cannot resolve level {max(k, d_exp)}"
            )
            raise InconclusiveError(
                f"truncation depth {ring.depth} resolves only {level} levels; "
                f"need more than {max(k, d_exp)}"
            )
        return level

    def norm_one_image_phi(self, ring: TruncatedQuadRing, k: int) -> UnitSubgroup:
        """Image of x -> x/conj(x) on 1 + p_w^k, reduced to the resolution level."""
        level = self._check_resolution(ring, k)
        self._check_enumeration(ring)
        image = {ring.reduce(ring.phi(x), level) for x in ring.one_plus_ideal(k)}
        return UnitSubgroup(level=level, elements=sorted(image))

    def norm_one_subgroup(self, ring: TruncatedQuadRing, k: int) -> UnitSubgroup:
        """Norm-one elements of 1 + (D cap p_w^k) on the same level."""
        level = self._check_resolution(ring, k)
        self._check_enumeration(ring)
        start = max(k, self.different_exponent(ring))
        target = {
            ring.reduce(y, level)
            for y in ring.one_plus_ideal(start)
            if ring.is_unit(y) and ring.norm(y) == 1
        }
        return UnitSubgroup(level=level, elements=sorted(target))

    def verify_coboundary_lemma(self, ring: TruncatedQuadRing, k: int) -> CoboundaryReport:
        image = self.norm_one_image_phi(ring, k)
        target = self.norm_one_subgroup(ring, k)
        claimed = ring.splitting != Splitting.WILD_RAMIFIED or k == 0
        return CoboundaryReport(
            k=k,
            level=image.level,
            image_size=image.size,
            target_size=target.size,
            inclusion=image.as_set() <= target.as_set(),
            equality=image.as_set() == target.as_set(),
            equality_claimed=claimed,
        )

    def norm_group_units(self, ring: TruncatedQuadRing) -> List[int]:
        """Norms of units of O_E, as residues mod p^m."""
        self._check_enumeration(ring)
        return sorted({ring.norm(x) for x in ring.units()})

    def compute_j_invariant(self, ring: TruncatedQuadRing) -> HalfInt:
        """Least j with 1 + p_v^j inside the norm group (1/2 when every unit is a norm)."""
        norms = set(self.norm_group_units(ring))
        units = ring.residue_units()
        if norms == set(units):
            if ring.splitting.is_ramified:
                raise InconclusiveError(
                    f"every unit mod {ring.p}^{ring.m} is a norm; increase m"
                )
            return HalfInt(doubled=1)
        if not ring.splitting.is_ramified:
            raise InconclusiveError("unramified norm map is not surjective at this truncation")
        for j in range(1, ring.m + 1):
            step = ring.p**j
            if all(u in norms for u in units if (u - 1) % step == 0):
                return HalfInt(doubled=2 * j)
        raise InconclusiveError("norm group not resolved")

    def place_from_ring(self, place_id: str, ring: TruncatedQuadRing, b: int) -> PlaceData:
        return PlaceData(
            id=place_id,
            p=ring.p,
            splitting=ring.splitting,
            j=self.compute_j_invariant(ring),
            b=b,
            d_exp=self.different_exponent(ring),
        )

    # -- the linear algebra witness -----------------------------------------

    def norm_one_units(self, ring: TruncatedQuadRing) -> List[Element]:
        """Units of the truncation that are reductions of norm-one units of O_E."""
        extra = 0
        if ring.splitting.is_ramified:
            extra = _ceil_div(max(self.different_exponent(ring) - 1, 0), ring.e)
        deep = self.with_truncation(ring, ring.m + extra)
        self._check_enumeration(deep)
        q = ring.modulus
        return sorted(
            {
                (y[0] % q, y[1] % q)
                for y in deep.units()
                if deep.norm(y) == 1
            }
        )

    def witness_predicate(self, ring: TruncatedQuadRing, N: int, y: Element) -> bool:
        """Closed-form answer for the existence of A with w conj(A)^T w^-1 = yA."""
        if not ring.splitting.is_ramified:
            return True
        y_power = ring.power(y, N)
        if ring.splitting == Splitting.TAME_RAMIFIED:
            return not ring.in_ideal(ring.add(y_power, ring.one), 1)
        d_exp = self.different_exponent(ring)
        if d_exp > ring.depth:
            raise InconclusiveError(f"depth {ring.depth} cannot see the different")
        return not ring.in_ideal(ring.sub(y_power, ring.one), 1) or ring.in_ideal(
            ring.sub(y, ring.one), d_exp
        )

    def antidiagonal(self, ring: TruncatedQuadRing, N: int) -> Matrix:
        w = [[ring.zero for _ in range(N)] for _ in range(N)]
        for i in range(N):
            w[i][N - 1 - i] = ring.element((-1) ** i)
        return w

    def mat_mul(self, ring: TruncatedQuadRing, x: Matrix, y: Matrix) -> Matrix:
        n = len(x)
        result = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ring.zero
                for t in range(n):
                    acc = ring.add(acc, ring.mul(x[i][t], y[t][j]))
                row.append(acc)
            result.append(row)
        return result

    def determinant(self, ring: TruncatedQuadRing, matrix: Matrix) -> Element:
        n = len(matrix)
        total = ring.zero
        for perm in permutations(range(n)):
            inversions = sum(
                1 for i, j in combinations(range(n), 2) if perm[i] > perm[j]
            )
            term = ring.element(-1 if inversions % 2 else 1)
            for row, col in enumerate(perm):
                term = ring.mul(term, matrix[row][col])
            total = ring.add(total, term)
        return total

    def satisfies_twisted_symmetry(
        self, ring: TruncatedQuadRing, matrix: Matrix, y: Element
    ) -> bool:
        """Check w conj(A)^T w^{-1} = y A (w is an involution for odd N)."""
        n = len(matrix)
        w = self.antidiagonal(ring, n)
        conj_t = [[ring.conj(matrix[j][i]) for j in range(n)] for i in range(n)]
        left = self.mat_mul(ring, self.mat_mul(ring, w, conj_t), w)
        right = [[ring.mul(y, matrix[i][j]) for j in range(n)] for i in range(n)]
        return left == right

    def matrix_witness_search(
        self, ring: TruncatedQuadRing, N: int, y: Sequence[int]
    ) -> WitnessResult:
        """Search A in GL_N(ring) with w conj(A)^T w^{-1} = y A.

        Writing B = wA the condition becomes conj(B)^T = yB, so B is fixed by
        its diagonal (entries z with conj(z) = yz) and its upper triangle.
        """
        if N < 1 or N % 2 == 0:
            raise InputValidationError(f"N must be odd, got {N}")
        if N > settings.witness_max_size:
            raise BudgetExceededError(
                f"N={N} exceeds the witness search size {settings.witness_max_size}"
            )
        y = ring.element(y[0], y[1])
        if y not in set(self.norm_one_units(ring)):
            raise InputValidationError(
                f"{ring.format_element(y)} is not a norm-one unit of the ring"
            )
        predicted = self.witness_predicate(ring, N, y)
        self._check_enumeration(ring)

        elements = list(ring.elements())
        diagonal = [z for z in elements if ring.conj(z) == ring.mul(y, z)]
        w = self.antidiagonal(ring, N)

        for z in diagonal:
            if ring.is_unit(z):
                scalar = [
                    [z if i == j else ring.zero for j in range(N)] for i in range(N)
                ]
                return WitnessResult(
                    found=True,
                    matrix=self.mat_mul(ring, w, scalar),
                    candidates_examined=1,
                    predicted=predicted,
                )

        upper = list(combinations(range(N), 2))
        total = len(elements) ** len(upper) * len(diagonal) ** N
        if total > settings.witness_search_budget:
            logger.warning(f"Witness search needs {total} candidates")
            raise BudgetExceededError(
                f"{total} candidates exceed the budget {settings.witness_search_budget}"
            )
        logger.debug(f"Exhaustive witness search over {total} candidates")

        y_bar = ring.conj(y)
        examined = 0
        for diag_choice in product(diagonal, repeat=N):
            for off in product(elements, repeat=len(upper)):
                examined += 1
                b = [[ring.zero] * N for _ in range(N)]
                for i in range(N):
                    b[i][i] = diag_choice[i]
                for (i, j), u in zip(upper, off):
                    b[i][j] = u
                    b[j][i] = ring.mul(y_bar, ring.conj(u))
                if ring.is_unit(self.determinant(ring, b)):
                    return WitnessResult(
                        found=True,
                        matrix=self.mat_mul(ring, w, b),
                        candidates_examined=examined,
                        predicted=predicted,
                    )
        return WitnessResult(found=False, candidates_examined=examined, predicted=predicted)


local_field_service = LocalFieldService()
