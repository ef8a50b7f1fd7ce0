from typing import Dict, List, Optional, Sequence

from app.combinatorics.schemas import LaurentPoly, TriangularSystem
from app.combinatorics.service import combinatorics_service
from app.config import logger
from app.epsilon.schemas import (
    ArchimedeanRootNumber,
    CentralTransferProfile,
    CoefficientSchedule,
    Duality,
    LambdaSignReport,
    OmegaInfinity,
    OmegaPattern,
    PositivityReport,
    SupportKind,
)
from app.errors import InputValidationError
from app.local_fields.rings import Element, TruncatedQuadRing
from app.local_fields.schemas import Conductor, PlaceData, Splitting, ValidityMode
from app.local_fields.service import Places, local_field_service
from app.oldforms.schemas import TraceCase
from app.oldforms.service import oldform_service


class EpsilonService:
    """Root-number test functions and their transfers at central elements."""

    def coefficient_schedule(self, case: TraceCase, N: int, k: int) -> CoefficientSchedule:
        """Solve for a_N(k, i) against the oldform trace profile."""
        profile = oldform_service.trace_profile(case, N, k)
        solution = combinatorics_service.solve_unitriangular(
            TriangularSystem(values=profile.values, target=k)
        )
        return CoefficientSchedule(
            case=case,
            N=N,
            k=k,
            coefficients={i: a for i, a in enumerate(solution) if a},
        )

    def closed_form_coefficients(self, case: TraceCase, N: int, k: int) -> Dict[int, int]:
        """Explicit a_N(k, i) for every case, nonzero shifts only."""
        binomial = combinatorics_service.binomial
        if case == TraceCase.CONJ_SPLIT:
            series = [(-1) ** i * binomial(N, i) for i in range(N + 1)]
        elif N % 2 == 0:
            series = [0] * (N + 1)
            for i in range(N // 2 + 1):
                series[2 * i] = (-1) ** i * binomial(N // 2, i)
        else:
            # (1 - x)(1 - x^2)^((N-1)/2)
            half = (N - 1) // 2
            even_part = [0] * (N)
            for i in range(half + 1):
                even_part[2 * i] = (-1) ** i * binomial(half, i)
            series = combinatorics_service.convolve([1, -1], even_part, N + 1)
        return {i: a for i, a in enumerate(series[: k + 1]) if a}

    def _integral_exponents(self, c: Conductor) -> Dict[str, int]:
        if not c.is_integral:
            raise InputValidationError(f"self-dual conductor {c} must be integral")
        return {v: k.to_int() for v, k in c.items()}

    def _check_even(self, N: int) -> None:
        if N < 2 or N % 2:
            raise InputValidationError(f"N must be even and positive, got {N}")

    def selfdual_transfer_at_identity(self, N: int, c: Conductor) -> int:
        """Transfer of the weighted test function to SO_{N+1} at the identity.

        Defined up to one global positive constant.
        """
        self._check_even(N)
        value = 1
        for place_id, exponent in self._integral_exponents(c).items():
            if exponent % 2 or exponent > N:
                logger.debug(f"Transfer vanishes at {place_id}: v(n)={exponent}")
                return 0
            half = exponent // 2
            value *= (-1) ** half * combinatorics_service.binomial(N // 2, half)
        return value

    def conj_local_profile(self, v: PlaceData, k_local: int) -> CentralTransferProfile:
        if k_local < 0:
            raise InputValidationError("local index must be non-negative")
        fields = {"place_id": v.id, "splitting": v.splitting, "k": k_local}
        if v.splitting == Splitting.SPLIT:
            return CentralTransferProfile(
                **fields, support=SupportKind.CONGRUENT_TO_ONE, level=k_local, sign=1
            )
        if v.splitting == Splitting.INERT:
            return CentralTransferProfile(
                **fields,
                support=SupportKind.NEGATIVE_IN_PHI_IMAGE,
                level=k_local,
                sign=(-1) ** k_local,
            )
        if k_local > 0:
            return CentralTransferProfile(
                **fields, support=SupportKind.EMPTY, level=k_local, sign=0
            )
        return CentralTransferProfile(
            **fields,
            support=SupportKind.MINUS_ONE_MOD_DIFFERENT,
            level=v.d_exp,
            sign=1,
        )

    def profile_support_contains(
        self, profile: CentralTransferProfile, ring: TruncatedQuadRing, gamma: Element
    ) -> bool:
        """Evaluate the support condition of a local profile at a central unit."""
        if ring.splitting != profile.splitting:
            raise InputValidationError(
                f"ring is {ring.splitting.value}, profile is {profile.splitting.value}"
            )
        gamma = ring.element(*gamma)
        if not ring.is_unit(gamma):
            return False
        if profile.support == SupportKind.CONGRUENT_TO_ONE:
            return ring.in_ideal(ring.sub(gamma, ring.one), profile.level)
        if profile.support == SupportKind.NEGATIVE_IN_PHI_IMAGE:
            image = local_field_service.norm_one_image_phi(ring, profile.k)
            return ring.reduce(ring.neg(gamma), image.level) in image.as_set()
        if profile.support == SupportKind.MINUS_ONE_MOD_DIFFERENT:
            return ring.in_ideal(ring.add(gamma, ring.one), profile.level)
        return False

    def lambda_sign(
        self,
        case: Duality,
        N: int,
        c: Conductor,
        places: Places = (),
        omega: Optional[OmegaPattern] = None,
    ) -> LambdaSignReport:
        """Vanishing and sign of the central-element main term."""
        self._check_even(N)
        if case == Duality.SELF_DUAL:
            value = self.selfdual_transfer_at_identity(N, c)
            if value == 0:
                return LambdaSignReport(
                    vanishes=True,
                    reasons=["some v(n) is odd or exceeds N"],
                )
            total = sum(self._integral_exponents(c).values())
            return LambdaSignReport(
                vanishes=False,
                sign=(-1) ** (total // 2),
                reasons=[f"sign (-1)^(sum v(n)/2) with sum v(n) = {total}"],
            )
        return self._conjugate_lambda(N, c, places, omega or OmegaPattern())

    def _conjugate_lambda(
        self, N: int, c: Conductor, places: Places, omega: OmegaPattern
    ) -> LambdaSignReport:
        by_id = local_field_service.check_conductor(c, places)
        for place_id, k in c.items():
            v = by_id[place_id]
            if v.splitting.is_ramified and (not k.is_integral or k > N // 2):
                reason = "half-integral" if not k.is_integral else f"greater than {N // 2}"
                return LambdaSignReport(
                    vanishes=True,
                    reasons=[f"ramified place {place_id} has k_v = {k}, {reason}"],
                )

        n_ur = Conductor(
            exponents={
                v: k for v, k in c.items() if not by_id[v].splitting.is_ramified
            }
        )
        constraints = [f"omega trivial on (1 + ({n_ur}) D) cap O_E^x"] + [
            f"omega nontrivial on (1 + ({n_ur}) p_{v}^-1 D) cap O_E^x"
            for v in n_ur.support
        ]
        if omega.trivial_on_n_ur is False:
            return LambdaSignReport(
                vanishes=True,
                n_ur=n_ur,
                omega_constraints=constraints,
                reasons=["omega is nontrivial on (1 + n_ur D) cap O_E^x"],
            )

        sign = 1
        for _, k in c.items():
            sign *= (-1) ** k.to_int()
        proven = omega.trivial_on_n_ur is True and all(
            omega.nontrivial_below.get(v) is True for v in n_ur.support
        )
        reasons = [f"sign is the product of (-1)^k_v over {c}"]
        if not proven:
            reasons.append("sign rests on the expected nonvanishing for general omega")
        return LambdaSignReport(
            vanishes=False,
            sign=sign,
            conjectural=not proven,
            n_ur=n_ur,
            omega_constraints=constraints,
            reasons=reasons,
        )

    def c_positivity(
        self,
        case: Duality,
        N: int,
        c: Conductor,
        places: Places = (),
        omega_infty: OmegaInfinity = OmegaInfinity.NONTRIVIAL,
        central_conductors: Optional[Dict[str, int]] = None,
    ) -> PositivityReport:
        """Whether the unweighted-count test function has positive transfer."""
        self._check_even(N)
        if case == Duality.SELF_DUAL:
            exponents = self._integral_exponents(c)
            reasons: List[str] = []
            holds = True
            for place_id, bound in sorted((central_conductors or {}).items()):
                if exponents.get(place_id, 0) < bound:
                    holds = False
                    reasons.append(
                        f"v(n) = {exponents.get(place_id, 0)} < c(omega'_v) = {bound} at {place_id}"
                    )
            if omega_infty == OmegaInfinity.NONTRIVIAL and c.is_trivial:
                holds = False
                reasons.append("omega_infty is nontrivial but n = 1")
            if holds:
                reasons.append("central character conductor bounds hold")
            return PositivityReport(holds=holds, reasons=reasons)

        if N < 4:
            return PositivityReport(holds=False, reasons=["needs N >= 4"])
        report = local_field_service.valid_conductor(c, places, N, ValidityMode.VALID)
        if report.holds:
            return PositivityReport(holds=True, reasons=["conductor is valid"] + report.reasons)
        if omega_infty == OmegaInfinity.TRIVIAL:
            zero = local_field_service.valid_conductor(c, places, N, ValidityMode.ZERO_VALID)
            if zero.holds:
                return PositivityReport(
                    holds=True, reasons=["conductor is 0-valid and omega_infty is trivial"]
                )
            return PositivityReport(holds=False, reasons=report.reasons + zero.reasons)
        return PositivityReport(holds=False, reasons=report.reasons)

    def archimedean_root_number(self, infchars: Sequence[LaurentPoly]) -> ArchimedeanRootNumber:
        """Product of eps(1/2, I_w) = i^(w+1) over the discrete-series summands.

        Each positive exponent x of a symplectic infinitesimal character gives
        a summand I_w with w = 2x odd.
        """
        value = 1
        factors = []
        for lam in infchars:
            if not lam.is_symmetric():
                raise InputValidationError(f"{lam} is not self-dual")
            for exponent, count in lam.items():
                if exponent <= 0:
                    continue
                w = exponent.doubled
                if w % 2 == 0:
                    raise InputValidationError(
                        f"exponent {exponent} does not come from a symplectic parameter"
                    )
                factor = (-1) ** ((w + 1) // 2)
                factors.extend([(w, factor)] * count)
                value *= factor**count
            if lam.coefficient(0):
                raise InputValidationError(f"{lam} has a zero exponent")
        return ArchimedeanRootNumber(value=value, factors=factors)


epsilon_service = EpsilonService()
