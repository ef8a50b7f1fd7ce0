import json
from pathlib import Path
from typing import Any, List, Union

from app.config import logger
from app.epsilon.schemas import Duality
from app.epsilon.service import epsilon_service
from app.errors import InputValidationError, OutOfScopeError
from app.prediction.schemas import (
    BiasFactor,
    Condition,
    Equidistribution,
    PredictionReport,
    Scenario,
)
from pydantic import ValidationError

NOTES = [
    "holds for every full weighting of the family",
    "tau'(G) and the error exponents stay symbolic",
]


class PredictionService:
    """Decides equidistribution versus bias of root numbers for a scenario."""

    def load_scenario(self, path: Union[str, Path]) -> Scenario:
        """Read a scenario file; pydantic errors propagate unchanged."""
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise InputValidationError(f"cannot read scenario {path}: {e}") from e
        return Scenario.model_validate(raw)

    def predict(self, s: Scenario) -> PredictionReport:
        if s.N % 2:
            raise OutOfScopeError(
                f"N = {s.N} is odd: the method gives no information about root numbers here"
            )
        logger.info(f"Predicting {s.case.value} N={s.N} conductor {s.conductor}")
        if s.case == Duality.SELF_DUAL:
            return self._predict_selfdual(s)
        return self._predict_conjugate(s)

    def _predict_selfdual(self, s: Scenario) -> PredictionReport:
        positivity = epsilon_service.c_positivity(
            s.case, s.N, s.conductor, s.places, s.omega_infty, s.central_conductors
        )
        conditions: List[Condition] = []
        for place_id, k in s.conductor.items():
            if not k.is_integral:
                raise InputValidationError(f"self-dual conductor exponent at {place_id} is {k}")
            if k.to_int() % 2:
                conditions.append(
                    Condition(tag="selfdual.odd_exponent", clause=f"v(n) = {k} is odd at {place_id}")
                )
            elif k > s.N:
                conditions.append(
                    Condition(
                        tag="selfdual.large_exponent",
                        clause=f"v(n) = {k} exceeds N = {s.N} at {place_id}",
                    )
                )

        fields = {"case": s.case, "N": s.N, "conductor": s.conductor, "c_positivity": positivity}
        if conditions:
            return PredictionReport(
                **fields,
                equidistributes=Equidistribution.YES,
                conditions=conditions,
                notes=list(NOTES),
            )

        main_term = epsilon_service.lambda_sign(s.case, s.N, s.conductor, s.places)
        factors = [
            BiasFactor(source=place_id, sign=(-1) ** (k.to_int() // 2))
            for place_id, k in s.conductor.items()
        ]
        notes = list(NOTES)
        if s.infchar is not None:
            archimedean = epsilon_service.archimedean_root_number(s.infchar.components)
            factors.append(
                BiasFactor(source="infinity", sign=archimedean.value, convention_dependent=True)
            )
            notes.append(f"archimedean factor uses {archimedean.convention}")
        notes.append("bias_sign is relative to eps_infinity")
        return PredictionReport(
            **fields,
            equidistributes=Equidistribution.NO,
            bias_sign=main_term.sign,
            bias_factors=factors,
            conditions=[
                Condition(
                    tag="selfdual.bias",
                    clause="every v(n) is even and at most N: " + "; ".join(main_term.reasons),
                )
            ],
            notes=notes,
        )

    def _predict_conjugate(self, s: Scenario) -> PredictionReport:
        positivity = epsilon_service.c_positivity(
            s.case, s.N, s.conductor, s.places, s.omega_infty, s.central_conductors
        )
        fields = {"case": s.case, "N": s.N, "conductor": s.conductor, "c_positivity": positivity}
        if not positivity.holds:
            logger.warning(f"Positivity hypotheses fail for conductor {s.conductor}")
            return PredictionReport(
                **fields,
                equidistributes=Equidistribution.BLOCKED,
                conditions=[
                    Condition(
                        tag="conjugate.positivity",
                        clause="conductor is neither valid nor 0-valid with trivial omega_infty",
                    )
                ],
                notes=list(NOTES),
            )

        by_id = {v.id: v for v in s.places}
        conditions: List[Condition] = []
        for place_id, k in s.conductor.items():
            if not by_id[place_id].splitting.is_ramified:
                continue
            if not k.is_integral:
                conditions.append(
                    Condition(
                        tag="conjugate.half_integral",
                        clause=f"k_v = {k} is half-integral at ramified {place_id}",
                    )
                )
            elif k > s.N // 2:
                conditions.append(
                    Condition(
                        tag="conjugate.large_exponent",
                        clause=f"k_v = {k} exceeds N/2 = {s.N // 2} at ramified {place_id}",
                    )
                )

        main_term = epsilon_service.lambda_sign(
            s.case, s.N, s.conductor, s.places, s.omega_pattern
        )
        if main_term.vanishes:
            if not conditions:
                conditions.append(
                    Condition(tag="conjugate.omega_vanishing", clause="; ".join(main_term.reasons))
                )
            return PredictionReport(
                **fields,
                equidistributes=Equidistribution.YES,
                conditions=conditions,
                notes=list(NOTES),
            )

        factors = [
            BiasFactor(source=place_id, sign=(-1) ** k.to_int())
            for place_id, k in s.conductor.items()
        ]
        clauses = [Condition(tag="conjugate.bias", clause="; ".join(main_term.reasons))]
        clauses += [
            Condition(tag="conjugate.omega_constraint", clause=constraint)
            for constraint in main_term.omega_constraints
        ]
        return PredictionReport(
            **fields,
            equidistributes=(
                Equidistribution.CONJECTURAL_NO
                if main_term.conjectural
                else Equidistribution.NO
            ),
            bias_sign=main_term.sign,
            bias_factors=factors,
            conditions=clauses,
            notes=list(NOTES),
        )

    def render_json(self, report: PredictionReport) -> str:
        return canonical_json(report.model_dump(mode="json"))

    def render_text(self, report: PredictionReport) -> str:
        lines = [
            f"case: {report.case.value}",
            f"N: {report.N}",
            f"conductor: {report.conductor}",
            f"equidistributes: {report.equidistributes.value}",
        ]
        if report.bias_sign is not None:
            lines.append(f"bias sign: {report.bias_sign:+d}")
            for factor in report.bias_factors:
                flag = " (convention-dependent)" if factor.convention_dependent else ""
                lines.append(f"  {factor.source}: {factor.sign:+d}{flag}")
        lines.append(f"positivity: {'holds' if report.c_positivity.holds else 'fails'}")
        lines.extend(f"  - {reason}" for reason in report.c_positivity.reasons)
        lines.append("conditions:")
        lines.extend(f"  [{c.tag}] {c.clause}" for c in report.conditions)
        lines.extend(f"note: {note}" for note in report.notes)
        return "\n".join(lines)


def canonical_json(payload: Any) -> str:
    """Sorted keys and compact separators: equal payloads give equal bytes."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def validation_message(err: ValidationError) -> str:
    first = err.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "input"
    return f"{location}: {first['msg']}"


prediction_service = PredictionService()
