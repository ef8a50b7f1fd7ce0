"""Command-line entry point: `python -m app.cli <subcommand> [options]`.

Exit codes: 0 on success, 2 on invalid or out-of-scope input, 3 when an
oracle is inconclusive or an enumeration exceeds its budget.
"""

import argparse
import sys
from typing import Any, Dict, List, Optional, Tuple

from app.combinatorics.schemas import LaurentPoly
from app.config import logger
from app.epsilon.service import epsilon_service
from app.errors import InputValidationError, RootNumberError
from app.local_fields.schemas import Conductor
from app.local_fields.service import local_field_service
from app.oldforms.schemas import TraceCase
from app.oldforms.service import oldform_service
from app.prediction.service import canonical_json, prediction_service, validation_message
from app.shapes.schemas import GroupFactor, GroupFamily
from app.shapes.service import shape_service
from pydantic import ValidationError


def parse_conductor(raw: str) -> Conductor:
    """'v3=2,v5=3/2' -> Conductor."""
    exponents: Dict[str, str] = {}
    for item in filter(None, (part.strip() for part in raw.split(","))):
        place, sep, exp = item.partition("=")
        if not sep:
            raise InputValidationError(f"conductor entry {item!r} is not place=exp")
        exponents[place.strip()] = exp.strip()
    return Conductor.model_validate(exponents)


def parse_exponents(raw: str) -> LaurentPoly:
    return LaurentPoly.from_exponents(part.strip() for part in raw.split(",") if part.strip())


def run_coeffs(args: argparse.Namespace) -> Tuple[Any, str]:
    schedule = epsilon_service.coefficient_schedule(TraceCase(args.case), args.N, args.k)
    shifts = {str(i): a for i, a in sorted(schedule.coefficients.items())}
    text = "\n".join(f"a_{args.N}({args.k}, {i}) = {a}" for i, a in shifts.items())
    return {"shifts": shifts}, text


def run_oldforms(args: argparse.Namespace) -> Tuple[Any, str]:
    case = TraceCase(args.case)
    trace = oldform_service.closed_form_trace(case, args.N, args.k)
    payload = {
        "dimension": oldform_service.oldform_dimension(args.N, args.k),
        "trace": trace,
    }
    if args.brute_force:
        payload["fixed_points"] = oldform_service.involution_fixed_points(case, args.N, args.k)
    return payload, f"trace {trace}"


def run_epsilon(args: argparse.Namespace) -> Tuple[Any, str]:
    if args.scenario:
        s = prediction_service.load_scenario(args.scenario)
        main_term = epsilon_service.lambda_sign(
            s.case, s.N, s.conductor, s.places, s.omega_pattern
        )
        positivity = epsilon_service.c_positivity(
            s.case, s.N, s.conductor, s.places, s.omega_infty, s.central_conductors
        )
        payload = {
            "lambda": main_term.model_dump(mode="json"),
            "positivity": positivity.model_dump(mode="json"),
        }
        sign = "vanishes" if main_term.vanishes else f"sign {main_term.sign:+d}"
        return payload, f"main term {sign}; positivity {positivity.holds}"
    if args.N is None or args.conductor is None:
        raise InputValidationError("epsilon needs --scenario or both --N and --conductor")
    value = epsilon_service.selfdual_transfer_at_identity(args.N, parse_conductor(args.conductor))
    return {"transfer": value}, f"transfer at identity {value}"


def run_localfield(args: argparse.Namespace) -> Tuple[Any, str]:
    ring = local_field_service.ring_from_preset(args.preset, args.m)
    if args.op == "j":
        j = local_field_service.compute_j_invariant(ring)
        return str(j), str(j)
    if args.op == "different":
        d = local_field_service.different_exponent(ring)
        return {"different_exponent": d}, str(d)
    if args.op == "phi":
        report = local_field_service.verify_coboundary_lemma(ring, args.k)
        return report.model_dump(mode="json"), (
            f"image {report.image_size} / target {report.target_size}, "
            f"inclusion {report.inclusion}, equality {report.equality}"
        )
    result = local_field_service.matrix_witness_search(ring, args.N, tuple(args.y))
    return result.model_dump(mode="json"), (
        f"witness found: {result.found} (predicted {result.predicted})"
    )


def run_dims(args: argparse.Namespace) -> Tuple[Any, str]:
    group = GroupFactor(family=GroupFamily(args.family), size=args.size)
    lam = parse_exponents(args.exponents)
    dimension = shape_service.weyl_dim(group, lam)
    payload = {
        "group": str(group),
        "dimension": str(dimension),
        "m_norm": str(shape_service.m_norm(group, lam)) if group.rank else None,
        "positive_roots": shape_service.positive_root_count(group),
        "group_dimension": shape_service.group_dimension(group),
        "rank": group.rank,
    }
    return payload, f"dim {dimension} for {group}"


def run_predict(args: argparse.Namespace) -> Tuple[Any, str]:
    report = prediction_service.predict(prediction_service.load_scenario(args.scenario))
    return report.model_dump(mode="json"), prediction_service.render_text(report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootnumbers", description="Root-number equidistribution calculators"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    cases = [c.value for c in TraceCase]
    coeffs = sub.add_parser("coeffs", parents=[common], help="coefficients a_N(k, i)")
    coeffs.add_argument("--case", choices=cases, required=True)
    coeffs.add_argument("--N", type=int, required=True)
    coeffs.add_argument("--k", type=int, required=True)
    coeffs.set_defaults(handler=run_coeffs)

    oldforms = sub.add_parser(
        "oldforms", parents=[common], help="trace of the involution on oldforms"
    )
    oldforms.add_argument("--case", choices=cases, required=True)
    oldforms.add_argument("--N", type=int, required=True)
    oldforms.add_argument("--k", type=int, required=True)
    oldforms.add_argument("--brute-force", action="store_true")
    oldforms.set_defaults(handler=run_oldforms)

    epsilon = sub.add_parser("epsilon", parents=[common], help="transfers and main-term signs")
    epsilon.add_argument("--scenario")
    epsilon.add_argument("--N", type=int)
    epsilon.add_argument("--conductor", help="e.g. v3=2,v5=4")
    epsilon.set_defaults(handler=run_epsilon)

    localfield = sub.add_parser("localfield", parents=[common], help="residue-ring oracles")
    localfield.add_argument("--preset", required=True)
    localfield.add_argument("--op", choices=["j", "phi", "witness", "different"], default="j")
    localfield.add_argument("--m", type=int)
    localfield.add_argument("--k", type=int, default=1)
    localfield.add_argument("--N", type=int, default=3)
    localfield.add_argument("--y", type=int, nargs=2, default=[1, 0])
    localfield.set_defaults(handler=run_localfield)

    dims = sub.add_parser("dims", parents=[common], help="Weyl dimensions")
    dims.add_argument("--family", choices=[f.value for f in GroupFamily], required=True)
    dims.add_argument("--size", type=int, required=True)
    dims.add_argument("--exponents", required=True, help="e.g. 3/2,1/2,-1/2,-3/2")
    dims.set_defaults(handler=run_dims)

    predict = sub.add_parser(
        "predict", parents=[common], help="equidistribution prediction for a scenario"
    )
    predict.add_argument("--scenario", required=True)
    predict.set_defaults(handler=run_predict)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, text = args.handler(args)
    except ValidationError as e:
        print(f"error: {validation_message(e)}", file=sys.stderr)
        return 2
    except RootNumberError as e:
        logger.debug(f"{args.command} failed with exit code {e.exit_code}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    print(canonical_json(payload) if args.format == "json" else text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
