"""Command line entry point: ``toric-seshadri <command> --manifest FILE``.

Exit codes: 0 success (intervals included), 2 manifest/validation errors,
3 bundle-data errors (incompatible filtrations, inconsistent or ambiguous
characters), 4 theorem hypotheses or preconditions failing.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import oracle
from .errors import (
    AmbiguousPairingError,
    CompatibilityError,
    DegenerateInputError,
    DimensionError,
    HypothesisError,
    InconsistentDataError,
    PairingError,
    PreconditionError,
    ValidationError,
)
from .klyachko import restriction_profile
from .manifest import Manifest, SchemaError, load
from .positivity import is_ample, is_nef, mori_generators
from .report import (
    check_doc,
    fan_doc,
    mori_doc,
    nef_doc,
    render_text,
    restrict_doc,
    seshadri_doc,
    to_json,
)
from .seshadri import check_hypotheses, seshadri

EXIT_OK, EXIT_SCHEMA, EXIT_DATA, EXIT_HYPOTHESIS = 0, 2, 3, 4


def _parse_twist(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise SchemaError(f"bad twist {text!r}; expected integers like '2,1'", "--twist") from None


def _oracle_doc(m: Manifest) -> dict:
    bundle = m.twisted_bundle
    fan = m.fan
    rows = []
    for C in fan.walls:
        row = {"curve": C.label, "deg": oracle.oracle_splitting_deg(C, bundle)}
        if bundle.filtrations is not None:
            row["counting"] = list(oracle.oracle_restriction_counting(bundle, C).degrees)
            if bundle.rank <= oracle.OracleConfig().rank_bound:
                row["combined"] = sorted(list(s.degrees) for s in oracle.oracle_restrictions_combined(bundle, C))
        rows.append(row)
    doc = {"curves": rows}
    if fan.is_bott and fan.n <= 3:
        doc["intersections"] = oracle.oracle_intersections(fan)
    return doc


def run(args: argparse.Namespace) -> tuple[dict, int]:
    overrides = {}
    if args.twist is not None:
        overrides["twist_override"] = _parse_twist(args.twist)
    if args.point:
        overrides["point_override"] = args.point
    m = load(args.manifest, **overrides)
    if args.command == "fan":
        return fan_doc(m.fan), EXIT_OK

    bundle = m.twisted_bundle
    profile = restriction_profile(bundle)
    if args.command == "restrict":
        doc = restrict_doc(bundle, profile, m.twist)
    elif args.command == "nef":
        doc = nef_doc(bundle, profile, is_nef(profile), is_ample(profile), m.twist)
    elif args.command == "mori":
        doc = mori_doc(bundle, mori_generators(profile), m.twist)
    elif args.command == "check":
        report = check_hypotheses(profile, certificate=m.certified)
        doc = check_doc(bundle, report, m.twist)
        if args.strict and not report.passed:
            return doc, EXIT_HYPOTHESIS
    else:
        points = m.points or ([None] if not m.fan.is_bott else [])
        if not points:
            raise SchemaError("no points given (use --point or the manifest's 'points')", "$.points")
        results = [seshadri(profile, x, certificate=m.certified, strict=args.strict) for x in points]
        doc = seshadri_doc(bundle, results, m.twist)
    if args.oracle:
        doc["oracle"] = _oracle_doc(m)
    return doc, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toric-seshadri",
        description="Restrictions, positivity and Seshadri constants of equivariant bundles on "
                    "projective spaces and Bott towers.",
    )
    parser.add_argument("command", choices=["fan", "restrict", "nef", "mori", "check", "seshadri"])
    parser.add_argument("--manifest", required=True, help="JSON manifest describing variety and bundle")
    parser.add_argument("--point", action="append",
                        help='point as "z1:w1:z2:w2:..." (repeatable; overrides the manifest)')
    parser.add_argument("--twist", help='divisor coefficients "a1,a2,..." (overrides the manifest)')
    out = parser.add_mutually_exclusive_group()
    out.add_argument("--json", dest="format", action="store_const", const="json")
    out.add_argument("--table", dest="format", action="store_const", const="table")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true", default=True,
                      help="failing hypotheses are an error (exit 4); the default")
    mode.add_argument("--bounds-ok", dest="strict", action="store_false",
                      help="failing hypotheses yield a bounds-only report")
    parser.add_argument("--oracle", action="store_true", help="append brute-force cross-checks (dev)")
    parser.set_defaults(format="table")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = run(args)
    except (SchemaError, ValidationError, DimensionError, DegenerateInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except AmbiguousPairingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (CompatibilityError, InconsistentDataError, PairingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except HypothesisError as exc:
        if exc.report is not None:
            print(to_json({"command": args.command, "hypotheses": exc.report.as_dict()}), end="")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    sys.stdout.write(to_json(doc) if args.format == "json" else render_text(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
