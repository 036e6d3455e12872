"""JSON manifests: one document fixes a variety, a bundle, a twist and points.

Rational entries may be JSON integers or strings such as "1/2" or "-3"; floats
are rejected so nothing inexact ever enters. Unknown keys are errors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from .errors import ValidationError
from .fan import DivisorClass, Fan, build_bott_tower, build_projective_space
from .klyachko import EquivariantBundle, builtin, from_characters, from_filtrations, twist_bundle
from .seshadri import Point, make_point
from .subspace import Filtration, Subspace

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$"},
    ]
}
_INT_VECTOR = {"type": "array", "items": {"type": "integer"}}
_RAT_VECTOR = {"type": "array", "items": _RATIONAL}
_MATRIX = {"type": "array", "items": _RAT_VECTOR}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["variety", "bundle"],
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "variety": {
            "type": "object",
            "additionalProperties": False,
            "minProperties": 1,
            "maxProperties": 1,
            "properties": {
                "projective_space": {"type": "integer", "minimum": 1},
                "bott_tower": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["n"],
                    "properties": {
                        "n": {"type": "integer", "minimum": 1},
                        "bott_numbers": {
                            "type": "object",
                            "patternProperties": {r"^\d+,\d+$": {"type": "integer"}},
                            "additionalProperties": False,
                        },
                    },
                },
            },
        },
        "bundle": {
            "type": "object",
            "additionalProperties": False,
            "minProperties": 1,
            "maxProperties": 1,
            "properties": {
                "builtin": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["name"],
                    "properties": {
                        "name": {
                            "enum": ["tangent", "line_bundle_sum", "hirz_indecomposable", "x3_indecomposable"]
                        },
                        "divisors": {"type": "array", "items": _INT_VECTOR, "minItems": 1},
                        "lines": {"type": "array", "items": _RAT_VECTOR},
                    },
                },
                "filtrations": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["rank", "rays"],
                    "properties": {
                        "rank": {"type": "integer", "minimum": 1, "maximum": 6},
                        # one object per ray, in ray order: level -> generator rows
                        "rays": {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "minProperties": 1,
                                "patternProperties": {r"^-?\d+$": _MATRIX},
                                "additionalProperties": False,
                            },
                        },
                    },
                },
                "characters": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["cone", "characters"],
                        "properties": {
                            "cone": {"type": "array", "items": {"type": "string"}},
                            "characters": {"type": "array", "items": _INT_VECTOR, "minItems": 1},
                        },
                    },
                },
            },
        },
        "twist": _INT_VECTOR,
        "points": {
            "type": "array",
            "items": {"oneOf": [{"type": "string"}, _RAT_VECTOR]},
        },
        "assertions": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"uniform_A1": {"type": "boolean"}},
        },
    },
}


class SchemaError(ValidationError):
    """The manifest does not match the schema; ``path`` points at the field."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


def validate(doc: Any) -> None:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(err.message, err.json_path)


def _rational(x) -> Fraction:
    return Fraction(x.replace(" ", "")) if isinstance(x, str) else Fraction(x)


@dataclass
class Manifest:
    raw: dict
    fan: Fan
    bundle: EquivariantBundle
    twist: DivisorClass | None = None
    points: list[Point] = field(default_factory=list)
    uniform_A1: bool = False

    @property
    def name(self) -> str:
        return self.raw.get("name", self.bundle.name)

    @property
    def twisted_bundle(self) -> EquivariantBundle:
        if self.twist is None or not any(self.twist):
            return self.bundle
        return twist_bundle(self.bundle, self.twist)

    @property
    def certified(self) -> bool:
        """Uniformity certificate: builtin uniform family or explicit assertion."""
        return self.uniform_A1 or self.bundle.uniform


def build_fan(section: dict) -> Fan:
    if "projective_space" in section:
        return build_projective_space(section["projective_space"])
    tower = section["bott_tower"]
    try:
        return build_bott_tower(tower["n"], tower.get("bott_numbers", {}))
    except ValidationError as exc:
        raise SchemaError(str(exc), "$.variety.bott_tower.bott_numbers") from None


def build_bundle(fan: Fan, section: dict) -> EquivariantBundle:
    if "builtin" in section:
        b = section["builtin"]
        name = b["name"]
        if name == "line_bundle_sum":
            if "divisors" not in b:
                raise SchemaError("line_bundle_sum needs 'divisors'", "$.bundle.builtin")
            return builtin(name, fan, [DivisorClass(d) for d in b["divisors"]])
        if "lines" in b:
            if name not in ("hirz_indecomposable", "x3_indecomposable"):
                raise SchemaError(f"{name} takes no 'lines'", "$.bundle.builtin.lines")
            lines = [[_rational(x) for x in row] for row in b["lines"]]
            return builtin(name, fan, lines)
        return builtin(name, fan)
    if "filtrations" in section:
        f = section["filtrations"]
        rank = f["rank"]
        if len(f["rays"]) != len(fan.rays):
            raise SchemaError(
                f"expected {len(fan.rays)} ray filtrations, got {len(f['rays'])}", "$.bundle.filtrations.rays"
            )
        filts = []
        for k, steps in enumerate(f["rays"]):
            try:
                filts.append(Filtration(rank, {
                    int(level): Subspace(rank, [[_rational(x) for x in row] for row in rows])
                    for level, rows in steps.items()
                }))
            except ValidationError as exc:
                raise SchemaError(str(exc), f"$.bundle.filtrations.rays[{k}]") from None
        return from_filtrations(fan, filts, name="filtrations")
    chars = {}
    for k, entry in enumerate(section["characters"]):
        try:
            rays = [fan.ray_labels.index(lab) for lab in entry["cone"]]
            ci = fan.cone_index(rays)
        except ValueError:
            raise SchemaError(f"{entry['cone']} is not a maximal cone", f"$.bundle.characters[{k}].cone") from None
        chars[ci] = entry["characters"]
    return from_characters(fan, chars, name="characters")


def from_dict(doc: dict, twist_override: list[int] | None = None,
              point_override: list[str] | None = None) -> Manifest:
    validate(doc)
    fan = build_fan(doc["variety"])
    bundle = build_bundle(fan, doc["bundle"])
    tw = twist_override if twist_override is not None else doc.get("twist")
    twist = None
    if tw is not None:
        if len(tw) != fan.picard_rank:
            raise SchemaError(f"twist needs {fan.picard_rank} coefficients", "$.twist")
        twist = DivisorClass(tw)
    raw_points = point_override if point_override is not None else doc.get("points", [])
    points = [make_point(fan, p) for p in raw_points]
    return Manifest(
        doc, fan, bundle, twist, points,
        uniform_A1=doc.get("assertions", {}).get("uniform_A1", False),
    )


def load(path: str | Path, **overrides) -> Manifest:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return from_dict(doc, **overrides)
