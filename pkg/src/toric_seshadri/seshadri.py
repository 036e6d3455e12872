"""Seshadri constants of nef equivariant bundles on P^n, X_2 and X_3.

The constants are never approximated by enumerating curves: they come from
closed forms in the minimal slopes mu_j = mu_min(E|_{l_j}) of the invariant
curves, gated by hypothesis checks that are reported condition by condition.

Points of X_n are rational tuples [z_1:w_1:...:z_n:w_n] in the quotient
presentation. The formulas only see which z_i vanish: the Gamma-level of x
is the smallest i with z_j = 0 for every j > i, and x lies on the curve
Gamma_n^{(i)} exactly when i >= level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import HypothesisError, PreconditionError, ValidationError
from .fan import Fan
from .klyachko import RestrictionProfile
from .positivity import is_nef

OPEN_QUESTION_P = (
    "without a certificate that every line (not only the invariant ones) has "
    "minimal slope at most the invariant minimum, only the lower bound is "
    "established; whether it is always attained is an open question"
)


# -- points -----------------------------------------------------------------


@dataclass(frozen=True)
class TowerPoint:
    """[z_1:w_1:...:z_n:w_n] on a Bott tower; no pair may vanish."""

    coords: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        for i, (z, w) in enumerate(self.coords, start=1):
            if z == 0 and w == 0:
                raise ValidationError(f"(z_{i}, w_{i}) = (0, 0) is not a point of the quotient")

    @property
    def n(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return "[" + ":".join(f"{z}:{w}" for z, w in self.coords) + "]"


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if all(c == 0 for c in self.coords):
            raise ValidationError("the zero vector is not a point of projective space")

    def __str__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"


Point = Union[TowerPoint, ProjectivePoint]


def make_point(fan: Fan, values: str | Iterable) -> Point:
    """Build a point from "z1:w1:..." (or a sequence) for the given fan."""
    if isinstance(values, str):
        parts = [p.strip() for p in values.strip().strip("[]").split(":")]
    else:
        parts = list(values)
    try:
        coords = [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad point coordinate: {exc}") from None
    if fan.is_bott:
        if len(coords) != 2 * fan.n:
            raise ValidationError(f"a point of X_{fan.n} needs {2 * fan.n} coordinates")
        return TowerPoint(tuple(zip(coords[0::2], coords[1::2])))
    if len(coords) != fan.n + 1:
        raise ValidationError(f"a point of P^{fan.n} needs {fan.n + 1} coordinates")
    return ProjectivePoint(tuple(coords))


def gamma_level(fan: Fan, x: TowerPoint) -> int:
    if not fan.is_bott:
        raise ValidationError("Gamma-levels are defined on Bott towers only")
    if not isinstance(x, TowerPoint) or x.n != fan.n:
        raise ValidationError(f"expected a point of X_{fan.n}")
    level = 1
    for i, (z, _) in enumerate(x.coords, start=1):
        if z != 0:
            level = max(level, i)
    return level


# -- values and reports -----------------------------------------------------


@dataclass(frozen=True)
class Exact:
    value: Fraction

    def as_dict(self) -> dict:
        return {"kind": "exact", "value": str(self.value)}


@dataclass(frozen=True)
class Interval:
    lower: Fraction
    upper: Fraction | None  # None: no upper bound established

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")

    def as_dict(self) -> dict:
        return {
            "kind": "interval",
            "lower": str(self.lower),
            "upper": None if self.upper is None else str(self.upper),
        }


Value = Union[Exact, Interval]


def _bounds(lo, hi) -> Value:
    lo, hi = Fraction(lo), Fraction(hi)
    return Exact(lo) if lo == hi else Interval(lo, hi)


@dataclass(frozen=True)
class Condition:
    name: str
    requirement: str
    values: dict[str, int]
    passed: bool
    # optional conditions are reported but do not gate the theorem
    required: bool = True

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "requirement": self.requirement,
            "values": dict(self.values),
            "passed": self.passed,
            "required": self.required,
        }


@dataclass(frozen=True)
class HypothesisReport:
    theorem: str
    conditions: tuple[Condition, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions if c.required)

    def failed(self) -> list[Condition]:
        return [c for c in self.conditions if c.required and not c.passed]

    def condition(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "passed": self.passed,
            "conditions": [c.as_dict() for c in self.conditions],
        }


@dataclass(frozen=True)
class SeshadriResult:
    value: Value
    report: HypothesisReport
    point: str
    level: int | None = None
    per_gamma_mu: dict[int, int] = field(default_factory=dict)
    mu_table: dict[str, int] = field(default_factory=dict)
    notes: tuple[str, ...] = ()
    cross_check: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return isinstance(self.value, Exact)

    def as_dict(self) -> dict:
        return {
            "point": self.point,
            "level": self.level,
            "value": self.value.as_dict(),
            "per_gamma_mu": {str(k): v for k, v in self.per_gamma_mu.items()},
            "mu_table": dict(self.mu_table),
            "hypotheses": self.report.as_dict(),
            "notes": list(self.notes),
            "cross_check": dict(self.cross_check),
        }


# -- hypotheses -------------------------------------------------------------


def _eq(name, labels, mu) -> Condition:
    vals = {lab: mu[lab] for lab in labels}
    return Condition(name, " = ".join(f"mu({l})" for l in labels), vals, len(set(vals.values())) == 1)


def _geq(name, left, right, coeff, mu, coeff_text="", required=True) -> Condition:
    vals = {left: mu[left], right: mu[right]}
    rhs = f"{coeff_text}*mu({right})" if coeff_text else f"mu({right})"
    return Condition(name, f"mu({left}) >= {rhs}", vals, mu[left] >= coeff * mu[right], required)


def _nef_condition(profile: RestrictionProfile) -> Condition:
    v = is_nef(profile)
    vals = {v.witness: v.degree} if not v.holds else {}
    return Condition("nef", "every degree on every invariant curve >= 0", vals, v.holds)


def _hyp_projective(profile: RestrictionProfile, certificate: bool) -> HypothesisReport:
    mu = profile.mu_table()
    conds = [
        _nef_condition(profile),
        Condition(
            "invariant_lines_equal",
            "mu_min equal on all invariant lines",
            mu,
            len(set(mu.values())) == 1,
        ),
        Condition(
            "all_lines_certificate",
            "every line l has mu_min(E|_l) <= min over invariant lines (certified)",
            {},
            bool(certificate),
        ),
    ]
    return HypothesisReport("P", tuple(conds))


def _hyp_hirzebruch(profile: RestrictionProfile) -> HypothesisReport:
    mu = profile.mu_table()
    conds = [
        _nef_condition(profile),
        _eq("key_H", ["D_1", "D'_1"], mu),
        _geq("exactness", "D_2", "D_1", 1, mu, required=False),
    ]
    return HypothesisReport("H", tuple(conds))


def _x3_slice_lower(mu) -> int:
    return min(mu["l_4"], mu["l_11"])


def _hyp_x3(profile: RestrictionProfile) -> HypothesisReport:
    fan = profile.fan
    mu = profile.mu_table()
    c12, c13, c23 = fan.c(1, 2), fan.c(1, 3), fan.c(2, 3)
    big = c13 + c12 * c23
    conds = [
        _nef_condition(profile),
        _eq("equal_fiber_slopes", ["l_1", "l_3", "l_6", "l_10"], mu),
        _eq("equal_middle_slopes", ["l_2", "l_8"], mu),
        _geq("l7_over_l5", "l_7", "l_5", 1, mu),
        _geq("l9_over_l5", "l_9", "l_5", 1, mu),
        _geq("l12_over_l5", "l_12", "l_5", 1, mu),
        _geq("l4_over_l8", "l_4", "l_8", c23, mu, f"{c23}"),
        _geq("l11_over_l8", "l_11", "l_8", c23, mu, f"{c23}"),
        _geq("l9_over_l8", "l_9", "l_8", c12, mu, f"{c12}"),
        _geq("l12_over_l8", "l_12", "l_8", c12, mu, f"{c12}"),
        _geq("l7_over_l10", "l_7", "l_10", c13, mu, f"{c13}"),
        _geq("l12_over_l10", "l_12", "l_10", big, mu, f"{big}"),
        Condition(
            "slice_exactness",
            "min(mu(l_4), mu(l_11)) >= mu(l_10)",
            {"l_4": mu["l_4"], "l_11": mu["l_11"], "l_10": mu["l_10"]},
            _x3_slice_lower(mu) >= mu["l_10"],
            required=False,
        ),
    ]
    return HypothesisReport("X3", tuple(conds))


def theorem_for(fan: Fan) -> str:
    if not fan.is_bott:
        return "P"
    if fan.n == 2:
        return "H"
    if fan.n == 3:
        return "X3"
    raise PreconditionError(f"no Seshadri formula is available on X_{fan.n}")


def check_hypotheses(profile: RestrictionProfile, theorem: str | None = None,
                     certificate: bool = False) -> HypothesisReport:
    """Condition-by-condition report; never raises on failing conditions."""
    fan = profile.fan
    expected = theorem_for(fan)
    theorem = theorem or expected
    if theorem != expected:
        raise ValidationError(f"theorem {theorem} does not apply to this fan (expected {expected})")
    if theorem == "P":
        return _hyp_projective(profile, certificate)
    if theorem == "H":
        return _hyp_hirzebruch(profile)
    return _hyp_x3(profile)


GAMMA_CURVES = {
    "H": {1: "D'_2", 2: "D_1"},
    "X3": {1: "l_5", 2: "l_8", 3: "l_10"},
}


def gamma_mu(profile: RestrictionProfile, level: int, report: HypothesisReport | None = None) -> int:
    """mu_min of E restricted to Gamma_n^{(level)}; needs the theorem's hypotheses."""
    theorem = theorem_for(profile.fan)
    if theorem not in GAMMA_CURVES:
        raise PreconditionError("Gamma curves exist on Bott towers only")
    report = report or check_hypotheses(profile)
    if not report.passed:
        names = ", ".join(c.name for c in report.failed())
        raise PreconditionError(f"hypotheses fail ({names}); mu on Gamma curves is not determined")
    try:
        return profile.mu(GAMMA_CURVES[theorem][level])
    except KeyError:
        raise ValidationError(f"no Gamma curve of level {level}") from None


# -- the constants ----------------------------------------------------------


def _require_nef(profile: RestrictionProfile) -> None:
    v = is_nef(profile)
    if not v.holds:
        raise PreconditionError(
            f"the bundle is not nef (degree {v.degree} on {v.witness}); "
            "Seshadri constants are only computed for nef bundles"
        )


def _hypothesis_failure(report: HypothesisReport, point: str, strict: bool, mu) -> SeshadriResult:
    if strict:
        names = ", ".join(c.name for c in report.failed())
        raise HypothesisError(f"hypotheses of {report.theorem} fail: {names}", report=report)
    return SeshadriResult(
        Interval(Fraction(0), None), report, point, mu_table=mu,
        notes=("hypotheses fail; only the trivial bound for nef bundles is available",),
    )


def seshadri_projective(profile: RestrictionProfile, certificate: bool = False,
                        x: ProjectivePoint | None = None) -> SeshadriResult:
    """Exact minimum slope when certified, otherwise the always-valid lower bound.

    The answer never depends on x.
    """
    fan = profile.fan
    if fan.is_bott or fan.n < 2:
        raise PreconditionError("seshadri_projective needs P^n with n >= 2")
    _require_nef(profile)
    report = _hyp_projective(profile, certificate)
    mu = profile.mu_table()
    low = Fraction(min(mu.values()))
    point = str(x) if x is not None else "any"
    if report.passed:
        return SeshadriResult(Exact(low), report, point, mu_table=mu)
    return SeshadriResult(Interval(low, None), report, point, mu_table=mu, notes=(OPEN_QUESTION_P,))


def _hirzebruch_bounds(mu1: int, mu2: int, mu2p: int, level: int) -> Value:
    if level == 1:
        return _bounds(min(mu1, mu2, mu2p), min(mu1, mu2p))
    return _bounds(min(mu1, mu2), mu1)


def seshadri_hirzebruch(profile: RestrictionProfile, x: TowerPoint, strict: bool = True) -> SeshadriResult:
    fan = profile.fan
    if theorem_for(fan) != "H":
        raise PreconditionError("seshadri_hirzebruch needs a Hirzebruch surface X_2")
    _require_nef(profile)
    level = gamma_level(fan, x)
    report = _hyp_hirzebruch(profile)
    mu = profile.mu_table()
    if not report.passed:
        return _hypothesis_failure(report, str(x), strict, mu)
    value = _hirzebruch_bounds(mu["D_1"], mu["D_2"], mu["D'_2"], level)
    notes = ()
    if isinstance(value, Interval):
        notes = ("mu(D_2) < mu(D_1): only the two-sided bound is established",)
    return SeshadriResult(
        value, report, str(x), level,
        per_gamma_mu={1: mu["D'_2"], 2: mu["D_1"]}, mu_table=mu, notes=notes,
    )


def _interval_min(k: int, v: Value) -> Value:
    if isinstance(v, Exact):
        return Exact(min(Fraction(k), v.value))
    return _bounds(min(k, v.lower), min(k, v.upper))


def seshadri_x3(profile: RestrictionProfile, x: TowerPoint, strict: bool = True) -> SeshadriResult:
    """Closed form: min of mu on the Gamma curves through x.

    The recursive form (the Gamma_3 slope against the Hirzebruch slice through
    x) is evaluated alongside. Its upper end must equal the closed form; when
    the slice's own bounds do not meet, the result is reported as an interval.
    """
    fan = profile.fan
    if theorem_for(fan) != "X3":
        raise PreconditionError("seshadri_x3 needs a Bott tower X_3")
    _require_nef(profile)
    level = gamma_level(fan, x)
    report = _hyp_x3(profile)
    mu = profile.mu_table()
    if not report.passed:
        return _hypothesis_failure(report, str(x), strict, mu)
    per = {i: profile.mu(lab) for i, lab in GAMMA_CURVES["X3"].items()}
    closed = min(per[i] for i in range(level, 4))

    # the slice through x is a Hirzebruch surface with Bott number c_{2,3};
    # its fibers restrict like l_10 (= l_6), its section Gamma like l_8, and
    # its other section deforms l_4 / l_11
    slice_level = 1 if level <= 2 else 2
    recursive = _hirzebruch_bounds(mu["l_10"], _x3_slice_lower(mu), mu["l_8"], slice_level)
    if level == 1:
        recursive = _interval_min(per[1], recursive)
    upper = recursive.value if isinstance(recursive, Exact) else recursive.upper
    if upper != closed:
        raise AssertionError(f"closed form {closed} disagrees with recursive bound {upper}")

    notes = ()
    value: Value = Exact(Fraction(closed))
    if isinstance(recursive, Interval):
        value = recursive
        notes = ("the Hirzebruch slice only yields bounds here; the closed form is the upper end",)
    return SeshadriResult(
        value, report, str(x), level, per_gamma_mu=per, mu_table=mu, notes=notes,
        cross_check={"closed_form": str(closed), "recursive": recursive.as_dict()},
    )


def seshadri(profile: RestrictionProfile, x: Point | None = None, certificate: bool = False,
             strict: bool = True) -> SeshadriResult:
    """Dispatch on the fan: P^n, X_2 or X_3."""
    theorem = theorem_for(profile.fan)
    if theorem == "P":
        return seshadri_projective(profile, certificate, x)
    if x is None:
        raise ValidationError("a point is required on a Bott tower")
    if theorem == "H":
        return seshadri_hirzebruch(profile, x, strict)
    return seshadri_x3(profile, x, strict)

