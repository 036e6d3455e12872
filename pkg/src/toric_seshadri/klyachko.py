"""Equivariant vector bundles given by Klyachko filtrations.

A rank-r bundle is a vector space E = Q^r with one decreasing filtration per
ray. On a maximal cone the filtrations of its rays must split simultaneously
into lines; a line L with jump vector (j_rho) carries the character u solving
<u, v_rho> = j_rho.

Restriction to the invariant curve of a wall tau goes through the associated
graded of the tau-rays' filtrations: for every multi-index chi the piece
gr_chi inherits two filtrations, one from each opposite ray, and any adapted
decomposition of that pair gives the summands O(a) with u - u' = a * m_tau.
This never needs a decomposition adapted to every ray of both cones at once
(such a decomposition need not exist, e.g. three distinct lines on the rays
v_1, v_2, v_3 of a Hirzebruch surface).
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import exact_lattice as lat
from .errors import (
    AmbiguousPairingError,
    CompatibilityError,
    DimensionError,
    InconsistentDataError,
    ValidationError,
)
from .exact_lattice import LatticeVec
from .fan import DivisorClass, Fan, InvariantCurve, divisor_ray_coefficients, intersection_number
from .subspace import Filtration, Subspace, Vector, as_vector, express, span

MAX_RANK = 6


# -- adapted decompositions -------------------------------------------------


@dataclass(frozen=True)
class AdaptedLine:
    vector: Vector
    jumps: tuple[int, ...]

    @property
    def line(self) -> Subspace:
        return span(self.vector)


def _next_level(filt: Filtration, level: int) -> int:
    return level + 1


def _multigraded(family: Sequence[Filtration]):
    """Yield (index, E(index), S(index)) for every multi-index with E(index) != 0.

    E(i) = intersection of F_k(i_k); S(i) = sum of E(i + e_k). Indices run over
    products of jump levels, deepest total first, ties lexicographic.
    """
    rank = family[0].rank
    level_sets = [f.jumps for f in family]
    results = []

    def rec(k: int, prefix: tuple[int, ...], current: Subspace):
        if current.is_zero():
            return
        if k == len(family):
            results.append((prefix, current))
            return
        for lvl in level_sets[k]:
            rec(k + 1, prefix + (lvl,), current & family[k](lvl))

    rec(0, (), Subspace.full(rank))
    results.sort(key=lambda item: (-sum(item[0]), tuple(-x for x in item[0])))
    for index, E in results:
        S = Subspace.zero(rank)
        for k, f in enumerate(family):
            bumped = E & f(index[k] + 1)
            if not bumped.is_zero():
                S = S + bumped
        yield index, E, S


def _mix(vectors: list[Vector], shift_basis: Sequence[Vector], rng: random.Random) -> list[Vector]:
    """Unitriangular recombination plus a random shift from ``shift_basis``."""
    out = []
    for j, w in enumerate(vectors):
        v = list(w)
        for later in vectors[j + 1:]:
            c = rng.randint(-2, 2)
            v = [x + c * y for x, y in zip(v, later)]
        for s in shift_basis:
            c = rng.randint(-2, 2)
            v = [x + c * y for x, y in zip(v, s)]
        out.append(tuple(Fraction(x) for x in v))
    return out


def _check_family(family: Sequence[Filtration]) -> int:
    if not family:
        raise ValidationError("adapted_decomposition needs at least one filtration")
    rank = family[0].rank
    if any(f.rank != rank for f in family):
        raise DimensionError("filtrations of different ranks")
    if rank > MAX_RANK:
        raise ValidationError(f"rank {rank} exceeds the supported bound {MAX_RANK}")
    return rank


def is_adapted(family: Sequence[Filtration], lines: Sequence[AdaptedLine]) -> bool:
    """Every filtration step equals the span of the lines it contains, and the lines form a basis."""
    rank = family[0].rank
    if len(lines) != rank or Subspace(rank, [l.vector for l in lines]).dim != rank:
        return False
    for k, f in enumerate(family):
        for lvl, step in f.items():
            inside = [l.vector for l in lines if step.contains_vector(l.vector)]
            if Subspace(rank, inside) != step:
                return False
        for l in lines:
            if f.jump_of(l.vector) != l.jumps[k]:
                return False
    return True


def find_adapted_decomposition(
    family: Sequence[Filtration], seed: int | None = None
) -> list[AdaptedLine] | None:
    """Lines adapted to every filtration of ``family``, or None when none exist.

    Visits multi-indices from the deepest down and, at each, takes lines in
    E(i) that are independent modulo the strictly deeper part S(i). If any
    adapted basis exists, the lines so chosen form one (the choice of lifts
    never has to be revisited), so failure here is a proof of incompatibility.
    ``seed`` randomizes the choice of lifts; the jump multiset does not depend
    on it.
    """
    rank = _check_family(family)
    rng = random.Random(seed) if seed is not None else None
    lines: list[AdaptedLine] = []
    for index, E, S in _multigraded(family):
        lifts = S.complement_in(E)
        if rng is not None and lifts:
            lifts = _mix(lifts, S.basis, rng)
        lines.extend(AdaptedLine(v, index) for v in lifts)
        if len(lines) > rank:
            return None
    if len(lines) != rank or not is_adapted(family, lines):
        return None
    return lines


def adapted_decomposition(family: Sequence[Filtration], seed: int | None = None) -> list[AdaptedLine]:
    lines = find_adapted_decomposition(family, seed)
    if lines is None:
        raise CompatibilityError("the filtrations admit no common adapted decomposition")
    return lines


# -- splitting data ----------------------------------------------------------


@dataclass(frozen=True)
class SplittingType:
    """Degrees (a_1..a_r) of a split bundle on P^1, sorted ascending."""

    degrees: tuple[int, ...]

    def __init__(self, degrees: Iterable[int]):
        object.__setattr__(self, "degrees", tuple(sorted(int(d) for d in degrees)))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def deg(self) -> int:
        return sum(self.degrees)

    @property
    def mu_min(self) -> int:
        return self.degrees[0]

    @property
    def m(self) -> int:
        """deg - mu_min."""
        return self.deg - self.mu_min

    def shifted(self, k: int) -> SplittingType:
        return SplittingType(d + k for d in self.degrees)

    def __str__(self) -> str:
        return " + ".join(f"O({d})" for d in self.degrees)


@dataclass(frozen=True)
class RestrictionProfile:
    """Splitting type of the bundle on every invariant curve, keyed by curve label."""

    fan: Fan
    splittings: Mapping[str, SplittingType]
    # reference splitting table shipped with a builtin bundle, when there is one
    reference: Mapping[str, SplittingType] = field(default_factory=dict)

    def __post_init__(self):
        missing = set(self.fan.curve_labels) - set(self.splittings)
        if missing:
            raise ValidationError(f"profile is missing curves {sorted(missing)}")

    def __getitem__(self, label: str) -> SplittingType:
        return self.splittings[label]

    @property
    def labels(self) -> list[str]:
        return self.fan.curve_labels

    def mu(self, label: str) -> int:
        return self.splittings[label].mu_min

    def deg(self, label: str) -> int:
        return self.splittings[label].deg

    def m(self, label: str) -> int:
        return self.splittings[label].m

    def mu_table(self) -> dict[str, int]:
        return {lab: self.mu(lab) for lab in self.labels}

    def discrepancies(self) -> dict[str, tuple[SplittingType, SplittingType]]:
        """Curves where the computed splitting differs from the reference table."""
        return {
            lab: (self.splittings[lab], ref)
            for lab, ref in self.reference.items()
            if ref != self.splittings[lab]
        }


# -- bundles ------------------------------------------------------------------


class EquivariantBundle:
    """Torus-equivariant bundle on a smooth complete toric variety.

    Built either from Klyachko filtrations (one per ray) or from character
    multisets (one per maximal cone). Validated at construction and immutable
    afterwards; characters and the restriction profile are cached lazily.
    """

    def __init__(
        self,
        fan: Fan,
        rank: int,
        filtrations: Sequence[Filtration] | None = None,
        characters: Mapping[int, Sequence[Sequence[int]]] | None = None,
        name: str = "custom",
        uniform: bool = False,
        reference: Mapping[str, Sequence[int]] | None = None,
    ):
        if (filtrations is None) == (characters is None):
            raise ValidationError("give exactly one of filtrations or characters")
        self.fan = fan
        self.rank = rank
        self.name = name
        self.uniform = uniform
        self.reference = {k: SplittingType(v) for k, v in (reference or {}).items()}
        self.filtrations: tuple[Filtration, ...] | None = None
        self._characters: dict[int, tuple[LatticeVec, ...]] = {}
        self._profile: RestrictionProfile | None = None
        self._pairs: dict[str, list[tuple[LatticeVec, LatticeVec, int]]] = {}

        if rank < 1 or rank > MAX_RANK:
            raise ValidationError(f"rank must lie in 1..{MAX_RANK}")
        if filtrations is not None:
            filtrations = tuple(filtrations)
            if len(filtrations) != len(fan.rays):
                raise ValidationError(f"expected {len(fan.rays)} filtrations, got {len(filtrations)}")
            if any(f.rank != rank for f in filtrations):
                raise DimensionError("filtration rank differs from bundle rank")
            self.filtrations = filtrations
            for ci, cone in enumerate(fan.max_cones):
                lines = find_adapted_decomposition([filtrations[r] for r in cone])
                if lines is None:
                    labels = ",".join(fan.ray_labels[r] for r in cone)
                    raise CompatibilityError(
                        f"filtrations are incompatible on the cone ({labels})", cone=cone
                    )
                self._characters[ci] = _characters_from_lines(fan, cone, lines)
        else:
            for ci in range(len(fan.max_cones)):
                if ci not in characters:
                    raise ValidationError(f"no characters given for cone {fan.max_cones[ci]}")
            for ci, chars in characters.items():
                chars = tuple(sorted(lat.vec(u) for u in chars))
                if len(chars) != rank or any(len(u) != fan.n for u in chars):
                    raise ValidationError(f"cone {ci} needs {rank} characters of length {fan.n}")
                self._characters[ci] = chars
            for C in fan.walls:
                _pair_by_residue(self, C, check_only=True)

    @property
    def mode(self) -> str:
        return "filtrations" if self.filtrations is not None else "characters"

    def __repr__(self) -> str:
        return f"EquivariantBundle({self.name!r}, rank={self.rank}, {self.fan.family} n={self.fan.n})"


def _characters_from_lines(fan: Fan, cone: Sequence[int], lines: Sequence[AdaptedLine]):
    rays = [fan.rays[r] for r in cone]
    return tuple(sorted(lat.solve_integral(rays, l.jumps) for l in lines))


def from_filtrations(fan: Fan, filtrations: Sequence[Filtration], **kwargs) -> EquivariantBundle:
    if not filtrations:
        raise ValidationError("no filtrations given")
    return EquivariantBundle(fan, filtrations[0].rank, filtrations=filtrations, **kwargs)


def from_characters(fan: Fan, characters: Mapping[int, Sequence[Sequence[int]]], **kwargs) -> EquivariantBundle:
    ranks = {len(v) for v in characters.values()}
    if len(ranks) != 1:
        raise ValidationError("every cone needs the same number of characters")
    return EquivariantBundle(fan, ranks.pop(), characters=characters, **kwargs)


def associated_characters(bundle: EquivariantBundle, cone: int | Sequence[int]) -> tuple[LatticeVec, ...]:
    """Sorted multiset u(sigma) for a maximal cone (index or ray tuple)."""
    if not isinstance(cone, int):
        cone = bundle.fan.cone_index(cone)
    return bundle._characters[cone]


def _residue_key(fan: Fan, C: InvariantCurve, u: LatticeVec) -> tuple[int, ...]:
    return tuple(lat.pairing(u, fan.rays[k]) for k in C.wall_rays)


def _pair_by_residue(bundle: EquivariantBundle, C: InvariantCurve, check_only: bool = False):
    fan = bundle.fan
    s, s2 = C.adjacent_cones
    left, right = bundle._characters[s], bundle._characters[s2]
    groups: dict[tuple, tuple[list, list]] = {}
    for u in left:
        groups.setdefault(_residue_key(fan, C, u), ([], []))[0].append(u)
    for u in right:
        groups.setdefault(_residue_key(fan, C, u), ([], []))[1].append(u)
    pairs = []
    for key, (A, B) in sorted(groups.items()):
        if len(A) != len(B):
            raise InconsistentDataError(
                f"wall {C.label}: residue class {key} has {len(A)} characters on one side "
                f"and {len(B)} on the other"
            )
        if check_only:
            continue
        if len(set(A)) > 1 and len(set(B)) > 1:
            raise AmbiguousPairingError(
                f"AMBIGUOUS_PAIRING on wall {C.label}: characters {A} and {B} share a residue "
                "class, so the splitting is not determined by characters; supply filtrations",
                wall=C.label,
                characters=(tuple(A), tuple(B)),
            )
        for u, u2 in zip(sorted(A), sorted(B)):
            pairs.append((u, u2, lat.divide_along(lat.sub(u, u2), C.m_tau)))
    return pairs


def _graded_pieces(family: Sequence[Filtration]):
    """(chi, E(chi), S(chi), lifts) for the multigraded pieces of ``family``."""
    for index, E, S in _multigraded(family):
        lifts = S.complement_in(E)
        if lifts:
            yield index, E, S, lifts


def _quotient_filtration(F: Filtration, E: Subspace, S: Subspace, lifts: list[Vector]) -> Filtration:
    """Filtration induced by F on E / S, in coordinates of the lifts."""
    basis = list(S.basis) + lifts
    k = len(lifts)
    steps = {}
    for lvl, step in F.items():
        inter = E & step
        coords = []
        for v in inter.basis:
            c = express(basis, v)
            coords.append(c[len(S.basis):])
        steps[lvl] = Subspace(k, coords)
    # below the lowest stored level F is everything, hence so is the image
    lowest = min(steps)
    steps[lowest] = Subspace.full(k)
    return Filtration(k, steps)


def _restrict_filtration_mode(bundle: EquivariantBundle, C: InvariantCurve):
    fan = bundle.fan
    filts = bundle.filtrations
    a, b = C.opposite_rays
    tau = list(C.wall_rays)
    sigma_rays = [fan.rays[k] for k in tau] + [fan.rays[a]]
    sigma2_rays = [fan.rays[k] for k in tau] + [fan.rays[b]]
    rank = bundle.rank
    if tau:
        pieces = list(_graded_pieces([filts[k] for k in tau]))
    else:
        full = Subspace.full(rank)
        pieces = [((), full, Subspace.zero(rank), list(full.basis))]
    pairs = []
    for chi, E, S, lifts in pieces:
        Ga = _quotient_filtration(filts[a], E, S, lifts)
        Gb = _quotient_filtration(filts[b], E, S, lifts)
        for line in adapted_decomposition([Ga, Gb]):
            ja, jb = line.jumps
            u = lat.solve_integral(sigma_rays, chi + (ja,))
            u2 = lat.solve_integral(sigma2_rays, chi + (jb,))
            pairs.append((u, u2, lat.divide_along(lat.sub(u, u2), C.m_tau)))
    if len(pairs) != rank:
        raise CompatibilityError(f"graded pieces on wall {C.label} do not add up to rank {rank}")
    return pairs


def restriction_pairs(bundle: EquivariantBundle, C: InvariantCurve) -> list[tuple[LatticeVec, LatticeVec, int]]:
    """(u, u', degree) triples realising the splitting on the curve C."""
    if not bundle.fan.owns(C):
        raise ValidationError(f"curve {C.label} is not on the bundle's fan")
    if C.label not in bundle._pairs:
        if bundle.mode == "filtrations":
            bundle._pairs[C.label] = _restrict_filtration_mode(bundle, C)
        else:
            bundle._pairs[C.label] = _pair_by_residue(bundle, C)
    return bundle._pairs[C.label]


def restrict_to_curve(bundle: EquivariantBundle, C: InvariantCurve | str) -> SplittingType:
    if isinstance(C, str):
        C = bundle.fan.curve(C)
    return SplittingType(d for _, _, d in restriction_pairs(bundle, C))


def restriction_profile(bundle: EquivariantBundle) -> RestrictionProfile:
    if bundle._profile is None:
        bundle._profile = RestrictionProfile(
            bundle.fan,
            {C.label: restrict_to_curve(bundle, C) for C in bundle.fan.walls},
            reference=dict(bundle.reference),
        )
    return bundle._profile


def twist(profile: RestrictionProfile, D: DivisorClass) -> RestrictionProfile:
    """Profile of E (x) O(D): every degree on l shifts by D.l."""
    fan = profile.fan
    shifts = {C.label: intersection_number(fan, D, C) for C in fan.walls}
    return RestrictionProfile(
        fan,
        {lab: st.shifted(shifts[lab]) for lab, st in profile.splittings.items()},
        reference={lab: st.shifted(shifts[lab]) for lab, st in profile.reference.items()},
    )


def twist_bundle(bundle: EquivariantBundle, D: DivisorClass) -> EquivariantBundle:
    """E (x) O(D) at the level of filtrations or characters."""
    fan = bundle.fan
    coeffs = divisor_ray_coefficients(fan, D)
    shifts = {C.label: intersection_number(fan, D, C) for C in fan.walls}
    reference = {lab: [d + shifts[lab] for d in st.degrees] for lab, st in bundle.reference.items()}
    name = bundle.name
    if bundle.mode == "filtrations":
        filts = [f.shifted(a) for f, a in zip(bundle.filtrations, coeffs)]
        return EquivariantBundle(fan, bundle.rank, filtrations=filts, name=name,
                                 uniform=bundle.uniform, reference=reference)
    # the character of O(D) on a cone solves <u, v_rho> = a_rho
    chars = {}
    for ci, cone in enumerate(fan.max_cones):
        shift = lat.solve_integral([fan.rays[r] for r in cone], [coeffs[r] for r in cone])
        chars[ci] = [lat.add(u, shift) for u in bundle._characters[ci]]
    return EquivariantBundle(fan, bundle.rank, characters=chars, name=name,
                             uniform=bundle.uniform, reference=reference)


# -- built-in bundles ---------------------------------------------------------


def tangent_bundle(fan: Fan) -> EquivariantBundle:
    """Filtrations: whole space up to 0, the line through v_rho at 1, zero above."""
    n = fan.n
    filts = [Filtration.single_jump(n, span(v), 1) for v in fan.rays]
    reference = {}
    if not fan.is_bott and n >= 2:
        reference = {lab: [1] * (n - 1) + [2] for lab in fan.curve_labels}
    elif fan.is_bott and n == 2:
        c = fan.c(1, 2)
        reference = {"D'_1": [0, 2], "D'_2": [-c, 2], "D_1": [0, 2], "D_2": [c, 2]}
    return EquivariantBundle(
        fan, n, filtrations=filts, name="tangent",
        uniform=not fan.is_bott, reference=reference,
    )


def line_bundle_sum(fan: Fan, divisors: Sequence[DivisorClass]) -> EquivariantBundle:
    """O(D_1) + ... + O(D_r), summand j living on the j-th coordinate axis."""
    if not divisors:
        raise ValidationError("line_bundle_sum needs at least one divisor")
    r = len(divisors)
    ray_coeffs = [divisor_ray_coefficients(fan, D) for D in divisors]
    filts = []
    for rho in range(len(fan.rays)):
        levels = sorted({ray_coeffs[j][rho] for j in range(r)})
        steps = {}
        for lvl in levels:
            axes = [[int(k == j) for k in range(r)] for j in range(r) if ray_coeffs[j][rho] >= lvl]
            steps[lvl] = Subspace(r, axes)
        filts.append(Filtration(r, steps))
    return EquivariantBundle(fan, r, filtrations=filts, name="line_bundle_sum", uniform=True)


def _distinct_lines(lines: Sequence[Sequence], count: int) -> list[Subspace]:
    if len(lines) != count:
        raise ValidationError(f"expected {count} lines")
    subs = [span(l) for l in lines]
    if any(s.dim != 1 or s.dim_ambient != 2 for s in subs):
        raise ValidationError("each line must be a nonzero vector of Q^2")
    if len(set(subs)) != count:
        raise ValidationError("the lines must be pairwise distinct")
    return subs


DEFAULT_LINES = ((1, 0), (0, 1), (1, 1))


def hirz_indecomposable(fan: Fan, lines: Sequence[Sequence] = DEFAULT_LINES) -> EquivariantBundle:
    """Rank-2 bundle on X_2: distinct lines L_1, L_2, L_3 at level 1 on v_1, v_2, v_3."""
    if not (fan.is_bott and fan.n == 2):
        raise ValidationError("hirz_indecomposable lives on a Hirzebruch surface X_2")
    L = _distinct_lines(lines, 3)
    filts = [Filtration.single_jump(2, L[0]), Filtration.single_jump(2, L[1]),
             Filtration.single_jump(2, L[2]), Filtration.trivial(2)]
    c = fan.c(1, 2)
    reference = {"D'_1": [0, 1], "D'_2": [-c, 2], "D_1": [0, 1], "D_2": [0, 2]}
    return EquivariantBundle(fan, 2, filtrations=filts, name="hirz_indecomposable", reference=reference)


def x3_indecomposable(fan: Fan, lines: Sequence[Sequence] = DEFAULT_LINES) -> EquivariantBundle:
    """Rank-2 bundle on X_3: distinct lines L_1, L_2, L_4 at level 1 on v_1, v_2, v_4."""
    if not (fan.is_bott and fan.n == 3):
        raise ValidationError("x3_indecomposable lives on a Bott tower X_3")
    L1, L2, L4 = _distinct_lines(lines, 3)
    triv = Filtration.trivial(2)
    filts = [Filtration.single_jump(2, L1), Filtration.single_jump(2, L2), triv,
             Filtration.single_jump(2, L4), triv, triv]
    c12 = fan.c(1, 2)
    reference = {
        "l_1": [0, 0], "l_2": [0, 1], "l_3": [0, 0], "l_4": [0, 1],
        "l_5": [-c12, 2], "l_6": [0, 0], "l_7": [-c12, 2], "l_8": [0, 1],
        "l_9": [0, 2], "l_10": [0, 0], "l_11": [0, 1], "l_12": [0, 2],
    }
    return EquivariantBundle(fan, 2, filtrations=filts, name="x3_indecomposable", reference=reference)


BUILTINS = {
    "tangent": tangent_bundle,
    "line_bundle_sum": line_bundle_sum,
    "hirz_indecomposable": hirz_indecomposable,
    "x3_indecomposable": x3_indecomposable,
}


def builtin(name: str, fan: Fan, *args, **kwargs) -> EquivariantBundle:
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise ValidationError(f"unknown builtin bundle {name!r}; choose from {sorted(BUILTINS)}") from None
    return factory(fan, *args, **kwargs)


def degree_from_characters(bundle: EquivariantBundle, C: InvariantCurve) -> int:
    """Total degree on C read off the two character multisets alone.

    Any pairing gives the same sum, so this needs no splitting information.
    """
    s, s2 = C.adjacent_cones
    total = [0] * bundle.fan.n
    for u in bundle._characters[s]:
        total = lat.add(total, u)
    for u in bundle._characters[s2]:
        total = lat.sub(total, u)
    return lat.divide_along(total, C.m_tau)
