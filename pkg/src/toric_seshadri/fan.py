"""Fans of projective spaces and Bott towers, with their invariant curves.

Ray indices are zero-based internally. For a Bott tower X_n the rays are
v_1..v_{2n} in the usual order, so ``D'_i`` is ray ``i-1`` and ``D_i`` is ray
``n+i-1``. For P^n the rays are e_0..e_n and ray ``k`` is e_k.

Intersection numbers come from wall relations: for the wall tau between
maximal cones sigma = tau + v_a and sigma' = tau + v_b,

    v_a + v_b + sum_k b_k v_k = 0    (k over the rays of tau)

and then D_a.C = D_b.C = 1, D_k.C = b_k and every other ray divisor meets C
trivially.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence, Union

from . import exact_lattice as lat
from .errors import ValidationError
from .exact_lattice import LatticeVec


@dataclass(frozen=True)
class InvariantCurve:
    index: int
    label: str
    wall_rays: tuple[int, ...]
    adjacent_cones: tuple[int, int]
    opposite_rays: tuple[int, int]
    # coefficient of every ray of the fan in the wall relation; this is also
    # the vector of intersection numbers D_rho . C
    wall_relation: tuple[int, ...]
    m_tau: LatticeVec
    divisor_label: str = ""

    def relation_coefficient(self, ray: int) -> int:
        return self.wall_relation[ray]


@dataclass(frozen=True)
class DivisorClass:
    """Divisor in the Picard basis: D_1..D_n for X_n, the hyperplane class for P^n."""

    coefficients: tuple[int, ...]

    def __init__(self, coefficients: Sequence[int]):
        object.__setattr__(self, "coefficients", lat.vec(coefficients))

    def __add__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(lat.add(self.coefficients, other.coefficients))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(lat.scale(-1, self.coefficients))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-other)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)


@dataclass(frozen=True)
class CurveClass:
    """Numerical curve class; coordinate i is D_i . C (dual to the Picard basis)."""

    gamma_coords: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Fan:
    family: str  # "projective_space" or "bott_tower"
    n: int
    rays: tuple[LatticeVec, ...]
    max_cones: tuple[tuple[int, ...], ...]
    walls: tuple[InvariantCurve, ...] = ()
    bott_numbers: Mapping[tuple[int, int], int] = field(default_factory=dict)
    ray_labels: tuple[str, ...] = ()
    divisor_labels: tuple[str, ...] = ()

    @property
    def is_bott(self) -> bool:
        return self.family == "bott_tower"

    @property
    def picard_rank(self) -> int:
        return self.n if self.is_bott else 1

    @property
    def degenerate(self) -> bool:
        """P^1 (or X_1): the single invariant curve is the whole variety."""
        return self.n == 1

    def c(self, i: int, j: int) -> int:
        """Bott number c_{i,j} (1-based, i < j)."""
        return self.bott_numbers[(i, j)]

    def key(self) -> tuple:
        return (self.family, self.n, tuple(sorted(self.bott_numbers.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, Fan) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def curve(self, label: str) -> InvariantCurve:
        for w in self.walls:
            if w.label == label:
                return w
        raise KeyError(label)

    @property
    def curve_labels(self) -> list[str]:
        return [w.label for w in self.walls]

    def cone_index(self, rays: Sequence[int]) -> int:
        return self.max_cones.index(tuple(sorted(rays)))

    def owns(self, curve: InvariantCurve) -> bool:
        return 0 <= curve.index < len(self.walls) and self.walls[curve.index] == curve

    def describe(self) -> dict:
        """JSON-ready description: rays, maximal cones and walls."""
        return {
            "family": self.family,
            "n": self.n,
            # P^1 / X_1: the single "wall" is the zero cone and its curve is the whole variety
            "degenerate": self.degenerate,
            "bott_numbers": {f"{i},{j}": c for (i, j), c in sorted(self.bott_numbers.items())},
            "rays": [
                {"label": lab, "vector": list(v), "divisor": d}
                for lab, v, d in zip(self.ray_labels, self.rays, self.divisor_labels)
            ],
            "max_cones": [[self.ray_labels[i] for i in cone] for cone in self.max_cones],
            "walls": [
                {
                    "label": w.label,
                    "divisors": w.divisor_label,
                    "wall_rays": [self.ray_labels[i] for i in w.wall_rays],
                    "opposite_rays": [self.ray_labels[i] for i in w.opposite_rays],
                    "wall_relation": {
                        self.ray_labels[i]: b for i, b in enumerate(w.wall_relation) if b
                    },
                    "m_tau": list(w.m_tau),
                }
                for w in self.walls
            ],
        }


def _assemble(family, n, rays, cones, bott, ray_labels, divisor_labels, curve_namer) -> Fan:
    cones = tuple(sorted(tuple(sorted(c)) for c in cones))
    for cone in cones:
        if len(cone) != n:
            raise ValidationError(f"maximal cone {cone} does not have {n} rays")
        lat.dual_basis([rays[i] for i in cone])  # raises unless smooth
    faces: dict[tuple[int, ...], list[int]] = {}
    for ci, cone in enumerate(cones):
        for drop in cone:
            tau = tuple(r for r in cone if r != drop)
            faces.setdefault(tau, []).append(ci)
    walls = []
    for idx, tau in enumerate(sorted(faces)):
        owners = faces[tau]
        if len(owners) != 2:
            raise ValidationError(f"wall {tau} lies in {len(owners)} maximal cones; fan not complete")
        s, s2 = owners
        (a,) = set(cones[s]) - set(tau)
        (b,) = set(cones[s2]) - set(tau)
        basis = [rays[k] for k in tau] + [rays[a]]
        # solve sum_k b_k v_k + beta v_a = -(v_a + v_b) with the basis as columns
        cols = [list(row) for row in zip(*basis)]
        target = [-(x + y) for x, y in zip(rays[a], rays[b])]
        sol = lat.solve(cols, target)
        if sol[-1] != 0 or any(x.denominator != 1 for x in sol):
            raise ValidationError(f"wall {tau} has no integral wall relation")
        relation = [0] * len(rays)
        relation[a] = 1
        relation[b] = 1
        for k, bk in zip(tau, sol[:-1]):
            relation[k] = int(bk)
        m_tau = lat.dual_basis(basis)[-1]
        walls.append(
            InvariantCurve(
                index=idx,
                label=curve_namer(idx, tau),
                wall_rays=tau,
                adjacent_cones=(s, s2),
                opposite_rays=(a, b),
                wall_relation=tuple(relation),
                m_tau=m_tau,
                divisor_label=" ∩ ".join(divisor_labels[k] for k in tau) or "whole curve",
            )
        )
    return Fan(
        family=family,
        n=n,
        rays=tuple(rays),
        max_cones=cones,
        walls=tuple(walls),
        bott_numbers=dict(bott),
        ray_labels=tuple(ray_labels),
        divisor_labels=tuple(divisor_labels),
    )


def _normalize_bott(n: int, bott_numbers) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for key, val in dict(bott_numbers or {}).items():
        if isinstance(key, str):
            key = tuple(int(p) for p in key.replace("(", "").replace(")", "").split(","))
        i, j = key
        if not (1 <= i < j <= n):
            raise ValidationError(f"Bott number index {(i, j)} out of range for n={n}")
        out[(i, j)] = val
    for i, j in itertools.combinations(range(1, n + 1), 2):
        if (i, j) not in out:
            raise ValidationError(f"missing Bott number c_{i},{j}")
        c = out[(i, j)]
        if isinstance(c, bool) or int(c) != c:
            raise ValidationError(f"Bott number c_{i},{j} must be an integer")
        if c < 1:
            raise ValidationError(f"Bott numbers must be positive; got c_{i},{j} = {c}")
        out[(i, j)] = int(c)
    return out


def build_bott_tower(n: int, bott_numbers: Mapping | None = None) -> Fan:
    """Fan of the Bott tower X_n with positive Bott numbers ``{(i, j): c_ij}``."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError("a Bott tower needs height n >= 1")
    bott = _normalize_bott(n, bott_numbers)
    rays: list[LatticeVec] = []
    for i in range(1, n + 1):
        rays.append(tuple(int(k == i) for k in range(1, n + 1)))
    for i in range(1, n + 1):
        v = [0] * n
        v[i - 1] = -1
        for j in range(i + 1, n + 1):
            v[j - 1] = bott[(i, j)]
        rays.append(tuple(v))
    cones = [
        tuple(i if pick == 0 else n + i for i, pick in enumerate(choice))
        for choice in itertools.product((0, 1), repeat=n)
    ]
    ray_labels = [f"v_{k}" for k in range(1, 2 * n + 1)]
    divisor_labels = [f"D'_{i}" for i in range(1, n + 1)] + [f"D_{i}" for i in range(1, n + 1)]

    def namer(idx: int, tau: tuple[int, ...]) -> str:
        if n == 1:
            return "X_1"
        if n == 2:
            return divisor_labels[tau[0]]
        return f"l_{idx + 1}"

    return _assemble("bott_tower", n, rays, cones, bott, ray_labels, divisor_labels, namer)


def build_projective_space(n: int) -> Fan:
    """Fan of P^n: rays e_0 = -(e_1 + ... + e_n), e_1, ..., e_n."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError("projective space needs dimension n >= 1")
    rays = [tuple([-1] * n)] + [tuple(int(k == i) for k in range(n)) for i in range(n)]
    cones = [tuple(j for j in range(n + 1) if j != i) for i in range(n + 1)]
    fan = _assemble(
        "projective_space",
        n,
        rays,
        cones,
        {},
        [f"e_{k}" for k in range(n + 1)],
        [f"D_{k}" for k in range(n + 1)],
        lambda idx, tau: f"l_{idx + 1}",
    )
    assert len(fan.walls) == comb(n + 1, 2)
    return fan


# -- divisors and curves ---------------------------------------------------

RayOrClass = Union[int, DivisorClass]


def divisor_ray_coefficients(fan: Fan, D: DivisorClass) -> tuple[int, ...]:
    """A torus-invariant representative of D as a combination of ray divisors."""
    if len(D) != fan.picard_rank:
        raise ValidationError(f"divisor has {len(D)} coefficients, fan has Picard rank {fan.picard_rank}")
    coeffs = [0] * len(fan.rays)
    if fan.is_bott:
        for i, a in enumerate(D.coefficients):
            coeffs[fan.n + i] = a
    else:
        coeffs[0] = D.coefficients[0]
    return tuple(coeffs)


def intersection_number(fan: Fan, D: RayOrClass, C: InvariantCurve) -> int:
    """D . C for a ray divisor (given by index) or a DivisorClass."""
    if not fan.owns(C):
        raise ValidationError(f"curve {C.label} does not belong to this fan")
    if isinstance(D, DivisorClass):
        coeffs = divisor_ray_coefficients(fan, D)
        return sum(a * b for a, b in zip(coeffs, C.wall_relation))
    if not 0 <= D < len(fan.rays):
        raise ValidationError(f"ray index {D} out of range")
    return C.wall_relation[D]


def curve_class(fan: Fan, C: InvariantCurve) -> CurveClass:
    if not fan.owns(C):
        raise ValidationError(f"curve {C.label} does not belong to this fan")
    basis = [DivisorClass([int(i == j) for j in range(fan.picard_rank)]) for i in range(fan.picard_rank)]
    return CurveClass(tuple(intersection_number(fan, D, C) for D in basis))


def reduce_divisor(fan: Fan, ray_coefficients: Sequence[int]) -> DivisorClass:
    """Express sum_rho a_rho D_rho in the Picard basis.

    On X_n: D'_1 ~ D_1 and D'_i ~ D_i - sum_{k<i} c_{k,i} D_k. On P^n every
    ray divisor is a hyperplane.
    """
    if len(ray_coefficients) != len(fan.rays):
        raise ValidationError("one coefficient per ray expected")
    if not fan.is_bott:
        return DivisorClass([sum(ray_coefficients)])
    n = fan.n
    out = list(ray_coefficients[n:])
    for i in range(1, n + 1):
        a = ray_coefficients[i - 1]
        if a == 0:
            continue
        out[i - 1] += a
        for k in range(1, i):
            out[k - 1] -= a * fan.c(k, i)
    return DivisorClass(out)


def divisor_nef(fan: Fan, D: DivisorClass) -> bool:
    if len(D) != fan.picard_rank:
        raise ValidationError("divisor does not match the fan")
    return all(a >= 0 for a in D)


def divisor_ample(fan: Fan, D: DivisorClass) -> bool:
    if len(D) != fan.picard_rank:
        raise ValidationError("divisor does not match the fan")
    return all(a > 0 for a in D)


def intersection_matrix(fan: Fan) -> list[list[int]]:
    """Rows: ray divisors; columns: invariant curves."""
    return [[C.wall_relation[r] for C in fan.walls] for r in range(len(fan.rays))]


def verify_wall_relations(fan: Fan) -> bool:
    """Every stored wall relation sums to the zero vector."""
    for C in fan.walls:
        total = [Fraction(0)] * fan.n
        for coeff, v in zip(C.wall_relation, fan.rays):
            total = [t + coeff * x for t, x in zip(total, v)]
        if any(total):
            return False
    return True
