"""Nefness, ampleness and the Mori cone of P(E) for equivariant bundles.

Everything is read off split restrictions to the invariant curves: E is nef
(ample) iff every restriction has all degrees >= 0 (>= 1), and the Mori cone
of P(E) is spanned by a fiber line C_0 together with one section C_j over
each invariant curve l_j, sitting in the quotient of minimal degree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fan import CurveClass, DivisorClass, curve_class
from .klyachko import RestrictionProfile, SplittingType


def mu_min(s: SplittingType) -> int:
    return s.mu_min


@dataclass(frozen=True)
class Verdict:
    holds: bool
    # first curve (in wall order) violating the bound, with its offending degree
    witness: str | None = None
    degree: int | None = None

    def __bool__(self) -> bool:
        return self.holds


def _lowest(profile: RestrictionProfile, bound: int) -> Verdict:
    worst = None
    for label in profile.labels:
        d = profile.mu(label)
        if d < bound and (worst is None or d < worst[1]):
            worst = (label, d)
    if worst is None:
        return Verdict(True)
    return Verdict(False, *worst)


def is_nef(profile: RestrictionProfile) -> Verdict:
    return _lowest(profile, 0)


def is_ample(profile: RestrictionProfile) -> Verdict:
    return _lowest(profile, 1)


@dataclass(frozen=True)
class MoriGenerators:
    labels: tuple[str, ...]          # "C_0" then one section per invariant curve
    curves: tuple[str | None, ...]   # base curve under each generator; None for the fiber
    xi_products: dict[str, int]
    pushforwards: dict[str, CurveClass | None]

    def xi(self, gen: str) -> int:
        return self.xi_products[gen]


def mori_generators(profile: RestrictionProfile) -> MoriGenerators:
    fan = profile.fan
    labels = ["C_0"]
    curves: list[str | None] = [None]
    xi = {"C_0": 1}
    push: dict[str, CurveClass | None] = {"C_0": None}
    for j, C in enumerate(fan.walls, start=1):
        g = f"C_{j}"
        labels.append(g)
        curves.append(C.label)
        xi[g] = profile.mu(C.label)
        push[g] = curve_class(fan, C)
    return MoriGenerators(tuple(labels), tuple(curves), xi, push)


def pe_class_nef(a: int, D: DivisorClass, gens: MoriGenerators) -> Verdict:
    """Is a*xi + pi^*D nef on P(E)? Tested against every Mori generator.

    D . pi_*C_j is read from the pushforward class, whose coordinates are the
    intersection numbers with the Picard basis.
    """
    if a < 0:
        raise ValueError("the xi-coefficient must be nonnegative")
    for g in gens.labels:
        value = a * gens.xi(g)
        push = gens.pushforwards[g]
        if push is not None:
            if len(D) != len(push.gamma_coords):
                raise ValueError("divisor does not match the base")
            value += sum(x * y for x, y in zip(D.coefficients, push.gamma_coords))
        if value < 0:
            return Verdict(False, g, value)
    return Verdict(True)
