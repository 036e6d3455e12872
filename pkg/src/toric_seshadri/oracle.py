"""Brute-force cross-checks that share no code path with the engine.

* decompositions: enumerate candidate lines (every line of the lattice
  generated by the filtration steps, plus a few random ones) and test every
  r-subset by dimension counting;
* splitting types: Moebius inversion of intersection dimensions on the graded
  pieces of a wall, and the exhaustive search on the combined family of both
  adjacent cones when that family is compatible;
* degrees: first Chern class from the filtrations (or character sums) paired
  with the curve;
* intersection numbers: the Chow ring of the tower, with every ray divisor
  rewritten in the basis D_1..D_n via linear equivalence.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact_lattice as lat
from .fan import Fan, InvariantCurve
from .klyachko import EquivariantBundle, SplittingType
from .subspace import Filtration, Subspace, Vector


@dataclass(frozen=True)
class OracleConfig:
    rank_bound: int = 3
    random_lines: int = 6
    coefficient_bound: int = 2
    seed: int = 0


# -- decompositions -----------------------------------------------------------


def _lattice(family: Sequence[Filtration]) -> set[Subspace] | None:
    """Closure of all filtration steps under intersection and sum.

    A family with an adapted basis only generates coordinate subspaces of that
    basis, so more than 2**rank elements proves incompatibility (None); without
    the cap the closure of three generic flags need not terminate.
    """
    rank = family[0].rank
    cap = 2 ** rank
    elems = {Subspace.full(rank)}
    for f in family:
        elems.update(step for _, step in f.items())
    while True:
        new = set()
        for a, b in itertools.combinations(elems, 2):
            for c in (a & b, a + b):
                if c not in elems and not c.is_zero():
                    new.add(c)
        if not new:
            return elems
        elems |= new
        if len(elems) > cap:
            return None


def _jump(f: Filtration, v: Vector) -> int:
    best = None
    for lvl, step in f.items():
        if step.contains_vector(v):
            best = lvl
    return best


def candidate_lines(family: Sequence[Filtration], config: OracleConfig = OracleConfig()) -> list[Vector]:
    """Lines from the generated lattice plus a few random ones; [] if incompatible."""
    rank = family[0].rank
    rng = random.Random(config.seed)
    lattice = _lattice(family)
    if lattice is None:
        return []
    lines: dict[Subspace, Vector] = {}
    for S in lattice:
        for v in S.basis:
            lines.setdefault(Subspace(rank, [v]), v)
    for _ in range(config.random_lines):
        b = config.coefficient_bound
        v = tuple(Fraction(rng.randint(-b, b)) for _ in range(rank))
        if any(v):
            lines.setdefault(Subspace(rank, [v]), v)
    return list(lines.values())


def _det(rows: Sequence[Vector]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def oracle_decompositions(family: Sequence[Filtration], config: OracleConfig = OracleConfig()):
    """Every adapted decomposition among the candidate lines, up to permutation.

    Each decomposition is a sorted tuple of (line, jump vector) pairs. An empty
    list means the family is incompatible (no candidate basis is adapted).
    """
    rank = family[0].rank
    if rank > config.rank_bound:
        raise ValueError(f"oracle limited to rank {config.rank_bound}")
    cands = candidate_lines(family, config)
    jumps = [tuple(_jump(f, v) for f in family) for v in cands]
    # required counts: #{lines with jump_k >= lvl} must equal dim F_k(lvl)
    needs = [[(lvl, step.dim) for lvl, step in f.items()] for f in family]
    found = {}
    for combo in itertools.combinations(range(len(cands)), rank):
        ok = all(
            sum(1 for i in combo if jumps[i][k] >= lvl) == d
            for k, req in enumerate(needs) for lvl, d in req
        )
        if ok and _det([cands[i] for i in combo]) != 0:
            key = tuple(sorted((Subspace(rank, [cands[i]]).basis, jumps[i]) for i in combo))
            found[key] = [(Subspace(rank, [cands[i]]), jumps[i]) for i in combo]
    return list(found.values())


# -- splitting types ----------------------------------------------------------


def _char(rays, jumps) -> tuple[int, ...]:
    sol = lat.solve(rays, jumps)
    return tuple(int(x) for x in sol)


def oracle_restrictions_combined(bundle: EquivariantBundle, C: InvariantCurve,
                                 config: OracleConfig = OracleConfig()) -> set[SplittingType]:
    """Splitting types from every adapted decomposition of both cones' rays together.

    Empty when the combined family admits no decomposition.
    """
    fan = bundle.fan
    a, b = C.opposite_rays
    tau = list(C.wall_rays)
    family = [bundle.filtrations[k] for k in tau] + [bundle.filtrations[a], bundle.filtrations[b]]
    rays_s = [fan.rays[k] for k in tau] + [fan.rays[a]]
    rays_t = [fan.rays[k] for k in tau] + [fan.rays[b]]
    out = set()
    for dec in oracle_decompositions(family, config):
        degs = []
        for _, j in dec:
            u = _char(rays_s, j[:-2] + (j[-2],))
            u2 = _char(rays_t, j[:-2] + (j[-1],))
            # <m_tau, v_a> = 1, so pairing with v_a reads off the multiple
            degs.append(lat.pairing(lat.sub(u, u2), fan.rays[a]))
        out.add(SplittingType(degs))
    return out


def oracle_restriction_counting(bundle: EquivariantBundle, C: InvariantCurve) -> SplittingType:
    """Splitting type by inclusion-exclusion of intersection dimensions.

    For the tau-rays the multiplicity of the graded piece chi is the Moebius
    sum of dim E(chi + e_S). Inside it, the pair of opposite filtrations is
    counted the same way on the quotient, using dims of
    (E(chi) & F_a(p) & F_b(q)) + S(chi).
    """
    fan = bundle.fan
    F = bundle.filtrations
    rank = bundle.rank
    a, b = C.opposite_rays
    tau = list(C.wall_rays)
    levels = [F[k].jumps for k in tau]
    la, lb = F[a].jumps, F[b].jumps
    rays_s = [fan.rays[k] for k in tau] + [fan.rays[a]]
    rays_t = [fan.rays[k] for k in tau] + [fan.rays[b]]

    def E(chi):
        return _meet([F[k](i) for k, i in zip(tau, chi)], rank)

    def Sdeep(chi):
        S = Subspace.zero(rank)
        for t in range(len(tau)):
            bumped = list(chi)
            bumped[t] += 1
            S = S + E(bumped)
        return S

    degs = []
    for chi in itertools.product(*levels):
        Echi, Schi = E(chi), Sdeep(chi)

        def g(p, q):
            # dimension of G_a(p) & G_b(q) inside E(chi) / S(chi)
            return (((Echi & F[a](p)) + Schi) & ((Echi & F[b](q)) + Schi)).dim - Schi.dim

        for p in la:
            for q in lb:
                mult = g(p, q) - g(p + 1, q) - g(p, q + 1) + g(p + 1, q + 1)
                if mult < 0:
                    raise AssertionError("negative multiplicity")
                if mult:
                    u = _char(rays_s, tuple(chi) + (p,))
                    u2 = _char(rays_t, tuple(chi) + (q,))
                    degs.extend([lat.pairing(lat.sub(u, u2), fan.rays[a])] * mult)
    if len(degs) != rank:
        raise AssertionError(f"counted {len(degs)} summands on {C.label}, expected {rank}")
    return SplittingType(degs)


def _meet(steps, rank) -> Subspace:
    S = Subspace.full(rank)
    for s in steps:
        S = S & s
    return S


def oracle_splitting_deg(C: InvariantCurve, bundle: EquivariantBundle) -> int:
    """deg(E|_C) without any pairing of characters."""
    fan = bundle.fan
    if bundle.filtrations is not None:
        # c_1(E) = sum_rho (sum_i i * dim gr^i F_rho) D_rho
        total = 0
        for rho, f in enumerate(bundle.filtrations):
            a_rho = sum(lvl * (step.dim - f(lvl + 1).dim) for lvl, step in f.items())
            total += a_rho * C.wall_relation[rho]
        return total
    s, s2 = C.adjacent_cones
    va = fan.rays[C.opposite_rays[0]]
    left = sum(lat.pairing(u, va) for u in bundle._characters[s])
    right = sum(lat.pairing(u, va) for u in bundle._characters[s2])
    return left - right


# -- intersections ---------------------------------------------------------------


def _chow_degree(monomial: Counter, fan: Fan) -> int:
    """Degree of a monomial in D_1..D_n (1-based keys) in the Chow ring of X_n.

    Relations: D_i^2 = D_i * sum_{k<i} c_{k,i} D_k, and D_1 ... D_n = 1.
    """
    n = fan.n
    terms = {tuple(sorted(monomial.elements())): 1}
    result = 0
    while terms:
        mono, coeff = terms.popitem()
        cnt = Counter(mono)
        sq = [i for i, e in cnt.items() if e >= 2]
        if not sq:
            if len(mono) == n and len(cnt) == n:
                result += coeff
            continue
        i = max(sq)
        cnt[i] -= 1
        for k in range(1, i):
            c = fan.c(k, i)
            if c:
                new = cnt.copy()
                new[k] += 1
                key = tuple(sorted(new.elements()))
                terms[key] = terms.get(key, 0) + coeff * c
    return result


def _ray_divisor_in_basis(fan: Fan, rho: int) -> dict[int, int]:
    n = fan.n
    if rho >= n:
        return {rho - n + 1: 1}
    i = rho + 1
    out = {i: 1}
    for k in range(1, i):
        out[k] = out.get(k, 0) - fan.c(k, i)
    return out


def oracle_intersections(fan: Fan) -> list[list[int]]:
    """Matrix D_rho . V(tau): rows rays, columns walls (same order as the fan)."""
    if not fan.is_bott:
        return [[1] * len(fan.walls) for _ in fan.rays]
    matrix = []
    for rho in range(len(fan.rays)):
        row = []
        for C in fan.walls:
            # expand D_rho * prod_{t in tau} D_t as a polynomial in D_1..D_n
            poly = {(): 1}
            for factor in [rho] + list(C.wall_rays):
                lin = _ray_divisor_in_basis(fan, factor)
                new = {}
                for mono, c in poly.items():
                    for var, d in lin.items():
                        key = tuple(sorted(mono + (var,)))
                        new[key] = new.get(key, 0) + c * d
                poly = new
            row.append(sum(c * _chow_degree(Counter(m), fan) for m, c in poly.items() if c))
        matrix.append(row)
    return matrix
