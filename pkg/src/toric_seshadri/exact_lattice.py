"""Exact lattice arithmetic for the lattices N (rays) and M (characters).

Vectors are plain tuples of Python ints; rationals are ``fractions.Fraction``.
Nothing in the package touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from .errors import DegenerateInputError, DimensionError, PairingError

LatticeVec = tuple[int, ...]


def vec(coords: Sequence[int]) -> LatticeVec:
    out = []
    for c in coords:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise DimensionError(f"non-integral lattice coordinate {c}")
            c = c.numerator
        out.append(int(c))
    return tuple(out)


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    """Dual pairing <u, v> of a character u in M with a vector v in N."""
    if len(u) != len(v):
        raise DimensionError(f"cannot pair vectors of length {len(u)} and {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[int]) -> LatticeVec:
    g = reduce(gcd, (abs(x) for x in v), 0)
    if g == 0:
        raise DegenerateInputError("the zero vector has no primitive generator")
    return tuple(x // g for x in v)


def divide_along(diff: Sequence[int], m: Sequence[int]) -> int:
    """Return the integer a with ``diff == a * m``.

    Raises PairingError when ``diff`` is not an integral multiple of ``m``,
    which signals inconsistent character data across a wall.
    """
    if len(diff) != len(m):
        raise DimensionError("length mismatch in divide_along")
    pivot = next((i for i, x in enumerate(m) if x != 0), None)
    if pivot is None:
        raise DegenerateInputError("cannot divide along the zero vector")
    a, rem = divmod(diff[pivot], m[pivot])
    if rem or any(d != a * x for d, x in zip(diff, m)):
        raise PairingError(f"{tuple(diff)} is not an integer multiple of {tuple(m)}")
    return a


def add(u: Sequence[int], v: Sequence[int]) -> LatticeVec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u: Sequence[int], v: Sequence[int]) -> LatticeVec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scale(k: int, v: Sequence[int]) -> LatticeVec:
    return tuple(k * x for x in v)


def solve(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[Fraction, ...]:
    """Solve the square system ``rows @ x = rhs`` exactly.

    Used for both dual problems in the package: characters from jump data
    (rows are the rays of a cone) and wall relations (rows transposed).
    """
    n = len(rows)
    if any(len(r) != n for r in rows) or len(rhs) != n:
        raise DimensionError("solve expects a square system")
    a = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise DegenerateInputError("singular system: rays do not form a basis")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[r][n] for r in range(n))


def solve_integral(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> LatticeVec:
    """Like :func:`solve` but insists on an integral solution.

    On a smooth cone the rays form a lattice basis, so integrality failing
    means the cone was not smooth.
    """
    return vec(solve(rows, rhs))


def dual_basis(rays: Sequence[Sequence[int]]) -> list[LatticeVec]:
    """Characters m_1..m_n with <m_i, rays[j]> = delta_ij."""
    n = len(rays)
    return [solve_integral(rays, [int(i == j) for j in range(n)]) for i in range(n)]


def same_residue(u: Sequence[int], u2: Sequence[int], m: Sequence[int]) -> bool:
    """True when u - u2 is an integer multiple of the primitive vector m."""
    try:
        divide_along(sub(u, u2), m)
    except PairingError:
        return False
    return True
