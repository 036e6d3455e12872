from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toric_seshadri import exact_lattice as lat
from toric_seshadri.errors import DegenerateInputError, DimensionError, PairingError

small = st.integers(-20, 20)


def test_pairing_basic():
    assert lat.pairing((1, 2, 3), (4, 5, 6)) == 32
    assert lat.pairing((), ()) == 0


def test_pairing_length_mismatch():
    with pytest.raises(DimensionError):
        lat.pairing((1, 2), (1, 2, 3))


def test_primitive():
    assert lat.primitive((4, -6)) == (2, -3)
    assert lat.primitive((0, 5)) == (0, 1)
    with pytest.raises(DegenerateInputError):
        lat.primitive((0, 0))


def test_divide_along():
    assert lat.divide_along((-2, 0), (1, 0)) == -2
    assert lat.divide_along((0, 0), (3, 1)) == 0
    with pytest.raises(PairingError):
        lat.divide_along((1, 1), (1, 0))
    with pytest.raises(PairingError):
        lat.divide_along((1, 0), (2, 0))


def test_solve_characters_on_a_cone():
    # tangent bundle of a Hirzebruch surface with c = 2 on the cone (v_3, v_4)
    rays = [(-1, 2), (0, -1)]
    assert lat.solve_integral(rays, (1, 0)) == (-1, 0)
    assert lat.solve_integral(rays, (0, 1)) == (-2, -1)


def test_solve_singular():
    with pytest.raises(DegenerateInputError):
        lat.solve([(1, 2), (2, 4)], (1, 1))


def test_solve_integral_rejects_fractions():
    with pytest.raises(DimensionError):
        lat.solve_integral([(2, 0), (0, 1)], (1, 0))
    assert lat.solve([(2, 0), (0, 1)], (1, 0)) == (Fraction(1, 2), 0)


def test_dual_basis():
    rays = [(1, 0, 0), (0, 1, 0), (-1, 2, 1)]
    duals = lat.dual_basis(rays)
    for i, m in enumerate(duals):
        assert [lat.pairing(m, v) for v in rays] == [int(i == j) for j in range(3)]


@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3), small)
def test_divide_along_roundtrip(u, m, a):
    if not any(m):
        return
    m = lat.primitive(m)
    diff = lat.scale(a, m)
    assert lat.divide_along(diff, m) == a
    assert lat.same_residue(lat.add(u, diff), u, m)


@given(st.lists(small, min_size=2, max_size=4))
def test_primitive_divides(v):
    if not any(v):
        return
    p = lat.primitive(v)
    from math import gcd
    from functools import reduce

    assert reduce(gcd, (abs(x) for x in p), 0) == 1
    k = next(x // y for x, y in zip(v, p) if y)
    assert lat.scale(k, p) == tuple(v)
