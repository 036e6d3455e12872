from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toric_seshadri import (
    DivisorClass,
    associated_characters,
    build_bott_tower,
    build_projective_space,
    builtin,
    from_characters,
    from_filtrations,
    intersection_number,
    restrict_to_curve,
    restriction_profile,
    twist,
    twist_bundle,
)
from toric_seshadri.errors import (
    AmbiguousPairingError,
    CompatibilityError,
    InconsistentDataError,
    ValidationError,
)
from toric_seshadri.klyachko import (
    SplittingType,
    adapted_decomposition,
    degree_from_characters,
    find_adapted_decomposition,
    is_adapted,
)
from toric_seshadri.subspace import Filtration, Subspace, span


def degrees(profile):
    return {lab: st.degrees for lab, st in profile.splittings.items()}


# -- adapted decompositions ---------------------------------------------------


def test_equal_lines_give_deep_line_and_complement():
    L = span((1, 2))
    fam = [Filtration.single_jump(2, L), Filtration.single_jump(2, L)]
    lines = adapted_decomposition(fam)
    jumps = sorted(l.jumps for l in lines)
    assert jumps == [(0, 0), (1, 1)]
    deep = next(l for l in lines if l.jumps == (1, 1))
    assert deep.line == L


def test_distinct_lines_split_along_themselves():
    L1, L2 = span((1, 0)), span((1, 1))
    lines = adapted_decomposition([Filtration.single_jump(2, L1), Filtration.single_jump(2, L2)])
    got = {l.line: l.jumps for l in lines}
    assert got == {L1: (1, 0), L2: (0, 1)}


def test_three_distinct_lines_are_incompatible():
    fam = [Filtration.single_jump(2, span(v)) for v in [(1, 0), (0, 1), (1, 1)]]
    assert find_adapted_decomposition(fam) is None
    with pytest.raises(CompatibilityError):
        adapted_decomposition(fam)


def test_rank_bound():
    with pytest.raises(ValidationError):
        adapted_decomposition([Filtration.trivial(7)])


@given(st.integers(0, 10_000))
def test_seed_does_not_change_jump_multiset(seed):
    fam = [
        Filtration(3, {0: Subspace.full(3), 1: Subspace(3, [[1, 0, 0], [0, 1, 0]]), 2: span((1, 1, 0))}),
        Filtration(3, {-1: Subspace.full(3), 1: Subspace(3, [[0, 1, 0], [0, 0, 1]])}),
        Filtration.single_jump(3, span((0, 0, 1)), 3),
    ]
    base = adapted_decomposition(fam)
    other = adapted_decomposition(fam, seed=seed)
    assert is_adapted(fam, other)
    assert sorted(l.jumps for l in base) == sorted(l.jumps for l in other)


# -- bundles and characters --------------------------------------------------


def test_compatibility_checked_on_every_cone():
    P3 = build_projective_space(3)
    lines = [span(v) for v in [(1, 0), (0, 1), (1, 1)]]
    filts = [Filtration.trivial(2)] + [Filtration.single_jump(2, L) for L in lines]
    with pytest.raises(CompatibilityError) as err:
        from_filtrations(P3, filts)
    assert err.value.cone == (1, 2, 3)


def test_surfaces_accept_any_filtrations(p2):
    # two filtrations always split simultaneously, so every P^2 family is valid
    lines = [span(v) for v in [(1, 0), (0, 1), (1, 1)]]
    E = from_filtrations(p2, [Filtration.single_jump(2, L) for L in lines])
    assert E.rank == 2


def test_line_bundles_accept_arbitrary_jumps(x3):
    filts = [Filtration.trivial(1, k) for k in (3, -1, 0, 2, 5, -4)]
    E = from_filtrations(x3, filts)
    for C in x3.walls:
        ray_coeffs = [3, -1, 0, 2, 5, -4]
        expected = sum(a * C.wall_relation[r] for r, a in enumerate(ray_coeffs))
        assert restrict_to_curve(E, C).degrees == (expected,)


def test_tangent_characters_on_hirzebruch(hirz):
    c = hirz.c(1, 2)
    T = builtin("tangent", hirz)
    assert set(associated_characters(T, (0, 1))) == {(1, 0), (0, 1)}
    assert set(associated_characters(T, (2, 3))) == {(-1, 0), (-c, -1)}
    assert set(associated_characters(T, (0, 3))) == {(1, 0), (0, -1)}


def test_tangent_characters_on_p2_are_dual_bases(p2):
    from toric_seshadri.exact_lattice import dual_basis

    T = builtin("tangent", p2)
    for ci, cone in enumerate(p2.max_cones):
        duals = set(dual_basis([p2.rays[r] for r in cone]))
        assert set(associated_characters(T, ci)) == duals


@pytest.mark.parametrize("c12", [1, 2, 3])
def test_x3_example_characters(c12):
    X = build_bott_tower(3, {(1, 2): c12, (1, 3): 2, (2, 3): 1})
    E = builtin("x3_indecomposable", X)
    # cones named by 1-based ray indices
    expected = {
        (1, 2, 3): {(1, 0, 0), (0, 1, 0)},
        (1, 2, 6): {(1, 0, 0), (0, 1, 0)},
        (3, 4, 5): {(-1, 0, 0), (0, 0, 0)},
        (1, 5, 6): {(1, 0, 0), (0, 0, 0)},
        (4, 5, 6): {(-1, 0, 0), (0, 0, 0)},
        (2, 4, 6): {(c12, 1, 0), (-1, 0, 0)},
        (1, 3, 5): {(1, 0, 0), (0, 0, 0)},
        (2, 3, 4): {(c12, 1, 0), (-1, 0, 0)},
    }
    for cone, chars in expected.items():
        assert set(associated_characters(E, [r - 1 for r in cone])) == chars


# -- restrictions -----------------------------------------------------------


def test_tangent_hirzebruch_table(hirz):
    c = hirz.c(1, 2)
    prof = restriction_profile(builtin("tangent", hirz))
    assert degrees(prof) == {
        "D'_1": (0, 2), "D'_2": tuple(sorted((-c, 2))), "D_1": (0, 2), "D_2": tuple(sorted((c, 2))),
    }
    assert prof.discrepancies() == {}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tangent_projective_space(n):
    P = build_projective_space(n)
    prof = restriction_profile(builtin("tangent", P))
    for lab in prof.labels:
        assert prof[lab].degrees == (1,) * (n - 1) + (2,)


def test_hirzebruch_indecomposable(hirz):
    c = hirz.c(1, 2)
    prof = restriction_profile(builtin("hirz_indecomposable", hirz))
    assert degrees(prof) == {"D'_1": (0, 1), "D'_2": (-c, 2), "D_1": (0, 1), "D_2": (1, 1)}
    # the reference table lists O + O(2) on D_2; both have degree 2
    assert prof.discrepancies() == {"D_2": (SplittingType([1, 1]), SplittingType([0, 2]))}


def test_x3_indecomposable(x3):
    c12 = x3.c(1, 2)
    prof = restriction_profile(builtin("x3_indecomposable", x3))
    assert degrees(prof) == {
        "l_1": (0, 0), "l_2": (0, 1), "l_3": (0, 0), "l_4": (0, 1), "l_5": (-c12, 2),
        "l_6": (0, 0), "l_7": (-c12, 2), "l_8": (0, 1), "l_9": (1, 1), "l_10": (0, 0),
        "l_11": (0, 1), "l_12": (1, 1),
    }
    assert set(prof.discrepancies()) == {"l_9", "l_12"}
    for lab in ("l_9", "l_12"):
        assert prof[lab].deg == prof.reference[lab].deg


def test_indecomposable_lines_must_be_distinct(hirz):
    with pytest.raises(ValidationError):
        builtin("hirz_indecomposable", hirz, [(1, 0), (0, 1), (2, 0)])
    with pytest.raises(ValidationError):
        builtin("x3_indecomposable", hirz)
    with pytest.raises(ValidationError):
        builtin("no_such_bundle", hirz)


def test_line_bundle_sum(hirz):
    D1, D2 = DivisorClass([1, 0]), DivisorClass([0, 1])
    E = builtin("line_bundle_sum", hirz, [D1, D2])
    prof = restriction_profile(E)
    for C in hirz.walls:
        expected = sorted([intersection_number(hirz, D1, C), intersection_number(hirz, D2, C)])
        assert list(prof[C.label].degrees) == expected


def test_twist_tangent_hirzebruch(hirz):
    c = hirz.c(1, 2)
    prof = restriction_profile(builtin("tangent", hirz))
    for a1, a2 in [(0, 0), (3, 1), (c, 2)]:
        tw = twist(prof, DivisorClass([a1, a2]))
        assert tw["D'_2"].degrees == tuple(sorted((a1 - c, 2 + a1)))
        assert tw["D'_1"].degrees == (a2, a2 + 2)


def test_twist_zero_is_identity(x3):
    prof = restriction_profile(builtin("x3_indecomposable", x3))
    assert twist(prof, DivisorClass([0, 0, 0])).splittings == prof.splittings


def test_twist_x3_l12(x3):
    c12, c13, c23 = x3.c(1, 2), x3.c(1, 3), x3.c(2, 3)
    prof = restriction_profile(builtin("x3_indecomposable", x3))
    a1, a2, a3 = 4, 1, 2
    s = a1 + c12 * a2 + (c13 + c12 * c23) * a3
    tw = twist(prof, DivisorClass([a1, a2, a3]))
    assert tw.reference["l_12"].degrees == (s, s + 2)
    assert tw["l_12"].degrees == (s + 1, s + 1)


def test_twist_bundle_matches_profile_twist(x3):
    E = builtin("x3_indecomposable", x3)
    D = DivisorClass([3, -1, 2])
    assert restriction_profile(twist_bundle(E, D)).splittings == twist(restriction_profile(E), D).splittings


# -- character mode ---------------------------------------------------------


def _characters(E):
    return {ci: associated_characters(E, ci) for ci in range(len(E.fan.max_cones))}


def test_character_mode_matches_filtrations(hirz):
    T = builtin("tangent", hirz)
    C = from_characters(hirz, _characters(T))
    assert restriction_profile(C).splittings == restriction_profile(T).splittings


def test_character_mode_ambiguity_is_an_error(hirz):
    E = builtin("hirz_indecomposable", hirz)
    C = from_characters(hirz, _characters(E))
    with pytest.raises(AmbiguousPairingError) as err:
        restrict_to_curve(C, "D_2")
    assert err.value.wall == "D_2"
    # walls without a collision still work
    assert restrict_to_curve(C, "D'_2").degrees == (-hirz.c(1, 2), 2)


def test_character_mode_ambiguous_walls_still_have_a_degree(hirz):
    E = builtin("hirz_indecomposable", hirz)
    C = from_characters(hirz, _characters(E))
    assert degree_from_characters(C, hirz.curve("D_2")) == 2


def test_inconsistent_characters(hirz):
    chars = _characters(builtin("tangent", hirz))
    chars[0] = ((5, 5), (0, 1))
    with pytest.raises(InconsistentDataError):
        from_characters(hirz, chars)


def test_character_mode_rejects_wrong_rank(hirz):
    chars = _characters(builtin("tangent", hirz))
    chars[0] = ((1, 0),)
    with pytest.raises(ValidationError):
        from_characters(hirz, chars)


def test_foreign_curve_rejected(hirz, x3):
    with pytest.raises(ValidationError):
        restrict_to_curve(builtin("tangent", hirz), x3.walls[0])
