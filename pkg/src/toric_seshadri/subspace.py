"""Subspaces of Q^r in canonical reduced row-echelon form, and filtrations."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, ValidationError

Vector = tuple[Fraction, ...]


def as_vector(v: Iterable) -> Vector:
    return tuple(Fraction(x) for x in v)


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of {x : rows . x = 0}."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def express(basis: Sequence[Vector], x: Vector) -> tuple[Fraction, ...] | None:
    """Coefficients c with sum c_i basis_i == x, or None if x is outside the span.

    ``basis`` must be linearly independent.
    """
    k = len(basis)
    if k == 0:
        return () if all(c == 0 for c in x) else None
    n = len(x)
    aug = [[basis[j][i] for j in range(k)] + [x[i]] for i in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    coeffs = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        coeffs[p] = row[k]
    return tuple(coeffs)


class Subspace:
    """A subspace of Q^dim stored by its RREF basis.

    Equality and hashing are structural because the RREF is canonical.
    """

    __slots__ = ("dim_ambient", "basis")

    def __init__(self, dim_ambient: int, vectors: Iterable[Iterable] = ()):
        rows = [as_vector(v) for v in vectors]
        for v in rows:
            if len(v) != dim_ambient:
                raise DimensionError(f"vector {v} does not live in Q^{dim_ambient}")
        red, _ = rref(rows, dim_ambient)
        self.dim_ambient = dim_ambient
        self.basis: tuple[Vector, ...] = tuple(tuple(r) for r in red)

    @classmethod
    def full(cls, dim_ambient: int) -> Subspace:
        return cls(dim_ambient, [[int(i == j) for j in range(dim_ambient)] for i in range(dim_ambient)])

    @classmethod
    def zero(cls, dim_ambient: int) -> Subspace:
        return cls(dim_ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.dim_ambient

    def _check(self, other: Subspace) -> None:
        if other.dim_ambient != self.dim_ambient:
            raise DimensionError("subspaces live in different ambient spaces")

    def contains_vector(self, v: Iterable) -> bool:
        return express(self.basis, as_vector(v)) is not None

    def __contains__(self, v) -> bool:
        return self.contains_vector(v)

    def contains(self, other: Subspace) -> bool:
        self._check(other)
        return all(self.contains_vector(v) for v in other.basis)

    def __le__(self, other: Subspace) -> bool:
        return other.contains(self)

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.dim_ambient, self.basis + other.basis)

    def annihilator(self) -> Subspace:
        return Subspace(self.dim_ambient, nullspace(self.basis, self.dim_ambient))

    def __and__(self, other: Subspace) -> Subspace:
        self._check(other)
        if self.is_full():
            return other
        if other.is_full():
            return self
        return (self.annihilator() + other.annihilator()).annihilator()

    def complement_in(self, bigger: Subspace) -> list[Vector]:
        """Vectors of ``bigger``'s basis that extend a basis of self to one of bigger.

        Steinitz exchange on the canonical basis, so the result is deterministic.
        """
        self._check(bigger)
        chosen: list[Vector] = list(self.basis)
        extra: list[Vector] = []
        for v in bigger.basis:
            if express(chosen, v) is None:
                chosen.append(v)
                extra.append(v)
        if len(chosen) != bigger.dim:
            raise DimensionError("complement_in called on a non-containing pair")
        return extra

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.dim_ambient == other.dim_ambient
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.dim_ambient, self.basis))

    def __repr__(self) -> str:
        rows = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.basis)
        return f"Subspace(Q^{self.dim_ambient}: [{rows}])"


def span(*vectors: Iterable) -> Subspace:
    vs = [as_vector(v) for v in vectors]
    if not vs:
        raise DimensionError("span() needs at least one vector to fix the dimension")
    return Subspace(len(vs[0]), vs)


class Filtration:
    """Decreasing filtration F(i) of Q^r, stored by its jump locations.

    ``steps`` maps an integer level to a subspace; F(i) is the step stored at
    the smallest level >= i, and zero above the largest stored level. The step
    at the smallest level must be the whole space.
    """

    __slots__ = ("rank", "_levels", "_steps")

    def __init__(self, rank: int, steps: Mapping[int, Subspace]):
        if not steps:
            raise ValidationError("a filtration needs at least one step")
        levels = sorted(int(k) for k in steps)
        subs = [steps[k] for k in levels]
        for s in subs:
            if s.dim_ambient != rank:
                raise DimensionError("filtration step in the wrong ambient space")
        if not subs[0].is_full():
            raise ValidationError("the lowest filtration step must be the whole space")
        for lo, hi in zip(subs, subs[1:]):
            if not lo.contains(hi):
                raise ValidationError("filtration steps must be decreasing")
        # drop redundant levels so that equality is structural
        keep_levels, keep_subs = [], []
        for i, (lvl, s) in enumerate(zip(levels, subs)):
            nxt = subs[i + 1] if i + 1 < len(subs) else Subspace.zero(rank)
            if s != nxt:
                keep_levels.append(lvl)
                keep_subs.append(s)
        self.rank = rank
        self._levels = tuple(keep_levels)
        self._steps = tuple(keep_subs)

    @classmethod
    def trivial(cls, rank: int, level: int = 0) -> Filtration:
        """Whole space up to ``level``, zero above it."""
        return cls(rank, {level: Subspace.full(rank)})

    @classmethod
    def single_jump(cls, rank: int, line: Subspace, level: int = 1) -> Filtration:
        """Whole space up to level-1, ``line`` at ``level``, zero above."""
        return cls(rank, {level - 1: Subspace.full(rank), level: line})

    def __call__(self, i: int) -> Subspace:
        for lvl, s in zip(self._levels, self._steps):
            if i <= lvl:
                return s
        return Subspace.zero(self.rank)

    @property
    def jumps(self) -> tuple[int, ...]:
        """Levels i with F(i) != F(i + 1)."""
        return self._levels

    def shifted(self, k: int) -> Filtration:
        return Filtration(self.rank, {lvl + k: s for lvl, s in zip(self._levels, self._steps)})

    def jump_of(self, v: Iterable) -> int:
        """Largest i with v in F(i); v must be nonzero."""
        if all(Fraction(x) == 0 for x in v):
            raise DimensionError("jump_of is undefined for the zero vector")
        best = None
        for lvl, s in zip(self._levels, self._steps):
            if s.contains_vector(v):
                best = lvl
        return best

    def items(self):
        return zip(self._levels, self._steps)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Filtration)
            and self.rank == other.rank
            and self._levels == other._levels
            and self._steps == other._steps
        )

    def __hash__(self) -> int:
        return hash((self.rank, self._levels, self._steps))

    def __repr__(self) -> str:
        inner = ", ".join(f"{lvl}: dim {s.dim}" for lvl, s in self.items())
        return f"Filtration(rank={self.rank}, {{{inner}}})"
