"""The linear matroid M(Z) of a generator matrix: closure, flats, copoints, colines."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidInstanceError
from .linalg import Matrix, Vector, dot, nullspace, primitive_integer, rank, vec


class GeneratorSet:
    """Ordered nonzero rational generators ``z_1..z_r`` spanning ``R^n``.

    Indices are 0-based throughout the package.
    """

    def __init__(self, generators: Iterable[Sequence], dimension: int | None = None):
        gens = tuple(vec(z) for z in generators)
        if not gens:
            raise InvalidInstanceError("at least one generator is required", "generators")
        n = len(gens[0]) if dimension is None else dimension
        for i, z in enumerate(gens):
            if len(z) != n:
                raise InvalidInstanceError(f"expected {n} entries, got {len(z)}", f"generators[{i}]")
            if not any(z):
                raise InvalidInstanceError("zero generator (loop) is not allowed", f"generators[{i}]")
        if len(gens) < n:
            raise InvalidInstanceError(f"need at least {n} generators, got {len(gens)}", "generators")
        self.vectors: tuple[Vector, ...] = gens
        self.n = n
        if rank(self.matrix) != n:
            raise InvalidInstanceError("generators do not span the ambient space", "generators")

    @property
    def r(self) -> int:
        return len(self.vectors)

    @cached_property
    def matrix(self) -> Matrix:
        return Matrix.from_columns(self.vectors)

    def __getitem__(self, i: int) -> Vector:
        return self.vectors[i]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __eq__(self, other) -> bool:
        return isinstance(other, GeneratorSet) and self.vectors == other.vectors

    def __hash__(self) -> int:
        return hash(self.vectors)

    def __repr__(self) -> str:
        return f"GeneratorSet({[list(map(str, z)) for z in self.vectors]})"

    def subset_rank(self, indices: Iterable[int]) -> int:
        cols = [self.vectors[i] for i in indices]
        if not cols:
            return 0
        return rank(Matrix(cols))


@dataclass(frozen=True)
class Flat:
    members: tuple[int, ...]
    rank: int

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def issubset(self, other: "Flat") -> bool:
        return set(self.members) <= set(other.members)


@dataclass(frozen=True)
class Copoint:
    """A rank ``n-1`` flat with its primitive integer normal ``p``."""

    flat: Flat
    p: Vector


@dataclass(frozen=True)
class Coline:
    flat: Flat
    copoints_above: tuple[Copoint, ...]


def closure(Z: GeneratorSet, S: Iterable[int]) -> Flat:
    S = sorted(set(S))
    if not S:
        return Flat((), 0)
    k = Z.subset_rank(S)
    base = [Z[i] for i in S]
    members = tuple(
        i for i in range(Z.r) if i in S or rank(Matrix(base + [Z[i]])) == k
    )
    return Flat(members, k)


def _flats_of_rank(Z: GeneratorSet, k: int) -> list[Flat]:
    if k <= 0:
        return [Flat((), 0)]
    found: dict[tuple[int, ...], Flat] = {}
    covered: list[set[int]] = []
    for S in combinations(range(Z.r), k):
        # an independent k-subset inside a known rank-k flat closes to that flat
        if any(set(S) <= c for c in covered):
            continue
        if Z.subset_rank(S) != k:
            continue
        F = closure(Z, S)
        found[F.members] = F
        covered.append(set(F.members))
    return sorted(found.values(), key=lambda F: F.members)


def facet_normal(Z: GeneratorSet, flat: Flat) -> Vector:
    """Primitive integer normal of the hyperplane spanned by a rank ``n-1`` flat."""
    if Z.n == 1:
        return primitive_integer((1,))
    (p,) = nullspace(Matrix([Z[i] for i in flat.members]))
    return primitive_integer(p)


def copoints(Z: GeneratorSet) -> list[Copoint]:
    """All rank ``n-1`` flats, sorted by member tuple."""
    return [Copoint(F, facet_normal(Z, F)) for F in _flats_of_rank(Z, Z.n - 1)]


def colines(Z: GeneratorSet, cps: Sequence[Copoint] | None = None) -> list[Coline]:
    if Z.n < 2:
        raise ValueError("colines need dimension at least 2")
    cps = copoints(Z) if cps is None else cps
    return [
        Coline(L, tuple(H for H in cps if L.issubset(H.flat)))
        for L in _flats_of_rank(Z, Z.n - 2)
    ]


@dataclass(frozen=True)
class BinaryTest:
    binary: bool
    witness: Coline | None = None

    def __bool__(self) -> bool:
        return self.binary


def is_binary(Z: GeneratorSet, cps: Sequence[Copoint] | None = None) -> BinaryTest:
    """Coline test: binary iff every coline lies under at most three copoints.

    In dimension 1 there are no colines and the matroid is trivially binary.
    """
    if Z.n < 2:
        return BinaryTest(True)
    for L in colines(Z, cps):
        if len(L.copoints_above) > 3:
            return BinaryTest(False, L)
    return BinaryTest(True)


def incidence(Z: GeneratorSet, H: Copoint) -> tuple[Fraction, ...]:
    """The values ``p_H . z_i`` for every generator."""
    return tuple(dot(H.p, z) for z in Z)

