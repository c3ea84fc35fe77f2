"""Geometry of the zonotope ``P(Z) = {Z y : -1 <= y_i <= 1}``.

Segments are ``[-z_i, z_i]``, so a facet with outer normal ``p`` is centred at
``sum_i sign(p . z_i) z_i`` and the neighbouring tile sits at twice that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import ceil, floor
from typing import Sequence

from .errors import InconsistentLatticeError
from .linalg import (
    Matrix,
    Vector,
    add,
    determinant,
    dot,
    inverse,
    lattice_basis,
    maximal_minors,
    scale,
    sign,
    vec,
)
from .matroid import Copoint, GeneratorSet, copoints


@dataclass(frozen=True)
class FacetPair:
    copoint: Copoint
    p: Vector
    epsilon: tuple[int, ...]
    t: Vector

    @property
    def bound(self) -> Fraction:
        """Half-width ``p.t / 2`` of the slab ``|p.x| <= p.t / 2``."""
        return dot(self.p, self.t) / 2


@dataclass(frozen=True)
class Slab:
    """The inequality pair ``-bound <= normal . x <= bound``."""

    normal: Vector
    bound: Fraction

    def contains(self, x: Sequence[Fraction]) -> bool:
        return abs(dot(self.normal, x)) <= self.bound


@dataclass(frozen=True)
class TilingLattice:
    basis: Matrix
    source: tuple[Vector, ...]

    @property
    def det(self) -> Fraction:
        return abs(determinant(self.basis))


def facet_pair(Z: GeneratorSet, H: Copoint) -> FacetPair:
    eps = tuple(sign(dot(H.p, z)) for z in Z)
    half = tuple(Fraction(0) for _ in range(Z.n))
    for e, z in zip(eps, Z):
        if e:
            half = add(half, scale(e, z))
    return FacetPair(H, H.p, eps, scale(2, half))


class Zonotope:
    """Cached facet structure of ``P(Z)``."""

    def __init__(self, Z: GeneratorSet | Sequence[Sequence], cps: Sequence[Copoint] | None = None):
        self.Z = Z if isinstance(Z, GeneratorSet) else GeneratorSet(Z)
        if cps is not None:
            self.__dict__["copoints"] = list(cps)

    @property
    def n(self) -> int:
        return self.Z.n

    @cached_property
    def copoints(self) -> list[Copoint]:
        return copoints(self.Z)

    @cached_property
    def facet_pairs(self) -> list[FacetPair]:
        return [facet_pair(self.Z, H) for H in self.copoints]

    @cached_property
    def translations(self) -> list[Vector]:
        return [fp.t for fp in self.facet_pairs]

    @cached_property
    def h_representation(self) -> list[Slab]:
        return [Slab(fp.p, fp.bound) for fp in self.facet_pairs]

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        return all(s.contains(x) for s in self.h_representation)

    def interior_contains(self, x: Sequence) -> bool:
        x = vec(x)
        return all(abs(dot(s.normal, x)) < s.bound for s in self.h_representation)

    @cached_property
    def volume(self) -> Fraction:
        return 2**self.n * sum(abs(d) for _, d in maximal_minors(self.Z.matrix))

    @cached_property
    def tiling_lattice(self) -> TilingLattice:
        """HNF basis of the group generated by the translation vectors.

        Raises :class:`InconsistentLatticeError` when its covolume differs from
        the volume of ``P(Z)``, which happens exactly when the translates do not
        tile face to face.
        """
        source = tuple(self.translations)
        basis = lattice_basis(source)
        lattice = TilingLattice(basis, source)
        if basis.cols != self.n or lattice.det != self.volume:
            raise InconsistentLatticeError(
                f"lattice covolume {lattice.det if basis.cols == self.n else 0} != volume {self.volume}"
            )
        return lattice

    @cached_property
    def _bounding_box(self) -> Vector:
        return tuple(sum((abs(z[k]) for z in self.Z), Fraction(0)) for k in range(self.n))

    def translate_window(self, x: Sequence[Fraction]) -> list[tuple[int, ...]]:
        """Integer coordinate ranges (over the lattice basis) of every ``t`` with ``x - t`` in the bounding box."""
        B = self.tiling_lattice.basis
        Binv = inverse(B)
        box = self._bounding_box
        ranges = []
        for k in range(self.n):
            row = Binv.row(k)
            centre = dot(row, x)
            spread = sum((abs(a) * b for a, b in zip(row, box)), Fraction(0))
            ranges.append(range(floor(centre - spread), ceil(centre + spread) + 1))
        return [c for c in product(*ranges)]

    @cached_property
    def _projected_basis(self) -> list[Vector]:
        B = self.tiling_lattice.basis
        return [tuple(dot(s.normal, col) for col in B.columns()) for s in self.h_representation]

    def covering_translates(self, x: Sequence, strict: bool = True) -> list[Vector]:
        """Lattice vectors ``t`` with ``x`` in ``P(Z) + t`` (interior when ``strict``)."""
        x = vec(x)
        B = self.tiling_lattice.basis
        slabs = [(dot(s.normal, x), s.bound, pb) for s, pb in zip(self.h_representation, self._projected_basis)]
        hits = []
        for c in self.translate_window(x):
            # p . (x - B c) computed from the cached projections p . B
            values = (abs(px - sum(a * k for a, k in zip(pb, c) if k)) for px, _, pb in slabs)
            if strict:
                ok = all(v < b for v, (_, b, _) in zip(values, slabs))
            else:
                ok = all(v <= b for v, (_, b, _) in zip(values, slabs))
            if ok:
                hits.append(B @ c)
        return hits
