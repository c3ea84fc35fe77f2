"""Lattice dicings attached to a zonotopal parallelotope.

The dicing vectors are ``d_i = beta_i Q z_i``; the hyperplanes
``{x : d_i . x = k}`` for integer ``k`` meet exactly in the tiling lattice,
and ``Q = sum_i (2 / beta_i) d_i d_i^T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from .errors import EpsilonOutOfRangeError, NonLatticeIntersectionError, NotUnimodularError, UnsupportedDimensionError
from .linalg import Matrix, Vector, dot, inverse, lattice_basis, outer, primitive_integer, rank, scale
from .matroid import GeneratorSet
from .scaling import UnimodularityCertificate, UnimodularityFailure, certify_equal_minors
from .zonotope import TilingLattice


@dataclass(frozen=True)
class DicingFamily:
    d: tuple[Vector, ...]
    weights: tuple[Fraction, ...]
    certificate: UnimodularityCertificate | None = None

    @property
    def n(self) -> int:
        return len(self.d[0])


@dataclass(frozen=True)
class DicingLattice:
    basis: Matrix


def dicing_family(Z: GeneratorSet, beta: Sequence[Fraction], Q: Matrix) -> DicingFamily:
    d = tuple(Q @ scale(b, z) for b, z in zip(beta, Z))
    weights = tuple(2 / Fraction(b) for b in beta)
    try:
        cert = certify_equal_minors(Matrix.from_columns(d))
    except UnimodularityFailure as exc:
        raise NotUnimodularError(str(exc)) from exc
    return DicingFamily(d, weights, cert)


def _independent_rows(vectors: Sequence[Vector], n: int) -> list[int]:
    chosen: list[int] = []
    for i, v in enumerate(vectors):
        if rank(Matrix([vectors[k] for k in chosen] + [v])) > len(chosen):
            chosen.append(i)
            if len(chosen) == n:
                break
    return chosen


def intersection_lattice(vectors: Sequence[Vector]) -> DicingLattice:
    """Lattice ``{x : v . x in Z}`` for a family whose first independent ``n`` members
    already determine it; every other member is checked to be integral on it."""
    n = len(vectors[0])
    rows = _independent_rows(vectors, n)
    if len(rows) < n:
        raise NonLatticeIntersectionError("dicing vectors do not span")
    B = inverse(Matrix([vectors[i] for i in rows]))
    for i, v in enumerate(vectors):
        for col in B.columns():
            if dot(v, col).denominator != 1:
                raise NonLatticeIntersectionError(
                    f"dicing vector {i} is not integral on the lattice of a basis subfamily"
                )
    return DicingLattice(lattice_basis(B.columns()))


def dicing_lattice(D: DicingFamily) -> DicingLattice:
    return intersection_lattice(D.d)


def verify_lattice_equality(L_T: TilingLattice, L_D: DicingLattice) -> bool:
    return L_T.basis == L_D.basis


def verify_decomposition(Q: Matrix, D: DicingFamily) -> bool:
    total = Matrix.zeros(Q.rows, Q.cols)
    for w, d in zip(D.weights, D.d):
        total = total + outer(d, d).scaled(w)
    return total == Q


def epsilon_products(D: DicingFamily, translations: Sequence[Vector]) -> list[list[Fraction]]:
    """Table ``[k][i] = d_i . t_k``; every entry must be 0 or +-1."""
    table = [[dot(d, t) for d in D.d] for t in translations]
    for k, row in enumerate(table):
        for i, v in enumerate(row):
            if v not in (-1, 0, 1):
                raise EpsilonOutOfRangeError(f"d_{i} . t_{k} = {v}")
    return table


def delaunay_cell_count(D: DicingFamily) -> int:
    """Delaunay cells of the dicing per fundamental domain, for ``n <= 2``.

    Every vertex of the arrangement is a lattice point and each of the ``k``
    distinct hyperplane families passes through it, so on the quotient torus
    there is one vertex and ``k`` edges; Euler's relation ``V - E + F = 0``
    leaves ``k - 1`` faces. On a line there is one cell.
    """
    if D.n == 1:
        return 1
    if D.n != 2:
        raise UnsupportedDimensionError("cell counting is only implemented in the plane")
    directions = {primitive_integer(d) for d in D.d}
    return len(directions) - 1


def cell_key(D: DicingFamily, x: Sequence[Fraction]) -> tuple[int, ...]:
    """Label of the dicing cell containing a generic ``x``, modulo lattice translations.

    The cell is the vector ``k_i = floor(d_i . x)``; a lattice translation by
    ``w`` shifts it by ``(d_i . w)_i``. Choosing ``w`` to cancel the entries
    of the first independent families gives a canonical representative.
    """
    k = [floor(dot(d, x)) for d in D.d]
    rows = _independent_rows(D.d, D.n)
    w = inverse(Matrix([D.d[i] for i in rows])) @ [k[i] for i in rows]
    return tuple(ki - int(dot(d, w)) for ki, d in zip(k, D.d))
