"""The metric form ``Q`` of a parallelotope and its certification.

A parallelotope with facet vectors ``p_j`` and translation vectors ``t_j`` is
the Voronoi cell of its lattice under ``x -> x^T Q x`` exactly when
``Q t_j = gamma_j p_j`` for a positive definite ``Q`` and scalars ``gamma_j``.
For a zonotope with unimodular rescaling ``beta``::

    Q^{-1} = sum_i 2 beta_i z_i z_i^T

which is assembled directly, so no square roots ever appear.

Gauge: ``beta`` is only fixed up to a positive factor per component (we pin
``max beta = 1``). Scaling ``beta`` by ``c`` scales ``Q`` and every ``gamma``
by ``1/c`` and leaves the Voronoi cell unchanged.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from .errors import InvalidInstanceError, NoSolutionError, NotPositiveDefiniteError, ToleranceExceededError
from .linalg import (
    Matrix,
    Vector,
    dot,
    inverse,
    is_positive_definite,
    nullspace,
    outer,
    primitive_integer,
    vec,
)
from .matroid import GeneratorSet

DEFAULT_TOLERANCE = 1e-12
DEFAULT_SAMPLES = 256


@dataclass(frozen=True)
class VoronoiForm:
    Q: Matrix
    Qinv: Matrix
    beta: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class ParallelotopeSpec:
    """Facet vectors and translation vectors ``(p_j, t_j)``, one per facet pair."""

    pairs: tuple[tuple[Vector, Vector], ...]

    def __post_init__(self):
        if not self.pairs:
            raise InvalidInstanceError("at least one (p, t) pair is required", "parallelotope_spec")
        n = len(self.pairs[0][0])
        for j, (p, t) in enumerate(self.pairs):
            if len(p) != n or len(t) != n:
                raise InvalidInstanceError(f"vectors must have {n} entries", f"parallelotope_spec[{j}]")
            if not any(p) or not any(t):
                raise InvalidInstanceError("p and t must be nonzero", f"parallelotope_spec[{j}]")
            if dot(p, t) <= 0:
                raise InvalidInstanceError("p . t must be positive", f"parallelotope_spec[{j}]")

    @classmethod
    def from_vectors(cls, pairs) -> "ParallelotopeSpec":
        return cls(tuple((vec(p), vec(t)) for p, t in pairs))

    @classmethod
    def from_facet_pairs(cls, facet_pairs) -> "ParallelotopeSpec":
        return cls(tuple((fp.p, fp.t) for fp in facet_pairs))

    @property
    def n(self) -> int:
        return len(self.pairs[0][0])

    @property
    def translations(self) -> list[Vector]:
        return [t for _, t in self.pairs]


def compute_form(Z: GeneratorSet, beta: Sequence[Fraction]) -> VoronoiForm:
    beta = tuple(Fraction(b) for b in beta)
    Qinv = Matrix.zeros(Z.n, Z.n)
    for b, z in zip(beta, Z):
        Qinv = Qinv + outer(z, z).scaled(2 * b)
    Q = inverse(Qinv)
    if not is_positive_definite(Q):
        raise NotPositiveDefiniteError("assembled form is not positive definite")
    return VoronoiForm(Q, Qinv, beta)


@dataclass(frozen=True)
class PQtResult:
    """Outcome of checking ``Q t_j = gamma_j p_j`` for every pair.

    On failure ``index`` names the first offending pair and ``mismatch`` is
    the component of ``Q t_j`` orthogonal to ``p_j`` (zero when ``Q t_j`` is
    parallel to ``p_j`` but with a non-positive factor).
    """

    certified: bool
    gammas: tuple[Fraction, ...] = ()
    index: int | None = None
    mismatch: Vector | None = None

    def __bool__(self) -> bool:
        return self.certified


def verify_pQt(spec: ParallelotopeSpec, Q: Matrix) -> PQtResult:
    gammas = []
    for j, (p, t) in enumerate(spec.pairs):
        q = Q @ t
        g = dot(p, q) / dot(p, p)
        residual = tuple(a - g * b for a, b in zip(q, p))
        if any(residual) or g <= 0:
            return PQtResult(False, tuple(gammas), j, residual)
        gammas.append(g)
    return PQtResult(True, tuple(gammas))


def voronoi_membership(translations: Sequence[Sequence[Fraction]], Q: Matrix, x: Sequence) -> bool:
    """Whether ``x^T Q x <= (x-t)^T Q (x-t)`` for all ``t`` in ``+-translations``.

    Expanded, the condition is ``2 |t^T Q x| <= t^T Q t``.
    """
    x = vec(x)
    Qx = Q @ x
    for t in translations:
        if 2 * abs(dot(t, Qx)) > dot(t, Q @ t):
            return False
    return True


# -- general parallelotopes ------------------------------------------------------


@dataclass(frozen=True)
class SolutionSpace:
    """Basis of all symmetric ``Q`` satisfying the proportionality constraints,
    returned when no positive definite member was found."""

    basis: tuple[Matrix, ...]
    status: str = "undetermined"

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _sym_index(n: int) -> list[tuple[int, int]]:
    return list(combinations_with_replacement(range(n), 2))


def pqt_solution_space(spec: ParallelotopeSpec) -> list[Matrix]:
    """Basis of symmetric ``Q`` with ``Q t_j`` parallel to ``p_j`` for all ``j``."""
    n = spec.n
    idx = _sym_index(n)
    rows = []
    for p, t in spec.pairs:
        for w in nullspace(Matrix([p])):
            # w^T Q t = sum_{a,b} w_a Q_ab t_b, with Q_ab = Q_ba
            row = []
            for a, b in idx:
                coeff = w[a] * t[b]
                if a != b:
                    coeff += w[b] * t[a]
                row.append(coeff)
            rows.append(row)
    if rows:
        kernel = nullspace(Matrix(rows))
    else:
        kernel = [tuple(Fraction(int(k == j)) for k in range(len(idx))) for j in range(len(idx))]
    basis = []
    for v in kernel:
        v = primitive_integer(v)
        entries = [[Fraction(0)] * n for _ in range(n)]
        for (a, b), c in zip(idx, v):
            entries[a][b] = entries[b][a] = c
        basis.append(Matrix(entries))
    return basis


def _certify_candidate(spec: ParallelotopeSpec, Q: Matrix) -> VoronoiForm | None:
    if not is_positive_definite(Q):
        return None
    if not verify_pQt(spec, Q):
        return None
    return VoronoiForm(Q, inverse(Q))


def solve_pQt(spec: ParallelotopeSpec, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> VoronoiForm | SolutionSpace:
    """Search the solution space of the pQt system for a positive definite form.

    Raises :class:`NoSolutionError` when only ``Q = 0`` is admissible. With a
    one-dimensional space the generator and its negation are tested; otherwise
    ``samples`` seeded combinations with coefficients in ``-3..3`` are tried
    before giving up with the space marked undetermined.
    """
    basis = pqt_solution_space(spec)
    if not basis:
        raise NoSolutionError("the proportionality system only admits Q = 0")
    if len(basis) == 1:
        for G in (basis[0], -basis[0]):
            form = _certify_candidate(spec, G)
            if form is not None:
                return form
        return SolutionSpace(tuple(basis))
    rng = random.Random(seed)
    n = spec.n
    for _ in range(samples):
        coeffs = [rng.randint(-3, 3) for _ in basis]
        if not any(coeffs):
            continue
        Q = Matrix.zeros(n, n)
        for c, G in zip(coeffs, basis):
            if c:
                Q = Q + G.scaled(c)
        form = _certify_candidate(spec, Q)
        if form is not None:
            return form
    return SolutionSpace(tuple(basis))


# -- affine map (the only floating-point path) ---------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """Upper-triangular ``A`` with positive diagonal and ``A^T A ~= Q``.

    ``residual`` is ``max|A^T A - Q| / max|Q|``. Not an exact certificate.
    """

    A: np.ndarray
    residual: float


def to_float(M: Matrix) -> np.ndarray:
    return np.array([[float(a) for a in row] for row in M.tolist()], dtype=float)


def affine_map(Q: Matrix, tolerance: float = DEFAULT_TOLERANCE) -> AffineMap:
    Qf = to_float(Q)
    L = np.linalg.cholesky(Qf)
    A = L.T
    residual = float(np.max(np.abs(A.T @ A - Qf)) / np.max(np.abs(Qf)))
    if residual > tolerance:
        raise ToleranceExceededError(f"relative residual {residual:.3e} exceeds {tolerance:.3e}")
    return AffineMap(A, residual)
