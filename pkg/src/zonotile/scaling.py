"""Positive column rescaling to a unimodular system.

Regularity of M(Z) is decided constructively. For every copoint ``H`` and
generator ``i`` outside it we need ``gamma_H * beta_i * |p_H . z_i| = 1``.
These multiplicative constraints live on the bipartite incidence graph
(copoints on one side, generators on the other). One ``beta`` per connected
component is fixed, the rest follow along a BFS spanning tree, and every
non-tree edge is then checked exactly. A consistent scaling is finally
certified by comparing all maximal minors of the rescaled matrix.

Why equal minors certify unimodularity: for a basis ``B`` of the rescaled
columns and any column ``x``, Cramer's rule writes the coordinate of ``x`` on
``b_k`` as ``det(B with b_k replaced by x) / det(B)``. Both are maximal minors,
so when every nonzero minor has the same magnitude each coordinate is 0 or
+-1. Conversely, if all coordinates in every basis are integral then basis
exchange multiplies the determinant by an integer whose inverse is also an
integer, so all nonzero minors agree in magnitude.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ZonotileError
from .linalg import Matrix, maximal_minors, scale
from .matroid import BinaryTest, Copoint, GeneratorSet, copoints, incidence, is_binary

log = logging.getLogger(__name__)


class ScalingInfeasible(ZonotileError):
    """No positive scaling exists; ``copoint`` / ``generator`` is a violated edge.

    ``cycle`` lists the incidence-graph nodes around the contradictory cycle as
    ``("H", h)`` / ``("z", i)`` pairs, starting and ending at the violated edge.
    """

    def __init__(self, copoint: int, generator: int, cycle: list[tuple[str, int]], expected, found):
        self.copoint = copoint
        self.generator = generator
        self.cycle = cycle
        self.expected = expected
        self.found = found
        super().__init__(
            f"scaling constraint violated on copoint {copoint} / generator {generator}: "
            f"gamma*beta*c = {found}, expected {expected}"
        )


class UnimodularityFailure(ZonotileError):
    """Two maximal minors of different nonzero magnitude."""

    def __init__(self, first: tuple[tuple[int, ...], Fraction], second: tuple[tuple[int, ...], Fraction]):
        self.first = first
        self.second = second
        super().__init__(f"minor {first[0]} = {first[1]} but minor {second[0]} = {second[1]}")


@dataclass(frozen=True)
class ScalingSolution:
    beta: tuple[Fraction, ...]
    gamma: tuple[Fraction, ...]
    components: tuple[int, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class UnimodularityCertificate:
    delta: Fraction
    checked_minor_count: int


def solve_scaling(Z: GeneratorSet, cps: Sequence[Copoint] | None = None) -> ScalingSolution:
    cps = copoints(Z) if cps is None else list(cps)
    r, m = Z.r, len(cps)
    # adjacency with constants c = |p_H . z_i|
    gen_adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(r)]
    cop_adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(m)]
    for h, H in enumerate(cps):
        for i, v in enumerate(incidence(Z, H)):
            if v:
                gen_adj[i].append((h, abs(v)))
                cop_adj[h].append((i, abs(v)))

    beta: list[Fraction | None] = [None] * r
    gamma: list[Fraction | None] = [None] * m
    component = [-1] * r
    cop_component = [-1] * m
    parent: dict[tuple[str, int], tuple[str, int] | None] = {}

    def path_to_root(node):
        out = [node]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    ncomp = 0
    for root in range(r):
        if beta[root] is not None:
            continue
        beta[root] = Fraction(1)
        component[root] = ncomp
        parent[("z", root)] = None
        queue = deque([("z", root)])
        while queue:
            kind, a = queue.popleft()
            if kind == "z":
                for h, c in gen_adj[a]:
                    value = 1 / (beta[a] * c)
                    if gamma[h] is None:
                        gamma[h] = value
                        cop_component[h] = ncomp
                        parent[("H", h)] = ("z", a)
                        queue.append(("H", h))
                    elif gamma[h] * beta[a] * c != 1:
                        _raise_infeasible(h, a, gamma[h] * beta[a] * c, path_to_root)
            else:
                for i, c in cop_adj[a]:
                    value = 1 / (gamma[a] * c)
                    if beta[i] is None:
                        beta[i] = value
                        component[i] = ncomp
                        parent[("z", i)] = ("H", a)
                        queue.append(("z", i))
                    elif gamma[a] * beta[i] * c != 1:
                        _raise_infeasible(a, i, gamma[a] * beta[i] * c, path_to_root)
        ncomp += 1

    # gauge: largest beta in each component is 1
    for k in range(ncomp):
        top = max(beta[i] for i in range(r) if component[i] == k)
        for i in range(r):
            if component[i] == k:
                beta[i] /= top
        for h in range(m):
            if cop_component[h] == k:
                gamma[h] *= top
    return ScalingSolution(tuple(beta), tuple(gamma), tuple(component))


def _raise_infeasible(h: int, i: int, found, path_to_root):
    up_h = path_to_root(("H", h))
    up_i = path_to_root(("z", i))
    on_i = set(up_i)
    meet = next(node for node in up_h if node in on_i)
    left = up_h[: up_h.index(meet) + 1]
    right = up_i[: up_i.index(meet)]
    cycle = left + right[::-1] + [("H", h)]
    raise ScalingInfeasible(h, i, cycle, Fraction(1), found)


def scaled_matrix(Z: GeneratorSet, beta: Sequence[Fraction]) -> Matrix:
    return Matrix.from_columns([scale(b, z) for b, z in zip(beta, Z)])


def certify_equal_minors(M: Matrix) -> UnimodularityCertificate:
    """Certificate that all nonzero maximal minors of ``M`` share one magnitude."""
    first = None
    count = 0
    for cols, det in maximal_minors(M):
        count += 1
        if det == 0:
            continue
        if first is None:
            first = (cols, det)
        elif abs(det) != abs(first[1]):
            raise UnimodularityFailure(first, (cols, det))
    if first is None:
        raise UnimodularityFailure(((), Fraction(0)), ((), Fraction(0)))
    return UnimodularityCertificate(abs(first[1]), count)


def verify_unimodular(Z: GeneratorSet, beta: Sequence[Fraction]) -> UnimodularityCertificate:
    if len(beta) != Z.r or any(b <= 0 for b in beta):
        raise ValueError("beta must hold one positive scalar per generator")
    return certify_equal_minors(scaled_matrix(Z, beta))


@dataclass
class Regularity:
    regular: bool
    copoints: list[Copoint]
    binary: BinaryTest
    scaling: ScalingSolution | None = None
    certificate: UnimodularityCertificate | None = None
    infeasible: ScalingInfeasible | None = None
    failure: UnimodularityFailure | None = None

    def __bool__(self) -> bool:
        return self.regular


def is_regular(Z: GeneratorSet) -> Regularity:
    cps = copoints(Z)
    result = Regularity(False, cps, is_binary(Z, cps))
    try:
        result.scaling = solve_scaling(Z, cps)
        result.certificate = verify_unimodular(Z, result.scaling.beta)
    except ScalingInfeasible as exc:
        result.infeasible = exc
        if result.binary:
            log.warning("binary matroid without positive column scaling: %s (%s)", Z, exc)
        return result
    except UnimodularityFailure as exc:
        result.failure = exc
        if result.binary:
            log.warning("binary matroid whose scaled system is not unimodular: %s (%s)", Z, exc)
        return result
    result.regular = True
    return result
