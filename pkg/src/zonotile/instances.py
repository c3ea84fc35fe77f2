"""Standard generator sets used as fixtures and in tests."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .matroid import GeneratorSet


def hexagon() -> GeneratorSet:
    return GeneratorSet([(1, 0), (0, 1), (1, 2)])


def octagon() -> GeneratorSet:
    return GeneratorSet([(1, 0), (0, 1), (1, 1), (1, -1)])


def cube(n: int = 2) -> GeneratorSet:
    return GeneratorSet([[int(i == j) for i in range(n)] for j in range(n)])


def graphic(vertices: int, edges: Iterable[tuple[int, int]]) -> GeneratorSet:
    """Edge vectors ``e_a - e_b`` of a connected graph, coordinate of vertex 0 dropped."""
    gens = []
    for a, b in edges:
        a, b = min(a, b), max(a, b)
        v = [0] * vertices
        v[a], v[b] = 1, -1
        gens.append(v[1:])
    return GeneratorSet(gens, dimension=vertices - 1)


def complete_graph(k: int) -> GeneratorSet:
    return graphic(k, combinations(range(k), 2))
