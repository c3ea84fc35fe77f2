import logging
import random
from fractions import Fraction as F

import pytest

from conftest import GRAPHS, graph_generators
from oracles import unimodular_by_definition
from zonotile import scaling
from zonotile.instances import complete_graph, cube, hexagon, octagon
from zonotile.linalg import Matrix, determinant, dot, scale
from zonotile.matroid import GeneratorSet, copoints, is_binary
from zonotile.scaling import (
    ScalingInfeasible,
    UnimodularityFailure,
    is_regular,
    solve_scaling,
    verify_unimodular,
)


def transformed(Z: GeneratorSet, seed: int) -> GeneratorSet:
    """Random invertible linear image of Z with random positive column scales."""
    rng = random.Random(seed)
    n = Z.n
    while True:
        T = Matrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if determinant(T) != 0:
            break
    return GeneratorSet([scale(F(rng.randint(1, 5), rng.randint(1, 5)), T @ z) for z in Z])


class TestSolveScaling:
    def test_hexagon(self, hex_Z):
        sol = solve_scaling(hex_Z)
        assert sol.beta == (F(1, 2), 1, F(1, 2))
        # hand solution of the six incidence equations with max beta = 1
        assert sol.gamma == (1, 2, 1)

    def test_square(self):
        sol = solve_scaling(cube(2))
        assert sol.beta == (1, 1) and sol.gamma == (1, 1)

    def test_octagon_infeasible_cycle(self, oct_Z):
        cps = copoints(oct_Z)
        with pytest.raises(ScalingInfeasible) as info:
            solve_scaling(oct_Z, cps)
        exc = info.value
        cycle = exc.cycle
        assert cycle[0] == cycle[-1] == ("H", exc.copoint)
        assert ("z", exc.generator) in cycle
        kinds = [k for k, _ in cycle]
        assert all(a != b for a, b in zip(kinds, kinds[1:]))
        # the alternating product of edge constants around the cycle is not 1
        ratio = F(1)
        for idx, (a, b) in enumerate(zip(cycle, cycle[1:])):
            h, i = (a[1], b[1]) if a[0] == "H" else (b[1], a[1])
            c = abs(dot(cps[h].p, oct_Z[i]))
            ratio = ratio * c if idx % 2 == 0 else ratio / c
        assert ratio != 1

    def test_disconnected_components_normalised_separately(self):
        Z = GeneratorSet([(1, 0), (0, 3)])
        sol = solve_scaling(Z)
        assert sol.beta == (1, 1)
        assert sol.gamma == (F(1, 3), 1)
        assert len(set(sol.components)) == 2

    @pytest.mark.parametrize("G", GRAPHS, ids=lambda G: f"{G.number_of_nodes()}v{G.number_of_edges()}e")
    def test_incidence_products_graphic(self, G):
        Z = graph_generators(G)
        cps = copoints(Z)
        sol = solve_scaling(Z, cps)
        for H, g in zip(cps, sol.gamma):
            for b, z in zip(sol.beta, Z):
                assert g * b * abs(dot(H.p, z)) in (0, 1)

    @pytest.mark.parametrize("seed", range(6))
    def test_recovers_transformed_systems(self, seed):
        Z = transformed(complete_graph(4), seed)
        sol = solve_scaling(Z)
        assert max(sol.beta) == 1
        scaled = [scale(b, z) for b, z in zip(sol.beta, Z)]
        assert unimodular_by_definition(scaled)

    def test_reordering_permutes_solution(self, k4_Z):
        perm = [3, 0, 5, 1, 4, 2]
        Z = transformed(k4_Z, 1)
        sol = solve_scaling(Z)
        solp = solve_scaling(GeneratorSet([Z[i] for i in perm]))
        assert solp.beta == tuple(sol.beta[i] for i in perm)

    def test_gauge_freedom(self, hex_Z):
        cps = copoints(hex_Z)
        sol = solve_scaling(hex_Z, cps)
        c = F(7, 3)
        for H, g in zip(cps, sol.gamma):
            for b, z in zip(sol.beta, hex_Z):
                assert (g / c) * (b * c) * abs(dot(H.p, z)) in (0, 1)


class TestVerifyUnimodular:
    def test_hexagon(self, hex_Z):
        cert = verify_unimodular(hex_Z, (F(1, 2), 1, F(1, 2)))
        assert cert.delta == F(1, 2) and cert.checked_minor_count == 3

    def test_identity(self):
        assert verify_unimodular(cube(2), (1, 1)).delta == 1

    def test_unscaled_hexagon_fails(self, hex_Z):
        with pytest.raises(UnimodularityFailure) as info:
            verify_unimodular(hex_Z, (1, 1, 1))
        dets = {abs(info.value.first[1]), abs(info.value.second[1])}
        assert dets == {1, 2}

    def test_requires_positive_beta(self, hex_Z):
        with pytest.raises(ValueError):
            verify_unimodular(hex_Z, (1, 0, 1))


class TestIsRegular:
    def test_hexagon(self, hex_Z):
        assert is_regular(hex_Z).regular

    def test_octagon(self, oct_Z):
        res = is_regular(oct_Z)
        assert not res.regular
        assert res.infeasible is not None
        assert len(res.binary.witness.copoints_above) == 4

    def test_k4(self, k4_Z):
        res = is_regular(k4_Z)
        assert res.regular and res.certificate.delta == 1

    def test_fano_like_dependency_rejected(self):
        # U(2,5) and U(3,6)-type real configurations are not binary
        for gens in ([(1, 0), (0, 1), (1, 1), (1, 2)],
                     [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, 4, 9)]):
            Z = GeneratorSet(gens)
            assert not is_regular(Z).regular
            assert not is_binary(Z).binary

    def test_agrees_with_binarity_on_random_configurations(self):
        rng = random.Random(11)
        seen = {True: 0, False: 0}
        for _ in range(60):
            n = rng.choice([2, 3])
            r = rng.randint(n, n + 3)
            gens = []
            while len(gens) < r:
                v = tuple(rng.randint(-1, 1) for _ in range(n))
                if any(v):
                    gens.append(v)
            try:
                Z = GeneratorSet(gens)
            except Exception:
                continue
            reg = is_regular(Z)
            binary = is_binary(Z).binary
            assert reg.regular == binary
            seen[reg.regular] += 1
        assert seen[True] and seen[False]

    def test_infeasible_but_binary_is_logged(self, hex_Z, monkeypatch, caplog):
        def boom(Z, cps=None):
            raise ScalingInfeasible(0, 0, [("H", 0), ("z", 0), ("H", 0)], F(1), F(2))

        monkeypatch.setattr(scaling, "solve_scaling", boom)
        with caplog.at_level(logging.WARNING, logger="zonotile.scaling"):
            assert not is_regular(hex_Z).regular
        assert "binary matroid without positive column scaling" in caplog.text


def test_equal_minor_criterion_matches_definition():
    """Cross-check on small systems: certified iff every basis gives integral coordinates."""
    rng = random.Random(5)
    instances = [hexagon(), octagon(), cube(2), cube(3), complete_graph(4)]
    instances += [graph_generators(G) for G in GRAPHS if G.number_of_edges() <= 8]
    checked = 0
    for Z in instances:
        betas = [tuple(F(1) for _ in range(Z.r))]
        try:
            betas.append(solve_scaling(Z).beta)
        except ScalingInfeasible:
            pass
        betas.append(tuple(F(rng.randint(1, 3), rng.randint(1, 3)) for _ in range(Z.r)))
        for beta in betas:
            cols = [scale(b, z) for b, z in zip(beta, Z)]
            try:
                verify_unimodular(Z, beta)
                certified = True
            except UnimodularityFailure:
                certified = False
            assert certified == unimodular_by_definition(cols)
            checked += 1
    assert checked > 40
