"""Acceptance criteria, one test each; run with ``pytest tests/test_acceptance.py -s``.

Every test records a PASS/FAIL line that is also printed in the terminal summary.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction as F
from functools import cache

import pytest

from conftest import ACCEPTANCE_LINES, GRAPHS, graph_generators
from oracles import random_rational, unimodular_by_definition
from zonotile.cli import main
from zonotile.dicing import (
    dicing_family,
    dicing_lattice,
    epsilon_products,
    verify_decomposition,
    verify_lattice_equality,
)
from zonotile.instances import cube, hexagon, octagon
from zonotile.io import Instance, instance_to_dict, dumps
from zonotile.linalg import Matrix, determinant, dot, scale
from zonotile.matroid import copoints, is_binary
from zonotile.scaling import (
    ScalingInfeasible,
    UnimodularityFailure,
    is_regular,
    solve_scaling,
    verify_unimodular,
)
from zonotile.voronoi import ParallelotopeSpec, affine_map, compute_form, verify_pQt, voronoi_membership
from zonotile.zonotope import Zonotope


@contextmanager
def criterion(number: int, title: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        line = f"criterion {number} FAIL  {title}"
        raise
    else:
        line = f"criterion {number} PASS  {title} ({time.perf_counter() - start:.2f}s)"
    finally:
        ACCEPTANCE_LINES.append(line)
        print(line)


class Certified:
    """Everything the property criteria need about one certified instance."""

    def __init__(self, name, Z):
        self.name = name
        self.Z = Z
        self.P = Zonotope(Z)
        self.regularity = is_regular(Z)
        self.beta = self.regularity.scaling.beta
        self.Q = compute_form(Z, self.beta).Q
        self.D = dicing_family(Z, self.beta, self.Q)


@cache
def certified_instances() -> tuple[Certified, ...]:
    named = [("hexagon", hexagon()), ("cube2", cube(2)), ("cube3", cube(3))]
    named += [(f"graph{G.number_of_nodes()}v{G.number_of_edges()}e#{k}", graph_generators(G)) for k, G in enumerate(GRAPHS)]
    return tuple(Certified(name, Z) for name, Z in named)


def golden(Z):
    P = Zonotope(Z)
    sol = solve_scaling(Z, P.copoints)
    Q = compute_form(Z, sol.beta).Q
    D = dicing_family(Z, sol.beta, Q)
    return P, sol, Q, D


def test_criterion_1_hexagon_golden_run():
    with criterion(1, "hexagon golden run"):
        start = time.perf_counter()
        P, sol, Q, D = golden(hexagon())
        assert sol.beta == (F(1, 2), 1, F(1, 2))
        assert max(sol.beta) == 1
        assert Q == Matrix([[F(3, 4), F(-1, 4)], [F(-1, 4), F(1, 4)]])
        assert [fp.t for fp in P.facet_pairs] == [(2, 6), (4, 4), (2, -2)]
        res = verify_pQt(ParallelotopeSpec.from_facet_pairs(P.facet_pairs), Q)
        assert res.certified and all(g > 0 for g in res.gammas)
        # the factors in the form p = g' Q t are (1, 1/2, 1), reciprocal to Q t = g p
        reciprocal = (F(1), F(1, 2), F(1))
        assert tuple(1 / g for g in res.gammas) == reciprocal
        for fp, g in zip(P.facet_pairs, reciprocal):
            assert fp.p == scale(g, Q @ fp.t)
        L_T, L_D = P.tiling_lattice, dicing_lattice(D)
        assert verify_lattice_equality(L_T, L_D)
        assert abs(determinant(L_D.basis)) == L_T.det == P.volume == 16
        assert time.perf_counter() - start < 1.0


@pytest.mark.parametrize("n", [2, 3])
def test_criterion_2_cube_golden_run(n):
    with criterion(2, f"cube golden run n={n}"):
        start = time.perf_counter()
        P, sol, Q, D = golden(cube(n))
        assert Q == Matrix.identity(n).scaled(F(1, 2))
        assert P.tiling_lattice.basis == Matrix.identity(n).scaled(2)
        assert dicing_lattice(D).basis == Matrix.identity(n).scaled(2)
        assert time.perf_counter() - start < 1.0


def test_criterion_3_octagon_rejection(tmp_path, capsys):
    with criterion(3, "octagon rejection"):
        Z = octagon()
        assert Z.vectors == ((1, 0), (0, 1), (1, 1), (1, -1))
        test = is_binary(Z)
        assert not test.binary
        assert len(test.witness.copoints_above) == 4
        with pytest.raises(ScalingInfeasible) as info:
            solve_scaling(Z, copoints(Z))
        cycle = info.value.cycle
        assert len(cycle) >= 5 and cycle[0] == cycle[-1]
        path = tmp_path / "octagon.json"
        path.write_text(dumps(instance_to_dict(Instance(2, Z, None, "octagon"))))
        assert main(["check", str(path)]) == 2
        capsys.readouterr()


def test_criterion_4_graphic_family():
    with criterion(4, f"graphic family ({len(GRAPHS)} graphs)"):
        start = time.perf_counter()
        assert len(GRAPHS) == 30
        for G in GRAPHS:
            Z = graph_generators(G)
            assert Z.n == G.number_of_nodes() - 1
            reg = is_regular(Z)
            assert reg.regular, G.edges()
            P = Zonotope(Z, reg.copoints)
            Q = compute_form(Z, reg.scaling.beta).Q
            res = verify_pQt(ParallelotopeSpec.from_facet_pairs(P.facet_pairs), Q)
            assert res.certified and all(g > 0 for g in res.gammas)
            assert P.tiling_lattice.det == P.volume
            D = dicing_family(Z, reg.scaling.beta, Q)
            assert verify_lattice_equality(P.tiling_lattice, dicing_lattice(D))
            assert verify_decomposition(Q, D)
        assert time.perf_counter() - start < 60.0


def test_criterion_5_membership_equivalence():
    with criterion(5, "Voronoi membership equals H-representation membership"):
        rng = random.Random(20240501)
        for inst in certified_instances():
            box = [float(b) for b in inst.P._bounding_box]
            agree_in = 0
            for _ in range(500):
                x = tuple(random_rational(rng, -1.25 * b, 1.25 * b) for b in box)
                expected = inst.P.contains(x)
                assert voronoi_membership(inst.P.translations, inst.Q, x) == expected, (inst.name, x)
                agree_in += expected
            assert 0 < agree_in < 500, inst.name


def test_criterion_6_affine_map_residual():
    with criterion(6, "affine map residual <= 1e-12"):
        worst = 0.0
        for inst in certified_instances():
            amap = affine_map(inst.Q, tolerance=1e-12)
            assert amap.residual <= 1e-12, inst.name
            worst = max(worst, amap.residual)
        print(f"  worst relative residual {worst:.3e}")


def test_criterion_7_tiling_sampling():
    with criterion(7, "tiling sampling, n <= 3"):
        rng = random.Random(7)
        den = 1_000_003
        small = [inst for inst in certified_instances() if inst.Z.n <= 3]
        assert len(small) >= 10
        for inst in small:
            B = inst.P.tiling_lattice.basis
            accepted = 0
            while accepted < 1000:
                x = B @ [F(rng.randrange(den), den) for _ in range(inst.Z.n)]
                hits = inst.P.covering_translates(x, strict=True)
                if not hits:
                    # no open tile holds x: it must lie on a tile boundary
                    assert inst.P.covering_translates(x, strict=False), (inst.name, x)
                    continue
                assert len(hits) == 1, (inst.name, x, hits)
                accepted += 1
            # vertices are where the most closed tiles meet
            for _ in range(5):
                c = [rng.randint(-50, 50) for _ in range(inst.Z.n)]
                v = tuple(sum(((dot(c, z) > 0) - (dot(c, z) < 0)) * z[k] for z in inst.Z) for k in range(inst.Z.n))
                assert 1 <= len(inst.P.covering_translates(v, strict=False)) <= 2**inst.Z.n, inst.name


def test_criterion_8_epsilon_table():
    with criterion(8, "epsilon table entries in {0, +1, -1}"):
        for inst in certified_instances():
            table = epsilon_products(inst.D, inst.P.translations)
            for fp, row in zip(inst.P.facet_pairs, table):
                for i, e in enumerate(row):
                    assert e in (-1, 0, 1)
                    assert (e == 0) == (i in fp.copoint.flat), inst.name


def test_criterion_9_unimodularity_oracle():
    with criterion(9, "equal-minor certification matches the definition, r <= 8"):
        rng = random.Random(9)
        pool = [("hexagon", hexagon()), ("octagon", octagon()), ("cube2", cube(2)), ("cube3", cube(3))]
        pool += [(str(sorted(G.edges())), graph_generators(G)) for G in GRAPHS]
        checked = 0
        for name, Z in pool:
            if Z.r > 8:
                continue
            betas = [(F(1),) * Z.r]
            try:
                betas.append(solve_scaling(Z).beta)
            except ScalingInfeasible:
                pass
            betas += [tuple(F(rng.randint(1, 4), rng.randint(1, 4)) for _ in range(Z.r)) for _ in range(2)]
            for beta in betas:
                try:
                    verify_unimodular(Z, beta)
                    certified = True
                except UnimodularityFailure:
                    certified = False
                assert certified == unimodular_by_definition([scale(b, z) for b, z in zip(beta, Z)]), name
                checked += 1
        assert checked >= 100
