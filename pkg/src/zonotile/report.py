"""Run the certification pipeline on an instance and assemble a report."""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Any

from . import __version__
from .dicing import (
    delaunay_cell_count,
    dicing_family,
    dicing_lattice,
    epsilon_products,
    verify_decomposition,
    verify_lattice_equality,
)
from .errors import NoSolutionError, ToleranceExceededError
from .io import Instance, instance_to_dict, rat, rat_matrix, rat_vector
from .scaling import is_regular
from .voronoi import (
    DEFAULT_TOLERANCE,
    ParallelotopeSpec,
    SolutionSpace,
    affine_map,
    compute_form,
    solve_pQt,
    verify_pQt,
)
from .zonotope import Zonotope

PARALLELOTOPE = "parallelotope"
NOT_PARALLELOTOPE = "not_parallelotope"
UNDETERMINED = "undetermined"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECTED = 2
EXIT_UNDETERMINED = 3

STAGES = ("check", "voronoi", "dicing", "all")


def exit_code(report: dict) -> int:
    return {PARALLELOTOPE: EXIT_OK, NOT_PARALLELOTOPE: EXIT_REJECTED, UNDETERMINED: EXIT_UNDETERMINED}[report["verdict"]]


def _affine_section(Q, tolerance: float) -> dict:
    try:
        amap = affine_map(Q, tolerance)
    except ToleranceExceededError as exc:
        return {"A": None, "residual": None, "within_tolerance": False, "error": str(exc), "certified": False}
    return {
        "A": [[float(a) for a in row] for row in amap.A],
        "residual": amap.residual,
        "tolerance": tolerance,
        "within_tolerance": True,
        # floating-point Cholesky: informative, not an exact certificate
        "certified": False,
    }


def _zonotope_report(inst: Instance, stage: str, tolerance: float) -> dict:
    Z = inst.generators
    out: dict[str, Any] = {}
    reg = is_regular(Z)
    out["matroid"] = {
        "copoints": [{"flat": list(H.flat.members), "p": rat_vector(H.p)} for H in reg.copoints],
        "binary": reg.binary.binary,
    }
    witnesses: dict[str, Any] = {}
    if reg.binary.witness is not None:
        L = reg.binary.witness
        witnesses["coline"] = {
            "flat": list(L.flat.members),
            "copoints_above": [list(H.flat.members) for H in L.copoints_above],
        }
    if reg.infeasible is not None:
        exc = reg.infeasible
        witnesses["scaling"] = {
            "violated_edge": {"copoint": exc.copoint, "generator": exc.generator},
            "product": rat(exc.found),
            "cycle": [f"{kind}{k}" for kind, k in exc.cycle],
        }
    if reg.failure is not None:
        exc = reg.failure
        witnesses["minors"] = [
            {"columns": list(exc.first[0]), "det": rat(exc.first[1])},
            {"columns": list(exc.second[0]), "det": rat(exc.second[1])},
        ]
    if reg.scaling is not None:
        out["scaling"] = {"beta": rat_vector(reg.scaling.beta), "gamma": rat_vector(reg.scaling.gamma)}
    if not reg:
        out["verdict"] = NOT_PARALLELOTOPE
        out["witnesses"] = witnesses
        return out
    out["verdict"] = PARALLELOTOPE
    out["witnesses"] = witnesses
    out["unimodularity"] = {
        "delta": rat(reg.certificate.delta),
        "checked_minor_count": reg.certificate.checked_minor_count,
    }
    if stage == "check":
        return out

    beta = reg.scaling.beta
    P = Zonotope(Z, reg.copoints)
    form = compute_form(Z, beta)
    spec = ParallelotopeSpec.from_facet_pairs(P.facet_pairs)
    pqt = verify_pQt(spec, form.Q)
    out["voronoi"] = {
        "Q": rat_matrix(form.Q),
        "Qinv": rat_matrix(form.Qinv),
        "pqt_certified": pqt.certified,
        "gamma": rat_vector(pqt.gammas),
        "affine_map": _affine_section(form.Q, tolerance),
    }
    if not pqt:
        out["verdict"] = UNDETERMINED
        out["witnesses"]["pqt_violation"] = {"index": pqt.index, "mismatch": rat_vector(pqt.mismatch)}
        return out
    if stage == "voronoi":
        return out

    L_T = P.tiling_lattice
    D = dicing_family(Z, beta, form.Q)
    L_D = dicing_lattice(D)
    out["geometry"] = {
        "translations": [rat_vector(t) for t in P.translations],
        "volume": rat(P.volume),
        "tiling_lattice": rat_matrix(L_T.basis),
        "tiling_lattice_det": rat(L_T.det),
    }
    out["dicing"] = {
        "d": [rat_vector(d) for d in D.d],
        "lambda": rat_vector(D.weights),
        "dicing_lattice": rat_matrix(L_D.basis),
        "lattice_equality": verify_lattice_equality(L_T, L_D),
        "decomposition": verify_decomposition(form.Q, D),
        "epsilon_table": [[rat(v) for v in row] for row in epsilon_products(D, P.translations)],
    }
    if Z.n <= 2:
        out["dicing"]["cells_per_domain"] = delaunay_cell_count(D)
    if not (out["dicing"]["lattice_equality"] and out["dicing"]["decomposition"]):
        out["verdict"] = UNDETERMINED
    if stage == "all":
        out["geometry"]["facet_pairs"] = [
            {"flat": list(fp.copoint.flat.members), "p": rat_vector(fp.p), "epsilon": list(fp.epsilon), "t": rat_vector(fp.t)}
            for fp in P.facet_pairs
        ]
        out["geometry"]["h_representation"] = [
            {"normal": rat_vector(s.normal), "bound": rat(s.bound)} for s in P.h_representation
        ]
    return out


def _spec_report(inst: Instance, seed: int, tolerance: float) -> dict:
    out: dict[str, Any] = {"witnesses": {}}
    try:
        result = solve_pQt(inst.spec, seed=seed)
    except NoSolutionError as exc:
        out["verdict"] = UNDETERMINED
        out["voronoi"] = {"status": "no_solution", "detail": str(exc)}
        return out
    if isinstance(result, SolutionSpace):
        out["verdict"] = UNDETERMINED
        out["voronoi"] = {
            "status": result.status,
            "solution_space": [rat_matrix(G) for G in result.basis],
        }
        return out
    pqt = verify_pQt(inst.spec, result.Q)
    out["verdict"] = PARALLELOTOPE
    out["voronoi"] = {
        "status": "certified",
        "Q": rat_matrix(result.Q),
        "Qinv": rat_matrix(result.Qinv),
        "pqt_certified": pqt.certified,
        "gamma": rat_vector(pqt.gammas),
        "affine_map": _affine_section(result.Q, tolerance),
    }
    return out


def build_report(
    inst: Instance,
    stage: str = "all",
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    seed: int = 0,
    timing: bool = True,
) -> dict:
    """Report dictionary for one instance.

    With generators the zonotope pipeline runs up to ``stage``; a spec-only
    instance goes through the general pQt solver. ``timing`` is the only
    non-deterministic field.
    """
    if stage not in STAGES:
        raise ValueError(f"unknown stage {stage!r}")
    start = time.perf_counter()
    report: dict[str, Any] = {
        "format": 1,
        "version": __version__,
        "command": stage,
        "instance": instance_to_dict(inst),
    }
    if inst.generators is not None:
        report.update(_zonotope_report(inst, stage, tolerance))
        if inst.spec is not None and "voronoi" in report and report["verdict"] == PARALLELOTOPE:
            Q = compute_form(inst.generators, [Fraction(b) for b in report["scaling"]["beta"]]).Q
            report["voronoi"]["supplied_spec_certified"] = verify_pQt(inst.spec, Q).certified
    else:
        if stage == "check":
            raise ValueError("check needs generators; use voronoi for a parallelotope_spec instance")
        report.update(_spec_report(inst, seed, tolerance))
    report = {k: report[k] for k in ("format", "version", "command", "instance", "verdict") if k in report} | {
        k: v for k, v in report.items() if k not in ("format", "version", "command", "instance", "verdict")
    }
    if timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report


def without_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}
