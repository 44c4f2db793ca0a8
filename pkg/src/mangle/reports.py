"""JSON-ready reports, one per command-line verb.

Each builder takes typed values and returns a plain dict whose scalars are
strings, integers or booleans, so identical inputs give byte-identical output.
"""

from __future__ import annotations

from typing import Any, Callable

from .cohomology import zk_betti_model, zk_betti_oracle
from .complexes import SimplicialComplex
from .errors import DomainError
from .fans import FanData, cox_data, is_delzant, normal_fan, validate_fan
from .hodge import PsiMap, build_psi, chern_matrix, hodge_numbers
from .io import fan_json, index_set, matrix_json, presentation_json, quadrics_json, vector_json
from .lagrangian import classify_lagrangian, dgamma_action, hminimal_embedding_check
from .polytopes import (
    Presentation,
    analyze_presentation,
    enumerate_vertices,
    gale_diagram,
    normalize_to_unit_b,
)
from .quadrics import (
    QuadricSystem,
    classify_intersection_small,
    is_nondegenerate,
    moment_map_report,
    positive_row_combination,
    quadrics_from_presentation,
)


def analyze_report(p: Presentation) -> dict:
    data = enumerate_vertices(p)
    analysis = analyze_presentation(p, data)
    return {
        "presentation": presentation_json(p),
        "status": analysis.status,
        "generic": analysis.generic,
        "simple": analysis.simple,
        "bounded": analysis.bounded,
        "redundant": index_set(analysis.redundant),
        "vertices": [{"point": vector_json(v.point), "active": index_set(v.active)} for v in data.vertices],
    }


def gale_report(p: Presentation) -> dict:
    q = quadrics_from_presentation(p)
    report: dict[str, Any] = {"quadrics": quadrics_json(q)}
    analysis = analyze_presentation(p)
    if analysis.status == "nonempty" and analysis.bounded:
        unit = normalize_to_unit_b(p)
        diagram = gale_diagram(unit)
        report["gale_diagram"] = {"G": matrix_json(diagram.G), "normalized": presentation_json(unit)}
    else:
        report["gale_diagram"] = None
        report["note"] = "the Gale diagram needs a nonempty bounded polyhedron"
    return report


def _certificate_json(cert) -> dict:
    if cert.member:
        return {"member": True, "coefficients": vector_json(cert.coefficients)}
    return {"member": False, "functional": vector_json(cert.functional)}


def quadrics_report(q: QuadricSystem) -> dict:
    nondeg = is_nondegenerate(q)
    report: dict[str, Any] = {
        "quadrics": quadrics_json(q),
        "nondegenerate": nondeg.nondegenerate,
        "failed_condition": nondeg.failed,
        "witness_subset": index_set(nondeg.subset) if nondeg.subset is not None else None,
        "certificate": _certificate_json(nondeg.certificate),
    }
    bounded = positive_row_combination(q) is not None
    report["bounded"] = bounded
    if nondeg and bounded and q.realm == "hermitian":
        report["topology"] = classify_intersection_small(q).to_json()
    else:
        report["topology"] = None
    mm = moment_map_report(q)
    report["moment_map"] = {
        "proper": mm.proper,
        "regular_value": mm.regular_value,
        "action_free": mm.action_free,
        "lattice_basis": matrix_json(mm.lattice.basis),
        "stabilizers": [
            {"active": index_set(s.active), "invariants": list(s.invariants), "order": s.order} for s in mm.stabilizers
        ],
    }
    return report


def fan_report(fan: FanData) -> dict:
    check = validate_fan(fan)
    report: dict[str, Any] = {
        "fan": fan_json(fan),
        "is_fan": check.is_fan,
        "complete": check.complete,
        "rational": check.rational,
        "regular": check.regular,
        "lattice_basis": matrix_json(check.lattice.basis),
        "primitive_factors": vector_json(check.primitive_factors),
        "sample_agrees": check.sample_agrees,
        "reason": check.reason,
    }
    try:
        cox = cox_data(fan)
        report["cox"] = {
            "minimal_nonfaces": sorted((index_set(s) for s in cox.minimal_nonfaces), key=lambda s: (len(s), s)),
            "G_rank": cox.G_rank,
            "G_torsion": list(cox.G_torsion),
            "action": cox.action,
        }
    except DomainError as exc:
        report["cox"] = {"error": str(exc)}
    return report


def delzant_report(p: Presentation) -> dict:
    result = is_delzant(p)
    report: dict[str, Any] = {"delzant": result.delzant, "lattice_basis": matrix_json(result.lattice.basis)}
    if not result.delzant:
        report["failing_vertex"] = vector_json(result.failing_vertex)
        report["failing_active"] = index_set(result.failing_active)
    return report


def betti_report(value: FanData | SimplicialComplex, oracle: bool = False) -> dict:
    if isinstance(value, SimplicialComplex):
        return {"oracle": zk_betti_oracle(value)}
    report: dict[str, Any] = {"model": zk_betti_model(value)}
    if oracle:
        report["oracle"] = zk_betti_oracle(value.complex)
        report["agree"] = report["oracle"] == report["model"]
    return report


def with_ghost(fan: FanData) -> FanData:
    """Append a ghost vertex carrying the zero vector."""
    k = SimplicialComplex(fan.m + 1, fan.complex.faces)
    return FanData(k, list(fan.vectors) + [[0] * fan.n], fan.n, fan.lattice)


def hodge_report(fan: FanData, psi: PsiMap | None = None) -> dict:
    if psi is None:
        psi = build_psi(fan)
    else:
        psi = build_psi(fan, psi.Psi)
    table = hodge_numbers(fan, psi)
    return {
        "fan": fan_json(fan),
        "psi": psi.to_json(),
        "chern_matrix": matrix_json(chern_matrix(psi, fan)),
        "ghost_count": table.ghost_count,
        "ell": table.ell,
        "hodge": table.to_json(),
        "diamond": table.diamond(),
        "notes": list(table.notes),
    }


def lagrangian_report(q: QuadricSystem) -> dict:
    action = dgamma_action(q)
    check = hminimal_embedding_check(q)
    topology = classify_lagrangian(q)
    return {
        "quadrics": quadrics_json(q),
        "dgamma": [{"phi": vector_json(phi), "signs": list(signs)} for phi, signs in action.generators],
        "embedding": check.embedding,
        "embedding_route": check.route,
        "failing_support": index_set(check.failing_support) if check.failing_support is not None else None,
        "topology": topology.to_json(),
    }


def _attempt(builder: Callable[[], dict]) -> dict:
    try:
        return builder()
    except DomainError as exc:
        return {"error": str(exc)}


def pipeline_report(p: Presentation) -> dict:
    """Every report reachable from one presentation; failed stages record their error."""
    report: dict[str, Any] = {"analyze": analyze_report(p)}
    report["gale"] = _attempt(lambda: gale_report(p))
    report["quadrics"] = _attempt(lambda: quadrics_report(quadrics_from_presentation(p)))
    report["delzant"] = _attempt(lambda: delzant_report(p))
    try:
        fan = normal_fan(p)
    except DomainError as exc:
        fan = None
        report["fan"] = {"error": str(exc)}
    if fan is not None:
        report["fan"] = fan_report(fan)
        report["betti"] = _attempt(lambda: betti_report(fan, oracle=fan.m <= 10))
        target = fan if (fan.m - fan.n) % 2 == 0 else with_ghost(fan)
        report["hodge"] = _attempt(lambda: hodge_report(target))
    report["lagrangian"] = _attempt(lambda: lagrangian_report(quadrics_from_presentation(p, "real")))
    return report

