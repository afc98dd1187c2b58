"""JSON encoding of algebras, modules, certificates and reports.

Encodings are deterministic: basis order as loaded, matrices row-major,
rationals as "num/den" strings, keys sorted on output.
"""
import enum
import json
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional

import numpy as np

from sg_workbench.algebra.algebras import Algebra
from sg_workbench.algebra.modules import Module
from sg_workbench.data_collection.parsers import parse_matrix, parse_module
from sg_workbench.errors import InvalidDocument
from sg_workbench.homology.pd import PdKind, PdStatus
from sg_workbench.homology.stable import SgHomReport
from sg_workbench.homology.syzygy import Recurrence
from sg_workbench.leavitt.cohomology import CohomologyReport, CrosscheckReport, DgAxiomReport
from sg_workbench.leavitt.presentation import LeavittPresentation
from sg_workbench.periodicity.certificates import NoneFound, Periodic, Unknown, VPCertificate
from sg_workbench.periodicity.closure import BuildNode, ClosureCertificate, NodeKind, NotFound
from sg_workbench.periodicity.gamma import GammaTable, TrichotomyVerdict
from sg_workbench.periodicity.probes import (NonvanishingWitness, SyzygyInventory, UCWitness, VirtuallyUCWitness,
                                             ZeroObject)


def _default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, enum.Enum):
        return value.value
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def dumps_report(report: Mapping[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=_default) + "\n"


def normalize(report: Mapping[str, Any]) -> Any:
    """The report as plain JSON values, for comparisons."""
    return json.loads(dumps_report(report))


def encode_matrix(field, matrix: Optional[np.ndarray]) -> Optional[List[List[Any]]]:
    if matrix is None:
        return None
    return field.encode_matrix(matrix)


def encode_algebra(algebra: Algebra) -> Dict[str, Any]:
    """The declarative description the algebra was loaded from."""
    spec, field = algebra.spec, algebra.field
    document: Dict[str, Any] = {"name": algebra.name, "field": field.descriptor(),
                                "nilpotency_bound": algebra.nilpotency_bound}
    if spec is not None and spec.mode == "quiver":
        document["vertices"] = list(spec.vertices)
        document["arrows"] = [list(arrow) for arrow in spec.arrows]
        document["relations"] = [[[field.encode(field.scalar(c)), path] for c, path in relation]
                                 for relation in spec.relations]
        return document
    document["basis"] = list(algebra.labels)
    document["products"] = [[[field.encode(value) for value in algebra.structure[i, j]]
                              for j in range(algebra.dim)] for i in range(algebra.dim)]
    document["semisimple"] = [algebra.labels[i] for i in algebra.idempotents]
    document["radical"] = [algebra.labels[i] for i in algebra.radical]
    return document


def encode_module(module: Module) -> Dict[str, Any]:
    algebra = module.algebra
    return {
        "name": module.name,
        "vertex_of": list(module.vertex_of),
        "action": {label: encode_matrix(algebra.field, module.action[b]) for b, label in enumerate(algebra.labels)},
    }


def decode_module(algebra: Algebra, document: Mapping[str, Any]) -> Module:
    return parse_module(algebra, document, str(document.get("name", "")))


def encode_recurrence(recurrence: Optional[Recurrence]) -> Optional[Dict[str, Any]]:
    if recurrence is None:
        return None
    return {"start": recurrence.start, "stop": recurrence.stop,
            "iso": encode_matrix(recurrence.iso.field, recurrence.iso.matrix)}


def encode_pd(status: PdStatus) -> Dict[str, Any]:
    graph = status.simple_graph
    return {
        "kind": status.kind.value,
        "degree": status.degree,
        "cutoff": status.cutoff,
        "dims": list(status.dims),
        "annotations": list(status.annotations),
        "recurrence": encode_recurrence(status.recurrence),
        "simple_graph": None if graph is None else {
            "path": list(graph.path), "cycle_start": graph.cycle_start,
            "edges": [list(edge) for edge in graph.edges]},
    }


def encode_sg_hom(report: SgHomReport) -> Dict[str, Any]:
    field = report.source.field
    return {
        "shift": report.shift,
        "cutoff": report.cutoff,
        "window": report.window,
        "status": report.status.value,
        "value": report.value,
        "certified": report.is_certified,
        "certified_from": report.certified_from,
        "truncated_at": report.truncated_at,
        "vanishing": list(report.vanishing) if report.vanishing else None,
        "stages": [{"k": stage.k, "dim": stage.dim, "hom_dim": stage.hom_dim,
                    "transition_rank": stage.transition_rank,
                    "transition": encode_matrix(field, stage.transition)} for stage in report.stages],
        "source_dims": list(report.source_dims),
        "target_dims": list(report.target_dims),
        "source_recurrence": encode_recurrence(report.source_recurrence),
        "target_recurrence": encode_recurrence(report.target_recurrence),
    }


def encode_gamma(table: GammaTable) -> Dict[str, Any]:
    return {
        "period": table.period,
        "shift_range": table.shift_range,
        "all_nonzero": table.all_nonzero,
        "all_certified": table.all_certified,
        "growing": list(table.growing()),
        "entries": [dict(n=n, **encode_sg_hom(table.reports[n])) for n in table.shifts],
    }


def encode_verdict(verdict: TrichotomyVerdict) -> Dict[str, Any]:
    return {
        "kind": verdict.kind.value,
        "degree": verdict.degree,
        "pd": encode_pd(verdict.pd),
        "syzygy_dims": list(verdict.syzygy_dims),
        "cutoff_relative": verdict.cutoff_relative,
        "cutoffs": list(verdict.cutoffs),
        "growth": encode_sg_hom(verdict.growth) if verdict.growth is not None else None,
        "table": encode_gamma(verdict.table) if verdict.table is not None else None,
    }


def encode_closure(certificate: ClosureCertificate) -> Dict[str, Any]:
    field = certificate.target.field
    return {
        "target": encode_module(certificate.target),
        "generators": [encode_module(generator) for generator in certificate.generators],
        "root": certificate.root,
        "nodes": [{
            "id": node.node_id,
            "kind": node.kind.value,
            "module": encode_module(node.module),
            "children": list(node.children),
            "maps": [encode_matrix(field, matrix) for matrix in node.maps],
            "power": node.power,
            "level": node.level,
            "vertices": list(node.vertices),
        } for node in certificate.nodes],
    }


def _map_shapes(node: Mapping[str, Any], module: Module, nodes: List[BuildNode],
                generators: List[Module]) -> List[tuple]:
    kind = NodeKind(node["kind"])
    if kind is NodeKind.ADD:
        total = generators[node["level"]].dim * node["power"]
        return [(total, module.dim), (module.dim, total)]
    if kind is NodeKind.PROJECTIVE:
        projective_dim = sum(len(module.algebra.projective_basis(v)) for v in node["vertices"])
        return [(module.dim, projective_dim)]
    children = [nodes[c].module.dim for c in node["children"]]
    if kind is NodeKind.EXTENSION:
        return [(module.dim, children[0]), (children[1], module.dim)]
    return [(children[0], module.dim), (module.dim, children[0])]


def decode_closure(algebra: Algebra, document: Mapping[str, Any]) -> ClosureCertificate:
    """Rebuild a closure certificate; its claims are checked by verify().

    Raises:
        InvalidDocument: malformed certificate
    """
    try:
        generators = [decode_module(algebra, g) for g in document["generators"]]
        nodes: List[BuildNode] = []
        for position, node in enumerate(document["nodes"]):
            if node["id"] != position or any(c >= position or c < 0 for c in node["children"]):
                raise InvalidDocument(f"closure node {position}: bad id or children")
            module = decode_module(algebra, node["module"])
            shapes = _map_shapes(node, module, nodes, generators)
            if len(node["maps"]) != len(shapes):
                raise InvalidDocument(f"closure node {position}: expected {len(shapes)} maps")
            maps = tuple(parse_matrix(algebra.field, matrix, rows, cols, f"closure node {position}")
                         for matrix, (rows, cols) in zip(node["maps"], shapes))
            nodes.append(BuildNode(position, NodeKind(node["kind"]), module, tuple(node["children"]), maps,
                                   node["power"], node["level"], tuple(node["vertices"])))
        root = document["root"]
        if not 0 <= root < len(nodes):
            raise InvalidDocument("closure root out of range")
        return ClosureCertificate(decode_module(algebra, document["target"]), tuple(generators), tuple(nodes), root)
    except (KeyError, TypeError, ValueError, IndexError) as error:
        if isinstance(error, InvalidDocument):
            raise
        raise InvalidDocument(f"Malformed closure certificate: {error}") from error


def encode_vp(certificate: VPCertificate) -> Dict[str, Any]:
    return {
        "outcome": "VPCertificate",
        "module": encode_module(certificate.module),
        "period": certificate.period,
        "pd": encode_pd(certificate.pd),
        "closure": encode_closure(certificate.closure),
    }


def decode_vp(algebra: Algebra, document: Mapping[str, Any]) -> VPCertificate:
    """The pd witness is carried by its kind only; replay recomputes it."""
    try:
        module = decode_module(algebra, document["module"])
        pd = PdStatus(PdKind(document["pd"]["kind"]), module, document["pd"]["cutoff"], document["pd"]["degree"])
        return VPCertificate(module, document["period"], pd, decode_closure(algebra, document["closure"]))
    except (KeyError, TypeError, ValueError) as error:
        if isinstance(error, InvalidDocument):
            raise
        raise InvalidDocument(f"Malformed VP certificate: {error}") from error


def encode_outcome(outcome) -> Dict[str, Any]:
    """Probe and search outcomes, witnesses inline."""
    if isinstance(outcome, VPCertificate):
        return encode_vp(outcome)
    if isinstance(outcome, Unknown):
        return {"outcome": "Unknown", "reason": outcome.reason}
    if isinstance(outcome, NotFound):
        return {"outcome": "NotFound", "reason": outcome.reason, "explored": outcome.explored}
    if isinstance(outcome, Periodic):
        return {"outcome": "Periodic", "period": outcome.period,
                "witness": encode_matrix(outcome.witness.field, outcome.witness.matrix)}
    if isinstance(outcome, NoneFound):
        return {"outcome": "NoneFound", "dmax": outcome.dmax}
    if isinstance(outcome, UCWitness):
        return {"outcome": "UCWitness", "d": outcome.d, "module": encode_module(outcome.module),
                "matches": [{"degree": i, "iso": encode_matrix(iso.field, iso.matrix)} for i, iso in outcome.matches],
                "accumulated": encode_module(outcome.accumulated)}
    if isinstance(outcome, NonvanishingWitness):
        return {"outcome": "NonvanishingWitness", "n": outcome.n, "dim": outcome.dim,
                "report": encode_sg_hom(outcome.report)}
    if isinstance(outcome, ZeroObject):
        return {"outcome": "ZeroObject", "degree": outcome.degree}
    if isinstance(outcome, VirtuallyUCWitness):
        return {"outcome": "VirtuallyUCWitness", "d": outcome.d, "generator": encode_module(outcome.generator),
                "closure": encode_closure(outcome.certificate)}
    if isinstance(outcome, SyzygyInventory):
        return {"outcome": "SyzygyInventory", "dmax": outcome.dmax,
                "classes": [encode_module(module) for module in outcome.classes],
                "first_seen": list(outcome.first_seen), "new_per_degree": list(outcome.new_per_degree),
                "stabilized_at": outcome.stabilized_at, "stable": outcome.stable,
                "candidate_dims": list(outcome.candidate.dimension_vector()),
                "e_is_syzygy": outcome.e_is_syzygy, "vanishing_level": outcome.vanishing_level}
    raise TypeError(f"No encoding for {type(outcome).__name__}")


def encode_presentation(presentation: LeavittPresentation) -> Dict[str, Any]:
    field = presentation.field
    labels = presentation.labels

    def terms(entries, first_dual: bool):
        return [[field.encode(c), f"{labels[x]}*", f"{labels[y]}*" if first_dual else labels[y]]
                for c, x, y in entries]

    return {
        "letters": list(labels),
        "sources": [presentation.algebra.vertices[v] for v in presentation.sources],
        "targets": [presentation.algebra.vertices[v] for v in presentation.targets],
        "dead_vertices": [presentation.algebra.vertices[v] for v in sorted(presentation.dead_vertices)],
        "dead_letters": [labels[i] for i in sorted(presentation.dead_letters)],
        "pivots": [None if p is None else labels[p] for p in presentation.pivots],
        "collapsed": presentation.collapsed,
        "transposed": presentation.transposed,
        "rules": presentation.rules(),
        "differential": {
            "duals": {f"{labels[k]}*": terms(presentation.plus[k], True) for k in range(presentation.size)},
            "letters": {labels[r]: terms(presentation.minus[r], False) for r in range(presentation.size)},
        },
    }


def encode_dg(report: DgAxiomReport) -> Dict[str, Any]:
    return {
        "length_bound": report.length_bound,
        "pair_relations": report.pair_relations,
        "casimir_blocks": report.casimir_blocks,
        "square_words": report.square_words,
        "leibniz_pairs": report.leibniz_pairs,
    }


def encode_cohomology(report: CohomologyReport) -> Dict[str, Any]:
    degrees = []
    for n in sorted(report.degrees):
        entry = report.degrees[n]
        degrees.append({
            "degree": n,
            "semantics": entry.semantics.value,
            "exact_dim": entry.exact_dim,
            "differential_zero": entry.differential_zero,
            "component_dims": {str(length): entry.component_dims[length] for length in entry.lengths},
            "kernel_dims": {str(length): entry.kernel_dims[length] for length in entry.lengths},
            "surviving": {str(length): {str(m): entry.surviving[length][m] for m in entry.boundary_lengths}
                          for length in entry.lengths},
            "monotonicity_failures": entry.monotonicity_failures(),
        })
    return {"length_bound": report.length_bound, "m_bound": report.m_bound, "degrees": degrees}


def encode_crosscheck(report: CrosscheckReport) -> Dict[str, Any]:
    return {
        "matched": report.matched,
        "entries": [{"degree": entry.degree, "comparison": entry.comparison.value,
                     "cohomology_dim": entry.cohomology_dim, "gamma_dim": entry.gamma_dim,
                     "annotation": entry.annotation} for entry in report.entries],
    }
