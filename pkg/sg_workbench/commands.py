"""Command implementations. Each takes a Workload and a RunConfig and
returns a report: version, config, seed, algebra and subject embedded."""
import logging
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from sg_workbench.algebra.modules import Module, projective_module, regular_module, simple_modules
from sg_workbench.codec import (decode_closure, decode_module, decode_vp, encode_algebra, encode_cohomology,
                                encode_crosscheck, encode_dg, encode_gamma, encode_module, encode_outcome, encode_pd,
                                encode_presentation, encode_verdict, normalize)
from sg_workbench.data_objects import RunConfig, Workload
from sg_workbench.errors import InputError, InvalidDocument, RejectFinitePd
from sg_workbench.homology.pd import pd_status
from sg_workbench.homology.syzygy import SyzygyChain
from sg_workbench.leavitt.cohomology import cohomology_report, crosscheck_lemma, verify_dg_axioms
from sg_workbench.leavitt.rewriting import leavitt_presentation
from sg_workbench.periodicity.certificates import (VPCertificate, certify_virtually_periodic, derive_nd_certificate,
                                                   detect_periodicity)
from sg_workbench.periodicity.gamma import GammaTable, gamma_table, hom_finiteness_probe
from sg_workbench.periodicity.probes import (presilting_probe, syzygy_finite_probe, ultimately_closed_probe,
                                             virtually_uc_probe)
from sg_workbench.version import version

TOOL_NAME = "sg_workbench"

# dg axiom replay is exhaustive over all degrees, so it runs on a shorter length bound
DG_LENGTH_BOUND = 6


def resolve_module(workload: Workload, name: str) -> Module:
    """Module named in the workload, or one of top, regular, simple:<v>, projective:<v>.

    Raises:
        InputError: unknown module name or vertex
    """
    algebra = workload.algebra
    if name in workload.modules:
        return workload.modules[name]
    if name == "top":
        return simple_modules(algebra)[1]
    if name == "regular":
        return regular_module(algebra)
    kind, _, vertex = name.partition(":")
    if kind == "simple" and vertex:
        return simple_modules(algebra)[0][algebra.vertex_index(vertex)]
    if kind == "projective" and vertex:
        return projective_module(algebra, algebra.vertex_index(vertex))
    raise InputError(f"Unknown module {name!r}; declared modules: {sorted(workload.modules)}")


def _chain(module: Module, run: RunConfig) -> SyzygyChain:
    return SyzygyChain(module, iso_budget=run.limits.iso_budget, seed=run.seed)


def _report(workload: Workload, run: RunConfig, result: Mapping[str, Any], summary: str,
            subject: Optional[Module] = None) -> Dict[str, Any]:
    label = f"-{run.module}" if subject is not None else ""
    return {
        "name": f"{run.command}-{workload.algebra.name or 'algebra'}{label}",
        "tool": TOOL_NAME,
        "version": version,
        "command": run.command,
        "config": run.as_dict(),
        "seed": run.seed,
        "algebra": encode_algebra(workload.algebra),
        "subject": encode_module(subject) if subject is not None else None,
        "summary": summary,
        "result": dict(result),
    }


def _certified_gamma(module: Module, period: int, shift_range: int, run: RunConfig,
                     chain: SyzygyChain) -> Tuple[GammaTable, Optional[VPCertificate]]:
    """Γ(M;d), with certified zeros checked against a VP certificate when one exists."""
    try:
        certificate = certify_virtually_periodic(module, period, run.limits, chain)
    except RejectFinitePd:
        certificate = None
    if not isinstance(certificate, VPCertificate):
        certificate = None
    table = gamma_table(module, period, shift_range, run.limits, certificate=certificate, chain=chain)
    return table, certificate


def cmd_analyze(workload: Workload, run: RunConfig) -> Dict[str, Any]:
    """Algebra summary: simples, projectives, pd of every simple and of Λ₀, trichotomy verdict."""
    algebra, limits = workload.algebra, run.limits
    simples, top = simple_modules(algebra)
    simple_pds = [pd_status(simple, limits.syzygy_cutoff, max_dim=limits.max_chain_dim) for simple in simples]
    top_pd = pd_status(top, limits.syzygy_cutoff, max_dim=limits.max_chain_dim)
    if all(status.is_finite for status in simple_pds):
        global_dimension: Any = max(status.degree for status in simple_pds)
    elif any(status.is_infinite for status in simple_pds):
        global_dimension = "infinite"
    else:
        global_dimension = "unknown"
    verdict = hom_finiteness_probe(algebra, limits)
    projectives = [projective_module(algebra, v) for v in range(algebra.vertex_count)]
    result = {
        "dim": algebra.dim,
        "labels": list(algebra.labels),
        "vertices": list(algebra.vertices),
        "radical_dim": len(algebra.radical),
        "simples": [{"vertex": algebra.vertices[v], "pd": encode_pd(status)} for v, status in enumerate(simple_pds)],
        "projectives": [{"vertex": algebra.vertices[v], "dim": projective.dim,
                         "dimension_vector": list(projective.dimension_vector())}
                        for v, projective in enumerate(projectives)],
        "top_pd": encode_pd(top_pd),
        "global_dimension": global_dimension,
        "verdict": encode_verdict(verdict),
    }
    return _report(workload, run, result, f"gl.dim {global_dimension}, verdict {verdict.kind.value}")


def cmd_gamma(workload: Workload, run: RunConfig) -> Dict[str, Any]:
    module = resolve_module(workload, run.module)
    table, certificate = _certified_gamma(module, run.period, run.limits.shift_range, run, _chain(module, run))
    result = {"table": encode_gamma(table), "virtually_periodic": certificate is not None}
    values = ", ".join(f"{n}: {table.value(n)}" for n in table.shifts)
    return _report(workload, run, result, f"Γ dims {{{values}}}", module)


def cmd_certify_vp(workload: Workload, run: RunConfig) -> Dict[str, Any]:
    module = resolve_module(workload, run.module)
    chain = _chain(module, run)
    try:
        outcome = certify_virtually_periodic(module, run.period, run.limits, chain)
    except RejectFinitePd as error:
        result = {"outcome": "RejectFinitePd", "pd": encode_pd(error.status)}
        return _report(workload, run, result, str(error), module)
    if isinstance(outcome, VPCertificate) and run.multiple > 1:
        outcome = derive_nd_certificate(outcome, run.multiple, chain)
    result = encode_outcome(outcome)
    summary = (f"virtually {outcome.period}-periodic, {len(outcome.closure.nodes)} nodes"
               if isinstance(outcome, VPCertificate) else result["outcome"])
    return _report(workload, run, result, summary, module)


def cmd_presilting(workload: Workload, run: RunConfig) -> Dict[str, Any]:
    module = resolve_module(workload, run.module)
    outcome = presilting_probe(module, run.limits.shift_range, run.limits, _chain(module, run))
    result = encode_outcome(outcome)
    return _report(workload, run, result, result["outcome"], module)


def cmd_probes(workload: Workload, run: RunConfig) -> Dict[str, Any]:
    """Periodicity, ultimately-closed, syzygy-finite and virtually ultimately-closed searches."""
    module = resolve_module(workload, run.module)
    chain = _chain(module, run)
    result = {
        "periodicity": encode_outcome(detect_periodicity(module, run.dmax, chain, run.limits)),
        "ultimately_closed": encode_outcome(ultimately_closed_probe(module, run.dmax, run.limits, chain)),
        "syzygy_finite": encode_outcome(syzygy_finite_probe(workload.algebra, run.dmax, run.limits)),
        "virtually_ultimately_closed": encode_outcome(virtually_uc_probe(module, run.dmax, run.limits, chain)),
    }
    summary = ", ".join(f"{key} {value['outcome']}" for key, value in sorted(result.items()))
    return _report(workload, run, result, summary, module)


def cmd_leavitt(workload: Workload, run: RunConfig) -> Dict[str, Any]:
    limits = run.limits
    presentation = leavitt_presentation(workload.algebra)
    axioms = verify_dg_axioms(presentation, min(limits.length_bound, DG_LENGTH_BOUND), seed=run.seed)
    report = cohomology_report(presentation, run.degree_range, limits.length_bound, limits.m_bound)
    result = {"presentation": encode_presentation(presentation), "dg_axioms": encode_dg(axioms),
              "cohomology": encode_cohomology(report)}
    exact = {n: report.exact(n) for n in sorted(report.degrees)}
    return _report(workload, run, result, f"collapsed {presentation.collapsed}, exact H^n {exact}")


def cmd_crosscheck(workload: Workload, run: RunConfig) -> Dict[str, Any]:
    """Exact Leavitt cohomology against the certified entries of Γ(Λ₀;1)."""
    limits = run.limits
    low, high = run.degree_range
    presentation = leavitt_presentation(workload.algebra)
    report = cohomology_report(presentation, (low, high), limits.length_bound, limits.m_bound)
    _, top = simple_modules(workload.algebra)
    table, _ = _certified_gamma(top, 1, max(abs(low), abs(high)), run, _chain(top, run))
    comparison = crosscheck_lemma(report, table)
    result = {"cohomology": encode_cohomology(report), "gamma": encode_gamma(table),
              "crosscheck": encode_crosscheck(comparison)}
    return _report(workload, run, result, f"comparisons {comparison.comparisons()}")


REPLAYABLE: Dict[str, Callable[[Workload, RunConfig], Dict[str, Any]]] = {
    "analyze": cmd_analyze,
    "gamma": cmd_gamma,
    "certify-vp": cmd_certify_vp,
    "presilting": cmd_presilting,
    "probes": cmd_probes,
    "leavitt": cmd_leavitt,
    "crosscheck": cmd_crosscheck,
}


def _witness_failures(workload: Workload, command: str, result: Mapping[str, Any]) -> List[str]:
    """Replay the certificates embedded in a result."""
    algebra = workload.algebra
    if command == "certify-vp" and result.get("outcome") == "VPCertificate":
        certificate = decode_vp(algebra, result)
        return certificate.verify()
    if command == "probes":
        witness = result.get("virtually_ultimately_closed", {})
        if witness.get("outcome") == "VirtuallyUCWitness":
            return [f"virtually ultimately-closed: {failure}"
                    for failure in decode_closure(algebra, witness["closure"]).verify()]
    return []


def cmd_verify(workload: Workload, run: RunConfig) -> Dict[str, Any]:
    """Replay a saved report: check its witnesses, recompute it and compare.

    Raises:
        InputError: the input is not a report of a replayable command
    """
    document = workload.document
    if not document or "command" not in document or "result" not in document:
        raise InputError("verify needs a report produced by another command")
    command = document["command"]
    if command not in REPLAYABLE:
        raise InputError(f"Reports of {command!r} cannot be replayed")
    stored = RunConfig.from_dict(document.get("config", {}), data_source=run.data_source,
                                 writer_engine=run.writer_engine)
    failures = []
    if document.get("version") != version:
        logging.warning(f"Report was written by version {document.get('version')}, replaying with {version}")
    if document.get("seed") != stored.seed:
        failures.append("embedded seed differs from the config seed")
    modules = dict(workload.modules)
    if document.get("subject") is not None:
        modules[stored.module] = decode_module(workload.algebra, document["subject"])
    replay_workload = Workload(workload.algebra, modules, None, workload.origin)
    try:
        failures.extend(_witness_failures(replay_workload, command, document["result"]))
    except InvalidDocument as error:
        failures.append(f"witness does not decode: {error}")
    fresh = REPLAYABLE[command](replay_workload, stored)
    if normalize(fresh["result"]) != document["result"]:
        failures.append("recomputed result differs from the stored result")
    verified = not failures
    for failure in failures:
        logging.error(f"Verification failure: {failure}")
    logging.info(f"Replay of {command} report {'verified' if verified else 'FAILED'}")
    result = {"replayed": command, "verified": verified, "failures": failures}
    return {
        **_report(workload, run, result, "verified" if verified else f"{len(failures)} failure(s)"),
        "name": f"verify-{document.get('name', command)}",
    }


COMMANDS: Dict[str, Callable[[Workload, RunConfig], Dict[str, Any]]] = dict(REPLAYABLE, verify=cmd_verify)
