"""Witness searches: ultimately-closed, syzygy-finite, presilting and
virtually ultimately-closed modules."""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from sg_workbench.algebra.algebras import Algebra
from sg_workbench.algebra.isomorphism import decompose, indecomposables_isomorphic
from sg_workbench.algebra.modules import Module, ModuleMap, direct_sum, simple_modules, zero_module
from sg_workbench.data_objects import Limits
from sg_workbench.homology.pd import pd_status
from sg_workbench.homology.stable import SgHomReport, sg_hom
from sg_workbench.homology.syzygy import SyzygyChain
from sg_workbench.periodicity.certificates import Unknown
from sg_workbench.periodicity.closure import ClosureCertificate, extension_closure_member


def _sum_or_zero(modules: Sequence[Module], algebra, name: str) -> Module:
    nonzero = [m for m in modules if m.dim]
    if not nonzero:
        return zero_module(algebra)
    return direct_sum(nonzero, name).module


def _indecomposables(module: Module, limits: Limits) -> List[Module]:
    return [piece.module for piece in decompose(module, eigen_scan=limits.eigen_scan, seed=limits.seed).pieces]


def _find_class(module: Module, classes: Sequence[Module]) -> Optional[Tuple[int, ModuleMap]]:
    for index, known in enumerate(classes):
        iso = indecomposables_isomorphic(module, known)
        if iso is not None:
            return index, iso
    return None


@dataclass(frozen=True, eq=False)
class UCWitness:
    """Every summand of X_d is isomorphic to a summand of some X_i, i < d.

    matches[j] = (i, iso) for the j-th summand of X_d; accumulated is
    E = X_0 ⊕ … ⊕ X_{d-1}, a virtually 1-periodic module.
    """
    d: int
    module: Module
    matches: Tuple[Tuple[int, ModuleMap], ...]
    accumulated: Module


def ultimately_closed_probe(module: Module, dmax: int, limits: Optional[Limits] = None,
                            chain: Optional[SyzygyChain] = None) -> Union[UCWitness, Unknown]:
    limits = limits or Limits()
    chain = chain or SyzygyChain(module, iso_budget=limits.iso_budget, seed=limits.seed)
    earlier: List[Tuple[int, Module]] = []
    for d in range(1, dmax + 1):
        earlier.extend((d - 1, piece) for piece in _indecomposables(chain.module(d - 1), limits))
        current = chain.module(d)
        matches = []
        for piece in _indecomposables(current, limits):
            found = _find_class(piece, [known for _, known in earlier])
            if found is None:
                break
            matches.append((earlier[found[0]][0], found[1]))
        else:
            accumulated = _sum_or_zero([chain.module(i) for i in range(d)], module.algebra, f"E({module.name})")
            logging.info(f"{module.name or 'Module'} is ultimately closed at d={d}")
            return UCWitness(d, current, tuple(matches), accumulated)
    return Unknown(f"no witness up to d={dmax}", limits)


@dataclass(frozen=True, eq=False)
class SyzygyInventory:
    """Indecomposable summands of Ω^d over the seeds for 1 <= d <= dmax.

    first_seen[i] is the smallest d at which classes[i] appeared;
    vanishing_level is the first d where every raw syzygy is zero.
    """
    algebra: Algebra
    dmax: int
    classes: Tuple[Module, ...]
    first_seen: Tuple[int, ...]
    new_per_degree: Tuple[int, ...]
    stabilized_at: Optional[int]
    stable: bool
    candidate: Module
    e_is_syzygy: bool
    vanishing_level: Optional[int]


def syzygy_finite_probe(algebra: Algebra, dmax: int, limits: Optional[Limits] = None,
                        seeds: Sequence[Module] = ()) -> SyzygyInventory:
    limits = limits or Limits()
    simples, _ = simple_modules(algebra)
    chains = [SyzygyChain(seed, iso_budget=limits.iso_budget, seed=limits.seed) for seed in list(simples) + list(seeds)]
    classes: List[Module] = []
    first_seen: List[int] = []
    new_per_degree = []
    vanishing_level = None
    for d in range(1, dmax + 1):
        new = 0
        raw_total = 0
        for chain in chains:
            raw_total += chain.stage(d - 1).cover.kernel.module.dim
            for piece in _indecomposables(chain.module(d), limits):
                if _find_class(piece, classes) is None:
                    classes.append(piece.relabel(f"I{len(classes)}"))
                    first_seen.append(d)
                    new += 1
        new_per_degree.append(new)
        if raw_total == 0 and vanishing_level is None:
            vanishing_level = d
    last_new = max((d for d, count in enumerate(new_per_degree, start=1) if count), default=None)
    quiet = dmax - (last_new or 0)
    candidate = _sum_or_zero(classes, algebra, "E")
    covered = set()
    for known in classes:
        for piece in _indecomposables(SyzygyChain(known).module(1), limits):
            found = _find_class(piece, classes)
            if found is not None:
                covered.add(found[0])
    inventory = SyzygyInventory(algebra, dmax, tuple(classes), tuple(first_seen), tuple(new_per_degree),
                                last_new, quiet >= limits.window, candidate,
                                bool(classes) and len(covered) == len(classes), vanishing_level)
    logging.info(f"Syzygy inventory of {algebra.name or 'algebra'}: {len(classes)} classes, "
                 f"last new at d={last_new}")
    return inventory


@dataclass(frozen=True, eq=False)
class NonvanishingWitness:
    n: int
    dim: int
    report: SgHomReport


@dataclass(frozen=True)
class ZeroObject:
    """pd(X) is finite, so X vanishes in D_sg."""
    degree: int


def presilting_probe(module: Module, nmax: int, limits: Optional[Limits] = None,
                     chain: Optional[SyzygyChain] = None) -> Union[NonvanishingWitness, ZeroObject, Unknown]:
    """First n in 1..nmax with a certified nonzero Hom_sg(X, Σ^n X).

    Unknown never means that X is presilting.
    """
    limits = limits or Limits()
    chain = chain or SyzygyChain(module, iso_budget=limits.iso_budget, seed=limits.seed)
    status = pd_status(module, limits.syzygy_cutoff, chain=chain, max_dim=limits.max_chain_dim)
    if status.is_finite:
        return ZeroObject(status.degree)
    for n in range(1, nmax + 1):
        report = sg_hom(module, n, module, limits.syzygy_cutoff, window=limits.window,
                        max_cells=limits.max_hom_cells, source_chain=chain, target_chain=chain,
                        max_dim=limits.max_chain_dim)
        if report.is_certified and report.value >= 1:
            logging.info(f"Hom_sg({module.name or 'X'}, Σ^{n}) has dimension {report.value}")
            return NonvanishingWitness(n, report.value, report)
    return Unknown(f"no certified nonzero shift up to n={nmax}", limits)


@dataclass(frozen=True, eq=False)
class VirtuallyUCWitness:
    d: int
    generator: Module
    certificate: ClosureCertificate


def virtually_uc_probe(module: Module, dmax: int, limits: Optional[Limits] = None,
                       chain: Optional[SyzygyChain] = None) -> Union[VirtuallyUCWitness, Unknown]:
    """First d <= dmax with X_d ∈ ⟨X_0 ⊕ … ⊕ X_{d-1}⟩."""
    limits = limits or Limits()
    chain = chain or SyzygyChain(module, iso_budget=limits.iso_budget, seed=limits.seed)
    for d in range(1, dmax + 1):
        generator = _sum_or_zero([chain.module(i) for i in range(d)], module.algebra, f"E_{d}({module.name})")
        result = extension_closure_member(chain.module(d), generator, limits)
        if isinstance(result, ClosureCertificate):
            return VirtuallyUCWitness(d, generator, result)
    return Unknown(f"no closure certificate up to d={dmax}", limits)
