"""Stable Hom spaces and singularity-category Homs by syzygy shifting.

Hom_sg(M, Σ^n N) is realized as the colimit over k of
stable Hom(Ω^{k+n} M, Ω^k N) along the maps induced by lifting through
the minimal covers.
"""
import enum
import logging
import math
from dataclasses import dataclass, field as dataclass_field
from typing import List, Optional, Tuple

import numpy as np

from sg_workbench.algebra import linalg
from sg_workbench.algebra.modules import HomSpace, Module, ModuleMap, hom_space
from sg_workbench.errors import CutoffTooSmall, InvariantBreach, StageTooLarge
from sg_workbench.homology.covers import ProjectiveCover, omega_map, projective_cover
from sg_workbench.homology.syzygy import Recurrence, SyzygyChain

MAX_HOM_CELLS = 512
WINDOW = 3


@dataclass(frozen=True, eq=False)
class StableHomSpace:
    """Hom(M, N) modulo maps factoring through a projective.

    factoring[i] = cover.epi ∘ lifts[i]; quotient holds representatives
    of a basis of the stable Hom space.
    """
    source: Module
    target: Module
    hom: HomSpace
    cover: ProjectiveCover
    factoring: Tuple[ModuleMap, ...]
    lifts: Tuple[ModuleMap, ...]
    quotient: Tuple[ModuleMap, ...]

    @property
    def hom_dim(self) -> int:
        return self.hom.dim

    @property
    def factoring_dim(self) -> int:
        return len(self.factoring)

    @property
    def dim(self) -> int:
        return len(self.quotient)

    def _columns(self) -> np.ndarray:
        field = self.source.field
        cells = self.source.dim * self.target.dim
        maps = list(self.factoring) + list(self.quotient)
        return linalg.hstack(field, [f.matrix.reshape(cells, 1) for f in maps], cells)

    def coordinates(self, f) -> np.ndarray:
        """Coordinates of the class of f in the quotient basis."""
        field = self.source.field
        matrix = f.matrix if isinstance(f, ModuleMap) else f
        solution = linalg.solve(field, self._columns(), matrix.reshape(-1))
        if solution is None:
            raise InvariantBreach("Map is not a module homomorphism between the stage modules")
        return solution[self.factoring_dim:]

    def factors(self, f) -> bool:
        return self.source.field.is_zero(self.coordinates(f))


def stable_hom(source: Module, target: Module, max_cells: Optional[int] = None,
               cover: Optional[ProjectiveCover] = None) -> StableHomSpace:
    """Stable Hom with factoring subspace computed through the cover of the target.

    A map factors through a projective iff it lifts along P(N) -> N.

    Raises:
        StageTooLarge: dim M · dim P(N) exceeds max_cells
    """
    field = source.field
    cover = cover or projective_cover(target)
    if max_cells is not None and source.dim * cover.projective.dim > max_cells:
        raise StageTooLarge(f"Stage {source.dim} x {cover.projective.dim} exceeds {max_cells} cells")
    hom = hom_space(source, target)
    cells = source.dim * target.dim
    lifts_all = hom_space(source, cover.projective).basis
    composites = [cover.epi.compose(h) for h in lifts_all]
    rows = linalg.vstack(field, [f.matrix.reshape(1, cells) for f in composites], cells)
    chosen = linalg.independent_rows(field, rows)
    factoring = tuple(composites[i] for i in chosen)
    lifts = tuple(lifts_all[i] for i in chosen)
    combined = linalg.vstack(field, [rows[list(chosen)], hom.vectors()], cells)
    pivots = linalg.independent_rows(field, combined)
    if list(pivots[:len(chosen)]) != list(range(len(chosen))):
        raise InvariantBreach("Factoring maps are not independent inside Hom")
    quotient = tuple(hom.basis[i - len(chosen)] for i in pivots[len(chosen):])
    if len(factoring) + len(quotient) != hom.dim:
        raise InvariantBreach("Factoring maps do not lie in Hom(M, N)")
    return StableHomSpace(source, target, hom, cover, factoring, lifts, quotient)


class SgHomStatus(enum.Enum):
    STABILIZED_CERTIFIED = "StabilizedCertified"
    STABILIZED_HEURISTIC = "StabilizedHeuristic"
    GROWING_AT_CUTOFF = "GrowingAtCutoff"
    ZERO_CERTIFIED = "ZeroCertified"
    UNSETTLED = "Unsettled"


@dataclass(frozen=True, eq=False)
class SgHomStage:
    k: int
    dim: int
    hom_dim: int
    transition_rank: Optional[int] = None
    transition: Optional[np.ndarray] = None


@dataclass(eq=False)
class SgHomReport:
    source: Module
    target: Module
    shift: int
    cutoff: int
    window: int
    stages: List[SgHomStage] = dataclass_field(default_factory=list)
    status: SgHomStatus = SgHomStatus.UNSETTLED
    value: int = 0
    source_recurrence: Optional[Recurrence] = None
    target_recurrence: Optional[Recurrence] = None
    certified_from: Optional[int] = None
    truncated_at: Optional[int] = None
    vanishing: Optional[Tuple[str, int]] = None
    source_dims: List[int] = dataclass_field(default_factory=list)
    target_dims: List[int] = dataclass_field(default_factory=list)

    @property
    def dims(self) -> List[int]:
        return [stage.dim for stage in self.stages]

    @property
    def is_certified(self) -> bool:
        return self.status in (SgHomStatus.STABILIZED_CERTIFIED, SgHomStatus.ZERO_CERTIFIED)


def _bijective(stage: SgHomStage, previous: SgHomStage) -> bool:
    return stage.dim == previous.dim and stage.transition_rank == stage.dim


def sg_hom(source: Module, shift: int, target: Module, cutoff: int, window: int = WINDOW,
           max_cells: int = MAX_HOM_CELLS, source_chain: Optional[SyzygyChain] = None,
           target_chain: Optional[SyzygyChain] = None, max_dim: Optional[int] = None) -> SgHomReport:
    """Dimension of Hom_sg(M, Σ^n N) with a stabilization status.

    A vanishing syzygy on either side settles the value at zero; when both
    sides vanish the target index is recorded. The walk stops early once
    `window` consecutive transitions are injective with growing dimensions.

    Arguments:
        source {Module} -- M
        shift {int} -- n
        target {Module} -- N
        cutoff {int} -- last stage index K

    Keyword Arguments:
        window {int} -- equal stages required for the heuristic status
        max_cells {int} -- guard on dim Ω^{k+n}M · dim P(Ω^k N)
        source_chain {SyzygyChain} -- reusable chain of M
        target_chain {SyzygyChain} -- reusable chain of N
        max_dim {int} -- no syzygy above this dimension gets covered

    Raises:
        CutoffTooSmall: cutoff < max(0, -n) + window

    Returns:
        SgHomReport -- per-stage dimensions, transition ranks and status
    """
    start = max(0, -shift)
    if cutoff < start + window:
        raise CutoffTooSmall(f"Cutoff {cutoff} < {start} + window {window}")
    source_chain = source_chain or SyzygyChain(source)
    target_chain = target_chain or SyzygyChain(target)
    report = SgHomReport(source, target, shift, cutoff, window)
    field = source.field
    if _vanishes(report, source_chain, target_chain):
        return report
    previous_space = None
    for k in range(start, cutoff + 1):
        try:
            x = source_chain.module(k + shift, max_dim=max_dim)
            y = target_chain.module(k, max_dim=max_dim)
            if x.dim == 0 or y.dim == 0:
                _vanishes(report, source_chain, target_chain)
                return report
            cover = target_chain.stage(k, max_dim=max_dim).cover
            space = stable_hom(x, y, max_cells=max_cells, cover=cover)
        except StageTooLarge as error:
            logging.info(f"Stopping sg_hom at stage {k}: {error}")
            report.truncated_at = k
            break
        transition = rank = None
        if previous_space is not None:
            transition = _transition_matrix(source_chain, target_chain, k - 1, shift, previous_space, space)
            rank = linalg.rank(field, transition) if transition.size else 0
        report.stages.append(SgHomStage(k, space.dim, space.hom_dim, rank, transition))
        previous_space = space
        if _growth_established(report.stages, window):
            logging.debug(f"sg_hom grows over {window} transitions, stopping at stage {k}")
            break
    _settle(report, source_chain, target_chain)
    _record_dims(report, source_chain, target_chain)
    return report


def _vanishes(report: SgHomReport, source_chain: SyzygyChain, target_chain: SyzygyChain) -> bool:
    """Settle the report at zero if a computed syzygy on either side vanishes."""
    target_zero, source_zero = target_chain.first_zero(), source_chain.first_zero()
    if target_zero is not None:
        report.vanishing = ("target", target_zero)
    elif source_zero is not None:
        report.vanishing = ("source", source_zero)
    else:
        return False
    report.status = SgHomStatus.ZERO_CERTIFIED
    report.value = 0
    _record_dims(report, source_chain, target_chain)
    return True


def _growth_established(stages: List[SgHomStage], window: int) -> bool:
    if len(stages) <= window:
        return False
    tail = stages[-window - 1:]
    return all(after.dim > before.dim and after.transition_rank == before.dim
               for before, after in zip(tail, tail[1:]))


def _transition_matrix(source_chain, target_chain, k, shift, before: StableHomSpace,
                       after: StableHomSpace) -> np.ndarray:
    field = before.source.field
    columns = []
    for f in before.quotient:
        induced = omega_map(source_chain.stage(k + shift), target_chain.stage(k), f)
        columns.append(after.coordinates(induced).reshape(-1, 1))
    return linalg.hstack(field, columns, after.dim)


def _record_dims(report, source_chain, target_chain):
    if report.stages:
        last = report.stages[-1].k
    elif report.vanishing is not None:
        side, index = report.vanishing
        last = index if side == "target" else index - report.shift
    else:
        last = max(0, -report.shift)
    report.source_dims = source_chain.computed_dims(last + report.shift)
    report.target_dims = target_chain.computed_dims(last)


def _settle(report: SgHomReport, source_chain: SyzygyChain, target_chain: SyzygyChain):
    stages = report.stages
    if not stages:
        report.status = SgHomStatus.UNSETTLED
        return
    last = stages[-1].k
    by_k = {stage.k: stage for stage in stages}
    source_rec = source_chain.recurrence(last + report.shift)
    target_rec = target_chain.recurrence(last)
    report.source_recurrence, report.target_recurrence = source_rec, target_rec
    if source_rec and target_rec:
        period = math.lcm(source_rec.period, target_rec.period)
        begin = max(source_rec.start - report.shift, target_rec.start, stages[0].k)
        if begin + period <= last and all(
                _bijective(by_k[j + 1], by_k[j]) for j in range(begin, begin + period)):
            report.status = SgHomStatus.STABILIZED_CERTIFIED
            report.value = by_k[begin].dim
            report.certified_from = begin
            return
    tail = stages[-report.window:]
    if len(tail) == report.window:
        pairs = list(zip(tail[1:], tail))
        if all(_bijective(after, before) for after, before in pairs):
            report.status = SgHomStatus.STABILIZED_HEURISTIC
            report.value = tail[-1].dim
            return
        if all(after.dim > before.dim and after.transition_rank == before.dim for after, before in pairs):
            report.status = SgHomStatus.GROWING_AT_CUTOFF
            report.value = tail[-1].dim
            return
    report.status = SgHomStatus.UNSETTLED
    report.value = stages[-1].dim
