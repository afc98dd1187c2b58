"""Γ(M;d) dimension tables and the Hom-finiteness trichotomy."""
import enum
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from sg_workbench.algebra.algebras import Algebra
from sg_workbench.algebra.modules import Module, simple_modules
from sg_workbench.data_objects import Limits
from sg_workbench.errors import InputError, TheoremViolation
from sg_workbench.homology.pd import PdStatus, pd_status
from sg_workbench.homology.stable import SgHomReport, SgHomStatus, sg_hom
from sg_workbench.homology.syzygy import SyzygyChain


@dataclass(frozen=True, eq=False)
class GammaTable:
    module: Module
    period: int
    shift_range: int
    reports: Dict[int, SgHomReport]

    @property
    def shifts(self) -> Tuple[int, ...]:
        return tuple(sorted(self.reports))

    def value(self, n: int) -> int:
        return self.reports[n].value

    @property
    def all_nonzero(self) -> bool:
        return all(report.value >= 1 for report in self.reports.values())

    @property
    def all_certified(self) -> bool:
        return all(report.is_certified for report in self.reports.values())

    @property
    def any_growing(self) -> bool:
        return any(report.status is SgHomStatus.GROWING_AT_CUTOFF for report in self.reports.values())

    def growing(self) -> Tuple[int, ...]:
        return tuple(n for n in self.shifts if self.reports[n].status is SgHomStatus.GROWING_AT_CUTOFF)


def gamma_table(module: Module, period: int, shift_range: int, limits: Optional[Limits] = None,
                certificate=None, chain: Optional[SyzygyChain] = None) -> GammaTable:
    """One sg_hom(M, n·d, M) report per n in [-N, N].

    Negative shifts start their stages at k = -n·d and get the cutoff
    K + n·d on top, so every column sees the same number of stages.

    Arguments:
        module {Module} -- M, nonzero
        period {int} -- d
        shift_range {int} -- N

    Keyword Arguments:
        limits {Limits} -- cutoff K, window and stage guard
        certificate {VPCertificate} -- when given, certified zeros raise
        chain {SyzygyChain} -- reusable chain of M

    Raises:
        InputError: M is zero or d < 1
        TheoremViolation: a certified entry vanishes for a virtually periodic M

    Returns:
        GammaTable -- reports keyed by n
    """
    if module.dim == 0:
        raise InputError("Γ tables need a nonzero module")
    if period < 1 or shift_range < 0:
        raise InputError("Γ tables need d >= 1 and N >= 0")
    limits = limits or Limits()
    chain = chain or SyzygyChain(module, iso_budget=limits.iso_budget, seed=limits.seed)
    reports = {}
    for n in range(-shift_range, shift_range + 1):
        shift = n * period
        cutoff = limits.syzygy_cutoff + max(0, -shift)
        reports[n] = sg_hom(module, shift, module, cutoff, window=limits.window, max_cells=limits.max_hom_cells,
                            source_chain=chain, target_chain=chain, max_dim=limits.max_chain_dim)
        logging.debug(f"Γ entry n={n}: {reports[n].status.value} {reports[n].value}")
    table = GammaTable(module, period, shift_range, reports)
    if certificate is not None:
        for n, report in reports.items():
            if report.is_certified and report.value == 0:
                raise TheoremViolation(
                    f"Certified zero at n={n} in Γ({module.name or 'M'};{period}) for a virtually periodic module")
    logging.info(f"Γ({module.name or 'M'};{period}) over [-{shift_range}, {shift_range}]: "
                 f"nonzero={table.all_nonzero} certified={table.all_certified} growing={table.any_growing}")
    return table


class VerdictKind(enum.Enum):
    FINITE_GLOBAL_DIMENSION = "FiniteGlobalDimension"
    INFINITE_GL_DIM_HOM_FINITE = "InfiniteGlDimHomFinite"
    NOT_HOM_FINITE = "NotHomFinite"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True, eq=False)
class TrichotomyVerdict:
    """Hom-finiteness class of D_sg with its witness.

    NotHomFinite rests on growth up to the cutoffs and is labeled so.
    """
    kind: VerdictKind
    pd: PdStatus
    table: Optional[GammaTable] = None
    degree: Optional[int] = None
    growth: Optional[SgHomReport] = None
    syzygy_dims: Tuple[int, ...] = ()
    cutoff_relative: bool = False
    cutoffs: Tuple[int, int] = (0, 0)


def hom_finiteness_probe(algebra: Algebra, limits: Optional[Limits] = None) -> TrichotomyVerdict:
    """Classify D_sg(A) through pd(Λ₀) and the table Γ(Λ₀;1)."""
    limits = limits or Limits()
    _, top = simple_modules(algebra)
    cutoffs = (limits.syzygy_cutoff, limits.shift_range)
    chain = SyzygyChain(top, iso_budget=limits.iso_budget, seed=limits.seed)
    status = pd_status(top, limits.syzygy_cutoff, chain=chain, max_dim=limits.max_chain_dim)
    if status.is_finite:
        logging.info(f"{algebra.name or 'Algebra'} has global dimension {status.degree}")
        return TrichotomyVerdict(VerdictKind.FINITE_GLOBAL_DIMENSION, status, degree=status.degree, cutoffs=cutoffs)
    table = gamma_table(top, 1, limits.shift_range, limits, chain=chain)
    if table.all_certified:
        return TrichotomyVerdict(VerdictKind.INFINITE_GL_DIM_HOM_FINITE, status, table, cutoffs=cutoffs)
    growing = table.growing()
    if growing:
        column = 0 if 0 in growing else growing[0]
        report = table.reports[column]
        dims = tuple(report.target_dims)
        return TrichotomyVerdict(VerdictKind.NOT_HOM_FINITE, status, table, growth=report, syzygy_dims=dims,
                                 cutoff_relative=True, cutoffs=cutoffs)
    return TrichotomyVerdict(VerdictKind.UNDETERMINED, status, table, cutoffs=cutoffs)
