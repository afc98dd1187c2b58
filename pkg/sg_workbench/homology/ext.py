"""Ext groups from minimal resolutions and explicit extension middle terms."""
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np

from sg_workbench.algebra import linalg
from sg_workbench.algebra.modules import Module, ModuleMap, direct_sum, hom_space, quotient
from sg_workbench.errors import InvariantBreach
from sg_workbench.homology.covers import ProjectiveCover, projective_cover
from sg_workbench.homology.syzygy import SyzygyChain


@dataclass(frozen=True, eq=False)
class ExtGroup:
    """Ext^n(M, N) as Hom(K_n, N) modulo restrictions from the cover term.

    For n = 0 the cocycles are a basis of Hom(M, N).
    """
    source: Module
    degree: int
    target: Module
    cocycles: Tuple[ModuleMap, ...]
    cover: Optional[ProjectiveCover] = None
    coboundaries: Tuple[ModuleMap, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.cocycles)

    def cocycle(self, coefficients) -> ModuleMap:
        field = self.target.field
        kernel = self.cocycles[0].source
        matrix = field.zeros(self.target.dim, kernel.dim)
        for c, f in zip(coefficients, self.cocycles):
            if c != 0:
                matrix = field.reduce(matrix + c * f.matrix)
        return ModuleMap(kernel, self.target, matrix)


@dataclass(frozen=True, eq=False)
class Extension:
    """0 -> A --inclusion--> E --projection--> C -> 0."""
    left: Module
    middle: Module
    right: Module
    inclusion: ModuleMap
    projection: ModuleMap


def _ext_from_cover(cover: ProjectiveCover, source: Module, degree: int, target: Module) -> ExtGroup:
    field = target.field
    kernel = cover.kernel
    hom_k = hom_space(kernel.module, target)
    restrictions = [h.compose(kernel.inclusion) for h in hom_space(cover.projective, target).basis]
    cells = kernel.module.dim * target.dim
    rows = linalg.vstack(field, [f.matrix.reshape(1, cells) for f in restrictions], cells)
    chosen = linalg.independent_rows(field, rows)
    boundaries = tuple(restrictions[i] for i in chosen)
    combined = linalg.vstack(field, [rows[list(chosen)], hom_k.vectors()], cells)
    pivots = linalg.independent_rows(field, combined)
    cocycles = tuple(hom_k.basis[i - len(chosen)] for i in pivots[len(chosen):])
    return ExtGroup(source, degree, target, cocycles, cover, boundaries)


def ext_group(source: Module, degree: int, target: Module, chain: Optional[SyzygyChain] = None) -> ExtGroup:
    """Ext^n(M, N) for n >= 0.

    For n >= 1 this is Ext^1(X_{n-1}, N) with X_{n-1} the stripped syzygy,
    read off the minimal cover of X_{n-1}.
    """
    if degree < 0:
        raise ValueError("Ext degree must be nonnegative")
    if degree == 0:
        hom = hom_space(source, target)
        return ExtGroup(source, 0, target, hom.basis)
    chain = chain or SyzygyChain(source)
    return _ext_from_cover(chain.stage(degree - 1).cover, source, degree, target)


def ext1(right: Module, left: Module) -> ExtGroup:
    """Ext^1(C, A) computed from the minimal cover of C itself."""
    return _ext_from_cover(projective_cover(right), right, 1, left)


def extension_middle_term(group: ExtGroup, coefficients) -> Extension:
    """Pushout of 0 -> K -> P -> C -> 0 along the cocycle h: K -> A.

    E = (A ⊕ P) / {(-h(k), k)}.
    """
    if group.degree != 1 or group.cover is None:
        raise InvariantBreach("Middle terms exist for Ext^1 classes only")
    left, right, cover = group.target, group.source, group.cover
    field = left.field
    h = group.cocycle(coefficients) if group.dim else ModuleMap(
        cover.kernel.module, left, field.zeros(left.dim, cover.kernel.module.dim))
    total = direct_sum([left, cover.projective])
    relations = np.concatenate([field.reduce(-h.matrix), cover.kernel.inclusion.matrix], axis=0)
    pushed = quotient(total.module, relations, f"E({right.name},{left.name})")
    inclusion = ModuleMap(left, pushed.module,
                          field.matmul(pushed.projection.matrix, total.inclusions[0].matrix))
    onto = np.concatenate([field.zeros(right.dim, left.dim), cover.epi.matrix], axis=1)
    projection = ModuleMap(pushed.module, right, field.matmul(onto, pushed.section))
    extension = Extension(left, pushed.module, right, inclusion, projection)
    failures = check_exact(extension.inclusion, extension.projection)
    if failures:
        raise InvariantBreach(f"Pushout is not exact: {failures[0]}")
    return extension


def check_exact(inclusion: ModuleMap, projection: ModuleMap) -> list:
    """Failures of exactness of 0 -> A -> B -> C -> 0 by rank checks."""
    field = inclusion.field
    failures = []
    if not inclusion.is_intertwiner():
        failures.append("first map is not a homomorphism")
    if not projection.is_intertwiner():
        failures.append("second map is not a homomorphism")
    if inclusion.target.dim != projection.source.dim:
        failures.append("middle terms differ")
        return failures
    if not inclusion.is_injective():
        failures.append("first map is not injective")
    if not projection.is_surjective():
        failures.append("second map is not surjective")
    if not field.is_zero(field.matmul(projection.matrix, inclusion.matrix)):
        failures.append("composite is not zero")
    if inclusion.source.dim + projection.target.dim != inclusion.target.dim:
        failures.append("dimensions do not add up")
    return failures


def extension_classes(group: ExtGroup, cap: int) -> Iterator[Tuple]:
    """Nonzero classes up to scalar, or {-1, 0, 1} combinations over Q, at most cap."""
    field = group.target.field
    if not group.dim:
        return
    if field.is_finite:
        values = list(field.elements())
    else:
        values = [field.scalar(0), field.scalar(1), field.scalar(-1)]
    count = 0
    for lead in range(group.dim):
        for tail in itertools.product(values, repeat=group.dim - lead - 1):
            if count >= cap:
                return
            count += 1
            yield (field.scalar(0),) * lead + (field.scalar(1),) + tuple(tail)


def split_extension(left: Module, right: Module) -> Extension:
    total = direct_sum([left, right])
    return Extension(left, total.module, right, total.inclusions[0], total.projections[1])
