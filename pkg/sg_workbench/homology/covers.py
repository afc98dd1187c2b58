"""Projective covers, projective-summand stripping and the syzygy functor on maps.

A CoverStage bundles an epimorphism P -> X, its kernel K and the
splitting K = X' ⊕ Q with Q projective. X' is the stripped syzygy.
"""
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from sg_workbench.algebra import linalg
from sg_workbench.algebra.modules import (Module, ModuleMap, Submodule, direct_sum, hom_space, identity_map,
                                          kernel, projective_module, radical_columns, zero_module)
from sg_workbench.errors import InvariantBreach


@dataclass(frozen=True, eq=False)
class CoverSummand:
    """One indecomposable projective summand P_v of a cover.

    basis lists the algebra basis elements spanning P_v, placed at
    coordinates offset, offset + 1, ... of the cover. generator is the
    image of e_v in the covered module.
    """
    vertex: int
    offset: int
    basis: Tuple[int, ...]
    top_position: int
    generator: np.ndarray


@dataclass(frozen=True, eq=False)
class ProjectiveCover:
    module: Module
    projective: Module
    epi: ModuleMap
    summands: Tuple[CoverSummand, ...]
    kernel: Submodule
    minimal: bool = True

    def multiplicities(self) -> Tuple[int, ...]:
        counts = [0] * self.module.algebra.vertex_count
        for summand in self.summands:
            counts[summand.vertex] += 1
        return tuple(counts)


@dataclass(frozen=True, eq=False)
class Stripping:
    """Splitting M = M' ⊕ Q with Q projective and M' free of projective summands."""
    module: Module
    stripped: Module
    inclusion: ModuleMap
    retraction: ModuleMap
    projective: Module
    projective_inclusion: ModuleMap
    projective_retraction: ModuleMap
    vertices: Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class CoverStage:
    cover: ProjectiveCover
    stripping: Stripping

    @property
    def module(self) -> Module:
        return self.cover.module

    @property
    def next(self) -> Module:
        return self.stripping.stripped


def free_module(algebra, vertices: Sequence[int]) -> Tuple[Module, List[Tuple[int, int, Tuple[int, ...], int]]]:
    """⊕ P_v over the given vertices with (vertex, offset, basis, top position) per summand."""
    if not vertices:
        return zero_module(algebra), []
    projectives = [projective_module(algebra, v) for v in vertices]
    total = direct_sum(projectives, "⊕".join(p.name for p in projectives)).module
    layout, offset = [], 0
    for v, projective in zip(vertices, projectives):
        basis = algebra.projective_basis(v)
        layout.append((v, offset, basis, offset + basis.index(algebra.idempotents[v])))
        offset += projective.dim
    return total, layout


def _cover_from_generators(module: Module, generators: Sequence[Tuple[int, np.ndarray]],
                           minimal: bool) -> ProjectiveCover:
    algebra, field = module.algebra, module.field
    projective, layout = free_module(algebra, [v for v, _ in generators])
    epi = field.zeros(module.dim, projective.dim)
    summands = []
    for (v, offset, basis, top_position), (_, vector) in zip(layout, generators):
        for j, b in enumerate(basis):
            epi[:, offset + j] = field.matmul(module.action[b], vector.reshape(-1, 1))[:, 0]
        summands.append(CoverSummand(v, offset, basis, top_position, vector))
    epi_map = ModuleMap(projective, module, epi)
    if not epi_map.is_surjective():
        raise InvariantBreach(f"Cover of {module.name or 'module'} is not surjective")
    kernel_sub = kernel(epi_map, f"Ω({module.name})")
    return ProjectiveCover(module, projective, epi_map, tuple(summands), kernel_sub, minimal)


def projective_cover(module: Module) -> ProjectiveCover:
    """Minimal projective cover P -> M with its kernel.

    Generators are unit vectors of M completing JM to M per vertex.

    Raises:
        InvariantBreach: when surjectivity or minimality fails to verify
    """
    if module.dim == 0:
        return zero_stage(module).cover
    field = module.field
    radical = radical_columns(module)
    generators = []
    for v, idempotent in enumerate(module.algebra.idempotents):
        local = linalg.column_basis(field, field.matmul(module.action[idempotent], radical))
        for column in linalg.complement_columns(field, local, module.vertex_indices(v), module.dim).T:
            generators.append((v, column.copy()))
    cover = _cover_from_generators(module, generators, minimal=True)
    tops = [summand.top_position for summand in cover.summands]
    if tops and not field.is_zero(cover.kernel.inclusion.matrix[tops, :]):
        raise InvariantBreach(f"Kernel of the cover of {module.name or 'module'} is not in rad P")
    return cover


def _may_contain_projective(module: Module, v: int) -> bool:
    algebra = module.algebra
    idx = module.vertex_indices(v)
    if not len(idx):
        return False
    basis = algebra.projective_basis(v)
    counts = module.dimension_vector()
    needed = [0] * algebra.vertex_count
    for b in basis:
        needed[algebra.left_vertex[b]] += 1
    if any(n > c for n, c in zip(needed, counts)):
        return False
    return all(not module.field.is_zero(module.action[b][:, idx]) for b in basis)


def strip(module: Module) -> Stripping:
    """Split off every projective direct summand of module.

    The multiplicity of P_v is the rank of the pairing e_v M × Hom(M, P_v) -> k
    given by the e_v-coordinate of g(m).

    Returns:
        Stripping -- stripped part, projective part and the splitting maps
    """
    algebra, field = module.algebra, module.field
    columns, rows, vertices = [], [], []
    for v in range(algebra.vertex_count):
        if not _may_contain_projective(module, v):
            continue
        target = projective_module(algebra, v)
        hom = hom_space(module, target)
        if not hom.dim:
            continue
        idx = module.vertex_indices(v)
        position = algebra.projective_basis(v).index(algebra.idempotents[v])
        pairing = linalg.vstack(field, [g.matrix[position, idx].reshape(1, -1) for g in hom.basis],
                                len(idx)).T
        chosen_maps = linalg.rref(field, pairing)[1]
        if not chosen_maps:
            continue
        chosen_vectors = linalg.rref(field, pairing[:, list(chosen_maps)].T)[1]
        basis = algebra.projective_basis(v)
        for s in chosen_vectors:
            columns.append(np.stack([module.action[b][:, idx[s]] for b in basis], axis=1))
            vertices.append(v)
        for t in chosen_maps:
            rows.append(hom.basis[t].matrix)
    if not vertices:
        identity = identity_map(module)
        empty = zero_module(algebra)
        return Stripping(module, module, identity, identity, empty,
                         ModuleMap(empty, module, field.zeros(module.dim, 0)),
                         ModuleMap(module, empty, field.zeros(0, module.dim)), ())
    projective, _ = free_module(algebra, vertices)
    inject = linalg.hstack(field, columns, module.dim)
    retract = linalg.vstack(field, rows, module.dim)
    composite_inverse = linalg.inverse(field, field.matmul(retract, inject))
    if composite_inverse is None:
        raise InvariantBreach("Projective summand pairing is not invertible")
    retract_map = ModuleMap(module, projective, retract)
    complement = kernel(retract_map, module.name)
    projector = field.reduce(field.identity(module.dim) - field.matmul(
        inject, field.matmul(composite_inverse, retract)))
    retraction = field.matmul(linalg.left_inverse(field, complement.inclusion.matrix), projector)
    logging.debug(f"Stripped {len(vertices)} projective summands from {module.name or 'module'}")
    return Stripping(module, complement.module, complement.inclusion,
                     ModuleMap(module, complement.module, retraction), projective,
                     ModuleMap(projective, module, inject), retract_map, tuple(vertices))


def zero_stage(module: Module) -> CoverStage:
    """Stage of the zero module: Ω(0) = 0 with the empty cover."""
    field = module.field
    empty = field.zeros(0, 0)
    cover = ProjectiveCover(module, module, ModuleMap(module, module, empty), (),
                            Submodule(module, ModuleMap(module, module, empty)))
    identity = ModuleMap(module, module, empty)
    return CoverStage(cover, Stripping(module, module, identity, identity, module, identity, identity, ()))


def cover_stage(module: Module) -> CoverStage:
    if module.dim == 0:
        return zero_stage(module)
    cover = projective_cover(module)
    return CoverStage(cover, strip(cover.kernel.module))


def lift_through(source: ProjectiveCover, target: ProjectiveCover, f: np.ndarray) -> np.ndarray:
    """Matrix of a map P_source -> P_target lifting f: X_source -> X_target."""
    field = source.module.field
    lifted = field.zeros(target.projective.dim, source.projective.dim)
    for summand in source.summands:
        image = field.matmul(f, summand.generator.reshape(-1, 1))[:, 0]
        idx = target.projective.vertex_indices(summand.vertex)
        solution = linalg.solve(field, target.epi.matrix[:, idx], image)
        if solution is None:
            raise InvariantBreach("Map does not lift along the projective cover")
        preimage = field.zeros(target.projective.dim, 1)
        preimage[idx, 0] = solution
        for j, b in enumerate(summand.basis):
            lifted[:, summand.offset + j] = field.matmul(target.projective.action[b], preimage)[:, 0]
    return lifted


def restrict_to_kernels(source: ProjectiveCover, target: ProjectiveCover, lifted: np.ndarray) -> np.ndarray:
    field = source.module.field
    inner = field.matmul(lifted, source.kernel.inclusion.matrix)
    restricted = field.matmul(linalg.left_inverse(field, target.kernel.inclusion.matrix), inner)
    if not np.array_equal(field.matmul(target.kernel.inclusion.matrix, restricted), inner):
        raise InvariantBreach("Lifted map does not preserve kernels")
    return restricted


def omega_map(source: CoverStage, target: CoverStage, f) -> ModuleMap:
    """The induced map source.next -> target.next of f: source.module -> target.module."""
    field = source.module.field
    matrix = f.matrix if isinstance(f, ModuleMap) else f
    lifted = lift_through(source.cover, target.cover, matrix)
    restricted = restrict_to_kernels(source.cover, target.cover, lifted)
    result = field.matmul(target.stripping.retraction.matrix,
                          field.matmul(restricted, source.stripping.inclusion.matrix))
    return ModuleMap(source.next, target.next, result)


def direct_sum_stage(stages: Sequence[CoverStage]) -> CoverStage:
    """Cover stage of ⊕ X_i assembled blockwise from stages of the X_i."""
    if not stages:
        raise InvariantBreach("Direct sum of no stages")
    if len(stages) == 1:
        return stages[0]
    field = stages[0].module.field
    covered = direct_sum([s.module for s in stages])
    projective = direct_sum([s.cover.projective for s in stages])
    summands, p_offset, x_offset = [], 0, 0
    for s in stages:
        for summand in s.cover.summands:
            generator = field.zeros(covered.module.dim, 1)[:, 0]
            generator[x_offset:x_offset + s.module.dim] = summand.generator
            summands.append(CoverSummand(summand.vertex, summand.offset + p_offset, summand.basis,
                                         summand.top_position + p_offset, generator))
        p_offset += s.cover.projective.dim
        x_offset += s.module.dim
    epi = ModuleMap(projective.module, covered.module,
                    linalg.block_diagonal(field, [s.cover.epi.matrix for s in stages]))
    kernels = direct_sum([s.cover.kernel.module for s in stages])
    kernel_sub = Submodule(kernels.module, ModuleMap(
        kernels.module, projective.module,
        linalg.block_diagonal(field, [s.cover.kernel.inclusion.matrix for s in stages])))
    cover = ProjectiveCover(covered.module, projective.module, epi, tuple(summands), kernel_sub,
                            all(s.cover.minimal for s in stages))
    stripped = direct_sum([s.next for s in stages])
    projectives = [s.stripping.projective for s in stages]
    projective_part = direct_sum(projectives).module if any(p.dim for p in projectives) \
        else zero_module(covered.module.algebra)

    def blocks(attribute):
        return linalg.block_diagonal(field, [getattr(s.stripping, attribute).matrix for s in stages])

    stripping = Stripping(
        kernels.module, stripped.module,
        ModuleMap(stripped.module, kernels.module, blocks("inclusion")),
        ModuleMap(kernels.module, stripped.module, blocks("retraction")),
        projective_part,
        ModuleMap(projective_part, kernels.module, blocks("projective_inclusion")),
        ModuleMap(kernels.module, projective_part, blocks("projective_retraction")),
        tuple(v for s in stages for v in s.stripping.vertices))
    return CoverStage(cover, stripping)


def cover_from_images(module: Module, generators: Sequence[Tuple[int, np.ndarray]]) -> ProjectiveCover:
    """Possibly non-minimal cover with prescribed generator images."""
    return _cover_from_generators(module, generators, minimal=False)


def stage_from_cover(cover: ProjectiveCover) -> CoverStage:
    return CoverStage(cover, strip(cover.kernel.module))
