"""Left modules as matrix representations and the maps between them.

Module bases are vertex-adapted: every coordinate lies in one e_v M,
recorded in Module.vertex_of. Hom spaces are solved blockwise per
vertex with one intertwiner equation per generator.
"""
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from sg_workbench.algebra import linalg
from sg_workbench.algebra.algebras import Algebra
from sg_workbench.errors import InputError, InvariantBreach


@dataclass(frozen=True, eq=False)
class Module:
    """A finite-dimensional left module.

    action[i] is the matrix of the algebra basis element i.
    """
    algebra: Algebra
    action: Tuple[np.ndarray, ...]
    vertex_of: Tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        for matrix in self.action:
            matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.vertex_of)

    @property
    def field(self):
        return self.algebra.field

    def dimension_vector(self) -> Tuple[int, ...]:
        return tuple(self.vertex_of.count(v) for v in range(self.algebra.vertex_count))

    def vertex_indices(self, v: int) -> np.ndarray:
        return np.array([i for i, u in enumerate(self.vertex_of) if u == v], dtype=np.intp)

    def act(self, basis_index: int) -> np.ndarray:
        return self.action[basis_index]

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_semisimple(self) -> bool:
        return all(self.field.is_zero(self.action[g]) for g in self.algebra.generators)

    def relabel(self, name: str) -> "Module":
        return Module(self.algebra, self.action, self.vertex_of, name)

    def check_representation(self) -> List[str]:
        """Failures of ρ(a)ρ(b) = ρ(ab) and ρ(1) = 1."""
        algebra, field = self.algebra, self.field
        failures = []
        unit = field.zeros(self.dim, self.dim)
        for e in algebra.idempotents:
            unit = field.reduce(unit + self.action[e])
        if not np.array_equal(unit, field.identity(self.dim)):
            failures.append("unit does not act as the identity")
        stacked = np.stack(self.action) if self.action else None
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                product = field.matmul(self.action[i], self.action[j])
                expected = field.reduce(np.tensordot(algebra.structure[i, j], stacked, axes=([0], [0])))
                if not np.array_equal(product, expected):
                    failures.append(f"ρ({algebra.labels[i]})ρ({algebra.labels[j]}) != ρ(product)")
        for v, idempotent in enumerate(algebra.idempotents):
            diagonal = np.array([field.scalar(1 if u == v else 0) for u in self.vertex_of],
                                dtype=field.dtype)
            if not np.array_equal(self.action[idempotent], np.diag(diagonal).astype(field.dtype)):
                failures.append(f"basis is not adapted to vertex {algebra.vertices[v]}")
        return failures


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """A module homomorphism given by a dim(target) x dim(source) matrix."""
    source: Module
    target: Module
    matrix: np.ndarray

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise InvariantBreach(
                f"Map matrix has shape {self.matrix.shape}, expected {(self.target.dim, self.source.dim)}")
        self.matrix.setflags(write=False)

    @property
    def field(self):
        return self.source.field

    def is_intertwiner(self) -> bool:
        field = self.field
        return all(
            np.array_equal(field.matmul(self.matrix, self.source.action[a]),
                           field.matmul(self.target.action[a], self.matrix))
            for a in range(self.source.algebra.dim))

    def rank(self) -> int:
        return linalg.rank(self.field, self.matrix)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """self ∘ first."""
        return ModuleMap(first.source, self.target, self.field.matmul(self.matrix, first.matrix))


class HomSpace(NamedTuple):
    source: Module
    target: Module
    basis: Tuple[ModuleMap, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> np.ndarray:
        """Basis maps flattened row-major, one per row."""
        field = self.source.field
        cols = self.source.dim * self.target.dim
        return linalg.vstack(field, [f.matrix.reshape(1, cols) for f in self.basis], cols)

    def combination(self, coefficients: Sequence) -> ModuleMap:
        field = self.source.field
        matrix = field.zeros(self.target.dim, self.source.dim)
        for coefficient, f in zip(coefficients, self.basis):
            if coefficient != 0:
                matrix = field.reduce(matrix + coefficient * f.matrix)
        return ModuleMap(self.source, self.target, matrix)


class Submodule(NamedTuple):
    module: Module
    inclusion: ModuleMap


class Quotient(NamedTuple):
    module: Module
    projection: ModuleMap
    section: np.ndarray


class DirectSum(NamedTuple):
    module: Module
    inclusions: Tuple[ModuleMap, ...]
    projections: Tuple[ModuleMap, ...]


class RadicalSeries(NamedTuple):
    layers: Tuple[Submodule, ...]
    quotients: Tuple[Module, ...]
    multiplicities: Tuple[Tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.quotients)


def module_from_action(algebra: Algebra, vertex_of: Sequence[int], action: Sequence[np.ndarray],
                       name: str = "") -> Module:
    field = algebra.field
    return Module(algebra, tuple(field.reduce(np.array(m, dtype=field.dtype)) for m in action),
                  tuple(int(v) for v in vertex_of), name)


def module_from_generators(algebra: Algebra, vertex_of: Sequence[int], generator_action,
                           name: str = "") -> Module:
    """Build a module of a quiver algebra from arrow matrices.

    Arguments:
        algebra {Algebra} -- quiver-mode algebra
        vertex_of {Sequence[int]} -- vertex of each coordinate
        generator_action {Mapping[str, matrix]} -- full-size matrix per arrow label

    Raises:
        InputError: on missing arrows or when relations are violated

    Returns:
        Module -- the representation
    """
    field = algebra.field
    dim = len(vertex_of)
    matrices = {}
    for g in algebra.generators:
        label = algebra.labels[g]
        if label not in generator_action:
            raise InputError(f"Missing action of arrow {label!r}")
        matrices[g] = field.array(generator_action[label]).reshape(dim, dim)
    action = []
    for b, label in enumerate(algebra.labels):
        if b in algebra.idempotents:
            v = algebra.idempotents.index(b)
            matrix = field.zeros(dim, dim)
            for i, u in enumerate(vertex_of):
                if u == v:
                    matrix[i, i] = field.scalar(1)
        else:
            matrix = field.identity(dim)
            for name_ in label.split("*"):
                matrix = field.matmul(matrices[algebra.index(name_)], matrix)
        action.append(matrix)
    module = Module(algebra, tuple(action), tuple(vertex_of), name)
    failures = module.check_representation()
    if failures:
        raise InputError(f"Not a representation: {failures[0]}")
    return module


def zero_module(algebra: Algebra) -> Module:
    field = algebra.field
    return Module(algebra, tuple(field.zeros(0, 0) for _ in range(algebra.dim)), (), "0")


def simple_modules(algebra: Algebra) -> Tuple[List[Module], Module]:
    """One-dimensional simples per vertex and their sum Λ₀.

    Raises:
        NonBasicUnsupported: for non-basic raw algebras
    """
    algebra.require_basic()
    field = algebra.field
    simples = []
    for v, idempotent in enumerate(algebra.idempotents):
        action = []
        for b in range(algebra.dim):
            action.append(field.array([[1 if b == idempotent else 0]]))
        simples.append(Module(algebra, tuple(action), (v,), f"S({algebra.vertices[v]})"))
    top = direct_sum(simples).module.relabel("top")
    return simples, top


def projective_module(algebra: Algebra, v: int) -> Module:
    """The indecomposable projective Λe_v with basis in algebra basis order."""
    algebra.require_basic()
    basis = list(algebra.projective_basis(v))
    action = [algebra.left_multiplication(b)[np.ix_(basis, basis)].copy() for b in range(algebra.dim)]
    return Module(algebra, tuple(action), tuple(algebra.left_vertex[b] for b in basis),
                  f"P({algebra.vertices[v]})")


def regular_module(algebra: Algebra) -> Module:
    return direct_sum([projective_module(algebra, v) for v in range(algebra.vertex_count)]).module.relabel("Λ")


def hom_space(source: Module, target: Module) -> HomSpace:
    """Basis of Hom_Λ(source, target).

    Arguments:
        source {Module} -- domain
        target {Module} -- codomain

    Returns:
        HomSpace -- basis maps of the intertwiner solution space
    """
    algebra = source.algebra
    if algebra is not target.algebra:
        raise InputError("Modules over different algebras")
    field = algebra.field
    blocks = []
    offset = 0
    for v in range(algebra.vertex_count):
        s_idx, t_idx = source.vertex_indices(v), target.vertex_indices(v)
        blocks.append((s_idx, t_idx, offset))
        offset += len(s_idx) * len(t_idx)
    unknowns = offset
    equations = []
    for g in algebra.generators:
        s, t = algebra.right_vertex[g], algebra.left_vertex[g]
        src_s, tgt_s, off_s = blocks[s]
        src_t, tgt_t, off_t = blocks[t]
        m_s, m_t, n_s, n_t = len(src_s), len(src_t), len(tgt_s), len(tgt_t)
        if n_t * m_s == 0:
            continue
        a = source.action[g][np.ix_(src_t, src_s)]
        b = target.action[g][np.ix_(tgt_t, tgt_s)]
        equation = field.zeros(n_t * m_s, unknowns)
        if m_t:
            equation[:, off_t:off_t + n_t * m_t] += linalg.kron(field, field.identity(n_t), a.T)
        if n_s:
            equation[:, off_s:off_s + n_s * m_s] -= linalg.kron(field, b, field.identity(m_s))
        equations.append(field.reduce(equation))
    solutions = linalg.nullspace(field, linalg.vstack(field, equations, unknowns), unknowns)
    basis = []
    for vector in solutions:
        matrix = field.zeros(target.dim, source.dim)
        for s_idx, t_idx, off in blocks:
            if len(s_idx) and len(t_idx):
                matrix[np.ix_(t_idx, s_idx)] = vector[off:off + len(s_idx) * len(t_idx)].reshape(
                    len(t_idx), len(s_idx))
        basis.append(ModuleMap(source, target, matrix))
    return HomSpace(source, target, tuple(basis))


def identity_map(module: Module) -> ModuleMap:
    return ModuleMap(module, module, module.field.identity(module.dim))


def submodule(module: Module, spanning_columns: np.ndarray, name: str = "") -> Submodule:
    """Submodule spanned by the columns, which must span an invariant subspace."""
    field = module.field
    spanning_columns = linalg.as_block(field, spanning_columns, rows=module.dim)
    blocks, vertex_of = [], []
    for v, idempotent in enumerate(module.algebra.idempotents):
        projected = field.matmul(module.action[idempotent], spanning_columns)
        basis = linalg.column_basis(field, projected)
        blocks.append(basis)
        vertex_of.extend([v] * basis.shape[1])
    basis = linalg.hstack(field, blocks, module.dim)
    left = linalg.left_inverse(field, basis)
    action = []
    for matrix in module.action:
        image = field.matmul(matrix, basis)
        restricted = field.matmul(left, image)
        if not np.array_equal(field.matmul(basis, restricted), image):
            raise InvariantBreach("Spanning set is not invariant under the action")
        action.append(restricted)
    sub = Module(module.algebra, tuple(action), tuple(vertex_of), name)
    return Submodule(sub, ModuleMap(sub, module, basis))


def quotient(module: Module, sub_columns: np.ndarray, name: str = "") -> Quotient:
    """Quotient by the invariant subspace spanned by the columns."""
    field = module.field
    sub_columns = linalg.as_block(field, sub_columns, rows=module.dim)
    sub_blocks, complement_blocks, vertex_of = [], [], []
    for v, idempotent in enumerate(module.algebra.idempotents):
        basis = linalg.column_basis(field, field.matmul(module.action[idempotent], sub_columns))
        complement = linalg.complement_columns(field, basis, module.vertex_indices(v), module.dim)
        sub_blocks.append(basis)
        complement_blocks.append(complement)
        vertex_of.extend([v] * complement.shape[1])
    sub = linalg.hstack(field, sub_blocks, module.dim)
    section = linalg.hstack(field, complement_blocks, module.dim)
    change = linalg.inverse(field, np.concatenate([sub, section], axis=1))
    projection = change[sub.shape[1]:, :].copy()
    action = tuple(field.matmul(projection, field.matmul(matrix, section)) for matrix in module.action)
    result = Module(module.algebra, action, tuple(vertex_of), name)
    return Quotient(result, ModuleMap(module, result, projection), section)


def kernel(f: ModuleMap, name: str = "") -> Submodule:
    field = f.field
    columns = []
    for v in range(f.source.algebra.vertex_count):
        idx = f.source.vertex_indices(v)
        if not len(idx):
            continue
        null = linalg.nullspace(field, f.matrix[:, idx], len(idx))
        embedded = field.zeros(f.source.dim, null.shape[0])
        embedded[idx, :] = null.T
        columns.append(embedded)
    return submodule(f.source, linalg.hstack(field, columns, f.source.dim), name)


def image(f: ModuleMap, name: str = "") -> Submodule:
    return submodule(f.target, f.matrix, name)


def cokernel(f: ModuleMap, name: str = "") -> Quotient:
    return quotient(f.target, f.matrix, name)


def direct_sum(modules: Sequence[Module], name: str = "") -> DirectSum:
    """External direct sum with canonical inclusions and projections."""
    if not modules:
        raise InputError("Direct sum of no modules needs an algebra; use zero_module")
    algebra = modules[0].algebra
    field = algebra.field
    action = tuple(linalg.block_diagonal(field, [m.action[b] for m in modules]) for b in range(algebra.dim))
    vertex_of = tuple(v for m in modules for v in m.vertex_of)
    total = Module(algebra, action, vertex_of, name or " ⊕ ".join(m.name or "?" for m in modules))
    inclusions, projections = [], []
    offset = 0
    for m in modules:
        embed = field.zeros(total.dim, m.dim)
        embed[offset:offset + m.dim, :] = field.identity(m.dim)
        inclusions.append(ModuleMap(m, total, embed))
        projections.append(ModuleMap(total, m, embed.T.copy()))
        offset += m.dim
    return DirectSum(total, tuple(inclusions), tuple(projections))


def power(module: Module, m: int) -> DirectSum:
    if m == 0:
        return DirectSum(zero_module(module.algebra), (), ())
    return direct_sum([module] * m, f"{module.name or 'M'}^{m}")


def direct_sum_map(maps: Sequence[ModuleMap], source: Module, target: Module) -> ModuleMap:
    field = source.field
    return ModuleMap(source, target, linalg.block_diagonal(field, [f.matrix for f in maps]))


def radical_columns(module: Module, columns: Optional[np.ndarray] = None) -> np.ndarray:
    """Column basis of J·U for the invariant subspace U spanned by columns."""
    field = module.field
    if columns is None:
        columns = field.identity(module.dim)
    images = [field.matmul(module.action[g], columns) for g in module.algebra.generators]
    return linalg.column_basis(field, linalg.hstack(field, images, module.dim))


def top(module: Module) -> Quotient:
    return quotient(module, radical_columns(module), f"top({module.name})")


def radical_series(module: Module) -> RadicalSeries:
    """Filtration M = R_0 ⊃ JM ⊃ J²M ⊃ … ⊃ 0 with semisimple layers.

    Returns:
        RadicalSeries -- submodules R_i, quotients R_i/R_{i+1}, their dimension vectors
    """
    field = module.field
    layers = [submodule(module, field.identity(module.dim), module.name)]
    columns = field.identity(module.dim)
    quotients, multiplicities = [], []
    while columns.shape[1]:
        next_columns = radical_columns(module, columns)
        current = layers[-1]
        coordinates = linalg.left_inverse(field, current.inclusion.matrix)
        layer = quotient(current.module, field.matmul(coordinates, next_columns))
        quotients.append(layer.module)
        multiplicities.append(layer.module.dimension_vector())
        layers.append(submodule(module, next_columns))
        columns = next_columns
    return RadicalSeries(tuple(layers), tuple(quotients), tuple(multiplicities))


def modules_equal(first: Module, second: Module) -> bool:
    return (first.algebra is second.algebra and first.vertex_of == second.vertex_of
            and all(np.array_equal(a, b) for a, b in zip(first.action, second.action)))
