"""Finite-dimensional algebras from quiver presentations or structure constants.

Path convention: "x*y" is the path x first, then y. An arrow x: i -> j
acts on left modules as a map from the i-component to the j-component,
so the algebra product b·a of paths is "a then b".
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from sg_workbench.algebra import linalg
from sg_workbench.algebra.fields import Field
from sg_workbench.errors import (BadIdempotents, InputError, NonAdmissible, NonBasicUnsupported,
                                 NotAssociative, NotFiniteDimensional, SplitFailure)

PATH_SEPARATOR = "*"


@dataclass(frozen=True)
class AlgebraSpec:
    """Declarative description of an algebra.

    Quiver mode uses vertices, arrows, relations and nilpotency_bound.
    Raw mode uses basis, products, semisimple and radical instead.
    """
    field: Field
    name: str = ""
    vertices: Tuple[str, ...] = ()
    arrows: Tuple[Tuple[str, str, str], ...] = ()
    relations: Tuple[Tuple[Tuple[Any, str], ...], ...] = ()
    nilpotency_bound: int = 2
    basis: Tuple[str, ...] = ()
    products: Optional[Any] = None
    semisimple: Tuple[str, ...] = ()
    radical: Tuple[str, ...] = ()

    @property
    def mode(self) -> str:
        return "quiver" if self.vertices else "raw"


@dataclass(frozen=True, eq=False)
class Algebra:
    """A loaded algebra with an ordered basis and structure constants.

    structure[i, j] holds the coordinates of labels[i] · labels[j].
    """
    field: Field
    labels: Tuple[str, ...]
    structure: np.ndarray
    vertices: Tuple[str, ...]
    idempotents: Tuple[int, ...]
    radical: Tuple[int, ...]
    generators: Tuple[int, ...]
    left_vertex: Tuple[int, ...]
    right_vertex: Tuple[int, ...]
    loewy: Tuple[int, ...]
    nilpotency_bound: int
    is_basic: bool = True
    spec: Optional[AlgebraSpec] = dataclass_field(default=None, repr=False)
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as error:
            raise InputError(f"Unknown basis label {label!r} in {self.name or 'algebra'}") from error

    def vertex_index(self, vertex) -> int:
        if isinstance(vertex, int):
            if not 0 <= vertex < self.vertex_count:
                raise InputError(f"Vertex index {vertex} out of range")
            return vertex
        try:
            return self.vertices.index(str(vertex))
        except ValueError as error:
            raise InputError(f"Unknown vertex {vertex!r}") from error

    def left_multiplication(self, i: int) -> np.ndarray:
        """Matrix of x -> b_i x on coordinate columns."""
        return np.ascontiguousarray(self.structure[i].T)

    def right_multiplication(self, i: int) -> np.ndarray:
        """Matrix of x -> x b_i on coordinate columns."""
        return np.ascontiguousarray(self.structure[:, i, :].T)

    def multiply(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        partial = np.tensordot(v, self.structure, axes=([0], [1]))
        return self.field.reduce(np.tensordot(u, partial, axes=([0], [0])))

    def unit(self) -> np.ndarray:
        result = np.zeros(self.dim, dtype=self.field.dtype)
        for i in self.idempotents:
            result[i] = self.field.scalar(1)
        return result

    def basis_vector(self, i: int) -> np.ndarray:
        result = np.zeros(self.dim, dtype=self.field.dtype)
        result[i] = self.field.scalar(1)
        return result

    def projective_basis(self, v: int) -> Tuple[int, ...]:
        """Basis elements b with b = b·e_v, spanning the projective Λe_v."""
        return tuple(i for i in range(self.dim) if self.right_vertex[i] == v)

    def require_basic(self):
        if not self.is_basic:
            raise NonBasicUnsupported(
                f"{self.name or 'algebra'} has a non-commutative semisimple part")


def load_algebra(spec: AlgebraSpec) -> Algebra:
    """Load an algebra and verify its structural invariants.

    Arguments:
        spec {AlgebraSpec} -- quiver or raw description

    Raises:
        NonAdmissible: a relation has a path of length < 2
        NotFiniteDimensional: J^N != 0 for the declared bound
        NotAssociative: raw structure constants are not associative
        BadIdempotents: raw idempotents are not orthogonal and complete
        SplitFailure: raw semisimple part is not a subalgebra or J is not an ideal

    Returns:
        Algebra -- the loaded algebra
    """
    if spec.nilpotency_bound < 1:
        raise InputError("nilpotency_bound must be positive")
    if spec.mode == "quiver":
        algebra = _load_quiver(spec)
    else:
        algebra = _load_raw(spec)
    _check_associative(algebra)
    _check_radical_nilpotent(algebra)
    logging.debug(f"Loaded {algebra.name or 'algebra'} of dimension {algebra.dim}")
    return algebra


@dataclass(frozen=True)
class _Path:
    source: int
    target: int
    arrows: Tuple[int, ...]

    def __len__(self):
        return len(self.arrows)


def _parse_path(text: str, arrow_index: Dict[str, int], arrows) -> _Path:
    names = [name.strip() for name in text.split(PATH_SEPARATOR) if name.strip()]
    if not names:
        raise InputError(f"Empty path {text!r}")
    indices = []
    for name in names:
        if name not in arrow_index:
            raise InputError(f"Unknown arrow {name!r} in path {text!r}")
        indices.append(arrow_index[name])
    for first, second in zip(indices, indices[1:]):
        if arrows[first][2] != arrows[second][1]:
            raise InputError(f"Path {text!r} is not composable")
    return _Path(arrows[indices[0]][1], arrows[indices[-1]][2], tuple(indices))


def _enumerate_paths(vertex_count: int, arrows, bound: int) -> List[_Path]:
    paths = [_Path(v, v, ()) for v in range(vertex_count)]
    level = [_Path(arrow[1], arrow[2], (i,)) for i, arrow in enumerate(arrows)]
    length = 1
    while level and length <= bound:
        paths.extend(level)
        level = [_Path(path.source, arrows[i][2], path.arrows + (i,))
                 for path in level for i, arrow in enumerate(arrows) if arrow[1] == path.target]
        length += 1
    return paths


def _load_quiver(spec: AlgebraSpec) -> Algebra:
    field = spec.field
    bound = spec.nilpotency_bound
    vertex_names = tuple(str(v) for v in spec.vertices)
    if len(set(vertex_names)) != len(vertex_names):
        raise InputError("Duplicate vertex names")
    vertex_of = {name: i for i, name in enumerate(vertex_names)}
    arrows = []
    for name, source, target in spec.arrows:
        if str(source) not in vertex_of or str(target) not in vertex_of:
            raise InputError(f"Arrow {name!r} uses an unknown vertex")
        if PATH_SEPARATOR in name:
            raise InputError(f"Arrow name {name!r} contains {PATH_SEPARATOR!r}")
        arrows.append((name, vertex_of[str(source)], vertex_of[str(target)]))
    arrow_index = {arrow[0]: i for i, arrow in enumerate(arrows)}
    if len(arrow_index) != len(arrows):
        raise InputError("Duplicate arrow names")

    relations = []
    for relation in spec.relations:
        terms = []
        for coefficient, text in relation:
            path = _parse_path(text, arrow_index, arrows)
            if len(path) < 2:
                raise NonAdmissible(f"Relation term {text!r} has length {len(path)} < 2")
            terms.append((field.scalar(coefficient), path))
        blocks: Dict[Tuple[int, int], list] = {}
        for coefficient, path in terms:
            blocks.setdefault((path.source, path.target), []).append((coefficient, path))
        relations.extend(blocks.values())

    paths = _enumerate_paths(len(vertex_names), arrows, bound)
    column = {path: i for i, path in enumerate(paths)}
    by_target: Dict[int, List[_Path]] = {}
    by_source: Dict[int, List[_Path]] = {}
    for path in paths:
        by_target.setdefault(path.target, []).append(path)
        by_source.setdefault(path.source, []).append(path)

    rows = []
    for relation in relations:
        source, target = relation[0][1].source, relation[0][1].target
        shortest = min(len(path) for _, path in relation)
        for prefix in by_target.get(source, []):
            for suffix in by_source.get(target, []):
                if len(prefix) + shortest + len(suffix) > bound:
                    continue
                row = field.zeros(1, len(paths))[0]
                for coefficient, path in relation:
                    arrows_ = prefix.arrows + path.arrows + suffix.arrows
                    if len(arrows_) > bound:
                        continue
                    key = _Path(prefix.source, suffix.target, arrows_)
                    row[column[key]] = field.add(row[column[key]], coefficient)
                rows.append(row)
    ideal = linalg.row_basis(field, linalg.vstack(field, rows, len(paths)), len(paths))
    pivots = tuple(int(np.nonzero(row != 0)[0][0]) for row in ideal)
    pivot_row = {col: r for r, col in enumerate(pivots)}

    def normal_form(vector: np.ndarray) -> np.ndarray:
        vector = vector.copy()
        for col, r in pivot_row.items():
            if vector[col] != 0:
                vector = field.reduce(vector - vector[col] * ideal[r])
        return vector

    for path in paths:
        if len(path) == bound:
            unit = field.zeros(1, len(paths))[0]
            unit[column[path]] = field.scalar(1)
            if not field.is_zero(normal_form(unit)):
                raise NotFiniteDimensional(
                    f"Path {_path_label(path, arrows, vertex_names)} of length {bound} survives "
                    f"the relations; J^{bound} != 0")

    basis_paths = [path for path in paths if column[path] not in pivot_row]
    basis_columns = [column[path] for path in basis_paths]
    n = len(basis_paths)
    structure = np.zeros((n, n, n), dtype=field.dtype)
    for i, left in enumerate(basis_paths):
        for j, right in enumerate(basis_paths):
            product = _concatenate(right, left)
            if product is None or len(product) > bound:
                continue
            unit = field.zeros(1, len(paths))[0]
            unit[column[product]] = field.scalar(1)
            structure[i, j] = normal_form(unit)[basis_columns]

    labels = tuple(_path_label(path, arrows, vertex_names) for path in basis_paths)
    idempotents = tuple(basis_paths.index(_Path(v, v, ())) for v in range(len(vertex_names)))
    generators = tuple(i for i, path in enumerate(basis_paths) if len(path) == 1)
    return Algebra(
        field=field,
        labels=labels,
        structure=structure,
        vertices=vertex_names,
        idempotents=idempotents,
        radical=tuple(i for i, path in enumerate(basis_paths) if len(path) > 0),
        generators=generators,
        left_vertex=tuple(path.target for path in basis_paths),
        right_vertex=tuple(path.source for path in basis_paths),
        loewy=tuple(len(path) for path in basis_paths),
        nilpotency_bound=bound,
        spec=spec,
        name=spec.name,
    )


def _concatenate(first: _Path, second: _Path) -> Optional[_Path]:
    """The path "first then second", or None when not composable."""
    if first.target != second.source:
        return None
    return _Path(first.source, second.target, first.arrows + second.arrows)


def _path_label(path: _Path, arrows, vertex_names) -> str:
    if not path.arrows:
        return f"e{vertex_names[path.source]}"
    return PATH_SEPARATOR.join(arrows[i][0] for i in path.arrows)


def _load_raw(spec: AlgebraSpec) -> Algebra:
    field = spec.field
    labels = tuple(spec.basis)
    n = len(labels)
    if n == 0 or len(set(labels)) != n:
        raise InputError("Raw algebra needs distinct basis labels")
    if spec.products is None:
        raise InputError("Raw algebra needs a products table")
    structure = field.array(spec.products)
    if structure.shape != (n, n, n):
        raise InputError(f"Products table has shape {structure.shape}, expected {(n, n, n)}")
    try:
        semisimple = tuple(labels.index(label) for label in spec.semisimple)
        radical = tuple(labels.index(label) for label in spec.radical)
    except ValueError as error:
        raise InputError(f"Unknown label in the semisimple/radical partition: {error}") from error
    if sorted(semisimple + radical) != list(range(n)):
        raise InputError("semisimple and radical must partition the basis")

    def coords(i: int, j: int) -> np.ndarray:
        return structure[i, j]

    def outside(vector: np.ndarray, allowed: Sequence[int]) -> bool:
        mask = np.ones(n, dtype=bool)
        mask[list(allowed)] = False
        return bool(np.any(vector[mask] != 0))

    for i in semisimple:
        for j in semisimple:
            if outside(coords(i, j), semisimple):
                raise SplitFailure(f"{labels[i]}·{labels[j]} leaves the semisimple part")
    for i in range(n):
        for j in radical:
            if outside(coords(i, j), radical) or outside(coords(j, i), radical):
                raise SplitFailure(f"J is not an ideal: products of {labels[i]} and {labels[j]}")

    commutative = all(np.array_equal(coords(i, j), coords(j, i)) for i in semisimple for j in semisimple)
    base = dict(field=field, labels=labels, structure=structure, radical=radical,
                generators=radical, nilpotency_bound=spec.nilpotency_bound, spec=spec, name=spec.name)
    if not commutative:
        logging.warning(f"{spec.name or 'algebra'}: semisimple part is not commutative, treating as non-basic")
        return Algebra(vertices=(), idempotents=(), left_vertex=(-1,) * n, right_vertex=(-1,) * n,
                       loewy=_loewy_levels(field, structure, radical), is_basic=False, **base)

    one = field.scalar(1)
    for i in semisimple:
        for j in semisimple:
            expected = np.zeros(n, dtype=field.dtype)
            if i == j:
                expected[i] = one
            if not np.array_equal(field.reduce(coords(i, j)), expected):
                raise BadIdempotents(f"{labels[i]}·{labels[j]} breaks orthogonal idempotency")
    left_vertex, right_vertex = [], []
    for b in range(n):
        lefts = [v for v, e in enumerate(semisimple) if not field.is_zero(coords(e, b))]
        rights = [v for v, e in enumerate(semisimple) if not field.is_zero(coords(b, e))]
        if len(lefts) != 1 or len(rights) != 1:
            raise BadIdempotents(f"Basis element {labels[b]} is not homogeneous for the idempotents")
        unit_b = np.zeros(n, dtype=field.dtype)
        unit_b[b] = one
        if not (np.array_equal(coords(semisimple[lefts[0]], b), unit_b)
                and np.array_equal(coords(b, semisimple[rights[0]]), unit_b)):
            raise BadIdempotents(f"Idempotents do not sum to 1 on {labels[b]}")
        left_vertex.append(lefts[0])
        right_vertex.append(rights[0])
    return Algebra(vertices=tuple(labels[i] for i in semisimple), idempotents=semisimple,
                   left_vertex=tuple(left_vertex), right_vertex=tuple(right_vertex),
                   loewy=_loewy_levels(field, structure, radical), **base)


def _radical_powers(field: Field, structure: np.ndarray, radical: Sequence[int], limit: int):
    n = structure.shape[0]
    current = linalg.row_basis(field, field.identity(n)[list(radical)], n)
    powers = [current]
    while current.shape[0] and len(powers) <= limit:
        products = []
        for r in radical:
            for row in current:
                products.append(field.reduce(np.tensordot(row, structure[r], axes=([0], [0]))))
        current = linalg.row_basis(field, linalg.vstack(field, products, n), n)
        powers.append(current)
    return powers


def _loewy_levels(field: Field, structure: np.ndarray, radical: Sequence[int]) -> Tuple[int, ...]:
    n = structure.shape[0]
    powers = _radical_powers(field, structure, radical, n)
    levels = []
    for i in range(n):
        unit = np.zeros((n, 1), dtype=field.dtype)
        unit[i, 0] = field.scalar(1)
        level = 0
        for depth, power in enumerate(powers, start=1):
            if power.shape[0] and linalg.in_span(field, power.T, unit):
                level = depth
        levels.append(level)
    return tuple(levels)


def _check_associative(algebra: Algebra):
    field = algebra.field
    s = algebra.structure
    left = field.reduce(np.tensordot(s, s, axes=([2], [0])))
    right = field.reduce(np.tensordot(s, s, axes=([1], [2])).transpose(0, 2, 3, 1))
    if not np.array_equal(left, right):
        i, j, k, _ = (int(x) for x in np.argwhere(left != right)[0])
        raise NotAssociative(
            f"({algebra.labels[i]}·{algebra.labels[j]})·{algebra.labels[k]} != "
            f"{algebra.labels[i]}·({algebra.labels[j]}·{algebra.labels[k]})")


def _check_radical_nilpotent(algebra: Algebra):
    bound = algebra.nilpotency_bound
    powers = _radical_powers(algebra.field, algebra.structure, algebra.radical, bound)
    if len(powers) >= bound and powers[bound - 1].shape[0]:
        raise NotFiniteDimensional(f"J^{bound} != 0 for {algebra.name or 'algebra'}")
