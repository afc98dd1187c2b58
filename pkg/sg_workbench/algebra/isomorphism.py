"""Isomorphism testing and decomposition into indecomposables."""
import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from sg_workbench.algebra import linalg
from sg_workbench.algebra.modules import Module, ModuleMap, hom_space, submodule
from sg_workbench.errors import BudgetExceeded, DecompositionInconclusive, InvariantBreach

ISO_BUDGET = 10 ** 6
EIGEN_SCAN = 16
RANDOM_TRIALS = 32


@dataclass(frozen=True, eq=False)
class IsoDecision:
    isomorphic: bool
    witness: Optional[ModuleMap] = None
    reason: str = ""

    def __bool__(self):
        return self.isomorphic


@dataclass(frozen=True, eq=False)
class Piece:
    """An indecomposable summand with its split inclusion into the parent."""
    module: Module
    inclusion: np.ndarray


@dataclass(frozen=True, eq=False)
class Decomposition:
    module: Module
    pieces: Tuple[Piece, ...]
    groups: Tuple[Tuple[int, ...], ...]

    @property
    def summands(self) -> List[Tuple[Module, int]]:
        return [(self.pieces[group[0]].module, len(group)) for group in self.groups]

    def change_of_basis(self) -> np.ndarray:
        """Invertible matrix whose column blocks are the piece inclusions."""
        field = self.module.field
        return linalg.hstack(field, [piece.inclusion for piece in self.pieces], self.module.dim)

    def projections(self) -> List[np.ndarray]:
        field = self.module.field
        inverse = linalg.inverse(field, self.change_of_basis())
        result, offset = [], 0
        for piece in self.pieces:
            result.append(inverse[offset:offset + piece.module.dim, :].copy())
            offset += piece.module.dim
        return result


def is_isomorphic(source: Module, target: Module, budget: int = ISO_BUDGET, seed: int = 0,
                  samples: int = 64, fallback: bool = True) -> IsoDecision:
    """Decide source ≅ target and return a witness when they are.

    Arguments:
        source {Module} -- first module
        target {Module} -- second module

    Keyword Arguments:
        budget {int} -- maximal exhaustive candidate count over finite fields
        seed {int} -- seed for random sampling
        samples {int} -- random combinations tried before the fallback
        fallback {bool} -- compare decompositions when sampling is inconclusive

    Raises:
        BudgetExceeded: sampling inconclusive and fallback disabled

    Returns:
        IsoDecision -- decision with witness map
    """
    field = source.field
    if source.dim != target.dim or source.dimension_vector() != target.dimension_vector():
        return IsoDecision(False, reason="dimension vectors differ")
    if source.dim == 0:
        return IsoDecision(True, ModuleMap(source, target, field.zeros(0, 0)), "zero modules")
    hom = hom_space(source, target)
    if hom.dim == 0:
        return IsoDecision(False, reason="Hom is zero")
    for f in hom.basis:
        if f.is_isomorphism():
            return IsoDecision(True, f, "basis element")
    if field.is_finite and _projective_count(field.size, hom.dim) <= budget:
        for coefficients in _projective_points(field, hom.dim):
            f = hom.combination(coefficients)
            if f.is_isomorphism():
                return IsoDecision(True, f, "exhaustive search")
        return IsoDecision(False, reason="no invertible map in Hom")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        f = hom.combination(field.random_array(rng, (hom.dim,), bound=8))
        if f.is_isomorphism():
            return IsoDecision(True, f, "random sampling")
    if not fallback:
        raise BudgetExceeded(f"Sampling {samples} maps from a {hom.dim}-dim Hom space was inconclusive")
    logging.info(f"Falling back to decomposition comparison for dim {source.dim}")
    return _compare_decompositions(source, target, seed)


def _projective_count(q: int, r: int) -> int:
    return (q ** r - 1) // (q - 1)


def _projective_points(field, r: int) -> Iterator[Tuple]:
    """Coefficient vectors up to scalar: first nonzero entry equal to 1."""
    elements = list(field.elements())
    for lead in range(r):
        for tail in itertools.product(elements, repeat=r - lead - 1):
            yield (0,) * lead + (1,) + tail


def indecomposables_isomorphic(first: Module, second: Module) -> Optional[ModuleMap]:
    """Iso for modules with local endomorphism rings, else None.

    Some basis element of Hom lies outside the radical iff they are isomorphic.
    """
    if first.dimension_vector() != second.dimension_vector():
        return None
    for f in hom_space(first, second).basis:
        if f.is_isomorphism():
            return f
    return None


def _compare_decompositions(source: Module, target: Module, seed: int) -> IsoDecision:
    field = source.field
    left = decompose(source, seed=seed)
    right = decompose(target, seed=seed)
    if len(left.pieces) != len(right.pieces):
        return IsoDecision(False, reason="different number of indecomposable summands")
    unused = list(range(len(right.pieces)))
    matches = []
    for piece in left.pieces:
        for k in unused:
            iso = indecomposables_isomorphic(piece.module, right.pieces[k].module)
            if iso is not None:
                matches.append((k, iso))
                unused.remove(k)
                break
        else:
            return IsoDecision(False, reason="indecomposable summands differ")
    projections = left.projections()
    matrix = field.zeros(target.dim, source.dim)
    for (k, iso), projection in zip(matches, projections):
        block = field.matmul(right.pieces[k].inclusion, field.matmul(iso.matrix, projection))
        matrix = field.reduce(matrix + block)
    witness = ModuleMap(source, target, matrix)
    if not (witness.is_isomorphism() and witness.is_intertwiner()):
        raise InvariantBreach("Assembled isomorphism witness is not invertible")
    return IsoDecision(True, witness, "decomposition comparison")


def decompose(module: Module, eigen_scan: int = EIGEN_SCAN, seed: int = 0,
              random_trials: int = RANDOM_TRIALS, budget: int = ISO_BUDGET) -> Decomposition:
    """Fitting decomposition into indecomposables with local endomorphism rings.

    Arguments:
        module {Module} -- module to split

    Keyword Arguments:
        eigen_scan {int} -- bound on scalars λ tried in φ − λ
        seed {int} -- seed for random endomorphisms
        random_trials {int} -- random combinations tried per block
        budget {int} -- exhaustive End enumeration bound over finite fields

    Raises:
        DecompositionInconclusive: locality could not be certified

    Returns:
        Decomposition -- pieces with inclusions and isomorphism groups
    """
    field = module.field
    rng = np.random.default_rng(seed)
    if module.dim == 0:
        return Decomposition(module, (), ())
    if module.is_semisimple():
        pieces = []
        for i, v in enumerate(module.vertex_of):
            column = field.zeros(module.dim, 1)
            column[i, 0] = field.scalar(1)
            pieces.append(Piece(submodule(module, column, f"S({module.algebra.vertices[v]})").module, column))
    else:
        pieces = _split(module, field.identity(module.dim), eigen_scan, rng, random_trials, budget)
    groups: List[List[int]] = []
    for i, piece in enumerate(pieces):
        for group in groups:
            if indecomposables_isomorphic(pieces[group[0]].module, piece.module) is not None:
                group.append(i)
                break
        else:
            groups.append([i])
    logging.debug(f"Decomposed {module.name or 'module'} into {len(pieces)} indecomposables")
    return Decomposition(module, tuple(pieces), tuple(tuple(g) for g in groups))


def _split(module: Module, inclusion: np.ndarray, eigen_scan, rng, random_trials, budget) -> List[Piece]:
    field = module.field
    if module.dim <= 1:
        return [Piece(module, inclusion)]
    splitting = _find_splitting(module, eigen_scan, rng, random_trials, budget)
    if splitting is None:
        return [Piece(module, inclusion)]
    pieces = []
    for columns in splitting:
        part = submodule(module, columns)
        pieces.extend(_split(part.module, field.matmul(inclusion, part.inclusion.matrix),
                             eigen_scan, rng, random_trials, budget))
    return pieces


def _fitting(module: Module, phi: np.ndarray) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    field = module.field
    d = module.dim
    psi = linalg.matrix_power(field, phi, d)
    r = linalg.rank(field, psi)
    if r == 0 or r == d:
        return None
    kernel_columns = linalg.nullspace(field, psi, d).T
    image_columns = linalg.column_basis(field, psi)
    return kernel_columns, image_columns


def _scalars(field, eigen_scan: int) -> List:
    if field.is_finite and field.size - 1 <= eigen_scan:
        return list(field.elements(nonzero=True))
    values = []
    for k in range(1, eigen_scan + 1):
        values.extend([field.scalar(k), field.scalar(-k)])
    return [v for i, v in enumerate(values) if v != 0 and v not in values[:i]]


def _find_splitting(module, eigen_scan, rng, random_trials, budget):
    field = module.field
    d = module.dim
    endomorphisms = [f.matrix for f in hom_space(module, module).basis]
    if len(endomorphisms) == 1:
        return None
    for phi in endomorphisms:
        split = _fitting(module, phi)
        if split:
            return split
    scalars = _scalars(field, eigen_scan)
    nilpotent_parts = []
    for phi in endomorphisms:
        shift = _nilpotent_shift(field, phi, scalars)
        if shift is None:
            for value in scalars:
                split = _fitting(module, field.reduce(phi - value * field.identity(d)))
                if split:
                    return split
        else:
            nilpotent_parts.append(shift)
    if len(nilpotent_parts) == len(endomorphisms) and _is_local(field, nilpotent_parts, len(endomorphisms)):
        return None
    for _ in range(random_trials):
        coefficients = field.random_array(rng, (len(endomorphisms),), bound=eigen_scan)
        phi = field.zeros(d, d)
        for c, matrix in zip(coefficients, endomorphisms):
            phi = field.reduce(phi + c * matrix)
        split = _fitting(module, phi)
        if split:
            return split
    if field.is_finite and field.size ** len(endomorphisms) <= budget:
        for coefficients in itertools.product(list(field.elements()), repeat=len(endomorphisms)):
            phi = field.zeros(d, d)
            for c, matrix in zip(coefficients, endomorphisms):
                phi = field.reduce(phi + c * matrix)
            split = _fitting(module, phi)
            if split:
                return split
        return None
    raise DecompositionInconclusive(
        f"No splitting endomorphism of {module.name or 'module'} found and locality not certified")


def _nilpotent_shift(field, phi, scalars) -> Optional[np.ndarray]:
    """phi − λ for the λ making it nilpotent, if one is found."""
    d = phi.shape[0]
    for value in [field.scalar(0)] + list(scalars):
        shifted = field.reduce(phi - value * field.identity(d))
        if linalg.is_nilpotent(field, shifted):
            return shifted
    return None


def _is_local(field, nilpotent_parts: Sequence[np.ndarray], end_dim: int) -> bool:
    """The nilpotent parts span a nilpotent ideal of codimension one in End."""
    d = nilpotent_parts[0].shape[0]
    rows = linalg.vstack(field, [m.reshape(1, d * d) for m in nilpotent_parts], d * d)
    span = linalg.row_basis(field, rows, d * d)
    if span.shape[0] != end_dim - 1:
        return False
    current = span
    for _ in range(d + 1):
        if current.shape[0] == 0:
            return True
        products = [field.matmul(a.reshape(d, d), b.reshape(d, d)).reshape(1, d * d)
                    for a in span for b in current]
        product_span = linalg.row_basis(field, linalg.vstack(field, products, d * d), d * d)
        if product_span.shape[0] and linalg.rank(field, np.concatenate([span, product_span])) != span.shape[0]:
            return False
        current = product_span
    return current.shape[0] == 0


def split_inclusions(decomposition: Decomposition) -> List[Tuple[ModuleMap, ModuleMap]]:
    """(inclusion, projection) maps for each piece."""
    module = decomposition.module
    result = []
    for piece, projection in zip(decomposition.pieces, decomposition.projections()):
        result.append((ModuleMap(piece.module, module, piece.inclusion),
                       ModuleMap(module, piece.module, projection)))
    return result

