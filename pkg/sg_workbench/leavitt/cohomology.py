"""dg axioms, length-filtered cohomology approximants and the comparison
with Γ(Λ₀;1)."""
import enum
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Tuple

import numpy as np

from sg_workbench.algebra import linalg
from sg_workbench.errors import AxiomFailure, CrosscheckMismatch, InputError
from sg_workbench.homology.stable import SgHomStatus
from sg_workbench.leavitt.components import apply_differential, differential_matrix, truncated_component
from sg_workbench.leavitt.presentation import DUAL_LETTER, J_LETTER, Element, LeavittPresentation, Word
from sg_workbench.leavitt.rewriting import add_into, combine, multiply, normal_form

LEIBNIZ_SAMPLES = 64


@dataclass(frozen=True)
class DgAxiomReport:
    length_bound: int
    pair_relations: int
    casimir_blocks: int
    square_words: int
    leibniz_pairs: int


def _fail(presentation: LeavittPresentation, check: str, subject: List[str], image: Element):
    shown = {" ".join(presentation.word_labels(word)): str(c) for word, c in image.items()}
    raise AxiomFailure(f"{check} fails on {' '.join(subject)}: {shown}", {"check": check, "element": subject,
                                                                             "image": shown})


def _normal_words(presentation: LeavittPresentation, length_bound: int) -> List[Word]:
    words = []
    for degree in range(-length_bound, length_bound + 1):
        words.extend(truncated_component(presentation, degree, length_bound).basis)
    return words


def verify_dg_axioms(presentation: LeavittPresentation, length_bound: int, samples: int = LEIBNIZ_SAMPLES,
                     seed: int = 0) -> DgAxiomReport:
    """Check that ∂ respects both relations, squares to zero and is a derivation.

    Raises:
        AxiomFailure: with the offending element
    """
    field = presentation.field
    one, minus_one = field.scalar(1), field.scalar(-1)
    pairs = 0
    for i in range(presentation.size):
        for k in range(presentation.size):
            if presentation.sources[i] != presentation.sources[k]:
                continue
            relation = {((J_LETTER, i), (DUAL_LETTER, k)): one}
            if i == k:
                add_into(presentation, relation, presentation.idempotent(presentation.targets[i]), minus_one)
            image = apply_differential(presentation, relation)
            pairs += 1
            if image:
                _fail(presentation, "∂(a g - g(a)) = 0", [presentation.labels[i], presentation.labels[k] + "*"], image)
    blocks = 0
    for v in presentation.live_vertices:
        relation = {presentation.idempotent(v): one}
        for g, a in presentation.casimir_block(v):
            add_into(presentation, relation, (g, a), minus_one)
        image = apply_differential(presentation, relation)
        blocks += 1
        if image:
            _fail(presentation, "∂(e - c) = 0", [presentation.letter_label(("e", v))], image)
    words = _normal_words(presentation, length_bound)
    for word in words:
        image = apply_differential(presentation, apply_differential(presentation, {word: one}))
        if image:
            _fail(presentation, "∂² = 0", presentation.word_labels(word), image)
    candidates = [(u, v) for u in words for v in words
                  if presentation.length(u) + presentation.length(v) <= length_bound]
    if len(candidates) > samples:
        rng = np.random.default_rng(seed)
        chosen = sorted(rng.choice(len(candidates), size=samples, replace=False))
        candidates = [candidates[i] for i in chosen]
    for u, v in candidates:
        product = multiply(presentation, {u: one}, {v: one})
        left = apply_differential(presentation, normal_form(presentation, product))
        sign = one if presentation.degree(u) % 2 == 0 else minus_one
        first = multiply(presentation, apply_differential(presentation, {u: one}), {v: one})
        second = multiply(presentation, {u: one}, apply_differential(presentation, {v: one}))
        right = normal_form(presentation, combine(
            presentation, list(first.items()) + [(w, field.mul(sign, c)) for w, c in second.items()]))
        if left != right:
            _fail(presentation, "Leibniz rule", presentation.word_labels(u) + ["|"] + presentation.word_labels(v),
                  combine(presentation, list(left.items()) + [(w, field.neg(c)) for w, c in right.items()]))
    logging.info(f"dg axioms hold up to length {length_bound}: {pairs} pair relations, {blocks} blocks, "
                 f"{len(words)} words, {len(candidates)} Leibniz pairs")
    return DgAxiomReport(length_bound, pairs, blocks, len(words), len(candidates))


class Semantics(enum.Enum):
    EXACT = "Exact"
    APPROXIMANT_ONLY = "ApproximantOnly"


@dataclass(frozen=True, eq=False)
class DegreeCohomology:
    """Filtered data for one degree n.

    kernel_dims[ℓ] = dim Z_ℓ, Z_ℓ = ker(∂) ∩ F_ℓ^n;
    intersection_dims[ℓ][m] = dim(Z_ℓ ∩ ∂F_m^{n-1});
    surviving[ℓ][m] = kernel_dims[ℓ] - intersection_dims[ℓ][m].
    """
    degree: int
    lengths: Tuple[int, ...]
    component_dims: Dict[int, int]
    kernel_dims: Dict[int, int]
    boundary_lengths: Tuple[int, ...]
    intersection_dims: Dict[int, Dict[int, int]]
    surviving: Dict[int, Dict[int, int]]
    differential_zero: bool
    semantics: Semantics
    exact_dim: Optional[int] = None

    @property
    def growing(self) -> bool:
        dims = [self.component_dims[length] for length in self.lengths if (length - self.degree) % 2 == 0]
        return len(dims) > 2 and all(b > a for a, b in zip(dims, dims[1:]))

    def monotonicity_failures(self) -> List[str]:
        failures = []
        for length in self.lengths:
            row = [self.surviving[length][m] for m in self.boundary_lengths]
            if any(b > a for a, b in zip(row, row[1:])):
                failures.append(f"surviving counts increase in m at ℓ={length}")
        for m in self.boundary_lengths:
            column = [self.surviving[length][m] for length in self.lengths]
            if any(b < a for a, b in zip(column, column[1:])):
                failures.append(f"surviving counts decrease in ℓ at m={m}")
        return failures


@dataclass(eq=False)
class CohomologyReport:
    presentation: LeavittPresentation
    length_bound: int
    m_bound: int
    degrees: Dict[int, DegreeCohomology]
    crosscheck: Optional["CrosscheckReport"] = None

    def exact(self, degree: int) -> Optional[int]:
        entry = self.degrees.get(degree)
        return entry.exact_dim if entry is not None and entry.semantics is Semantics.EXACT else None


def _intersection_dim(field, first: np.ndarray, second: np.ndarray) -> int:
    """dim of the intersection of two row spaces given by independent rows."""
    if not first.shape[0] or not second.shape[0]:
        return 0
    total = linalg.rank(field, np.concatenate([first, second], axis=0))
    return first.shape[0] + second.shape[0] - total


def _pad(field, rows: np.ndarray, ambient: int) -> np.ndarray:
    padded = field.zeros(rows.shape[0], ambient)
    padded[:, :rows.shape[1]] = rows
    return padded


def _degree_cohomology(presentation: LeavittPresentation, degree: int, length_bound: int, m_bound: int) -> DegreeCohomology:
    field = presentation.field
    ambient_bound = max(length_bound, m_bound + 1)
    ambient = truncated_component(presentation, degree, ambient_bound)
    lengths = tuple(range(abs(degree), length_bound + 1))
    source = truncated_component(presentation, degree, length_bound)
    target = truncated_component(presentation, degree + 1, length_bound + 1)
    outgoing = differential_matrix(presentation, degree, length_bound, source, target)
    boundary_lengths = tuple(range(abs(degree - 1), m_bound + 1))
    if boundary_lengths:
        previous = truncated_component(presentation, degree - 1, m_bound)
        incoming = differential_matrix(presentation, degree - 1, m_bound, previous,
                                       truncated_component(presentation, degree, m_bound + 1))
    else:
        previous, incoming = None, field.zeros(0, 0)
    component_dims, kernel_dims, kernels = {}, {}, {}
    for length in lengths:
        width = source.dim_at(length)
        component_dims[length] = width
        null = linalg.nullspace(field, outgoing[:, :width], width)
        kernel_dims[length] = null.shape[0]
        kernels[length] = _pad(field, null, ambient.dim)
    boundaries = {}
    for m in boundary_lengths:
        width = previous.dim_at(m)
        images = linalg.row_basis(field, incoming[:, :width].T, incoming.shape[0])
        boundaries[m] = _pad(field, images, ambient.dim)
    intersection_dims, surviving = {}, {}
    for length in lengths:
        intersection_dims[length], surviving[length] = {}, {}
        for m in boundary_lengths:
            common = _intersection_dim(field, kernels[length], boundaries[m])
            intersection_dims[length][m] = common
            surviving[length][m] = kernel_dims[length] - common
    differential_zero = field.is_zero(outgoing) and field.is_zero(incoming)
    semantics, exact_dim = Semantics.APPROXIMANT_ONLY, None
    if presentation.collapsed:
        semantics, exact_dim = Semantics.EXACT, 0
    elif presentation.differential_vanishes:
        for length in lengths:
            if length > abs(degree) and (length - degree) % 2 == 0 and \
                    component_dims[length] == component_dims[length - 2]:
                semantics, exact_dim = Semantics.EXACT, component_dims[length_bound]
                break
    return DegreeCohomology(degree, lengths, component_dims, kernel_dims, boundary_lengths,
                            intersection_dims, surviving, differential_zero, semantics, exact_dim)


def cohomology_report(presentation: LeavittPresentation, degrees: Tuple[int, int], length_bound: int,
                      m_bound: int) -> CohomologyReport:
    """Kernel, boundary and surviving-class tables for each degree in [lo, hi].

    Exact only when the algebra collapsed, or when ∂ vanishes and the
    component has no words at some length beyond |n| (then none longer).
    """
    low, high = degrees
    if low > high:
        raise InputError("Empty degree range")
    result = {}
    for degree in range(low, high + 1):
        if length_bound < abs(degree):
            raise InputError(f"Length bound {length_bound} is below |{degree}|")
        result[degree] = _degree_cohomology(presentation, degree, length_bound, m_bound)
        logging.debug(f"H^{degree}: {result[degree].semantics.value} dims {result[degree].component_dims}")
    logging.info(f"Cohomology approximants for degrees [{low}, {high}] up to length {length_bound}")
    return CohomologyReport(presentation, length_bound, m_bound, result)


class Comparison(enum.Enum):
    MATCH = "Match"
    MISMATCH = "Mismatch"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class CrosscheckEntry:
    degree: int
    comparison: Comparison
    cohomology_dim: Optional[int]
    gamma_dim: Optional[int]
    annotation: str = ""


@dataclass(frozen=True)
class CrosscheckReport:
    entries: Tuple[CrosscheckEntry, ...] = dataclass_field(default_factory=tuple)

    @property
    def matched(self) -> bool:
        return all(entry.comparison is Comparison.MATCH for entry in self.entries)

    def comparisons(self) -> Dict[int, str]:
        return {entry.degree: entry.comparison.value for entry in self.entries}


def crosscheck_lemma(report: CohomologyReport, table) -> CrosscheckReport:
    """Compare exact dim H^n with certified Γ(Λ₀;1) entries degree by degree.

    Raises:
        CrosscheckMismatch: exact and certified dimensions differ
    """
    entries = []
    for degree in sorted(report.degrees):
        if degree not in table.reports:
            continue
        cohomology = report.degrees[degree]
        gamma = table.reports[degree]
        exact = report.exact(degree)
        gamma_dim = gamma.value if gamma.is_certified else None
        if exact is not None and gamma_dim is not None:
            comparison = Comparison.MATCH if exact == gamma_dim else Comparison.MISMATCH
            annotation = ""
        else:
            comparison = Comparison.INCOMPARABLE
            gamma_growing = gamma.status is SgHomStatus.GROWING_AT_CUTOFF
            if gamma_growing and cohomology.growing:
                annotation = "concordant growth"
            elif gamma_growing or cohomology.growing:
                annotation = "growth on one side"
            else:
                annotation = "uncertified"
        entries.append(CrosscheckEntry(degree, comparison, exact, gamma_dim, annotation))
    result = CrosscheckReport(tuple(entries))
    report.crosscheck = result
    mismatches = [entry for entry in entries if entry.comparison is Comparison.MISMATCH]
    if mismatches:
        raise CrosscheckMismatch(f"H^{mismatches[0].degree} has dimension {mismatches[0].cohomology_dim} but "
                                 f"Γ has {mismatches[0].gamma_dim}", result)
    return result
