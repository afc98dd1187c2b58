"""Length-truncated graded components F_ℓ^n and the differential between them."""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from sg_workbench.errors import InvariantBreach
from sg_workbench.leavitt.presentation import DUAL_LETTER, IDEMPOTENT, J_LETTER, Element, LeavittPresentation, Word
from sg_workbench.leavitt.rewriting import add_into, normal_form


@dataclass(frozen=True, eq=False)
class TruncatedComponent:
    """Normal words of degree n and length <= ℓ, sorted by (length, word).

    Bases are prefix-closed: the basis for ℓ starts the basis for ℓ + 1.
    """
    presentation: LeavittPresentation
    degree: int
    length_bound: int
    basis: Tuple[Word, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self) -> Dict[Word, int]:
        return {word: i for i, word in enumerate(self.basis)}

    def dim_at(self, length: int) -> int:
        """dim F_length^n for length <= length_bound."""
        return sum(1 for word in self.basis if self.presentation.length(word) <= length)

    def inclusion(self, larger: "TruncatedComponent") -> np.ndarray:
        field = self.presentation.field
        matrix = field.zeros(larger.dim, self.dim)
        for i in range(self.dim):
            matrix[i, i] = field.scalar(1)
        return matrix

    def labels(self) -> List[List[str]]:
        return [self.presentation.word_labels(word) for word in self.basis]


def _words(presentation: LeavittPresentation, duals: int, elements: int) -> List[Word]:
    """Normal words with the given numbers of α* and α letters."""
    letters = presentation.live_letters(DUAL_LETTER)
    a_letters = presentation.live_letters(J_LETTER)
    found = []

    def extend(word: Word):
        position = len(word)
        if position == duals + elements:
            found.append(word)
            return
        pool = letters if position < duals else a_letters
        for letter in pool:
            if word and presentation.right(word[-1]) != presentation.left(letter):
                continue
            if position == duals and position and presentation.rule_at(word[-1:] + (letter,), 0):
                continue
            extend(word + (letter,))

    extend(())
    return found


def truncated_component(presentation: LeavittPresentation, degree: int, length_bound: int) -> TruncatedComponent:
    """F_ℓ^n: normal words α*⋯α* α⋯α of degree n and length <= ℓ."""
    if length_bound < abs(degree):
        raise ValueError(f"Length bound {length_bound} is below |{degree}|")
    basis: List[Word] = []
    for length in range(abs(degree), length_bound + 1):
        if (length + degree) % 2:
            continue
        duals, elements = (length + degree) // 2, (length - degree) // 2
        if length == 0:
            basis.extend(presentation.idempotent(v) for v in presentation.live_vertices)
            continue
        basis.extend(sorted(_words(presentation, duals, elements)))
    return TruncatedComponent(presentation, degree, length_bound, tuple(basis))


def differential(presentation: LeavittPresentation, word: Word) -> Element:
    """∂ of a word by the graded Leibniz rule, not yet normalized.

    Every letter has odd degree, so the letter at position j carries (-1)^j.
    """
    field = presentation.field
    result: Element = {}
    if word[0][0] == IDEMPOTENT:
        return result
    for j, (kind, i) in enumerate(word):
        prefix, suffix = word[:j], word[j + 1:]
        sign = field.scalar(-1 if j % 2 else 1)
        if kind == DUAL_LETTER:
            terms = [(coefficient, ((DUAL_LETTER, b), (DUAL_LETTER, a)))
                     for coefficient, b, a in presentation.plus[i]]
        else:
            terms = [(coefficient, ((DUAL_LETTER, p), (J_LETTER, k)))
                     for coefficient, p, k in presentation.minus[i]]
        for coefficient, replacement in terms:
            add_into(presentation, result, prefix + replacement + suffix, field.mul(sign, coefficient))
    return result


def apply_differential(presentation: LeavittPresentation, element: Element) -> Element:
    field = presentation.field
    result: Element = {}
    for word, coefficient in element.items():
        for image, factor in differential(presentation, word).items():
            add_into(presentation, result, image, field.mul(coefficient, factor))
    return normal_form(presentation, result)


def differential_matrix(presentation: LeavittPresentation, degree: int, length_bound: int,
                        source: Optional[TruncatedComponent] = None,
                        target: Optional[TruncatedComponent] = None) -> np.ndarray:
    """Matrix of ∂: F_ℓ^n -> F_{ℓ+1}^{n+1} in the stored bases."""
    field = presentation.field
    source = source or truncated_component(presentation, degree, length_bound)
    target = target or truncated_component(presentation, degree + 1, length_bound + 1)
    index = target.index()
    matrix = field.zeros(target.dim, source.dim)
    for column, word in enumerate(source.basis):
        image = apply_differential(presentation, {word: field.scalar(1)})
        for term, coefficient in image.items():
            if term not in index:
                raise InvariantBreach(
                    f"∂({' '.join(presentation.word_labels(word))}) leaves the component ({degree + 1}, {length_bound + 1})")
            matrix[index[term], column] = coefficient
    return matrix
