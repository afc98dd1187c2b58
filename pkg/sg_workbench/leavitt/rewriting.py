"""Normal forms in the Leavitt algebra by leftmost rewriting.

Rules:
    dead     a word through a vertex with e_v = 0 is 0
    pair     α_i α_k* -> δ_ik e_{t_i}
    pivot    α_p* α_p -> e_v - Σ_{i ≠ p} α_i* α_i   (p the pivot of block v)

The pair rule shortens words. The pivot rule keeps the length and replaces
the pivot pair by pairs with smaller labels, so the process terminates.
"""
import itertools
import logging
from typing import Iterable, List, Optional, Tuple

from sg_workbench.algebra.algebras import Algebra
from sg_workbench.errors import AxiomFailure, ConfluenceFailure, RewriteBudget
from sg_workbench.leavitt.presentation import (DUAL_LETTER, IDEMPOTENT, J_LETTER, PAIR_RULE, PIVOT_RULE, Element,
                                               LeavittPresentation, Word, build_presentation,
                                               defining_identity_failures, dual_basis_failures)

STEP_BUDGET = 10 ** 6


def add_into(presentation: LeavittPresentation, target: Element, word: Word, coefficient) -> None:
    field = presentation.field
    total = field.add(target.get(word, field.scalar(0)), coefficient)
    if total == 0:
        target.pop(word, None)
    else:
        target[word] = total


def combine(presentation: LeavittPresentation, terms: Iterable[Tuple[Word, object]]) -> Element:
    result: Element = {}
    for word, coefficient in terms:
        add_into(presentation, result, word, coefficient)
    return result


def multiply_words(presentation: LeavittPresentation, first: Word, second: Word) -> Optional[Word]:
    """Concatenation over Λ₀, or None when the frames do not match."""
    if first[0][0] == IDEMPOTENT:
        return second if presentation.left(second[0]) == first[0][1] else None
    if second[0][0] == IDEMPOTENT:
        return first if presentation.right(first[-1]) == second[0][1] else None
    if presentation.right(first[-1]) != presentation.left(second[0]):
        return None
    return first + second


def multiply(presentation: LeavittPresentation, first: Element, second: Element) -> Element:
    field = presentation.field
    terms = []
    for (u, a), (v, b) in itertools.product(first.items(), second.items()):
        product = multiply_words(presentation, u, v)
        if product is not None:
            terms.append((product, field.mul(a, b)))
    return combine(presentation, terms)


def _join(presentation: LeavittPresentation, prefix: Word, suffix: Word, vertex: int) -> Word:
    joined = prefix + suffix
    return joined if joined else presentation.idempotent(vertex)


def apply_rule(presentation: LeavittPresentation, word: Word, position: int) -> List[Tuple[Word, object]]:
    """Result of the pair or pivot rule at word[position:position + 2]."""
    field = presentation.field
    kind = presentation.rule_at(word, position)
    prefix, suffix = word[:position], word[position + 2:]
    (_, i), (_, k) = word[position], word[position + 1]
    if kind == PAIR_RULE:
        scalar, vertex = presentation.pairing(k, i)
        if scalar == 0:
            return []
        return [(_join(presentation, prefix, suffix, vertex), scalar)]
    if kind == PIVOT_RULE:
        v = presentation.sources[i]
        terms = [(_join(presentation, prefix, suffix, v), field.scalar(1))]
        for g, a in presentation.casimir_block(v):
            if g[1] != i:
                terms.append((prefix + (g, a) + suffix, field.scalar(-1)))
        return terms
    raise ValueError(f"No rule applies at position {position}")


def first_redex(presentation: LeavittPresentation, word: Word) -> Optional[Tuple[int, str]]:
    for position, letter in enumerate(word):
        if presentation.is_dead(letter):
            return position, "dead"
    for position in range(len(word) - 1):
        kind = presentation.rule_at(word, position)
        if kind is not None:
            return position, kind
    return None


def is_normal(presentation: LeavittPresentation, word: Word) -> bool:
    return first_redex(presentation, word) is None


def normal_form(presentation: LeavittPresentation, element: Element, budget: int = STEP_BUDGET) -> Element:
    """Rewrite every term until no redex remains.

    Raises:
        RewriteBudget: more than budget rewrite steps
    """
    field = presentation.field
    result: Element = {}
    stack = list(element.items())
    steps = 0
    while stack:
        word, coefficient = stack.pop()
        if coefficient == 0:
            continue
        redex = first_redex(presentation, word)
        if redex is None:
            add_into(presentation, result, word, coefficient)
            continue
        steps += 1
        if steps > budget:
            raise RewriteBudget(f"Normal form exceeded {budget} rewrite steps")
        position, kind = redex
        if kind == "dead":
            continue
        for new_word, factor in apply_rule(presentation, word, position):
            stack.append((new_word, field.mul(coefficient, factor)))
    return result


def word_normal_form(presentation: LeavittPresentation, word: Word) -> Element:
    return normal_form(presentation, {word: presentation.field.scalar(1)})


def critical_words(presentation: LeavittPresentation) -> Iterable[Word]:
    """Well-formed three-letter words where two rules overlap."""
    letters = [(kind, i) for kind in (DUAL_LETTER, J_LETTER) for i in range(presentation.size)]
    for word in itertools.product(letters, repeat=3):
        if not presentation.well_formed(word):
            continue
        if presentation.rule_at(word, 0) and presentation.rule_at(word, 1):
            yield word


def check_confluence(presentation: LeavittPresentation) -> int:
    """Resolve every overlap ambiguity; returns the number checked.

    Raises:
        ConfluenceFailure: some critical pair normalizes to different results
    """
    checked = 0
    for word in critical_words(presentation):
        left = normal_form(presentation, combine(presentation, apply_rule(presentation, word, 0)))
        right = normal_form(presentation, combine(presentation, apply_rule(presentation, word, 1)))
        checked += 1
        if left != right:
            raise ConfluenceFailure(
                f"Overlap {' '.join(presentation.word_labels(word))} does not resolve",
                (presentation.word_labels(word), left, right))
    return checked


def leavitt_presentation(algebra: Algebra, transposed: bool = False) -> LeavittPresentation:
    """Build and verify the Leavitt presentation of a basic algebra.

    Arguments:
        algebra {Algebra} -- basic algebra with Λ = Λ₀ ⊕ J

    Keyword Arguments:
        transposed {bool} -- swap the tensor factors of ∂(α*)

    Raises:
        NonBasicUnsupported: the semisimple part is not a product of fields
        AxiomFailure: the dual basis or the defining identity of ∂ fails
        ConfluenceFailure: an overlap ambiguity does not resolve

    Returns:
        LeavittPresentation -- confluent presentation
    """
    presentation = build_presentation(algebra, transposed=transposed)
    failures = dual_basis_failures(presentation)
    if failures:
        raise AxiomFailure(f"Dual basis pairing fails on {failures[0]}", failures[0])
    failures = defining_identity_failures(presentation)
    if failures:
        raise AxiomFailure(f"g(ab) = Σ g₂(a g₁(b)) fails for (g, a, b) = {failures[0]}", failures[0])
    checked = check_confluence(presentation)
    if presentation.collapsed:
        logging.info(f"Leavitt algebra of {algebra.name or 'algebra'} collapses to zero")
    logging.info(f"Leavitt presentation of {algebra.name or 'algebra'}: {presentation.size} letter pairs, "
                 f"{checked} overlaps resolved, dead vertices {sorted(presentation.dead_vertices)}")
    return presentation
