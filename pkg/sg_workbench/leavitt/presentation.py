"""The dg Leavitt algebra of Λ₀ ⊕ J as data: letters, Casimir blocks, pivots
and the differential on generators.

Letters are ("a", i) for the J-basis element α_i and ("g", i) for its dual
α_i*; ("e", v) is the idempotent word of vertex v. α_i = e_t α_i e_s has
left vertex t_i and right vertex s_i; α_i* has left s_i and right t_i.
A word x_1 ⋯ x_L is well formed when right(x_k) = left(x_{k+1}).
"""
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

from sg_workbench.algebra import linalg
from sg_workbench.algebra.algebras import Algebra

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]
Element = Dict[Word, Any]

J_LETTER = "a"
DUAL_LETTER = "g"
IDEMPOTENT = "e"

PAIR_RULE = "pair"
PIVOT_RULE = "pivot"


@dataclass(frozen=True, eq=False)
class LeavittPresentation:
    """
    radical[i] is the algebra basis index of α_i. The differential is stored
    on generators: plus[k] lists (c, b, a) for c·g_b g_a in ∂(α_k*) and
    minus[r] lists (c, p, i) for c·g_p a_i in ∂(α_r).
    """
    algebra: Algebra
    radical: Tuple[int, ...]
    labels: Tuple[str, ...]
    sources: Tuple[int, ...]
    targets: Tuple[int, ...]
    blocks: Tuple[Tuple[int, ...], ...]
    pivots: Tuple[Optional[int], ...]
    dead_vertices: FrozenSet[int]
    dead_letters: FrozenSet[int]
    plus: Tuple[Tuple[Tuple[Any, int, int], ...], ...]
    minus: Tuple[Tuple[Tuple[Any, int, int], ...], ...]
    transposed: bool = False
    duals: Tuple[Tuple[Any, ...], ...] = ()

    @property
    def field(self):
        return self.algebra.field

    @property
    def size(self) -> int:
        return len(self.radical)

    @property
    def collapsed(self) -> bool:
        return len(self.dead_vertices) == self.algebra.vertex_count

    @property
    def differential_vanishes(self) -> bool:
        return not any(self.plus) and not any(self.minus)

    @property
    def live_vertices(self) -> Tuple[int, ...]:
        return tuple(v for v in range(self.algebra.vertex_count) if v not in self.dead_vertices)

    def live_letters(self, kind: str) -> List[Letter]:
        return [(kind, i) for i in range(self.size) if i not in self.dead_letters]

    def left(self, letter: Letter) -> int:
        kind, i = letter
        if kind == IDEMPOTENT:
            return i
        return self.targets[i] if kind == J_LETTER else self.sources[i]

    def right(self, letter: Letter) -> int:
        kind, i = letter
        if kind == IDEMPOTENT:
            return i
        return self.sources[i] if kind == J_LETTER else self.targets[i]

    def is_dead(self, letter: Letter) -> bool:
        kind, i = letter
        return i in self.dead_vertices if kind == IDEMPOTENT else i in self.dead_letters

    def idempotent(self, v: int) -> Word:
        return ((IDEMPOTENT, v),)

    def well_formed(self, word: Word) -> bool:
        if any(letter[0] == IDEMPOTENT for letter in word):
            return len(word) == 1
        return all(self.right(x) == self.left(y) for x, y in zip(word, word[1:]))

    def degree(self, word: Word) -> int:
        return sum(1 if kind == DUAL_LETTER else -1 if kind == J_LETTER else 0 for kind, _ in word)

    def length(self, word: Word) -> int:
        return 0 if word and word[0][0] == IDEMPOTENT else len(word)

    def letter_label(self, letter: Letter) -> str:
        kind, i = letter
        if kind == IDEMPOTENT:
            return self.algebra.labels[self.algebra.idempotents[i]]
        return f"{self.labels[i]}*" if kind == DUAL_LETTER else self.labels[i]

    def word_labels(self, word: Word) -> List[str]:
        return [self.letter_label(letter) for letter in word]

    def pairing(self, dual: int, element: int) -> Tuple[Any, int]:
        """⟨α_dual*, α_element⟩ as (scalar, vertex of the idempotent).

        α_element is the unit vector at algebra basis index radical[element],
        so the stored functional α_dual* is read at that coordinate.
        """
        return self.field.scalar(self.duals[dual][self.radical[element]]), self.targets[element]

    def rule_at(self, word: Word, position: int) -> Optional[str]:
        """Kind of rewrite rule matching word[position:position + 2]."""
        if position + 1 >= len(word):
            return None
        (first_kind, i), (second_kind, k) = word[position], word[position + 1]
        if first_kind == J_LETTER and second_kind == DUAL_LETTER:
            return PAIR_RULE
        if first_kind == DUAL_LETTER and second_kind == J_LETTER and i == k and self.pivots[self.sources[i]] == i:
            return PIVOT_RULE
        return None

    def casimir_block(self, v: int) -> List[Tuple[Letter, Letter]]:
        """Live terms g_i a_i of e_v c e_v."""
        return [((DUAL_LETTER, i), (J_LETTER, i)) for i in self.blocks[v] if i not in self.dead_letters]

    def rules(self) -> List[dict]:
        """Readable rewrite rules for reports."""
        rules = [{"kind": PAIR_RULE, "pattern": f"{self.labels[i]} {self.labels[k]}*",
                  "replacement": self.algebra.labels[self.algebra.idempotents[self.targets[i]]] if i == k else "0"}
                 for i in range(self.size) for k in range(self.size)
                 if i not in self.dead_letters and k not in self.dead_letters and self.sources[i] == self.sources[k]]
        for v, pivot in enumerate(self.pivots):
            if pivot is None:
                continue
            others = [f"{self.labels[i]}* {self.labels[i]}" for i in self.blocks[v]
                      if i != pivot and i not in self.dead_letters]
            rules.append({"kind": PIVOT_RULE, "pattern": f"{self.labels[pivot]}* {self.labels[pivot]}",
                          "replacement": " - ".join([self.letter_label((IDEMPOTENT, v))] + others)})
        return rules


def _dead_fixpoint(vertex_count: int, sources, targets, blocks) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Vertices with e_v = 0 and letters through them.

    e_v = Σ_{s_i = v} α_i* α_i vanishes once its block has no live term, and
    e_{t_i} = α_i α_i* vanishes once α_i does.
    """
    dead_vertices = set()
    while True:
        dead_letters = {i for i in range(len(sources)) if sources[i] in dead_vertices or targets[i] in dead_vertices}
        grown = set(dead_vertices)
        for v in range(vertex_count):
            if all(i in dead_letters for i in blocks[v]):
                grown.add(v)
        grown.update(targets[i] for i in dead_letters)
        if grown == dead_vertices:
            return frozenset(dead_vertices), frozenset(dead_letters)
        dead_vertices = grown


def build_presentation(algebra: Algebra, transposed: bool = False) -> LeavittPresentation:
    """Read the Leavitt data off the structure constants of J.

    With m^k_{ab} the coefficient of α_k in α_a α_b,
    ∂(α_k*) = Σ m^k_{ab} α_b* α_a* and ∂(α_r) = Σ m^i_{pr} α_p* α_i.
    transposed swaps the two tensor factors of ∂(α_k*).
    """
    algebra.require_basic()
    field = algebra.field
    radical = tuple(algebra.radical)
    position = {b: i for i, b in enumerate(radical)}
    labels = tuple(algebra.labels[b] for b in radical)
    sources = tuple(algebra.right_vertex[b] for b in radical)
    targets = tuple(algebra.left_vertex[b] for b in radical)
    blocks = []
    pivots = []
    for v in range(algebra.vertex_count):
        blocks.append(tuple(i for i in range(len(radical)) if sources[i] == v))
    dead_vertices, dead_letters = _dead_fixpoint(algebra.vertex_count, sources, targets, blocks)
    for v in range(algebra.vertex_count):
        live = [i for i in blocks[v] if i not in dead_letters]
        pivots.append(max(live, key=lambda i: labels[i]) if live else None)
    plus: List[List[Tuple[Any, int, int]]] = [[] for _ in radical]
    minus: List[List[Tuple[Any, int, int]]] = [[] for _ in radical]
    for a, first in enumerate(radical):
        for b, second in enumerate(radical):
            product = algebra.structure[first, second]
            for basis_index in range(algebra.dim):
                coefficient = product[basis_index]
                if coefficient == 0:
                    continue
                k = position[basis_index]
                plus[k].append((field.scalar(coefficient), a, b) if transposed else (field.scalar(coefficient), b, a))
                minus[b].append((field.scalar(coefficient), a, k))
    # α_i* as the coordinate functionals of the radical basis
    radical_columns = field.identity(algebra.dim)[:, list(radical)]
    duals = linalg.left_inverse(field, radical_columns)
    return LeavittPresentation(
        algebra=algebra,
        radical=radical,
        labels=labels,
        sources=sources,
        targets=targets,
        blocks=tuple(blocks),
        pivots=tuple(pivots),
        dead_vertices=dead_vertices,
        dead_letters=dead_letters,
        plus=tuple(tuple(terms) for terms in plus),
        minus=tuple(tuple(terms) for terms in minus),
        transposed=transposed,
        duals=tuple(tuple(row) for row in duals),
    )


def defining_identity_failures(presentation: LeavittPresentation) -> List[Tuple[str, str, str]]:
    """(g, a, b) where g(ab) != Σ g₂(a g₁(b)) with ∂(g) = Σ g₁ ⊗ g₂.

    g₁(α_q) = δ e_{t_q} and a·e_{t_q} = a exactly when s_a = t_q, so the
    right side reduces to the scalar Σ c·[g₁ = q]·[g₂ = p]·[s_p = t_q].
    """
    algebra, field = presentation.algebra, presentation.field
    failures = []
    for k in range(presentation.size):
        for p, first in enumerate(presentation.radical):
            for q, second in enumerate(presentation.radical):
                expected = algebra.structure[first, second][presentation.radical[k]]
                total = field.scalar(0)
                if presentation.sources[p] == presentation.targets[q]:
                    for coefficient, g_first, g_second in presentation.plus[k]:
                        if g_first == q and g_second == p:
                            total = field.add(total, coefficient)
                if field.scalar(expected) != total:
                    failures.append((f"{presentation.labels[k]}*", presentation.labels[p], presentation.labels[q]))
    return failures


def dual_basis_failures(presentation: LeavittPresentation) -> List[Tuple[str, str]]:
    """Pairs (α_i*, α_j) whose evaluated pairing is not δ_ij e_{t_i}."""
    pairs = [(i, j) for i in range(presentation.size) for j in range(presentation.size)]
    if len(presentation.duals) != presentation.size:
        return [(f"{presentation.labels[i]}*", presentation.labels[j]) for i, j in pairs]
    failures = []
    for i, j in pairs:
        scalar, vertex = presentation.pairing(i, j)
        expected = 1 if i == j else 0
        if scalar != expected or (expected and vertex != presentation.targets[i]):
            failures.append((f"{presentation.labels[i]}*", presentation.labels[j]))
    return failures
