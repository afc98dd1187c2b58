"""Syzygy chains X_0 = strip(M), X_{k+1} = strip(ker(P(X_k) -> X_k))."""
import logging
from dataclasses import dataclass
from typing import List, Optional

from sg_workbench.algebra.isomorphism import ISO_BUDGET, is_isomorphic
from sg_workbench.algebra.modules import Module, ModuleMap
from sg_workbench.errors import StageTooLarge
from sg_workbench.homology.covers import CoverStage, Stripping, cover_stage, strip, zero_stage


@dataclass(frozen=True, eq=False)
class Recurrence:
    """Isomorphism X_a ≅ X_b between stripped syzygies, a < b."""
    start: int
    stop: int
    iso: ModuleMap

    @property
    def period(self) -> int:
        return self.stop - self.start


class SyzygyChain():
    """Append-only minimal syzygy chain of a module.

    Arguments:
        module {Module} -- base module M
    """

    def __init__(self, module: Module, iso_budget: int = ISO_BUDGET, seed: int = 0):
        self.base = module
        self.iso_budget = iso_budget
        self.seed = seed
        self.base_stripping: Stripping = strip(module)
        first = self.base_stripping.stripped
        self._modules: List[Module] = [first.relabel(f"Ω^0({module.name})")]
        self._stages: List[CoverStage] = []
        self._recurrence: Optional[Recurrence] = None
        self._searched_to = 0

    def __len__(self):
        return len(self._modules)

    def module(self, k: int, max_dim: Optional[int] = None) -> Module:
        """Stripped syzygy X_k, extending the chain as needed.

        Raises:
            StageTooLarge: extending would cover a syzygy above max_dim
        """
        while len(self._modules) <= k:
            self._extend(max_dim)
        return self._modules[k]

    def stage(self, k: int, max_dim: Optional[int] = None) -> CoverStage:
        """Cover stage of X_k whose stripped kernel is X_{k+1}."""
        while len(self._stages) <= k:
            self._extend(max_dim)
        return self._stages[k]

    def dimensions(self, upto: int) -> List[int]:
        return [self.module(k).dim for k in range(upto + 1)]

    def computed_dims(self, upto: int) -> List[int]:
        """Dimensions of the syzygies X_0..X_upto computed so far."""
        if upto < 0:
            return []
        return [module.dim for module in self._modules[:upto + 1]]

    def first_zero(self) -> Optional[int]:
        """First computed k with X_k = 0."""
        for k, module in enumerate(self._modules):
            if module.dim == 0:
                return k
        return None

    def vanishing_index(self, upto: int) -> Optional[int]:
        """First k <= upto with X_k = 0."""
        for k in range(upto + 1):
            if self.module(k).dim == 0:
                return k
        return None

    def _extend(self, max_dim: Optional[int] = None):
        k = len(self._stages)
        current = self._modules[k]
        if max_dim is not None and current.dim > max_dim:
            raise StageTooLarge(f"Ω^{k}({self.base.name or 'module'}) has dimension {current.dim} > {max_dim}")
        # Ω(0) = 0
        stage = zero_stage(current) if current.dim == 0 else cover_stage(current)
        self._stages.append(stage)
        if len(self._modules) == k + 1:
            self._modules.append(stage.next.relabel(f"Ω^{k + 1}({self.base.name})"))
        logging.debug(f"Syzygy {k + 1} of {self.base.name or 'module'} has dimension {stage.next.dim}")

    def recurrence(self, upto: int) -> Optional[Recurrence]:
        """Smallest b <= upto (then smallest a) with X_a ≅ X_b and X_a != 0."""
        if self._recurrence is not None and self._recurrence.stop <= upto:
            return self._recurrence
        for b in range(max(1, self._searched_to + 1), upto + 1):
            later = self.module(b)
            if later.dim == 0:
                self._searched_to = b
                return None
            for a in range(b):
                earlier = self.module(a)
                if earlier.dimension_vector() != later.dimension_vector():
                    continue
                decision = is_isomorphic(earlier, later, budget=self.iso_budget, seed=self.seed)
                if decision:
                    self._recurrence = Recurrence(a, b, decision.witness)
                    self._searched_to = b
                    return self._recurrence
            self._searched_to = b
        return None


def syzygy(module: Module, d: int) -> Module:
    """Ω^d(M) with projective summands stripped."""
    if d < 0:
        raise ValueError("Syzygy degree must be nonnegative")
    return SyzygyChain(module).module(d)
