"""Projective dimension status with replayable witnesses."""
import enum
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import List, Optional, Tuple

from sg_workbench.algebra.modules import Module, simple_modules
from sg_workbench.homology.covers import projective_cover
from sg_workbench.homology.syzygy import Recurrence, SyzygyChain

MAX_CHAIN_DIM = 32


class PdKind(enum.Enum):
    FINITE = "Finite"
    INFINITE = "Infinite"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SimpleGraphWitness:
    """Path through the graph of simples S_i -> S_j (S_j in rad P_i), ending in a cycle."""
    path: Tuple[int, ...]
    cycle_start: int
    edges: Tuple[Tuple[int, int, int], ...]


@dataclass(frozen=True, eq=False)
class PdStatus:
    kind: PdKind
    module: Module
    cutoff: int
    degree: Optional[int] = None
    recurrence: Optional[Recurrence] = None
    simple_graph: Optional[SimpleGraphWitness] = None
    dims: Tuple[int, ...] = ()
    annotations: Tuple[str, ...] = dataclass_field(default_factory=tuple)

    @property
    def is_finite(self) -> bool:
        return self.kind is PdKind.FINITE

    @property
    def is_infinite(self) -> bool:
        return self.kind is PdKind.INFINITE


def simple_graph(algebra) -> Optional[List[List[int]]]:
    """Edge multiplicities i -> j with S_j^m = rad P_i, or None if some rad P_i is not semisimple."""
    simples, _ = simple_modules(algebra)
    edges = []
    for simple in simples:
        radical = projective_cover(simple).kernel.module
        if not radical.is_semisimple():
            return None
        edges.append(list(radical.dimension_vector()))
    return edges


def _reachable_cycle(edges: List[List[int]], starts: List[int]) -> Optional[SimpleGraphWitness]:
    n = len(edges)
    for start in starts:
        path = [start]
        position = {start: 0}
        visited = set()

        def walk(node):
            for target in range(n):
                if not edges[node][target]:
                    continue
                if target in position:
                    return target
                if target in visited:
                    continue
                visited.add(target)
                position[target] = len(path)
                path.append(target)
                found = walk(target)
                if found is not None:
                    return found
                path.pop()
                del position[target]
            return None

        hit = walk(start)
        if hit is not None:
            closed = tuple(path) + (hit,)
            steps = tuple((a, b, edges[a][b]) for a, b in zip(closed, closed[1:]))
            return SimpleGraphWitness(closed, position[hit], steps)
    return None


def pd_status(module: Module, cutoff: int, use_simple_graph: bool = True,
              chain: Optional[SyzygyChain] = None, max_dim: int = MAX_CHAIN_DIM) -> PdStatus:
    """Walk the syzygy chain and classify the projective dimension.

    Arguments:
        module {Module} -- M
        cutoff {int} -- largest syzygy index K examined

    Keyword Arguments:
        use_simple_graph {bool} -- accept the simple-graph witness for semisimple M
        chain {SyzygyChain} -- reusable chain of M
        max_dim {int} -- stop walking once a syzygy exceeds this dimension

    Returns:
        PdStatus -- Finite(d), Infinite(witness) or Unknown(K)
    """
    if cutoff < 1:
        raise ValueError("pd_status needs a cutoff >= 1")
    chain = chain or SyzygyChain(module)
    if use_simple_graph and module.dim and module.is_semisimple():
        edges = simple_graph(module.algebra)
        if edges is not None:
            starts = [v for v, count in enumerate(module.dimension_vector()) if count]
            witness = _reachable_cycle(edges, starts)
            if witness is not None:
                logging.debug(f"Simple graph cycle {witness.path} certifies infinite pd")
                return PdStatus(PdKind.INFINITE, module, cutoff, simple_graph=witness)
    dims = []
    for k in range(cutoff + 1):
        current = chain.module(k)
        dims.append(current.dim)
        if current.dim == 0:
            return PdStatus(PdKind.FINITE, module, cutoff, degree=k, dims=tuple(dims))
        recurrence = chain.recurrence(k)
        if recurrence is not None:
            return PdStatus(PdKind.INFINITE, module, cutoff, recurrence=recurrence, dims=tuple(dims))
        if current.dim > max_dim:
            logging.info(f"Syzygy {k} of {module.name or 'module'} exceeds {max_dim}, stopping")
            return PdStatus(PdKind.UNKNOWN, module, k, dims=tuple(dims),
                            annotations=_growth(dims) + ("truncated",))
    return PdStatus(PdKind.UNKNOWN, module, cutoff, dims=tuple(dims), annotations=_growth(dims))


def _growth(dims: List[int]) -> Tuple[str, ...]:
    if len(dims) > 1 and all(b > a for a, b in zip(dims, dims[1:])):
        return ("growth",)
    return ()
