"""Virtual periodicity certificates, their transport to multiples of the period,
and detection of honest periodicity."""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from sg_workbench.algebra import linalg
from sg_workbench.algebra.isomorphism import is_isomorphic
from sg_workbench.algebra.modules import Module, ModuleMap, modules_equal
from sg_workbench.data_objects import Limits
from sg_workbench.errors import InputError, InvariantBreach, RejectFinitePd, TransportFailure
from sg_workbench.homology.covers import (CoverStage, cover_from_images, cover_stage, direct_sum_stage,
                                          lift_through, omega_map, restrict_to_kernels)
from sg_workbench.homology.pd import PdKind, PdStatus, pd_status
from sg_workbench.homology.syzygy import SyzygyChain
from sg_workbench.periodicity.closure import (BuildNode, CertificateBuilder, ClosureCertificate, NodeKind,
                                              NotFound, extension_closure_member)


@dataclass(frozen=True)
class Unknown:
    """A search or probe ended inconclusively."""
    reason: str
    limits: Optional[Limits] = None


@dataclass(frozen=True, eq=False)
class VPCertificate:
    """Infinite pd of M together with X_d ∈ ⟨X_0⟩, X_k the stripped syzygies of M."""
    module: Module
    period: int
    pd: PdStatus
    closure: ClosureCertificate

    def verify(self, chain: Optional[SyzygyChain] = None) -> List[str]:
        failures = []
        if not self.pd.is_infinite:
            failures.append("projective dimension is not certified infinite")
        chain = chain or SyzygyChain(self.module)
        if not modules_equal(self.closure.target, chain.module(self.period)):
            failures.append(f"closure target is not the syzygy of index {self.period}")
        if not modules_equal(self.closure.generator, chain.module(0)):
            failures.append("closure generator is not the stripped module")
        failures.extend(self.closure.verify())
        return failures


@dataclass(frozen=True, eq=False)
class Periodic:
    period: int
    witness: ModuleMap


@dataclass(frozen=True)
class NoneFound:
    dmax: int


def certify_virtually_periodic(module: Module, period: int, limits: Optional[Limits] = None,
                               chain: Optional[SyzygyChain] = None) -> Union[VPCertificate, Unknown]:
    """Certify that M is virtually d-periodic.

    Arguments:
        module {Module} -- M
        period {int} -- d >= 1

    Keyword Arguments:
        limits {Limits} -- cutoffs and closure search caps
        chain {SyzygyChain} -- reusable chain of M

    Raises:
        InputError: d < 1
        RejectFinitePd: pd(M) is finite

    Returns:
        Union[VPCertificate, Unknown] -- certificate or the inconclusive step
    """
    if period < 1:
        raise InputError("Period must be a positive integer")
    limits = limits or Limits()
    chain = chain or SyzygyChain(module, iso_budget=limits.iso_budget, seed=limits.seed)
    status = pd_status(module, limits.syzygy_cutoff, chain=chain, max_dim=limits.max_chain_dim)
    if status.kind is PdKind.FINITE:
        raise RejectFinitePd(f"{module.name or 'Module'} has projective dimension {status.degree}", status)
    if status.kind is PdKind.UNKNOWN:
        return Unknown(f"projective dimension undetermined up to syzygy {status.cutoff}", limits)
    closure = extension_closure_member(chain.module(period), chain.module(0), limits)
    if isinstance(closure, NotFound):
        return Unknown(f"no closure certificate for Ω^{period}: {closure.reason}", limits)
    return VPCertificate(module, period, status, closure)


def prune(certificate: ClosureCertificate) -> ClosureCertificate:
    """Drop nodes unreachable from the root and renumber."""
    reachable, stack = set(), [certificate.root]
    while stack:
        node_id = stack.pop()
        if node_id in reachable:
            continue
        reachable.add(node_id)
        stack.extend(certificate.nodes[node_id].children)
    renumber = {old: new for new, old in enumerate(sorted(reachable))}
    nodes = tuple(BuildNode(renumber[node.node_id], node.kind, node.module,
                            tuple(renumber[c] for c in node.children), node.maps, node.power,
                            node.level, node.vertices)
                  for node in certificate.nodes if node.node_id in reachable)
    return ClosureCertificate(certificate.target, certificate.generators, nodes, renumber[certificate.root])


class _SyzygyTransport():
    """Applies Ω to every node of a certificate, one step at a time.

    Leaves at level j (summands of X_j^m) become leaves at level j + 1.
    With a graft certificate for X_{j+1} ∈ ⟨X_0⟩ the new leaves are
    replaced by summands of its powers.
    """

    def __init__(self, chain: SyzygyChain, certificate: ClosureCertificate, root_index: int,
                 graft: Optional[ClosureCertificate] = None):
        self.chain = chain
        self.source = certificate
        self.root_index = root_index
        self.graft = graft
        levels = max((node.level for node in certificate.nodes), default=0) + 1
        generators = tuple(chain.module(j) for j in range(levels + 1))
        self.builder = CertificateBuilder(generators if graft is None else generators[:1])
        self.stages: Dict[int, CoverStage] = {}
        self.new_ids: Dict[int, int] = {}
        self.graft_root: Optional[int] = None

    def run(self) -> ClosureCertificate:
        for node in self.source.nodes:
            self.stages[node.node_id] = (self.chain.stage(self.root_index)
                                         if node.node_id == self.source.root else cover_stage(node.module))
            handler = {
                NodeKind.ADD: self._add,
                NodeKind.PROJECTIVE: self._projective,
                NodeKind.EXTENSION: self._extension,
                NodeKind.SUMMAND: self._summand,
            }[node.kind]
            self.new_ids[node.node_id] = handler(node, self.stages[node.node_id])
        target = self.chain.module(self.root_index + 1)
        root = self.new_ids[self.source.root]
        if not modules_equal(self.builder.nodes[root].module, target):
            raise TransportFailure(f"Transported root differs from syzygy {self.root_index + 1}")
        return self.builder.certificate(target, root)

    def _corrected(self, module_stage: CoverStage, other_stage: CoverStage, iota, r) -> Tuple[np.ndarray, np.ndarray]:
        """Ω(ι), u⁻¹Ω(r) with u = Ω(r)Ω(ι), so that the pair splits again."""
        field = module_stage.module.field
        new_iota = omega_map(module_stage, other_stage, iota).matrix
        new_r = omega_map(other_stage, module_stage, r).matrix
        u = field.matmul(new_r, new_iota)
        inverse = linalg.inverse(field, u)
        if inverse is None:
            raise TransportFailure("Ω(r)Ω(ι) is not invertible")
        return new_iota, field.matmul(inverse, new_r)

    def _add(self, node: BuildNode, stage: CoverStage) -> int:
        level_stage = self.chain.stage(node.level)
        power_stage = direct_sum_stage([level_stage] * node.power)
        iota, r = self._corrected(stage, power_stage, node.maps[0], node.maps[1])
        if self.graft is None:
            return self.builder.add_leaf(stage.next, iota, r, node.power, node.level + 1)
        if self.graft_root is None:
            self.graft_root = self.builder.import_nodes(self.graft)
        child = self.builder.power_node(self.graft_root, node.power)
        return self.builder.summand(stage.next, iota, r, child)

    def _projective(self, node: BuildNode, stage: CoverStage) -> int:
        if stage.next.dim:
            raise TransportFailure("Syzygy of a projective leaf is nonzero")
        return self.builder.projective_leaf(stage.next)

    def _summand(self, node: BuildNode, stage: CoverStage) -> int:
        child_stage = self.stages[node.children[0]]
        iota, r = self._corrected(stage, child_stage, node.maps[0], node.maps[1])
        return self.builder.summand(stage.next, iota, r, self.new_ids[node.children[0]])

    def _kernel_node(self, stage: CoverStage, child: int) -> int:
        """K = X' ⊕ Q for the kernel K of a stage with stripped part X'."""
        stripping = stage.stripping
        parts = [(child, stripping.inclusion.matrix, stripping.retraction.matrix)]
        if stripping.projective.dim:
            leaf = self.builder.projective_leaf(stripping.projective)
            parts.append((leaf, stripping.projective_inclusion.matrix, stripping.projective_retraction.matrix))
        return self.builder.split(stripping.module, parts)

    def _extension(self, node: BuildNode, stage: CoverStage) -> int:
        """Horseshoe: the cover P_A ⊕ P_C of B gives 0 -> K_A -> K_B -> K_C -> 0."""
        builder = self.builder
        left_id, right_id = node.children
        left_stage, right_stage = self.stages[left_id], self.stages[right_id]
        middle = node.module
        field = middle.field
        inclusion, projection = node.maps
        generators = []
        for summand in left_stage.cover.summands:
            generators.append((summand.vertex, field.matmul(inclusion, summand.generator.reshape(-1, 1))[:, 0]))
        for summand in right_stage.cover.summands:
            idx = middle.vertex_indices(summand.vertex)
            solution = linalg.solve(field, projection[:, idx], summand.generator)
            if solution is None:
                raise TransportFailure("Generator of the quotient does not lift")
            lifted = field.zeros(middle.dim, 1)[:, 0]
            lifted[idx] = solution
            generators.append((summand.vertex, lifted))
        combined = cover_from_images(middle, generators)
        left_dim, right_dim = left_stage.cover.projective.dim, right_stage.cover.projective.dim
        embed = np.concatenate([field.identity(left_dim), field.zeros(right_dim, left_dim)], axis=0)
        onto = np.concatenate([field.zeros(right_dim, left_dim), field.identity(right_dim)], axis=1)
        kernel_in = restrict_to_kernels(left_stage.cover, combined, embed)
        kernel_out = restrict_to_kernels(combined, right_stage.cover, onto)
        left_kernel = self._kernel_node(left_stage, self.new_ids[left_id])
        right_kernel = self._kernel_node(right_stage, self.new_ids[right_id])
        kernel_node = builder.extension(combined.kernel.module, kernel_in, kernel_out, left_kernel, right_kernel)
        canonical = stage.cover
        forward = restrict_to_kernels(canonical, combined, lift_through(canonical, combined, field.identity(middle.dim)))
        backward = restrict_to_kernels(combined, canonical, lift_through(combined, canonical, field.identity(middle.dim)))
        iota = field.matmul(forward, stage.stripping.inclusion.matrix)
        r = field.matmul(stage.stripping.retraction.matrix, backward)
        inverse = linalg.inverse(field, field.matmul(r, iota))
        if inverse is None:
            raise TransportFailure("Comparison of covers does not split the syzygy off")
        return builder.summand(stage.next, iota, field.matmul(inverse, r), kernel_node)


def derive_nd_certificate(certificate: VPCertificate, n: int, chain: Optional[SyzygyChain] = None) -> VPCertificate:
    """Certificate for the period n·d obtained by transporting the closure tree.

    Each round applies Ω d times to every node of the current tree and
    grafts the original certificate at the leaves.

    Raises:
        InputError: n < 1
        TransportFailure: a transported node fails to replay
    """
    if n < 1:
        raise InputError("Multiplier must be a positive integer")
    if n == 1:
        return certificate
    d = certificate.period
    chain = chain or SyzygyChain(certificate.module)
    base = prune(certificate.closure)
    if not modules_equal(base.target, chain.module(d)):
        raise TransportFailure("Certificate target is not the syzygy of its period")
    current = base
    for round_ in range(1, n):
        for step in range(d):
            graft = base if step == d - 1 else None
            try:
                current = _SyzygyTransport(chain, current, round_ * d + step, graft).run()
            except InvariantBreach as error:
                if isinstance(error, TransportFailure):
                    raise
                raise TransportFailure(f"Transport step failed: {error}") from error
            current = prune(current)
        failures = current.verify()
        if failures:
            raise TransportFailure(f"Transported certificate fails: {failures[0]}")
        logging.info(f"Transported certificate to period {(round_ + 1) * d} with {len(current.nodes)} nodes")
    return VPCertificate(certificate.module, n * d, certificate.pd, current)


def detect_periodicity(module: Module, dmax: int, chain: Optional[SyzygyChain] = None,
                       limits: Optional[Limits] = None) -> Union[Periodic, NoneFound]:
    """Smallest d <= dmax with X_0 ≅ X_d, X_k the stripped syzygies of M."""
    if dmax < 1:
        raise InputError("dmax must be a positive integer")
    limits = limits or Limits()
    chain = chain or SyzygyChain(module, iso_budget=limits.iso_budget, seed=limits.seed)
    first = chain.module(0)
    if first.dim == 0:
        return NoneFound(dmax)
    for d in range(1, dmax + 1):
        later = chain.module(d)
        if later.dim == 0:
            return NoneFound(dmax)
        if later.dimension_vector() != first.dimension_vector():
            continue
        decision = is_isomorphic(first, later, budget=limits.iso_budget, seed=limits.seed)
        if decision:
            logging.info(f"{module.name or 'Module'} is {d}-periodic ({decision.reason})")
            return Periodic(d, decision.witness)
    return NoneFound(dmax)
