"""Extension-closure certificates: evidence that X lies in ⟨M⟩.

A certificate is a DAG of nodes stored in topological order (children
have smaller ids). Leaves are summands of a generator power or
projectives; inner nodes are short exact sequences or split summands.
"""
import enum
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from sg_workbench.algebra import linalg
from sg_workbench.algebra.isomorphism import (Decomposition, decompose, indecomposables_isomorphic,
                                              is_isomorphic, split_inclusions)
from sg_workbench.algebra.modules import (Module, ModuleMap, direct_sum, modules_equal, power,
                                          quotient, radical_columns, submodule, zero_module)
from sg_workbench.data_objects import Limits
from sg_workbench.errors import InvariantBreach
from sg_workbench.homology.covers import free_module, projective_cover
from sg_workbench.homology.ext import Extension, check_exact, ext1, extension_classes, extension_middle_term


class NodeKind(enum.Enum):
    ADD = "add"
    PROJECTIVE = "projective"
    EXTENSION = "extension"
    SUMMAND = "summand"


@dataclass(frozen=True, eq=False)
class BuildNode:
    """One node of a closure certificate.

    maps by kind:
        add -- (ι: node -> G^power, r: G^power -> node), G = generators[level]
        projective -- (iso: ⊕ P_v -> node,)
        extension -- (i: children[0] -> node, p: node -> children[1])
        summand -- (ι: node -> children[0], r: children[0] -> node)
    """
    node_id: int
    kind: NodeKind
    module: Module
    children: Tuple[int, ...] = ()
    maps: Tuple[np.ndarray, ...] = ()
    power: int = 0
    level: int = 0
    vertices: Tuple[int, ...] = ()


@dataclass(frozen=True, eq=False)
class ClosureCertificate:
    target: Module
    generators: Tuple[Module, ...]
    nodes: Tuple[BuildNode, ...]
    root: int

    @property
    def generator(self) -> Module:
        return self.generators[0]

    def node(self, node_id: int) -> BuildNode:
        return self.nodes[node_id]

    def kinds(self) -> List[str]:
        return [node.kind.value for node in self.nodes]

    def verify(self) -> List[str]:
        """Replay every claim; returns a list of failures (empty when valid)."""
        failures = []
        if not modules_equal(self.nodes[self.root].module, self.target):
            failures.append("root module differs from the target")
        for node in self.nodes:
            if any(child >= node.node_id or child < 0 for child in node.children):
                failures.append(f"node {node.node_id}: children are not earlier nodes")
                continue
            try:
                failures.extend(f"node {node.node_id} ({node.kind.value}): {failure}"
                                for failure in self._verify_node(node))
            except (ValueError, IndexError, InvariantBreach) as error:
                failures.append(f"node {node.node_id} ({node.kind.value}): {error}")
        return failures

    def _verify_node(self, node: BuildNode) -> List[str]:
        x = node.module
        if node.kind is NodeKind.ADD:
            g = self.generators[node.level]
            total = power(g, node.power).module
            iota, r = ModuleMap(x, total, node.maps[0]), ModuleMap(total, x, node.maps[1])
            return _split_failures(iota, r)
        if node.kind is NodeKind.PROJECTIVE:
            projective, _ = free_module(x.algebra, node.vertices)
            iso = ModuleMap(projective, x, node.maps[0])
            failures = []
            if not iso.is_intertwiner():
                failures.append("map is not a homomorphism")
            if not iso.is_isomorphism():
                failures.append("map is not invertible")
            return failures
        if node.kind is NodeKind.EXTENSION:
            left, right = (self.nodes[c].module for c in node.children)
            return check_exact(ModuleMap(left, x, node.maps[0]), ModuleMap(x, right, node.maps[1]))
        child = self.nodes[node.children[0]].module
        return _split_failures(ModuleMap(x, child, node.maps[0]), ModuleMap(child, x, node.maps[1]))


def _split_failures(iota: ModuleMap, r: ModuleMap) -> List[str]:
    failures = []
    if not iota.is_intertwiner() or not r.is_intertwiner():
        failures.append("maps are not homomorphisms")
    if not np.array_equal(r.field.matmul(r.matrix, iota.matrix), r.field.identity(iota.source.dim)):
        failures.append("r ∘ ι is not the identity")
    return failures


@dataclass(frozen=True)
class NotFound:
    """The search ended without a certificate; never a disproof."""
    limits: Limits
    explored: int
    reason: str = "limits reached"


ClosureResult = Union[ClosureCertificate, NotFound]


class CertificateBuilder():
    """Accumulates nodes of one certificate."""

    def __init__(self, generators: Sequence[Module]):
        self.generators = tuple(generators)
        self.nodes: List[BuildNode] = []

    def _add(self, kind, module, children=(), maps=(), **extra) -> int:
        node = BuildNode(len(self.nodes), kind, module, tuple(children),
                         tuple(np.array(m, copy=True) for m in maps), **extra)
        self.nodes.append(node)
        return node.node_id

    def add_leaf(self, module, iota, r, power_, level=0) -> int:
        return self._add(NodeKind.ADD, module, maps=(iota, r), power=power_, level=level)

    def projective_leaf(self, module: Module) -> int:
        if module.dim == 0:
            return self._add(NodeKind.PROJECTIVE, module, maps=(module.field.zeros(0, 0),))
        cover = projective_cover(module)
        if cover.kernel.module.dim:
            raise InvariantBreach(f"{module.name or 'module'} is not projective")
        return self._add(NodeKind.PROJECTIVE, module, maps=(cover.epi.matrix,),
                         vertices=tuple(s.vertex for s in cover.summands))

    def extension(self, module, inclusion, projection, left: int, right: int) -> int:
        return self._add(NodeKind.EXTENSION, module, (left, right), (inclusion, projection))

    def summand(self, module, iota, r, child: int) -> int:
        return self._add(NodeKind.SUMMAND, module, (child,), (iota, r))

    def split(self, module: Module, parts: Sequence[Tuple[int, np.ndarray, np.ndarray]]) -> int:
        """Node for module = ⊕ parts given (child id, inclusion, projection) per part."""
        field = module.field
        if not parts:
            return self.projective_leaf(module)
        if len(parts) == 1:
            child, inclusion, projection = parts[0]
            return self.summand(module, projection, inclusion, child)
        first_child, first_inclusion, _ = parts[0]
        rest_modules = [self.nodes[child].module for child, _, _ in parts[1:]]
        rest = direct_sum(rest_modules)
        onto = linalg.vstack(field, [projection for _, _, projection in parts[1:]], module.dim)
        rest_parts = [(child, inclusion.matrix, projection.matrix)
                      for (child, _, _), inclusion, projection in zip(parts[1:], rest.inclusions, rest.projections)]
        rest_id = self.split(rest.module, rest_parts)
        return self.extension(module, first_inclusion, onto, first_child, rest_id)

    def power_node(self, child: int, m: int) -> int:
        """Node for (module of child)^m as iterated split extensions."""
        base = self.nodes[child].module
        total = power(base, m)
        return self.split(total.module, [(child, inc.matrix, proj.matrix)
                                         for inc, proj in zip(total.inclusions, total.projections)])

    def import_nodes(self, certificate: ClosureCertificate) -> int:
        """Copy a certificate's nodes, returning the new id of its root."""
        offset = len(self.nodes)
        for node in certificate.nodes:
            self.nodes.append(BuildNode(node.node_id + offset, node.kind, node.module,
                                        tuple(c + offset for c in node.children), node.maps,
                                        node.power, node.level, node.vertices))
        return certificate.root + offset

    def certificate(self, target: Module, root: int) -> ClosureCertificate:
        return ClosureCertificate(target, self.generators, tuple(self.nodes), root)


def add_membership(module: Module, generator: Decomposition) -> Optional[Tuple[np.ndarray, np.ndarray, int]]:
    """(ι, r, m) exhibiting module as a summand of G^m, or None."""
    field = module.field
    g = generator.module
    gen_pairs = split_inclusions(generator)
    assignments, usage = [], [0] * len(gen_pairs)
    pieces = decompose(module)
    for piece, (inclusion, projection) in zip(pieces.pieces, split_inclusions(pieces)):
        for k, (gen_inclusion, gen_projection) in enumerate(gen_pairs):
            iso = indecomposables_isomorphic(piece.module, gen_inclusion.source)
            if iso is not None:
                assignments.append((k, usage[k], iso.matrix, inclusion.matrix, projection.matrix))
                usage[k] += 1
                break
        else:
            return None
    m = max(usage) if usage else 0
    if m == 0:
        return None
    iota = field.zeros(g.dim * m, module.dim)
    r = field.zeros(module.dim, g.dim * m)
    for k, copy, iso, inclusion, projection in assignments:
        gen_inclusion, gen_projection = gen_pairs[k]
        rows = slice(copy * g.dim, (copy + 1) * g.dim)
        iota[rows, :] = field.reduce(iota[rows, :] + field.matmul(
            gen_inclusion.matrix, field.matmul(iso, projection)))
        inverse = linalg.inverse(field, iso)
        r[:, rows] = field.reduce(r[:, rows] + field.matmul(
            inclusion, field.matmul(inverse, gen_projection.matrix)))
    return iota, r, m


class ClosureSearch():
    """Budgeted breadth-first construction of ⟨M⟩ around one target."""

    def __init__(self, generator: Module, limits: Limits):
        self.limits = limits
        self.generator = generator
        self.builder = CertificateBuilder((generator,))
        self.decomposition = decompose(generator, eigen_scan=limits.eigen_scan, seed=limits.seed)
        self.indecomposables: List[Tuple[Module, int]] = []
        self.objects: List[Tuple[Module, int]] = []
        self.explored = 0

    def run(self, target: Module) -> ClosureResult:
        direct = self._direct(target)
        if direct is not None:
            return self.builder.certificate(target, direct)
        self._seed_objects()
        found = self._assemble(target)
        if found is not None:
            return self.builder.certificate(target, found)
        seen_pairs = set()
        for depth in range(1, self.limits.max_depth + 1):
            logging.debug(f"Closure search depth {depth} with {len(self.objects)} objects")
            grew = False
            snapshot = list(self.objects)
            for a_index, (left, left_id) in enumerate(snapshot):
                for c_index, (right, right_id) in enumerate(snapshot):
                    if (a_index, c_index) in seen_pairs:
                        continue
                    seen_pairs.add((a_index, c_index))
                    if left.dim + right.dim > self.limits.max_dim:
                        continue
                    if self._extend(left, left_id, right, right_id):
                        grew = True
                        found = self._assemble(target)
                        if found is not None:
                            return self.builder.certificate(target, found)
                    if len(self.objects) >= self.limits.max_classes:
                        return NotFound(self.limits, self.explored, "object cap reached")
            if not grew:
                break
        return NotFound(self.limits, self.explored)

    def _direct(self, target: Module) -> Optional[int]:
        builder = self.builder
        if target.dim == 0:
            return builder.projective_leaf(target)
        if projective_cover(target).kernel.module.dim == 0:
            return builder.projective_leaf(target)
        membership = add_membership(target, self.decomposition)
        if membership is not None:
            iota, r, m = membership
            return builder.add_leaf(target, iota, r, m)
        if self._contains_all_simples():
            return self._radical_certificate(target)
        return None

    def _contains_all_simples(self) -> bool:
        found = set()
        for piece in self.decomposition.pieces:
            if piece.module.dim == 1:
                found.add(piece.module.vertex_of[0])
        return len(found) == self.generator.algebra.vertex_count

    def _radical_certificate(self, module: Module) -> int:
        if module.is_semisimple():
            iota, r, m = add_membership(module, self.decomposition)
            return self.builder.add_leaf(module, iota, r, m)
        field = module.field
        radical = radical_columns(module)
        lower = submodule(module, radical, f"J{module.name}")
        upper = quotient(module, radical, f"top({module.name})")
        lower_id = self._radical_certificate(lower.module)
        upper_id = self._radical_certificate(upper.module)
        return self.builder.extension(module, lower.inclusion.matrix, upper.projection.matrix,
                                      lower_id, upper_id)

    def _seed_objects(self):
        for (inclusion, projection), piece in zip(split_inclusions(self.decomposition), self.decomposition.pieces):
            if any(indecomposables_isomorphic(piece.module, known) is not None
                   for known, _ in self.indecomposables):
                continue
            node = self.builder.add_leaf(piece.module, inclusion.matrix, projection.matrix, 1)
            self._remember(piece.module, node, indecomposable=True)
        algebra = self.generator.algebra
        for v in range(algebra.vertex_count):
            projective, _ = free_module(algebra, [v])
            if any(indecomposables_isomorphic(projective, known) is not None
                   for known, _ in self.indecomposables):
                continue
            self._remember(projective, self.builder.projective_leaf(projective), indecomposable=True)

    def _remember(self, module: Module, node: int, indecomposable: bool):
        self.objects.append((module, node))
        if indecomposable:
            self.indecomposables.append((module, node))

    def _known_object(self, module: Module) -> bool:
        for known, _ in self.objects:
            if known.dimension_vector() == module.dimension_vector() and is_isomorphic(
                    known, module, budget=self.limits.iso_budget, seed=self.limits.seed):
                return True
        return False

    def _extend(self, left, left_id, right, right_id) -> bool:
        group = ext1(right, left)
        grew = False
        for coefficients in extension_classes(group, self.limits.max_classes):
            self.explored += 1
            extension: Extension = extension_middle_term(group, coefficients)
            middle = extension.middle
            if self._known_object(middle):
                continue
            node = self.builder.extension(middle, extension.inclusion.matrix, extension.projection.matrix,
                                          left_id, right_id)
            decomposition = decompose(middle, eigen_scan=self.limits.eigen_scan, seed=self.limits.seed)
            if len(decomposition.pieces) == 1:
                self._remember(middle, node, indecomposable=True)
                grew = True
                continue
            self._remember(middle, node, indecomposable=False)
            for piece, (inclusion, projection) in zip(decomposition.pieces, split_inclusions(decomposition)):
                if any(indecomposables_isomorphic(piece.module, known) is not None
                       for known, _ in self.indecomposables):
                    continue
                child = self.builder.summand(piece.module, inclusion.matrix, projection.matrix, node)
                self._remember(piece.module, child, indecomposable=True)
                grew = True
        return grew

    def _assemble(self, target: Module) -> Optional[int]:
        decomposition = decompose(target, eigen_scan=self.limits.eigen_scan, seed=self.limits.seed)
        parts = []
        for piece, (inclusion, projection) in zip(decomposition.pieces, split_inclusions(decomposition)):
            for known, node in self.indecomposables:
                iso = indecomposables_isomorphic(piece.module, known)
                if iso is not None:
                    inverse = linalg.inverse(target.field, iso.matrix)
                    child = self.builder.summand(piece.module, iso.matrix, inverse, node)
                    parts.append((child, inclusion.matrix, projection.matrix))
                    break
            else:
                return None
        return self.builder.split(target, parts)


def extension_closure_member(target: Module, generator: Module, limits: Optional[Limits] = None) -> ClosureResult:
    """Search for a certificate of target ∈ ⟨generator⟩.

    Arguments:
        target {Module} -- X
        generator {Module} -- M

    Keyword Arguments:
        limits {Limits} -- max_dim, max_depth, max_classes and budgets

    Returns:
        ClosureResult -- ClosureCertificate, or NotFound carrying the limits
    """
    limits = limits or Limits()
    result = ClosureSearch(generator, limits).run(target)
    if isinstance(result, ClosureCertificate):
        failures = result.verify()
        if failures:
            raise InvariantBreach(f"Closure certificate failed replay: {failures[0]}")
        logging.info(f"Closure certificate with {len(result.nodes)} nodes for {target.name or 'module'}")
    else:
        logging.info(f"No closure certificate for {target.name or 'module'}: {result.reason}")
    return result


def zero_certificate(generator: Module) -> ClosureCertificate:
    builder = CertificateBuilder((generator,))
    zero = zero_module(generator.algebra)
    return builder.certificate(zero, builder.projective_leaf(zero))
