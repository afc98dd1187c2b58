"""Parsers for algebra and module JSON documents."""
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np

from sg_workbench.algebra.algebras import Algebra, AlgebraSpec, load_algebra
from sg_workbench.algebra.fields import Field, field_from_descriptor
from sg_workbench.algebra.modules import Module, module_from_action, module_from_generators
from sg_workbench.errors import InputError, InvalidDocument


def _require(document: Mapping, key: str, where: str) -> Any:
    if not isinstance(document, Mapping) or key not in document:
        raise InvalidDocument(f"{where}: missing {key!r}")
    return document[key]


def parse_matrix(field: Field, data, rows: int, cols: int, where: str = "matrix") -> np.ndarray:
    """Row-major nested lists to a rows x cols field matrix."""
    try:
        matrix = field.array(data if data is not None else [])
        return matrix.reshape(rows, cols)
    except (ValueError, TypeError) as error:
        raise InvalidDocument(f"{where}: expected a {rows}x{cols} matrix") from error


def parse_algebra_spec(document: Mapping) -> AlgebraSpec:
    """Quiver documents carry vertices/arrows/relations, raw ones basis/products.

    Raises:
        InvalidDocument: when required keys are missing or malformed
    """
    field = field_from_descriptor(_require(document, "field", "algebra"))
    name = str(document.get("name", ""))
    bound = document.get("nilpotency_bound", 2)
    if not isinstance(bound, int):
        raise InvalidDocument("algebra: nilpotency_bound must be an integer")
    if "vertices" in document:
        arrows = []
        for arrow in document.get("arrows", []):
            if not isinstance(arrow, Sequence) or len(arrow) != 3:
                raise InvalidDocument(f"algebra: arrow {arrow!r} is not [name, source, target]")
            arrows.append(tuple(str(part) for part in arrow))
        relations = []
        for relation in document.get("relations", []):
            terms = []
            for term in relation:
                if not isinstance(term, Sequence) or len(term) != 2:
                    raise InvalidDocument(f"algebra: relation term {term!r} is not [coefficient, path]")
                terms.append((term[0], str(term[1])))
            relations.append(tuple(terms))
        return AlgebraSpec(field=field, name=name, vertices=tuple(str(v) for v in document["vertices"]),
                           arrows=tuple(arrows), relations=tuple(relations), nilpotency_bound=bound)
    return AlgebraSpec(field=field, name=name, basis=tuple(_require(document, "basis", "algebra")),
                       products=_require(document, "products", "algebra"),
                       semisimple=tuple(_require(document, "semisimple", "algebra")),
                       radical=tuple(document.get("radical", ())), nilpotency_bound=bound)


def parse_algebra(document: Mapping) -> Algebra:
    return load_algebra(parse_algebra_spec(document))


def _vertex_of(algebra: Algebra, document: Mapping, name: str) -> List[int]:
    if "vertex_of" in document:
        return [algebra.vertex_index(v) for v in document["vertex_of"]]
    dims = _require(document, "dims", f"module {name}")
    if len(dims) != algebra.vertex_count or any(not isinstance(d, int) or d < 0 for d in dims):
        raise InvalidDocument(f"module {name}: dims must list {algebra.vertex_count} nonnegative integers")
    return [v for v, d in enumerate(dims) for _ in range(d)]


def parse_module(algebra: Algebra, document: Mapping, name: str = "") -> Module:
    """Module from {"dims" or "vertex_of", "action": {label: matrix}}.

    A quiver algebra may list arrow matrices only; otherwise every basis
    label needs a matrix.

    Raises:
        InvalidDocument: malformed document
        InputError: the matrices do not form a representation
    """
    vertex_of = _vertex_of(algebra, document, name)
    dim = len(vertex_of)
    action = _require(document, "action", f"module {name}")
    if not isinstance(action, Mapping):
        raise InvalidDocument(f"module {name}: action must map basis labels to matrices")
    unknown = sorted(set(action) - set(algebra.labels))
    if unknown:
        raise InvalidDocument(f"module {name}: unknown basis labels {unknown}")
    if all(label in action for label in algebra.labels):
        matrices = [parse_matrix(algebra.field, action[label], dim, dim, f"module {name} action {label}")
                    for label in algebra.labels]
        module = module_from_action(algebra, vertex_of, matrices, name)
        failures = module.check_representation()
        if failures:
            raise InputError(f"module {name}: not a representation: {failures[0]}")
        return module
    generators = {label: parse_matrix(algebra.field, matrix, dim, dim, f"module {name} action {label}")
                  for label, matrix in action.items()}
    return module_from_generators(algebra, vertex_of, generators, name)


class DocumentParser():
    """
    Parses an input document: {"algebra": {...}, "modules": {name: {...}}}.
    A bare algebra description is accepted as well.

    Lifecycle:
    1. __init__
    2. parse() loads the algebra and every module
    3. get_results() returns them
    """
    _algebra: Optional[Algebra]
    _modules: Dict[str, Module]

    def __init__(self):
        self.reset()

    def reset(self) -> None:
        self._algebra = None
        self._modules = {}

    def parse(self, document: Mapping) -> None:
        if not isinstance(document, Mapping):
            raise InvalidDocument("Input document must be a JSON object")
        self.reset()
        self._algebra = parse_algebra(document.get("algebra", document))
        modules = document.get("modules", {})
        if not isinstance(modules, Mapping):
            raise InvalidDocument("modules must be an object keyed by module name")
        for name in sorted(modules):
            self._modules[name] = parse_module(self._algebra, modules[name], name)

    def get_results(self):
        """Parsed algebra and modules keyed by name."""
        if self._algebra is None:
            raise InvalidDocument("Nothing parsed yet")
        return self._algebra, dict(self._modules)
