"""Named desk-scale algebras.

Names take optional integer parameters after colons, e.g.
"truncated_polynomial:3" for k[x]/(x³) or "cyclic_nakayama:3:2".
"""
from typing import Callable, Dict, Optional

from sg_workbench.algebra.algebras import PATH_SEPARATOR, Algebra, AlgebraSpec, load_algebra
from sg_workbench.algebra.fields import Field, PrimeField
from sg_workbench.errors import InputError

DEFAULT_CHARACTERISTIC = 3


def _field(field: Optional[Field]) -> Field:
    return field or PrimeField(DEFAULT_CHARACTERISTIC)


def truncated_polynomial(n: int = 2, field: Optional[Field] = None) -> Algebra:
    """k[x]/(x^n): local, self-injective, infinite global dimension for n >= 2."""
    if n < 2:
        raise InputError("k[x]/(x^n) needs n >= 2")
    spec = AlgebraSpec(field=_field(field), name=f"k[x]/(x^{n})", vertices=("1",), arrows=(("x", "1", "1"),),
                       relations=(((1, PATH_SEPARATOR.join("x" * n)),),), nilpotency_bound=n)
    return load_algebra(spec)


def a2(field: Optional[Field] = None) -> Algebra:
    """Path algebra of 1 -> 2."""
    spec = AlgebraSpec(field=_field(field), name="A2", vertices=("1", "2"), arrows=(("a", "1", "2"),),
                       nilpotency_bound=2)
    return load_algebra(spec)


def two_loop(field: Optional[Field] = None) -> Algebra:
    """k<x, y>/(x, y)²."""
    relations = tuple(((1, f"{first}*{second}"),) for first in "xy" for second in "xy")
    spec = AlgebraSpec(field=_field(field), name="two-loop", vertices=("1",),
                       arrows=(("x", "1", "1"), ("y", "1", "1")), relations=relations, nilpotency_bound=2)
    return load_algebra(spec)


def commutative_square(field: Optional[Field] = None) -> Algebra:
    """The commutative square 1 -> 2 -> 4, 1 -> 3 -> 4; global dimension 2."""
    spec = AlgebraSpec(field=_field(field), name="commutative-square", vertices=("1", "2", "3", "4"),
                       arrows=(("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")),
                       relations=(((1, "a*b"), (-1, "c*d")),), nilpotency_bound=3)
    return load_algebra(spec)


def cyclic_nakayama(n: int = 2, length: int = 2, field: Optional[Field] = None) -> Algebra:
    """Cyclic quiver on n vertices modulo all paths of the given length."""
    if n < 1 or length < 2:
        raise InputError("Cyclic Nakayama algebras need n >= 1 and length >= 2")
    vertices = tuple(str(v + 1) for v in range(n))
    arrows = tuple((f"x{v + 1}", vertices[v], vertices[(v + 1) % n]) for v in range(n))
    relations = []
    for start in range(n):
        path = [arrows[(start + k) % n][0] for k in range(length)]
        relations.append(((1, PATH_SEPARATOR.join(path)),))
    spec = AlgebraSpec(field=_field(field), name=f"nakayama-{n}-{length}", vertices=vertices, arrows=arrows,
                       relations=tuple(relations), nilpotency_bound=length)
    return load_algebra(spec)


def noncommutative_local(field: Optional[Field] = None) -> Algebra:
    """k<x, y>/(x², y², yx) with basis e, x, y, xy; xy != yx."""
    spec = AlgebraSpec(field=_field(field), name="noncommutative-local", vertices=("1",),
                       arrows=(("x", "1", "1"), ("y", "1", "1")),
                       relations=(((1, "x*x"),), ((1, "y*y"),), ((1, "y*x"),)), nilpotency_bound=3)
    return load_algebra(spec)


CORPUS: Dict[str, Callable[..., Algebra]] = {
    "truncated_polynomial": truncated_polynomial,
    "a2": a2,
    "two_loop": two_loop,
    "commutative_square": commutative_square,
    "cyclic_nakayama": cyclic_nakayama,
    "noncommutative_local": noncommutative_local,
}


def corpus_algebra(name: str, field: Optional[Field] = None) -> Algebra:
    """Load a corpus algebra by name.

    Arguments:
        name {str} -- registered name with optional ":"-separated integer parameters

    Keyword Arguments:
        field {Field} -- scalars, GF(3) by default

    Raises:
        InputError: unknown name or bad parameters

    Returns:
        Algebra -- the loaded algebra
    """
    base, *parameters = name.strip().split(":")
    if base not in CORPUS:
        raise InputError(f"Unknown corpus algebra {base!r}, expected one of {', '.join(CORPUS)}")
    try:
        arguments = [int(parameter) for parameter in parameters]
    except ValueError as error:
        raise InputError(f"Corpus parameters must be integers in {name!r}") from error
    try:
        return CORPUS[base](*arguments, field=field)
    except TypeError as error:
        raise InputError(f"Wrong number of parameters for {base!r}") from error
