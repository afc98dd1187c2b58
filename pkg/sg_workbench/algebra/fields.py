"""Exact scalar fields.

Matrices are numpy arrays. Small prime fields use int64 storage, large
primes and the rationals use object arrays of Python ints or Fractions.
"""
from fractions import Fraction
from typing import Any, Iterator, Optional, Sequence

import numpy as np
import sympy

from sg_workbench.errors import InputError

SMALL_PRIME_LIMIT = 2 ** 15


class Field():
    """Base class for the exact fields used by the workbench."""

    FIELD_TYPE = ""
    dtype: Any = object

    @property
    def size(self) -> Optional[int]:
        """Number of elements, None for infinite fields."""
        return None

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def scalar(self, value) -> Any:
        raise NotImplementedError

    def reduce(self, array: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def inverse(self, value) -> Any:
        raise NotImplementedError

    def encode(self, value) -> Any:
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    def random_array(self, rng: np.random.Generator, shape, bound: int = 1) -> np.ndarray:
        raise NotImplementedError

    def elements(self, nonzero: bool = False) -> Iterator[Any]:
        raise InputError(f"{self} has no finite element list")

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=self.dtype)

    def identity(self, n: int) -> np.ndarray:
        result = self.zeros(n, n)
        for i in range(n):
            result[i, i] = self.scalar(1)
        return result

    def array(self, data) -> np.ndarray:
        """Convert nested sequences of ints, Fractions or "num/den" strings."""
        raw = np.array(data, dtype=object)
        flat = [self.scalar(value) for value in raw.ravel()]
        result = np.empty(raw.shape, dtype=self.dtype)
        if flat:
            result.ravel()[:] = flat
        return result

    def vector(self, data: Sequence) -> np.ndarray:
        return self.array(list(data)).reshape(len(data))

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0 or b.shape[0] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return self.reduce(a @ b)

    def add(self, a, b):
        return self.scalar(a + b)

    def mul(self, a, b):
        return self.scalar(a * b)

    def neg(self, a):
        return self.scalar(-a)

    def is_zero(self, array: np.ndarray) -> bool:
        return not np.any(np.asarray(array) != 0)

    def decode(self, value) -> Any:
        return self.scalar(value)

    def encode_matrix(self, matrix: np.ndarray) -> list:
        return [[self.encode(value) for value in row] for row in np.asarray(matrix)]


class PrimeField(Field):
    """The field F_p for a prime p."""

    FIELD_TYPE = "prime"

    def __init__(self, p: int):
        if not sympy.isprime(p):
            raise InputError(f"Characteristic {p} is not prime")
        self.p = int(p)
        self.dtype = np.int64 if self.p < SMALL_PRIME_LIMIT else object

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    @property
    def size(self) -> int:
        return self.p

    def scalar(self, value) -> int:
        if isinstance(value, str):
            value = parse_fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise InputError(f"{value} has no image in {self}")
            return (value.numerator * pow(value.denominator, self.p - 2, self.p)) % self.p
        return int(value) % self.p

    def reduce(self, array: np.ndarray) -> np.ndarray:
        return np.mod(array, self.p).astype(self.dtype)

    def inverse(self, value) -> int:
        value = int(value) % self.p
        if value == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return pow(value, self.p - 2, self.p)

    def encode(self, value) -> int:
        return int(value)

    def descriptor(self) -> dict:
        return {"type": self.FIELD_TYPE, "p": self.p}

    def random_array(self, rng: np.random.Generator, shape, bound: int = 1) -> np.ndarray:
        return self.reduce(rng.integers(0, self.p, size=shape))

    def elements(self, nonzero: bool = False) -> Iterator[int]:
        return iter(range(1 if nonzero else 0, self.p))


class RationalField(Field):
    """The field Q with Fraction entries."""

    FIELD_TYPE = "rational"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def scalar(self, value) -> Fraction:
        if isinstance(value, str):
            return parse_fraction(value)
        return Fraction(value)

    def reduce(self, array: np.ndarray) -> np.ndarray:
        return np.asarray(array, dtype=object)

    def inverse(self, value) -> Fraction:
        if value == 0:
            raise ZeroDivisionError("0 has no inverse in QQ")
        return Fraction(1) / Fraction(value)

    def encode(self, value) -> str:
        value = Fraction(value)
        return f"{value.numerator}/{value.denominator}"

    def descriptor(self) -> dict:
        return {"type": self.FIELD_TYPE}

    def random_array(self, rng: np.random.Generator, shape, bound: int = 1) -> np.ndarray:
        return self.array(rng.integers(-bound, bound + 1, size=shape).tolist())


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as error:
        raise InputError(f"Bad scalar {text!r}") from error


def field_from_descriptor(descriptor) -> Field:
    """Build a field from {"type": "prime", "p": p} or {"type": "rational"}.

    Arguments:
        descriptor {Mapping} -- field description from a JSON document

    Raises:
        InputError: on unknown field types or a non-prime characteristic

    Returns:
        Field -- the field
    """
    if not isinstance(descriptor, dict) or "type" not in descriptor:
        raise InputError(f"Bad field descriptor {descriptor!r}")
    if descriptor["type"] == PrimeField.FIELD_TYPE:
        if not isinstance(descriptor.get("p"), int):
            raise InputError("Prime field needs an integer 'p'")
        return PrimeField(descriptor["p"])
    if descriptor["type"] == RationalField.FIELD_TYPE:
        return RationalField()
    raise InputError(f"Unknown field type {descriptor['type']!r}")
