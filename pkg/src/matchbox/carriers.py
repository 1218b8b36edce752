"""Carrier modules for algebraic structures, plus seeded samplers.

A :class:`Carrier` bundles what the axiom engine needs to know about the
underlying module: a zero test, a seeded random sampler, a finite pool of basis
elements for exhaustive sweeps, a JSON encoder, and (for algebras) the
associative product.

Concrete carriers:

* free modules of linear combinations over a finite basis pool (trees);
* ``Poly``, polynomials over Q in one variable;
* ``Q^n`` with the pointwise product (numpy object vectors of ``Fraction``);
* ``M_k(Q)`` (numpy object matrices of ``Fraction``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import zip_longest
from typing import Any, Callable, Hashable, Sequence

import numpy as np

from .exactalg import LinComb, as_rational, format_rational

_DENOMINATORS = (1, 1, 2, 3)


def random_rational(rng: random.Random, bound: int = 3, nonzero: bool = False) -> Fraction:
    """Rational in ``[-bound, bound]`` with a small denominator."""
    while True:
        den = rng.choice(_DENOMINATORS)
        q = Fraction(rng.randint(-bound * den, bound * den), den)
        if q or not nonzero:
            return q


def sample_element(pool: Sequence[Hashable], seed: int | random.Random, max_terms: int = 3,
                   coeff_bound: int = 3) -> LinComb:
    """Random linear combination of at most ``max_terms`` distinct pool keys.

    Deterministic for an integer seed; an ``random.Random`` is advanced in place.
    Coefficients are nonzero rationals in ``[-coeff_bound, coeff_bound]``.
    """
    if not pool:
        raise ValueError("sample pool is empty")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if max_terms <= 0:
        return LinComb.zero()
    k = rng.randint(1, min(max_terms, len(pool)))
    keys = rng.sample(list(pool), k)
    return LinComb((key, random_rational(rng, coeff_bound, nonzero=True)) for key in keys)


@dataclass(frozen=True)
class Carrier:
    name: str
    zero: Callable[[], Any]
    is_zero: Callable[[Any], bool]
    sample: Callable[[random.Random], Any]
    encode: Callable[[Any], Any]
    mul: Callable[[Any, Any], Any] | None = None
    pool: tuple = field(default=(), repr=False)

    @property
    def is_algebra(self) -> bool:
        return self.mul is not None


def free_module_carrier(name: str, sample_keys: Sequence[Hashable], pool_keys: Sequence[Hashable] | None = None,
                        max_terms: int = 3, coeff_bound: int = 3) -> Carrier:
    """Linear combinations over trees; the exhaustive pool is the basis itself."""
    sample_keys = tuple(sample_keys)
    pool_keys = sample_keys if pool_keys is None else tuple(pool_keys)
    return Carrier(
        name=name,
        zero=LinComb.zero,
        is_zero=lambda x: x.is_zero(),
        sample=lambda rng: sample_element(sample_keys, rng, max_terms, coeff_bound),
        encode=lambda x: x.to_json(),
        pool=tuple(LinComb.basis(k) for k in pool_keys),
    )


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Polynomial over Q; ``coeffs[i]`` multiplies ``x**i``, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, n: int, c=1) -> Poly:
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: Poly) -> Poly:
        if not isinstance(other, Poly):
            return NotImplemented
        return Poly([a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)])

    def __neg__(self) -> Poly:
        return Poly([-a for a in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        if not isinstance(other, Poly):
            return NotImplemented
        return Poly([a - b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)])

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly([other * a for a in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def integral(self) -> Poly:
        """Antiderivative vanishing at 0."""
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        parts = [f"{format_rational(c)}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Poly(" + " + ".join(parts) + ")"

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> Poly:
        return cls([as_rational(c) for c in data])


def random_poly(rng: random.Random, max_degree: int = 4, bound: int = 3) -> Poly:
    deg = rng.randint(0, max_degree)
    return Poly([random_rational(rng, bound) for _ in range(deg + 1)])


def poly_carrier(max_degree: int = 4) -> Carrier:
    return Carrier(
        name=f"poly(deg<={max_degree})",
        zero=Poly,
        is_zero=lambda p: p.is_zero(),
        sample=lambda rng: random_poly(rng, max_degree),
        encode=lambda p: p.to_json(),
        mul=lambda a, b: a * b,
        pool=tuple(Poly.monomial(i) for i in range(max_degree + 1)),
    )


# ---------------------------------------------------------------------------
# vectors and matrices as numpy object arrays of Fractions


def qarray(values: Any) -> np.ndarray:
    """Object ndarray of ``Fraction`` from nested sequences of exact scalars."""
    arr = np.array(values, dtype=object)
    flat = arr.reshape(-1)
    for i, v in enumerate(flat):
        flat[i] = as_rational(v)
    return arr


def qzeros(shape) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(Fraction(0))
    return arr


def qidentity(k: int) -> np.ndarray:
    arr = qzeros((k, k))
    for i in range(k):
        arr[i, i] = Fraction(1)
    return arr


def matrix_unit(k: int, i: int, j: int) -> np.ndarray:
    """``E_ij`` (0-based indices) in ``M_k``."""
    arr = qzeros((k, k))
    arr[i, j] = Fraction(1)
    return arr


def array_is_zero(a: np.ndarray) -> bool:
    return all(v == 0 for v in a.flat)


def encode_array(a: np.ndarray) -> list:
    return [format_rational(v) for v in a.flat]


def random_array(rng: random.Random, shape, bound: int = 3) -> np.ndarray:
    arr = qzeros(shape)
    flat = arr.reshape(-1)
    for i in range(flat.size):
        flat[i] = random_rational(rng, bound)
    return arr


def seq_carrier(n: int) -> Carrier:
    """``Q^n`` with the pointwise product."""
    if n < 2:
        raise ValueError("sequence length must be at least 2")
    units = []
    for i in range(n):
        e = qzeros((n,))
        e[i] = Fraction(1)
        units.append(e)
    return Carrier(
        name=f"seq({n})",
        zero=lambda: qzeros((n,)),
        is_zero=array_is_zero,
        sample=lambda rng: random_array(rng, (n,)),
        encode=encode_array,
        mul=lambda a, b: a * b,
        pool=tuple(units),
    )


def matrix_carrier(k: int) -> Carrier:
    """``M_k(Q)`` with the matrix product."""
    if k < 1:
        raise ValueError("matrix size must be positive")
    return Carrier(
        name=f"mat({k})",
        zero=lambda: qzeros((k, k)),
        is_zero=array_is_zero,
        sample=lambda rng: random_array(rng, (k, k)),
        encode=encode_array,
        mul=lambda a, b: a.dot(b),
        pool=tuple(matrix_unit(k, i, j) for i in range(k) for j in range(k)),
    )
