"""Exact rational scalars and finite linear combinations over a basis.

Every free structure in the package (planar binary trees, rooted trees) is a
``LinComb`` over hashable basis keys with ``fractions.Fraction`` coefficients.
Keys are ordered by their string form, which is also their text serialization,
so printing and JSON output are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def as_rational(value: Any) -> Fraction:
    """Coerce ints, Fractions and strings such as ``"-3/4"`` to ``Fraction``.

    Floats are rejected: they would smuggle rounding into exact checks.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def format_rational(q: Fraction) -> str:
    return str(q)


class LinComb:
    """Immutable finite linear combination ``sum c_k * key_k`` with rational ``c_k``.

    Zero coefficients are never stored, so structural equality is equality of
    elements. Arithmetic: ``a + b``, ``a - b``, ``-a``, ``c * a`` for scalar ``c``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Hashable, Scalar] | Iterable[tuple[Hashable, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Hashable, Fraction] = {}
        for key, coeff in items:
            c = as_rational(coeff)
            if c:
                total = acc.get(key, 0) + c
                if total:
                    acc[key] = total
                else:
                    acc.pop(key, None)
        self._terms = acc
        self._hash: int | None = None

    @classmethod
    def _trusted(cls, terms: dict[Hashable, Fraction]) -> LinComb:
        # terms must already be free of zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def basis(cls, key: Hashable, coeff: Scalar = 1) -> LinComb:
        return cls({key: coeff})

    @classmethod
    def zero(cls) -> LinComb:
        return cls._trusted({})

    def coeff(self, key: Hashable) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def support(self) -> list[Hashable]:
        return sorted(self._terms, key=str)

    def terms(self) -> list[tuple[Hashable, Fraction]]:
        """Terms in canonical order (lexicographic on the key's text form)."""
        return [(k, self._terms[k]) for k in self.support()]

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[tuple[Hashable, Fraction]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: LinComb) -> LinComb:
        if not isinstance(other, LinComb):
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        acc = dict(self._terms)
        for k, c in other._terms.items():
            total = acc.get(k, 0) + c
            if total:
                acc[k] = total
            else:
                del acc[k]
        return LinComb._trusted(acc)

    def __neg__(self) -> LinComb:
        return LinComb._trusted({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: LinComb) -> LinComb:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar) -> LinComb:
        c = as_rational(c)
        if not c:
            return LinComb.zero()
        return LinComb._trusted({k: c * v for k, v in self._terms.items()})

    def __mul__(self, c: Scalar) -> LinComb:
        if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def map_keys(self, f: Callable[[Hashable], Hashable]) -> LinComb:
        """Apply ``f`` to every basis key (linearly); colliding images merge."""
        return LinComb((f(k), c) for k, c in self._terms.items())

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.terms():
            parts.append(f"{format_rational(c)}*{k}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"key": _key_to_json(k), "coeff": format_rational(c)} for k, c in self.terms()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping, key_from_json: Callable[[Any], Hashable] = lambda k: k) -> LinComb:
        return cls((key_from_json(t["key"]), as_rational(t["coeff"])) for t in data["terms"])


def _key_to_json(key: Hashable) -> Any:
    to_json = getattr(key, "to_json", None)
    if to_json is not None:
        return to_json()
    return key


def lincomb_add(a: LinComb, b: LinComb) -> LinComb:
    return a + b


def lincomb_scale(c: Scalar, a: LinComb) -> LinComb:
    return a.scale(c)


def lincomb_sum(items: Iterable[LinComb]) -> LinComb:
    acc: dict[Hashable, Fraction] = {}
    for item in items:
        for k, c in item.items():
            total = acc.get(k, 0) + c
            if total:
                acc[k] = total
            else:
                del acc[k]
    return LinComb._trusted(acc)


def bilinear_extend(f: Callable[[Hashable, Hashable, Any], LinComb]) -> Callable[[LinComb, LinComb, Any], LinComb]:
    """Lift a basis-level product ``f(S, T, w)`` to linear combinations.

    ``F({S: c}, {T: d}, w) == c * d * f(S, T, w)`` and ``F`` is additive in each slot.
    """

    def extended(a: LinComb, b: LinComb, index: Any) -> LinComb:
        acc: dict[Hashable, Fraction] = {}
        for s, c in a.items():
            for t, d in b.items():
                cd = c * d
                for k, v in f(s, t, index).items():
                    total = acc.get(k, 0) + cd * v
                    if total:
                        acc[k] = total
                    else:
                        del acc[k]
        return LinComb._trusted(acc)

    extended.__name__ = getattr(f, "__name__", "extended")
    extended.__doc__ = f.__doc__
    return extended
