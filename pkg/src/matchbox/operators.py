"""Concrete matching Rota-Baxter operator families.

Three carriers are covered:

* polynomials with kernel integrals ``f -> int_0^x k_w(t) f(t) dt`` (weight 0);
* ``Q^n`` with rescaled strict running sums (nonzero weight);
* matrices with sandwich operators ``x -> sum_i u_i x v_i`` induced by solutions
  of the polarized associative Yang-Baxter equation.

Every family is an :class:`~matchbox.structures.RBFamily`; the identity
``P_a(x)P_b(y) = P_a(x P_b(y)) + P_b(P_a(x) y) + lambda_b P_a(xy)`` is checked by
:mod:`matchbox.axioms`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .carriers import (Carrier, Poly, array_is_zero, encode_array, matrix_carrier, matrix_unit, poly_carrier,
                       qarray, qidentity, qzeros, random_array, seq_carrier)
from .errors import BudgetExceeded, DimensionMismatch, MatchboxError, PreconditionFailed
from .exactalg import as_rational
from .structures import RBFamily


# ---------------------------------------------------------------------------
# kernel integrals on polynomials


def kernel_integral(f: Poly, k: Poly) -> Poly:
    """``int_0^x k(t) f(t) dt``."""
    return (k * f).integral()


def make_kernel_family(kernels: Mapping[str, Poly], max_degree: int = 4) -> RBFamily:
    if not kernels:
        raise MatchboxError("a kernel family needs at least one kernel")
    ops = {w: (lambda f, k=k: kernel_integral(f, k)) for w, k in kernels.items()}
    label = ",".join(f"{w}:{k!r}" for w, k in kernels.items())
    return RBFamily(name="kernel-family", carrier=poly_carrier(max_degree), operators=ops,
                    weights={w: Fraction(0) for w in kernels}, provenance=(f"kernel integrals {{{label}}}",))


# ---------------------------------------------------------------------------
# running sums on Q^n


class BaseOperator(NamedTuple):
    operator: Callable[[Any], Any]
    weight: Fraction
    carrier: Carrier


def running_sum(a: np.ndarray) -> np.ndarray:
    """Strict prefix sums: ``P(a)_i = sum_{j<i} a_j``."""
    out = np.empty_like(a)
    acc = Fraction(0)
    for i, v in enumerate(a):
        out[i] = acc
        acc += v
    return out


def rb_single_residual(P: Callable, weight: Fraction, mul: Callable, x, y):
    """``P(x)P(y) - P(xP(y) + P(x)y + weight*xy)`` for a single operator."""
    return mul(P(x), P(y)) - P(mul(x, P(y)) + mul(P(x), y) + weight * mul(x, y))


def running_sum_base(n: int, trials: int = 100, seed: int = 0) -> BaseOperator:
    """Running-sum operator on ``Q^n`` and the sign of weight that makes it Rota-Baxter.

    The sign is found by evaluating the single-operator identity for both
    candidates on seeded random pairs; exactly one must survive.
    """
    carrier = seq_carrier(n)
    rng = random.Random(seed)
    pairs = [(carrier.sample(rng), carrier.sample(rng)) for _ in range(trials)]
    winners = [
        lam for lam in (Fraction(1), Fraction(-1))
        if all(array_is_zero(rb_single_residual(running_sum, lam, carrier.mul, x, y)) for x, y in pairs)
    ]
    if len(winners) != 1:
        raise MatchboxError(f"could not determine a unique running-sum weight: {winners}")
    return BaseOperator(running_sum, winners[0], carrier)


def scaled_family(base: BaseOperator, scalars: Mapping[str, Any]) -> RBFamily:
    """``P_w = c_w P`` with weights ``c_w * lambda_0``."""
    cs = {w: as_rational(c) for w, c in scalars.items()}
    P = base.operator
    ops = {w: (lambda x, c=c: c * P(x)) for w, c in cs.items()}
    label = ",".join(f"{w}:{c}" for w, c in cs.items())
    return RBFamily(name="running-sum", carrier=base.carrier, operators=ops,
                    weights={w: c * base.weight for w, c in cs.items()},
                    provenance=(f"scaled running sum {{{label}}}, base weight {base.weight}",))


def combine_family(fam: RBFamily, table: Mapping[str, Mapping[str, Any]]) -> RBFamily:
    """Operators ``P_i = sum_w a_{i,w} P_w`` with weights ``lambda_i = sum_w a_{i,w} lambda_w``."""
    coeffs = {i: {w: as_rational(a) for w, a in row.items() if as_rational(a)} for i, row in table.items()}
    for row in coeffs.values():
        missing = set(row) - set(fam.operators)
        if missing:
            raise MatchboxError(f"unknown indices {sorted(missing)} in coefficient table")
    zero = fam.carrier.zero

    def make(row):
        def P(x):
            acc = zero()
            for w, a in row.items():
                acc = acc + a * fam.P(w, x)
            return acc
        return P

    ops = {i: make(row) for i, row in coeffs.items()}
    weights = {i: sum((a * fam.weight(w) for w, a in row.items()), Fraction(0)) for i, row in coeffs.items()}
    return RBFamily(name=fam.name, carrier=fam.carrier, operators=ops, weights=weights,
                    provenance=fam.provenance + (f"linear combination {table_label(coeffs)}",))


def table_label(table: Mapping[str, Mapping[str, Fraction]]) -> str:
    rows = []
    for i, row in table.items():
        rows.append(f"{i}=" + "+".join(f"{a}*{w}" for w, a in row.items()))
    return "{" + ";".join(rows) + "}"


# ---------------------------------------------------------------------------
# tensors in M_k (x) M_k and M_k (x) M_k (x) M_k


@dataclass(frozen=True)
class MatTensor:
    """``r = sum_i u_i (x) v_i`` with ``k x k`` rational matrices."""

    k: int
    pairs: tuple[tuple[np.ndarray, np.ndarray], ...] = ()

    def __post_init__(self):
        kept = []
        for u, v in self.pairs:
            if u.shape != (self.k, self.k) or v.shape != (self.k, self.k):
                raise DimensionMismatch(f"factor shapes {u.shape}, {v.shape} do not match k={self.k}")
            if not array_is_zero(u) and not array_is_zero(v):
                kept.append((u, v))
        object.__setattr__(self, "pairs", tuple(kept))

    @classmethod
    def from_units(cls, k: int, terms: Iterable[tuple[Any, tuple[int, int], tuple[int, int]]]) -> MatTensor:
        """``sum c * E_ij (x) E_kl`` from ``(c, (i, j), (k, l))`` with 0-based indices."""
        pairs = []
        for c, (i, j), (p, q) in terms:
            c = as_rational(c)
            if c:
                pairs.append((c * matrix_unit(k, i, j), matrix_unit(k, p, q)))
        return cls(k, tuple(pairs))

    def __add__(self, other: MatTensor) -> MatTensor:
        _same_k(self.k, other.k)
        return MatTensor(self.k, self.pairs + other.pairs)

    def scale(self, c) -> MatTensor:
        c = as_rational(c)
        return MatTensor(self.k, tuple((c * u, v) for u, v in self.pairs))

    def dense(self) -> np.ndarray:
        """Coordinates as a ``(k, k, k, k)`` array: ``sum u[i,j] v[p,q]``."""
        acc = qzeros((self.k,) * 4)
        for u, v in self.pairs:
            acc = acc + np.multiply.outer(u, v)
        return acc

    def is_zero(self) -> bool:
        return array_is_zero(self.dense())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatTensor):
            return NotImplemented
        return self.k == other.k and array_is_zero(self.dense() - other.dense())

    def __hash__(self) -> int:
        return hash((self.k, tuple(self.dense().flat)))

    def to_json(self) -> list[dict]:
        return [{"u": encode_array(u), "v": encode_array(v)} for u, v in self.pairs]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> MatTensor:
        if not data:
            raise MatchboxError("empty tensor JSON needs an explicit dimension; use MatTensor(k)")
        n = len(data[0]["u"])
        k = int(round(n ** 0.5))
        if k * k != n:
            raise DimensionMismatch(f"{n} entries is not a square matrix")
        pairs = tuple((qarray(d["u"]).reshape(k, k), qarray(d["v"]).reshape(k, k)) for d in data)
        return cls(k, pairs)

    def __repr__(self) -> str:
        return f"MatTensor(k={self.k}, terms={len(self.pairs)})"


@dataclass(frozen=True)
class TripleTensor:
    """Element ``sum a (x) b (x) c`` of ``M_k (x) M_k (x) M_k`` with slotwise product."""

    k: int
    triples: tuple[tuple[np.ndarray, np.ndarray, np.ndarray], ...] = ()

    def __mul__(self, other: TripleTensor) -> TripleTensor:
        _same_k(self.k, other.k)
        return TripleTensor(self.k, tuple(
            (a.dot(a2), b.dot(b2), c.dot(c2)) for a, b, c in self.triples for a2, b2, c2 in other.triples
        ))

    def __add__(self, other: TripleTensor) -> TripleTensor:
        _same_k(self.k, other.k)
        return TripleTensor(self.k, self.triples + other.triples)

    def scale(self, s) -> TripleTensor:
        s = as_rational(s)
        return TripleTensor(self.k, tuple((s * a, b, c) for a, b, c in self.triples))

    def __neg__(self) -> TripleTensor:
        return self.scale(-1)

    def __sub__(self, other: TripleTensor) -> TripleTensor:
        return self + (-other)

    def dense(self) -> np.ndarray:
        acc = qzeros((self.k,) * 6)
        for a, b, c in self.triples:
            acc = acc + np.multiply.outer(np.multiply.outer(a, b), c)
        return acc

    def is_zero(self) -> bool:
        return array_is_zero(self.dense())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TripleTensor):
            return NotImplemented
        return self.k == other.k and array_is_zero(self.dense() - other.dense())

    __hash__ = None


def _same_k(k1: int, k2: int) -> None:
    if k1 != k2:
        raise DimensionMismatch(f"dimension {k1} vs {k2}")


def tensor_embed(r: MatTensor, slot: str | int) -> TripleTensor:
    """``r_12``, ``r_13`` or ``r_23``: the two factors placed in the named slots, 1 elsewhere."""
    one = qidentity(r.k)
    slot = str(slot)
    if slot == "12":
        triples = tuple((u, v, one) for u, v in r.pairs)
    elif slot == "13":
        triples = tuple((u, one, v) for u, v in r.pairs)
    elif slot == "23":
        triples = tuple((one, u, v) for u, v in r.pairs)
    else:
        raise ValueError(f"slot must be 12, 13 or 23, not {slot!r}")
    return TripleTensor(r.k, triples)


def paybe_residual(r: MatTensor, s: MatTensor, weight=0) -> TripleTensor:
    """``r13 s12 - r12 s23 + r23 s13 + weight * s13``; zero iff ``(r, s)`` solves the weighted equation."""
    _same_k(r.k, s.k)
    r12, r13, r23 = (tensor_embed(r, sl) for sl in ("12", "13", "23"))
    s12, s13, s23 = (tensor_embed(s, sl) for sl in ("12", "13", "23"))
    return r13 * s12 - r12 * s23 + r23 * s13 + s13.scale(weight)


def swap_condition(r: MatTensor, s: MatTensor) -> bool:
    """``r_12 s_23 == s_12 r_23``."""
    _same_k(r.k, s.k)
    return (tensor_embed(r, "12") * tensor_embed(s, "23")
            - tensor_embed(s, "12") * tensor_embed(r, "23")).is_zero()


def tensor_operator(r: MatTensor) -> Callable[[np.ndarray], np.ndarray]:
    """The sandwich operator ``x -> sum_i u_i x v_i``."""
    pairs = r.pairs
    k = r.k

    def P(x: np.ndarray) -> np.ndarray:
        if x.shape != (k, k):
            raise DimensionMismatch(f"expected a {k}x{k} matrix, got shape {x.shape}")
        acc = qzeros((k, k))
        for u, v in pairs:
            acc = acc + u.dot(x).dot(v)
        return acc

    return P


def parse_support(spec: str) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """``"12:12,11:22"`` -> ``[((0,1),(0,1)), ((0,0),(1,1))]`` (1-based digits in the text)."""
    out = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        left, right = item.split(":")
        if len(left) != 2 or len(right) != 2:
            raise ValueError(f"support entry {item!r} must look like 12:21")
        out.append(((int(left[0]) - 1, int(left[1]) - 1), (int(right[0]) - 1, int(right[1]) - 1)))
    return out


def aybe_search(k: int, support: Sequence[tuple[tuple[int, int], tuple[int, int]]], grid: Sequence[Any],
                weight=0, family: bool = False, cap: int = 10_000):
    """Exhaustive search for solutions supported on the given matrix-unit pairs.

    Every assignment of ``grid`` values to the ``support`` terms is tried. Plain
    mode returns the tensors ``r`` with ``paybe_residual(r, r, weight) == 0``.
    Family mode returns pairs ``(r, s)`` of distinct such solutions for which all
    four ordered residuals vanish and the swap condition holds both ways, so
    ``{r, s}`` is a two-element solution family.
    """
    grid = [as_rational(g) for g in grid]
    weight = as_rational(weight)
    for (i, j), (p, q) in support:
        if not all(0 <= n < k for n in (i, j, p, q)):
            raise DimensionMismatch(f"matrix unit indices {(i, j)}, {(p, q)} out of range for k={k}")
    size = len(grid) ** len(support)
    if size > cap:
        raise BudgetExceeded(f"grid has {size} points, cap is {cap}")
    solutions = []
    for coeffs in product(grid, repeat=len(support)):
        r = MatTensor.from_units(k, ((c, a, b) for c, (a, b) in zip(coeffs, support)))
        if paybe_residual(r, r, weight).is_zero():
            solutions.append(r)
    if not family:
        return solutions
    if len(solutions) ** 2 > cap * 10:
        raise BudgetExceeded(f"{len(solutions)} single solutions give too many candidate pairs")
    pairs = []
    for a in range(len(solutions)):
        for b in range(a + 1, len(solutions)):
            r, s = solutions[a], solutions[b]
            if is_solution_family([r, s], weight):
                pairs.append((r, s))
    return pairs


def _pair_ok(r: MatTensor, s: MatTensor, weight: Fraction) -> bool:
    return paybe_residual(r, s, weight).is_zero() and swap_condition(r, s)


def is_solution_family(tensors: Sequence[MatTensor], weight=0) -> bool:
    weight = as_rational(weight)
    return all(_pair_ok(r, s, weight) for r in tensors for s in tensors)


def make_paybe_family(solutions: Mapping[str, MatTensor], weight=0) -> RBFamily:
    """Sandwich operators of a solution family; every ordered pair is validated first."""
    if not solutions:
        raise MatchboxError("a solution family needs at least one tensor")
    weight = as_rational(weight)
    ks = {r.k for r in solutions.values()}
    if len(ks) != 1:
        raise DimensionMismatch(f"mixed dimensions {sorted(ks)}")
    for a, r in solutions.items():
        for b, s in solutions.items():
            if not paybe_residual(r, s, weight).is_zero():
                raise PreconditionFailed(f"pair ({a}, {b}) does not solve the weighted polarized equation")
            if not swap_condition(r, s):
                raise PreconditionFailed(f"pair ({a}, {b}) violates r12 s23 = s12 r23")
    k = ks.pop()
    return RBFamily(name="paybe-family", carrier=matrix_carrier(k),
                    operators={w: tensor_operator(r) for w, r in solutions.items()},
                    weights={w: weight for w in solutions},
                    provenance=(f"sandwich operators of a polarized AYBE family, weight {weight}",))


def random_matrix(rng: random.Random, k: int, bound: int = 3) -> np.ndarray:
    return random_array(rng, (k, k), bound)
