"""Operator families and multi-operation structures over a carrier."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable, Mapping

from .carriers import Carrier
from .errors import MatchboxError, MissingOperation

BinaryOp = Callable[[Any, Any, str], Any]
LinearOp = Callable[[Any], Any]

OPERATION_NAMES = ("prec", "succ", "dot", "star", "circ", "assocstar", "bullet", "bracket")


@dataclass(frozen=True)
class OpStructure:
    """A carrier with ``Omega``-indexed bilinear operations.

    ``ops`` maps an operation name from :data:`OPERATION_NAMES` to a callable
    ``f(x, y, w)``. ``axioms`` names the axiom set the structure is claimed to
    satisfy; ``provenance`` records how it was built.
    """

    name: str
    carrier: Carrier
    omega: tuple[str, ...]
    ops: Mapping[str, BinaryOp]
    axioms: str | None = None
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        unknown = set(self.ops) - set(OPERATION_NAMES)
        if unknown:
            raise MatchboxError(f"unknown operation names {sorted(unknown)}")
        if not self.omega:
            raise MatchboxError("index set must be nonempty")

    def provides(self, name: str) -> bool:
        return name in self.ops

    def op(self, name: str) -> BinaryOp:
        try:
            return self.ops[name]
        except KeyError:
            raise MissingOperation(f"{self.name} has no {name!r} operation") from None

    def __getitem__(self, name: str) -> BinaryOp:
        return self.op(name)

    def derive(self, name: str, ops: Mapping[str, BinaryOp], axioms: str | None, step: str,
               omega: tuple[str, ...] | None = None) -> OpStructure:
        return OpStructure(name=name, carrier=self.carrier, omega=self.omega if omega is None else omega,
                           ops=dict(ops), axioms=axioms, provenance=self.provenance + (step,))


@dataclass(frozen=True)
class RBFamily:
    """An associative carrier with linear operators ``P_w`` and weights ``lambda_w``."""

    name: str
    carrier: Carrier
    operators: Mapping[str, LinearOp]
    weights: Mapping[str, Fraction]
    provenance: tuple[str, ...] = ()
    axioms: str = field(default="matching_rb", repr=False)

    def __post_init__(self):
        if not self.operators:
            raise MatchboxError("an operator family needs a nonempty index set")
        if set(self.operators) != set(self.weights):
            raise MatchboxError("operators and weights must share an index set")
        if self.carrier.mul is None:
            raise MatchboxError(f"carrier {self.carrier.name} has no product")

    @property
    def omega(self) -> tuple[str, ...]:
        return tuple(self.operators)

    def provides(self, name: str) -> bool:
        return name == "operators"

    def P(self, w: str, x: Any) -> Any:
        return self.operators[w](x)

    def weight(self, w: str) -> Fraction:
        return self.weights[w]

    def mul(self, x: Any, y: Any) -> Any:
        return self.carrier.mul(x, y)

    def with_name(self, name: str) -> RBFamily:
        return replace(self, name=name)
