"""Constructions turning one structure into another.

Each function returns a new :class:`OpStructure` whose ``axioms`` field names
the identity system the construction guarantees and whose ``provenance``
records the step. With ``check_input=True`` (the default) the source is first
checked on 50 seeded random samples against the hypotheses of the construction.
"""

from __future__ import annotations

from typing import Any, Mapping

from .axioms import check
from .errors import MatchboxError, NonzeroWeight, PreconditionFailed
from .exactalg import as_rational
from .structures import OpStructure, RBFamily

INPUT_SAMPLES = 50


def _require_axioms(s, axioms: str, check_input: bool) -> None:
    if not check_input:
        return
    verdict = check(s, axioms, mode="random", seed=0, trials=INPUT_SAMPLES)
    if not verdict.passed:
        w = verdict.witness
        raise PreconditionFailed(f"{s.name} fails {axioms} ({w.identity} at {w.alpha},{w.beta})")


def rb_to_dendriform(fam: RBFamily) -> OpStructure:
    """``x <_w y = x P_w(y) + lambda_w xy`` and ``x >_w y = P_w(x) y``."""
    m, P, lam = fam.mul, fam.P, fam.weight

    def prec(x, y, w):
        out = m(x, P(w, y))
        return out + lam(w) * m(x, y) if lam(w) else out

    def succ(x, y, w):
        return m(P(w, x), y)

    return OpStructure(name=f"{fam.name}/dend", carrier=fam.carrier, omega=fam.omega,
                       ops={"prec": prec, "succ": succ}, axioms="matching_dendriform",
                       provenance=fam.provenance + ("dendriform: x<y = xP(y) + lambda xy, x>y = P(x)y",))


def rb_to_tridendriform(fam: RBFamily) -> OpStructure:
    """``x <_w y = x P_w(y)``, ``x >_w y = P_w(x) y``, ``x ._w y = lambda_w xy``."""
    m, P, lam = fam.mul, fam.P, fam.weight
    ops = {
        "prec": lambda x, y, w: m(x, P(w, y)),
        "succ": lambda x, y, w: m(P(w, x), y),
        "dot": lambda x, y, w: lam(w) * m(x, y),
    }
    return OpStructure(name=f"{fam.name}/tridend", carrier=fam.carrier, omega=fam.omega, ops=ops,
                       axioms="matching_tridendriform",
                       provenance=fam.provenance + ("tridendriform: x<y = xP(y), x>y = P(x)y, x.y = lambda xy",))


def dendriform_to_prelie(s: OpStructure, check_input: bool = True) -> OpStructure:
    """``x *_w y = x >_w y - y <_w x``."""
    _require_axioms(s, "matching_dendriform", check_input)
    p, q = s["prec"], s["succ"]
    return s.derive(f"{s.name}/prelie", {"star": lambda x, y, w: q(x, y, w) - p(y, x, w)},
                    "matching_prelie", "pre-Lie: x*y = x>y - y<x")


def rblie_to_prelie(fam: RBFamily, form: str = "lie") -> OpStructure:
    """Pre-Lie products from an operator family on an associative carrier.

    ``form="lie"``: ``x *_w y = [P_w(x), y]`` (commutator bracket); needs all
    weights zero. ``form="assoc"``: ``x *_w y = P_w(x)y - yP_w(x) - lambda_w yx``,
    valid for any weights.
    """
    m, P, lam = fam.mul, fam.P, fam.weight
    if form == "lie":
        nonzero = [w for w in fam.omega if lam(w)]
        if nonzero:
            raise NonzeroWeight(f"indices {nonzero} have nonzero weight; use form='assoc'")

        def star(x, y, w):
            px = P(w, x)
            return m(px, y) - m(y, px)

        step = "pre-Lie: x*y = [P(x), y]"
    elif form == "assoc":
        def star(x, y, w):
            px = P(w, x)
            out = m(px, y) - m(y, px)
            return out - lam(w) * m(y, x) if lam(w) else out

        step = "pre-Lie: x*y = P(x)y - yP(x) - lambda yx"
    else:
        raise MatchboxError(f"unknown form {form!r}")
    return OpStructure(name=f"{fam.name}/rblie-prelie", carrier=fam.carrier, omega=fam.omega,
                       ops={"star": star}, axioms="matching_prelie", provenance=fam.provenance + (step,))


def tridendriform_to_postlie(s: OpStructure, check_input: bool = True) -> OpStructure:
    """``x (*)_w y = x ._w y`` and ``x o_w y = x >_w y - y <_w x``."""
    _require_axioms(s, "matching_tridendriform", check_input)
    p, q, d = s["prec"], s["succ"], s["dot"]
    ops = {"assocstar": d, "circ": lambda x, y, w: q(x, y, w) - p(y, x, w)}
    return s.derive(f"{s.name}/postlie", ops, "matching_assoc_postlie", "assoc PostLie: star = dot, x o y = x>y - y<x")


def rb_to_assoc_postlie(fam: RBFamily) -> OpStructure:
    """``x (*)_w y = lambda_w xy`` and ``x o_w y = P_w(x)y - yP_w(x)`` directly from the family."""
    m, P, lam = fam.mul, fam.P, fam.weight

    def circ(x, y, w):
        px = P(w, x)
        return m(px, y) - m(y, px)

    ops = {"assocstar": lambda x, y, w: lam(w) * m(x, y), "circ": circ}
    return OpStructure(name=f"{fam.name}/postlie", carrier=fam.carrier, omega=fam.omega, ops=ops,
                       axioms="matching_assoc_postlie",
                       provenance=fam.provenance + ("assoc PostLie: star = lambda xy, x o y = P(x)y - yP(x)",))


def split_to_assoc(s: OpStructure, check_input: bool = True) -> OpStructure:
    """``x ._w y = x >_w y + x <_w y`` (plus ``x ._w y`` for tridendriform input)."""
    p, q = s["prec"], s["succ"]
    if s.provides("dot"):
        _require_axioms(s, "matching_tridendriform", check_input)
        d = s["dot"]
        bullet = lambda x, y, w: q(x, y, w) + p(x, y, w) + d(x, y, w)  # noqa: E731
        step = "compatible associative: x.y = x>y + x<y + x.y"
    else:
        _require_axioms(s, "matching_dendriform", check_input)
        bullet = lambda x, y, w: q(x, y, w) + p(x, y, w)  # noqa: E731
        step = "compatible associative: x.y = x>y + x<y"
    return s.derive(f"{s.name}/assoc", {"bullet": bullet}, "compatible_associative", step)


_ANTISYM_SOURCES = {
    "star": ("matching_prelie", "compatible_lie"),
    "bullet": ("compatible_associative", "compatible_lie"),
    "assocstar": ("matching_assoc_postlie", "matching_postlie"),
}


def antisymmetrize(s: OpStructure, source: str | None = None, check_input: bool = True) -> OpStructure:
    """``[x, y]_w = x op_w y - y op_w x`` for ``op`` in star, bullet or assocstar.

    Pre-Lie and compatible associative input give a compatible Lie structure;
    matching associative input gives a matching Lie structure; an associative
    PostLie structure keeps its ``circ`` and becomes a PostLie structure.
    """
    if source is None:
        source = next((name for name in ("star", "bullet", "assocstar") if s.provides(name)), None)
        if source is None:
            raise MatchboxError(f"{s.name} has no star, bullet or assocstar to antisymmetrize")
    if source not in _ANTISYM_SOURCES:
        raise MatchboxError(f"cannot antisymmetrize {source!r}")
    required, target = _ANTISYM_SOURCES[source]
    if source == "bullet" and s.axioms in ("matching_associative", "totally_compatible"):
        required, target = s.axioms, "matching_lie"
    _require_axioms(s, required, check_input)
    op = s[source]
    ops: dict = {"bracket": lambda x, y, w: op(x, y, w) - op(y, x, w)}
    if source == "assocstar":
        ops["circ"] = s["circ"]
    return s.derive(f"{s.name}/antisym", ops, target, f"bracket: [x,y] = x {source} y - y {source} x")


def combine_ops(s: OpStructure, table: Mapping[str, Mapping[str, Any]]) -> OpStructure:
    """Recombine every operation: ``op_i = sum_w a_{i,w} op_w`` over the new index set."""
    coeffs = {i: {w: as_rational(a) for w, a in row.items() if as_rational(a)} for i, row in table.items()}
    if not coeffs:
        raise MatchboxError("coefficient table must have at least one row")
    for row in coeffs.values():
        unknown = set(row) - set(s.omega)
        if unknown:
            raise MatchboxError(f"unknown indices {sorted(unknown)}")
    zero = s.carrier.zero

    def lift(op):
        def combined(x, y, i):
            acc = zero()
            for w, a in coeffs[i].items():
                acc = acc + a * op(x, y, w)
            return acc
        return combined

    ops = {name: lift(op) for name, op in s.ops.items()}
    label = ";".join(f"{i}=" + "+".join(f"{a}*{w}" for w, a in row.items()) for i, row in coeffs.items())
    return s.derive(f"{s.name}/combined", ops, s.axioms, f"linear combination {{{label}}}", omega=tuple(coeffs))


STEPS = {
    "dend": rb_to_dendriform,
    "tridend": rb_to_tridendriform,
    "prelie": dendriform_to_prelie,
    "rblie": rblie_to_prelie,
    "rbprelie": lambda fam: rblie_to_prelie(fam, form="assoc"),
    "postlie": tridendriform_to_postlie,
    "rbpostlie": rb_to_assoc_postlie,
    "assoc": split_to_assoc,
    "antisym": antisymmetrize,
}
