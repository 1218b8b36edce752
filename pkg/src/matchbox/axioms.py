"""Axiom registry and the verification engine.

Each identity is stored as a residual function ``LHS - RHS`` of its arguments
and indices; a structure satisfies an identity on an input exactly when the
residual is zero in its carrier. Checks run either exhaustively over a finite
pool of basis elements (for multilinear identities this is a proof on the span
of the pool) or on seeded random samples.
"""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Sequence

from .carriers import sample_element  # noqa: F401  (re-exported sampler)
from .errors import MatchboxError, MissingOperation

EXHAUSTIVE_LIMIT = 500
DEFAULT_TRIALS = 200


@dataclass(frozen=True)
class Identity:
    id: str
    arity: int
    indices: str  # "pair": all (a, b); "single": a == b
    residual: Callable[..., Any]


@dataclass(frozen=True)
class AxiomSet:
    name: str
    requires: tuple[str, ...]
    identities: tuple[Identity, ...]

    def ids(self) -> list[str]:
        return [i.id for i in self.identities]


@dataclass(frozen=True)
class Witness:
    identity: str
    alpha: str
    beta: str
    args: tuple
    residual: Any


@dataclass(frozen=True)
class Verdict:
    passed: bool
    mode: str
    trials: int
    instances: int
    axiom_set: str
    structure: str
    seed: int | None = None
    witness: Witness | None = None
    provenance: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self, encode: Callable[[Any], Any]) -> dict:
        out = {
            "structure": self.structure,
            "axiom_set": self.axiom_set,
            "mode": self.mode,
            "seed": self.seed,
            "trials": self.trials,
            "instances": self.instances,
            "verdict": "pass" if self.passed else "fail",
            "provenance": list(self.provenance),
        }
        if self.witness is not None:
            w = self.witness
            out["witness"] = {
                "identity": w.identity,
                "alpha": w.alpha,
                "beta": w.beta,
                "args": [encode(a) for a in w.args],
                "residual": encode(w.residual),
            }
        return out


# ---------------------------------------------------------------------------
# identities


def _dend_ids():
    def ddf1(s, x, y, z, a, b):
        p, q = s["prec"], s["succ"]
        return p(p(x, y, a), z, b) - p(x, p(y, z, b), a) - p(x, q(y, z, a), b)

    def ddf2(s, x, y, z, a, b):
        p, q = s["prec"], s["succ"]
        return p(q(x, y, a), z, b) - q(x, p(y, z, b), a)

    def ddf3(s, x, y, z, a, b):
        p, q = s["prec"], s["succ"]
        return q(p(x, y, b), z, a) + q(q(x, y, a), z, b) - q(x, q(y, z, b), a)

    return (Identity("ddf1", 3, "pair", ddf1), Identity("ddf2", 3, "pair", ddf2),
            Identity("ddf3", 3, "pair", ddf3))


def _tridend_ids():
    def tdf1(s, x, y, z, a, b):
        p, q, d = s["prec"], s["succ"], s["dot"]
        return p(p(x, y, a), z, b) - p(x, p(y, z, b), a) - p(x, q(y, z, a), b) - p(x, d(y, z, b), a)

    def tdf2(s, x, y, z, a, b):
        p, q = s["prec"], s["succ"]
        return p(q(x, y, a), z, b) - q(x, p(y, z, b), a)

    def tdf3(s, x, y, z, a, b):
        p, q, d = s["prec"], s["succ"], s["dot"]
        return q(x, q(y, z, b), a) - q(p(x, y, b), z, a) - q(q(x, y, a), z, b) - q(d(x, y, b), z, a)

    def tdf4(s, x, y, z, a, b):
        q, d = s["succ"], s["dot"]
        return d(q(x, y, a), z, b) - q(x, d(y, z, b), a)

    def tdf5(s, x, y, z, a, b):
        p, q, d = s["prec"], s["succ"], s["dot"]
        return d(p(x, y, a), z, b) - d(x, q(y, z, a), b)

    def tdf6(s, x, y, z, a, b):
        p, d = s["prec"], s["dot"]
        return p(d(x, y, a), z, b) - d(x, p(y, z, b), a)

    def tdf7(s, x, y, z, a, b):
        d = s["dot"]
        return d(d(x, y, a), z, b) - d(x, d(y, z, b), a)

    fns = (tdf1, tdf2, tdf3, tdf4, tdf5, tdf6, tdf7)
    return tuple(Identity(f.__name__, 3, "pair", f) for f in fns)


def _matching_assoc(op: str, prefix: str = "") -> Identity:
    def matching_assoc(s, x, y, z, a, b):
        m = s[op]
        return m(m(x, y, a), z, b) - m(x, m(y, z, b), a)

    return Identity(prefix + "matching_assoc", 3, "pair", matching_assoc)


def _total_compat(s, x, y, z, a, b):
    m = s["bullet"]
    return m(m(x, y, a), z, b) - m(x, m(y, z, a), b)


def _wm1(s, x, y, z, a, b):
    m = s["bullet"]
    return m(m(x, y, a), z, b) + m(m(x, y, b), z, a) - m(x, m(y, z, b), a) - m(x, m(y, z, a), b)


def _assoc_each(s, x, y, z, a, b):
    m = s["bullet"]
    return m(m(x, y, a), z, a) - m(x, m(y, z, a), a)


def _mpreid(s, x, y, z, a, b):
    st = s["star"]
    return st(x, st(y, z, b), a) - st(st(x, y, a), z, b) - st(y, st(x, z, a), b) + st(st(y, x, b), z, a)


def _alternativity(s, x, y, z, a, b):
    return s["bracket"](x, x, a)


def _skew(s, x, y, z, a, b):
    br = s["bracket"]
    return br(x, y, a) + br(y, x, a)


def _matching_jacobi(s, x, y, z, a, b):
    br = s["bracket"]
    # index placement kept exactly as the identity is usually stated, no symmetrization
    return br(x, br(y, z, b), a) + br(y, br(z, x, a), b) + br(z, br(x, y, a), b)


def _cyclic(br, x, y, z, inner, outer):
    return br(x, br(y, z, inner), outer) + br(y, br(z, x, inner), outer) + br(z, br(x, y, inner), outer)


def _coupling_jacobi(s, x, y, z, a, b):
    br = s["bracket"]
    return _cyclic(br, x, y, z, a, b) + _cyclic(br, x, y, z, b, a)


def _mplie1_diagonal(s, x, y, z, a, b):
    c, br = s["circ"], s["bracket"]
    return (c(x, c(y, z, a), a) - c(c(x, y, a), z, a) - c(y, c(x, z, a), a) + c(c(y, x, a), z, a)
            - c(br(x, y, a), z, a))


def _mplie2(s, x, y, z, a, b):
    c, br = s["circ"], s["bracket"]
    return c(x, br(y, z, b), a) - br(c(x, y, a), z, b) - br(y, c(x, z, a), b)


def _mplie3(s, x, y, z, a, b):
    c, st = s["circ"], s["assocstar"]
    return (c(x, c(y, z, b), a) - c(c(x, y, a), z, b) - c(y, c(x, z, a), b) + c(c(y, x, b), z, a)
            - c(st(x, y, b), z, a) + c(st(y, x, a), z, b))


def _mplie4(s, x, y, z, a, b):
    c, st = s["circ"], s["assocstar"]
    return (c(x, st(y, z, b), a) - c(x, st(z, y, b), a)
            - st(c(x, y, a), z, b) + st(z, c(x, y, a), b) - st(y, c(x, z, a), b) + st(c(x, z, a), y, b))


def _rbid(fam, x, y, z, a, b):
    P, m = fam.P, fam.mul
    return (m(P(a, x), P(b, y)) - P(a, m(x, P(b, y))) - P(b, m(P(a, x), y))
            - fam.weight(b) * P(a, m(x, y)))


def _mlieid(fam, x, y, z, a, b):
    P, m = fam.P, fam.mul

    def br(u, v):
        return m(u, v) - m(v, u)

    return (br(P(a, x), P(b, y)) - P(a, br(x, P(b, y))) - P(b, br(P(a, x), y))
            - fam.weight(b) * P(a, br(x, y)))


_LIE_BASE = (Identity("alternativity", 1, "single", _alternativity), Identity("skew_symmetry", 2, "single", _skew))

AXIOM_SETS: dict[str, AxiomSet] = {
    s.name: s
    for s in (
        AxiomSet("matching_dendriform", ("prec", "succ"), _dend_ids()),
        AxiomSet("matching_tridendriform", ("prec", "succ", "dot"), _tridend_ids()),
        AxiomSet("matching_associative", ("bullet",), (_matching_assoc("bullet"),)),
        AxiomSet("totally_compatible", ("bullet",),
                 (_matching_assoc("bullet"), Identity("total_compat", 3, "pair", _total_compat))),
        AxiomSet("compatible_associative", ("bullet",),
                 (Identity("wm1", 3, "pair", _wm1), Identity("assoc_each_index", 3, "single", _assoc_each))),
        AxiomSet("matching_prelie", ("star",), (Identity("mpreid", 3, "pair", _mpreid),)),
        AxiomSet("matching_lie", ("bracket",),
                 _LIE_BASE + (Identity("matching_jacobi", 3, "pair", _matching_jacobi),)),
        AxiomSet("compatible_lie", ("bracket",),
                 _LIE_BASE + (Identity("coupling_jacobi", 3, "pair", _coupling_jacobi),)),
        AxiomSet("matching_postlie", ("bracket", "circ"),
                 _LIE_BASE + (Identity("matching_jacobi", 3, "pair", _matching_jacobi),
                              Identity("mplie1", 3, "single", _mplie1_diagonal),
                              Identity("mplie2", 3, "pair", _mplie2))),
        AxiomSet("matching_assoc_postlie", ("assocstar", "circ"),
                 (_matching_assoc("assocstar", "star_"), Identity("mplie3", 3, "pair", _mplie3),
                  Identity("mplie4", 3, "pair", _mplie4))),
        AxiomSet("matching_rb", ("operators",), (Identity("rbid", 2, "pair", _rbid),)),
        AxiomSet("matching_rb_lie", ("operators",), (Identity("mlieid", 2, "pair", _mlieid),)),
    )
}


def get_axiom_set(name: str | AxiomSet) -> AxiomSet:
    if isinstance(name, AxiomSet):
        return name
    try:
        return AXIOM_SETS[name.replace("-", "_")]
    except KeyError:
        raise MatchboxError(f"unknown axiom set {name!r}; known: {sorted(AXIOM_SETS)}") from None


# ---------------------------------------------------------------------------
# engine


def _index_tuples(identity: Identity, omega: Sequence[str]) -> list[tuple[str, str]]:
    if identity.indices == "single":
        return [(w, w) for w in omega]
    return [(a, b) for a in omega for b in omega]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MATCHBOX_THREADS", "1")))
    except ValueError:
        return 1


def _require(structure, axset: AxiomSet) -> None:
    for name in axset.requires:
        if not structure.provides(name):
            raise MissingOperation(f"{structure.name} lacks {name!r} required by {axset.name}")


def evaluate(structure, identity: Identity, args: Sequence[Any], alpha: str, beta: str) -> Any:
    padded = list(args) + [None] * (3 - len(args))
    return identity.residual(structure, *padded, alpha, beta)


def _run_job(structure, identity: Identity, indices, inputs) -> tuple[int, Witness | None]:
    is_zero = structure.carrier.is_zero
    count = 0
    for alpha, beta in indices:
        for args in inputs:
            res = evaluate(structure, identity, args, alpha, beta)
            count += 1
            if not is_zero(res):
                return count, Witness(identity.id, alpha, beta, tuple(args), res)
    return count, None


def check(structure, axioms: str | AxiomSet, mode: str = "auto", seed: int = 0, trials: int = DEFAULT_TRIALS,
          pool: Sequence[Any] | None = None) -> Verdict:
    """Check every identity of ``axioms`` on ``structure``.

    ``mode`` is ``"exhaustive"`` (full cross product of ``pool`` with the index
    pairs), ``"random"`` (``trials`` seeded random tuples, each tried with every
    identity and index pair) or ``"auto"`` (exhaustive when the pool has at most
    500 triples). The first failing instance, in the order identities, index
    pairs, inputs, becomes the witness.
    """
    axset = get_axiom_set(axioms)
    _require(structure, axset)
    omega = structure.omega
    pool = tuple(structure.carrier.pool if pool is None else pool)
    if mode == "auto":
        mode = "exhaustive" if pool and len(pool) ** 3 <= EXHAUSTIVE_LIMIT else "random"
    if mode == "exhaustive":
        if not pool:
            raise MatchboxError(f"{structure.name} has no finite pool for an exhaustive check")
        tuples_by_arity = {n: list(product(pool, repeat=n)) for n in {i.arity for i in axset.identities}}
        n_trials = len(pool) ** 3
        used_seed = None
    elif mode == "random":
        rng = random.Random(seed)
        sample = structure.carrier.sample
        drawn = [tuple(sample(rng) for _ in range(3)) for _ in range(trials)]
        tuples_by_arity = {n: [t[:n] for t in drawn] for n in (1, 2, 3)}
        n_trials = trials
        used_seed = seed
    else:
        raise MatchboxError(f"unknown check mode {mode!r}")

    jobs = [(ident, _index_tuples(ident, omega), tuples_by_arity[ident.arity]) for ident in axset.identities]
    threads = _threads()
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(lambda j: _run_job(structure, *j), jobs))
    else:
        results = []
        for job in jobs:
            results.append(_run_job(structure, *job))
            if results[-1][1] is not None:
                break
    instances = 0
    witness = None
    for count, wit in results:
        instances += count
        if wit is not None:
            witness = wit
            break
    return Verdict(passed=witness is None, mode=mode, trials=n_trials, instances=instances,
                   axiom_set=axset.name, structure=structure.name, seed=used_seed, witness=witness,
                   provenance=tuple(structure.provenance))


def find_counterexample(structure, axioms: str | AxiomSet, pool: Sequence[Any] | None = None) -> Verdict:
    """Exhaustive search over ``pool``; a failing verdict carries the first witness."""
    return check(structure, axioms, mode="exhaustive", pool=pool)


def replay(structure, axioms: str | AxiomSet, witness: Witness) -> Any:
    """Re-evaluate the residual a witness records."""
    axset = get_axiom_set(axioms)
    identity = next(i for i in axset.identities if i.id == witness.identity)
    return evaluate(structure, identity, witness.args, witness.alpha, witness.beta)


def report(verdict: Verdict, structure) -> dict:
    return verdict.to_json(structure.carrier.encode)


def dumps_report(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
