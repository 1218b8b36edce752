"""Ready-made structures and families, addressable by a short text spec.

A spec is ``name`` or ``name:key=value;key=value``, for example
``free-dd:D=a;O=alpha,beta;pool=2``. Unknown names or keys raise
:class:`ConfigError`.
"""

from __future__ import annotations

import random
from typing import Any, Callable, Sequence

from .carriers import Carrier, Poly, free_module_carrier, random_rational
from .errors import MatchboxError
from .exactalg import LinComb
from .freedend import FreeDendriform, dend_bullet, dend_prec, dend_succ
from .operators import (aybe_search, make_kernel_family, make_paybe_family, parse_support, running_sum_base,
                        scaled_family)
from .prelie import RootedPreLie, prelie_star
from .structures import OpStructure, RBFamily
from .trees import check_alphabets

DEFAULT_DECORATIONS = ("a",)
DEFAULT_TYPES = ("alpha", "beta")


class ConfigError(MatchboxError, ValueError):
    pass


def _graded_sampler(by_size: Sequence[Sequence[Any]], max_terms: int, coeff_bound: int = 3) -> Callable:
    """Pick a size uniformly, then a tree of that size, for each of up to ``max_terms`` terms.

    Uniform over sizes keeps small trees common; uniform over trees would almost
    always pick the largest size.
    """
    sizes = [group for group in by_size if group]

    def sample(rng: random.Random) -> LinComb:
        k = rng.randint(1, max_terms)
        terms: dict = {}
        for _ in range(k):
            key = rng.choice(rng.choice(sizes))
            terms[key] = random_rational(rng, coeff_bound, nonzero=True)
        return LinComb(terms.items())

    return sample


def _tree_carrier(name: str, by_size: list[list[Any]], pool_vertices: int, max_terms: int) -> Carrier:
    pool_keys = [t for group in by_size[:pool_vertices] for t in group]
    base = free_module_carrier(name, pool_keys)
    return Carrier(name=name, zero=base.zero, is_zero=base.is_zero,
                   sample=_graded_sampler(by_size, max_terms), encode=base.encode, pool=base.pool)


def free_dendriform_structure(decorations: Sequence[str] = DEFAULT_DECORATIONS,
                              types: Sequence[str] = DEFAULT_TYPES, pool_vertices: int = 2,
                              sample_vertices: int = 4, max_terms: int = 2) -> OpStructure:
    """``DD_{D, Omega}`` with ``prec``, ``succ`` and ``bullet = succ + prec``.

    The exhaustive pool is every tree with at most ``pool_vertices`` vertices;
    random samples use trees with at most ``sample_vertices`` vertices.
    """
    D, O = check_alphabets(decorations, types)
    alg = FreeDendriform(D, O)
    by_size = [alg.basis(n)[len(alg.basis(n - 1)):] if n > 1 else alg.basis(1)
               for n in range(1, max(pool_vertices, sample_vertices) + 1)]
    carrier = _tree_carrier(f"DD(D={','.join(D)};O={','.join(O)})", by_size, pool_vertices, max_terms)
    return OpStructure(name="free-dd", carrier=carrier, omega=O,
                       ops={"prec": dend_prec, "succ": dend_succ, "bullet": dend_bullet},
                       axioms="matching_dendriform",
                       provenance=(f"free matching dendriform algebra on typed planar binary trees, D={list(D)}, "
                                   f"Omega={list(O)}",))


def rooted_prelie_structure(decorations: Sequence[str] = DEFAULT_DECORATIONS,
                            types: Sequence[str] = DEFAULT_TYPES, pool_vertices: int = 2,
                            sample_vertices: int = 3, max_terms: int = 2) -> OpStructure:
    """Typed rooted trees with ``x star_t y`` = sum of graftings of ``x`` onto the vertices of ``y``.

    This is the opposite of :func:`prelie_star` (which grafts its right argument
    onto its left one); the opposite order is the one satisfying the left-handed
    identity registered as ``matching_prelie``.
    """
    D, O = check_alphabets(decorations, types)
    alg = RootedPreLie(D, O)
    by_size = [alg.basis(n)[len(alg.basis(n - 1)):] if n > 1 else alg.basis(1)
               for n in range(1, max(pool_vertices, sample_vertices) + 1)]
    carrier = _tree_carrier(f"RT(D={','.join(D)};O={','.join(O)})", by_size, pool_vertices, max_terms)
    return OpStructure(name="rooted-prelie", carrier=carrier, omega=O, ops={"star": lambda x, y, t: prelie_star(y, x, t)},
                       axioms="matching_prelie",
                       provenance=(f"grafting pre-Lie algebra on typed rooted trees (x grafted onto y), D={list(D)}, Omega={list(O)}",))


def default_kernel_family(max_degree: int = 4) -> RBFamily:
    """Kernels ``alpha: 1`` and ``beta: t``."""
    return make_kernel_family({"alpha": Poly([1]), "beta": Poly([0, 1])}, max_degree)


def default_running_sum(n: int = 6, scalars: dict | None = None) -> RBFamily:
    """Running sum on ``Q^n`` scaled by ``alpha: 1/2``, ``beta: -1/3``."""
    return scaled_family(running_sum_base(n), scalars or {"alpha": "1/2", "beta": "-1/3"})


UPPER_SUPPORT = "12:12,11:12,12:22,11:11"


def default_paybe_family(weight: Any = 0, support: str = UPPER_SUPPORT,
                         grid: Sequence[Any] = (-1, 0, 1)) -> RBFamily:
    """Two-index family from the first nonzero solution pair found by the search."""
    pairs = aybe_search(2, parse_support(support), grid, weight=weight, family=True)
    for r, s in pairs:
        if not r.is_zero() and not s.is_zero():
            return make_paybe_family({"alpha": r, "beta": s}, weight)
    raise MatchboxError(f"no nonzero solution pair on support {support!r} at weight {weight}")


def _split_list(value: str) -> tuple[str, ...]:
    return tuple(v.strip() for v in value.split(",") if v.strip())


def _int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, not {value!r}") from None


def _build_free_dd(p):
    return free_dendriform_structure(p.pop("D", DEFAULT_DECORATIONS), p.pop("O", DEFAULT_TYPES),
                                     p.pop("pool", 2), p.pop("sample", 4), p.pop("terms", 2))


def _build_rooted(p):
    return rooted_prelie_structure(p.pop("D", DEFAULT_DECORATIONS), p.pop("O", DEFAULT_TYPES),
                                   p.pop("pool", 2), p.pop("sample", 3), p.pop("terms", 2))


def _build_kernel(p):
    return default_kernel_family(p.pop("degree", 4))


def _build_running(p):
    return default_running_sum(p.pop("n", 6))


def _build_paybe(p):
    return default_paybe_family(p.pop("weight", "0"), p.pop("support", UPPER_SUPPORT))


BUILDERS = {
    "free-dd": _build_free_dd,
    "rooted-prelie": _build_rooted,
    "kernel-family": _build_kernel,
    "running-sum": _build_running,
    "paybe-family": _build_paybe,
}

_LIST_KEYS = {"D", "O"}
_INT_KEYS = {"pool", "sample", "terms", "degree", "n"}
_TEXT_KEYS = {"weight", "support"}


def parse_spec(spec: str) -> tuple[str, dict]:
    name, _, rest = spec.partition(":")
    name = name.strip()
    if name not in BUILDERS:
        raise ConfigError(f"unknown structure {name!r}; known: {sorted(BUILDERS)}")
    params: dict = {}
    for item in filter(None, (s.strip() for s in rest.split(";"))):
        key, eq, value = item.partition("=")
        key = key.strip()
        if not eq:
            raise ConfigError(f"malformed parameter {item!r}; expected key=value")
        if key in _LIST_KEYS:
            params[key] = _split_list(value)
        elif key in _INT_KEYS:
            params[key] = _int(value, key)
        elif key in _TEXT_KEYS:
            params[key] = value.strip()
        else:
            raise ConfigError(f"unknown parameter {key!r}")
    return name, params


def build(spec: str) -> OpStructure | RBFamily:
    """Build a structure from ``name[:key=value;...]``."""
    name, params = parse_spec(spec)
    obj = BUILDERS[name](params)
    if params:
        raise ConfigError(f"parameters {sorted(params)} do not apply to {name}")
    return obj


__all__ = ["ConfigError", "build", "parse_spec", "free_dendriform_structure", "rooted_prelie_structure",
           "default_kernel_family", "default_running_sum", "default_paybe_family"]
