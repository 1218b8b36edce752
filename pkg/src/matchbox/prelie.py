"""Matching pre-Lie algebra of typed decorated rooted trees.

``T *_t U`` is the sum over all vertices ``v`` of ``T`` of the tree obtained by
grafting ``U`` below ``v`` through a new edge of type ``t``. Graftings that land
in the same isomorphism class merge with multiplicity.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .errors import AlphabetMismatch
from .exactalg import LinComb, bilinear_extend
from .trees import RootedTree, check_alphabets, enumerate_rooted, graft_rooted_at, rooted_single

PreLieElement = LinComb


@lru_cache(maxsize=1 << 16)
def star_basis(T: RootedTree, U: RootedTree, t: str) -> LinComb:
    return LinComb((graft_rooted_at(T, v, U, t), 1) for v in range(T.size))


_star = bilinear_extend(star_basis)


def prelie_star(x: PreLieElement, y: PreLieElement, t: str) -> PreLieElement:
    return _star(x, y, t)


def rtree(t: RootedTree | str, coeff=1) -> PreLieElement:
    if isinstance(t, str):
        t = rooted_single(t)
    return LinComb.basis(t, coeff)


class RootedPreLie:
    """The algebra of ``D``-decorated ``Omega``-typed rooted trees with alphabet checks."""

    def __init__(self, decorations: Sequence[str], types: Sequence[str]):
        self.decorations, self.types = check_alphabets(decorations, types)

    def _validate(self, x: PreLieElement) -> None:
        for key, _ in x.items():
            if not isinstance(key, RootedTree):
                raise AlphabetMismatch(f"{key!r} is not a rooted tree")
            for v in key.vertices():
                if v.dec not in self.decorations:
                    raise AlphabetMismatch(f"decoration {v.dec!r} not in {self.decorations}")
                for et, _ in v.children:
                    if et not in self.types:
                        raise AlphabetMismatch(f"edge type {et!r} not in {self.types}")

    def star(self, x: PreLieElement, y: PreLieElement, t: str) -> PreLieElement:
        if t not in self.types:
            raise AlphabetMismatch(f"type {t!r} not in {self.types}")
        self._validate(x)
        self._validate(y)
        return _star(x, y, t)

    def basis(self, max_vertices: int) -> list[RootedTree]:
        out: list[RootedTree] = []
        for n in range(1, max_vertices + 1):
            out.extend(enumerate_rooted(n, self.decorations, self.types))
        return out

    def __repr__(self) -> str:
        return f"RootedPreLie(D={list(self.decorations)}, Omega={list(self.types)})"
