"""Free matching dendriform algebra on typed planar binary trees.

Elements are :class:`~matchbox.exactalg.LinComb` values over trees with at
least one internal vertex. The two products are defined on basis trees by
recursion on the total size and extended bilinearly. For ``T = Tl v_{a,s,t} Tr``
and ``U = Ul v_{b,g,d} Ur``::

    T <_w U = Tl v_{a,s,t} (Tr <_w U) + Tl v_{a,s,w} (Tr >_t U)
    T >_w U = (T <_g Ul) v_{b,w,d} Ur + (T >_w Ul) v_{b,g,d} Ur

Inside the recursion a leaf may appear as an argument, always paired with the
empty index ``e`` or an ordinary index; the unit rules below cover both::

    | >_w U = U,   U <_w | = U,   | <_w U = 0,   U >_w | = 0

A product of two leaves never arises from nonzero inputs and is rejected.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .errors import AlphabetMismatch
from .exactalg import LinComb, bilinear_extend
from .trees import EMPTY, Node, PlanarBinaryTree, check_alphabets, enumerate_pbt, single, validate_pbt

DDElement = LinComb


def _graft_right(left: PlanarBinaryTree, dec: str, t1: str, t2: str, rights: LinComb) -> LinComb:
    return LinComb._trusted({Node(dec, t1, left, t2, r): c for r, c in rights.items()})


def _graft_left(lefts: LinComb, dec: str, t1: str, t2: str, right: PlanarBinaryTree) -> LinComb:
    return LinComb._trusted({Node(dec, t1, l, t2, right): c for l, c in lefts.items()})


@lru_cache(maxsize=1 << 18)
def prec_basis(T: PlanarBinaryTree, U: PlanarBinaryTree, w: str) -> LinComb:
    """``T <_w U`` on basis trees (either may be the leaf, not both)."""
    if T.is_leaf:
        assert not U.is_leaf, "| <_w | is undefined"
        return LinComb.zero()
    if U.is_leaf:
        return LinComb._trusted({T: 1})
    left, a, s, t, right = T.left, T.dec, T.ltype, T.rtype, T.right
    first = _graft_right(left, a, s, t, prec_basis(right, U, w)) if not right.is_leaf else LinComb.zero()
    second = _graft_right(left, a, s, w, succ_basis(right, U, t))
    return first + second


@lru_cache(maxsize=1 << 18)
def succ_basis(T: PlanarBinaryTree, U: PlanarBinaryTree, w: str) -> LinComb:
    """``T >_w U`` on basis trees (either may be the leaf, not both)."""
    if T.is_leaf:
        assert not U.is_leaf, "| >_w | is undefined"
        return LinComb._trusted({U: 1})
    if U.is_leaf:
        return LinComb.zero()
    left, b, g, d, right = U.left, U.dec, U.ltype, U.rtype, U.right
    first = _graft_left(prec_basis(T, left, g), b, w, d, right)
    second = _graft_left(succ_basis(T, left, w), b, g, d, right) if not left.is_leaf else LinComb.zero()
    return first + second


_prec = bilinear_extend(prec_basis)
_succ = bilinear_extend(succ_basis)


def _check_index(w: str) -> None:
    if w == EMPTY:
        raise AlphabetMismatch("the empty type e is not a product index")


def _check_element(x: LinComb) -> None:
    for key, _ in x.items():
        if not isinstance(key, Node):
            raise AlphabetMismatch(f"{key!r} is not a planar binary tree with a vertex")


def dend_prec(S: DDElement, T: DDElement, w: str) -> DDElement:
    _check_index(w)
    return _prec(S, T, w)


def dend_succ(S: DDElement, T: DDElement, w: str) -> DDElement:
    _check_index(w)
    return _succ(S, T, w)


def dend_bullet(S: DDElement, T: DDElement, w: str) -> DDElement:
    """``S >_w T + S <_w T``, the associative product each index splits."""
    _check_index(w)
    return _succ(S, T, w) + _prec(S, T, w)


def tree(t: PlanarBinaryTree | str, coeff=1) -> DDElement:
    """Basis element for a tree (or a single vertex given by its decoration)."""
    if isinstance(t, str):
        t = single(t)
    if t.is_leaf:
        raise AlphabetMismatch("the leaf is not an element of the free dendriform algebra")
    return LinComb.basis(t, coeff)


class FreeDendriform:
    """The algebra ``DD_{D, Omega}`` with alphabet checking on every product."""

    def __init__(self, decorations: Sequence[str], types: Sequence[str]):
        self.decorations, self.types = check_alphabets(decorations, types)

    def _validate(self, *xs: DDElement, w: str) -> None:
        if w not in self.types:
            raise AlphabetMismatch(f"index {w!r} not in {self.types}")
        for x in xs:
            _check_element(x)
            for key, _ in x.items():
                validate_pbt(key, self.decorations, self.types)

    def prec(self, S: DDElement, T: DDElement, w: str) -> DDElement:
        self._validate(S, T, w=w)
        return _prec(S, T, w)

    def succ(self, S: DDElement, T: DDElement, w: str) -> DDElement:
        self._validate(S, T, w=w)
        return _succ(S, T, w)

    def bullet(self, S: DDElement, T: DDElement, w: str) -> DDElement:
        self._validate(S, T, w=w)
        return _succ(S, T, w) + _prec(S, T, w)

    def basis(self, max_vertices: int) -> list[PlanarBinaryTree]:
        """Trees with ``1..max_vertices`` internal vertices, by size then text."""
        out: list[PlanarBinaryTree] = []
        for n in range(1, max_vertices + 1):
            out.extend(enumerate_pbt(n, self.decorations, self.types))
        return out

    def __repr__(self) -> str:
        return f"FreeDendriform(D={list(self.decorations)}, Omega={list(self.types)})"


def clear_caches() -> None:
    prec_basis.cache_clear()
    succ_basis.cache_clear()
