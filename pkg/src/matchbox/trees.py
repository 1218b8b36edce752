"""Typed decorated trees.

Two families of trees live here:

* planar binary trees whose internal vertices carry a decoration from ``D`` and
  whose edges carry a type; internal edges are typed by ``Omega`` and leaf edges
  by the empty type ``e`` (basis of the free matching dendriform algebra);
* non-planar rooted trees with decorated vertices and ``Omega``-typed edges,
  stored in canonical form so that one value represents one isomorphism class.

Text grammar (also the ``str`` of every tree)::

    |                      the leaf
    B(d,t1,L,t2,R)         planar node with left/right subtrees and edge types
    R(d;[t1:C1,t2:C2])     rooted tree, children in canonical order
"""

from __future__ import annotations

import json
import math
from functools import lru_cache
from itertools import product
from typing import Any, Iterable, Sequence

from .errors import AlphabetMismatch, EdgeTypeMismatch, InvalidVertex, LeafDecomposition, MatchboxError

EMPTY = "e"

_RESERVED = set("(),;[]:| \t\n")


def check_symbol(sym: str) -> str:
    if not isinstance(sym, str) or not sym or any(ch in _RESERVED for ch in sym):
        raise AlphabetMismatch(f"invalid alphabet symbol {sym!r}")
    return sym


def check_alphabets(decorations: Sequence[str], types: Sequence[str]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Validate and normalize ``(D, Omega)``: nonempty, duplicate-free, ``e`` not in Omega."""
    D = tuple(check_symbol(d) for d in decorations)
    O = tuple(check_symbol(t) for t in types)
    if not D or not O:
        raise AlphabetMismatch("decoration and type alphabets must be nonempty")
    if len(set(D)) != len(D) or len(set(O)) != len(O):
        raise AlphabetMismatch("alphabets must not repeat symbols")
    if EMPTY in O:
        raise AlphabetMismatch(f"the empty type {EMPTY!r} cannot be a member of Omega")
    return D, O


# ---------------------------------------------------------------------------
# planar binary trees


class PlanarBinaryTree:
    __slots__ = ()

    is_leaf = False

    def to_json(self) -> Any:
        raise NotImplementedError


class Leaf(PlanarBinaryTree):
    __slots__ = ()
    is_leaf = True
    size = 0
    depth = 0

    _instance: Leaf | None = None

    def __new__(cls) -> Leaf:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __str__(self) -> str:
        return "|"

    __repr__ = __str__

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("|")

    def __reduce__(self):
        return (Leaf, ())

    def to_json(self) -> Any:
        return "|"


LEAF = Leaf()


class Node(PlanarBinaryTree):
    """Internal vertex ``B(dec, ltype, left, rtype, right)``.

    Use :func:`graft_pbt` to build nodes with the edge-type invariant checked.
    """

    __slots__ = ("dec", "ltype", "left", "rtype", "right", "size", "depth", "_str", "_hash")

    def __init__(self, dec: str, ltype: str, left: PlanarBinaryTree, rtype: str, right: PlanarBinaryTree):
        self.dec = dec
        self.ltype = ltype
        self.left = left
        self.rtype = rtype
        self.right = right
        self.size = left.size + right.size + 1
        self.depth = 1 + max(left.depth, right.depth)
        self._str = f"B({dec},{ltype},{left},{rtype},{right})"
        self._hash = hash(self._str)

    def __setattr__(self, name, value):
        if hasattr(self, "_hash"):
            raise AttributeError("trees are immutable")
        object.__setattr__(self, name, value)

    def __str__(self) -> str:
        return self._str

    __repr__ = __str__

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Node):
            return NotImplemented if not isinstance(other, PlanarBinaryTree) else False
        return self._hash == other._hash and self._str == other._str

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: PlanarBinaryTree) -> bool:
        return str(self) < str(other)

    def __reduce__(self):
        return (Node, (self.dec, self.ltype, self.left, self.rtype, self.right))

    def to_json(self) -> Any:
        return {"d": self.dec, "t1": self.ltype, "l": self.left.to_json(), "t2": self.rtype, "r": self.right.to_json()}


def graft_pbt(left: PlanarBinaryTree, right: PlanarBinaryTree, dec: str, t1: str, t2: str) -> Node:
    """Join ``left`` and ``right`` under a new root ``dec`` with edge types ``t1``, ``t2``."""
    if (t1 == EMPTY) != left.is_leaf:
        raise EdgeTypeMismatch(f"left edge type {t1!r} does not match left subtree {left}")
    if (t2 == EMPTY) != right.is_leaf:
        raise EdgeTypeMismatch(f"right edge type {t2!r} does not match right subtree {right}")
    return Node(dec, t1, left, t2, right)


def single(dec: str) -> Node:
    """The one-vertex tree ``| v_{dec,e,e} |``."""
    return Node(dec, EMPTY, LEAF, EMPTY, LEAF)


def decompose_pbt(tree: PlanarBinaryTree) -> tuple[PlanarBinaryTree, str, str, str, PlanarBinaryTree]:
    """Return ``(left, dec, t1, t2, right)`` with ``graft_pbt(left, right, dec, t1, t2) == tree``."""
    if tree.is_leaf:
        raise LeafDecomposition("the leaf | has no root vertex")
    return tree.left, tree.dec, tree.ltype, tree.rtype, tree.right


def depth(tree: PlanarBinaryTree) -> int:
    return tree.depth


def validate_pbt(tree: PlanarBinaryTree, decorations: Iterable[str] | None = None,
                 types: Iterable[str] | None = None) -> None:
    """Raise if the e-iff-leaf invariant or the alphabets are violated anywhere in ``tree``."""
    D = None if decorations is None else set(decorations)
    O = None if types is None else set(types)
    stack = [tree]
    while stack:
        t = stack.pop()
        if t.is_leaf:
            continue
        if (t.ltype == EMPTY) != t.left.is_leaf or (t.rtype == EMPTY) != t.right.is_leaf:
            raise EdgeTypeMismatch(f"edge types violate the leaf invariant at {t}")
        if D is not None and t.dec not in D:
            raise AlphabetMismatch(f"decoration {t.dec!r} not in {sorted(D)}")
        if O is not None:
            for et in (t.ltype, t.rtype):
                if et != EMPTY and et not in O:
                    raise AlphabetMismatch(f"edge type {et!r} not in {sorted(O)}")
        stack.extend((t.left, t.right))


def enumerate_pbt(n: int, decorations: Sequence[str], types: Sequence[str]) -> list[PlanarBinaryTree]:
    """All trees with ``n`` internal vertices, sorted by their text form."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    D, O = check_alphabets(decorations, types)
    return sorted(_pbt_unsorted(n, D, O), key=str)


@lru_cache(maxsize=None)
def _pbt_unsorted(n: int, D: tuple[str, ...], O: tuple[str, ...]) -> tuple[PlanarBinaryTree, ...]:
    if n == 0:
        return (LEAF,)
    out = []
    for k in range(n):
        lefts = _pbt_unsorted(k, D, O)
        rights = _pbt_unsorted(n - 1 - k, D, O)
        ltypes = (EMPTY,) if k == 0 else O
        rtypes = (EMPTY,) if n - 1 - k == 0 else O
        for left, right, d, t1, t2 in product(lefts, rights, D, ltypes, rtypes):
            out.append(Node(d, t1, left, t2, right))
    return tuple(out)


def count_pbt(n: int, n_decorations: int, n_types: int) -> int:
    """Closed form ``Catalan(n) * |D|**n * |Omega|**(n-1)``; ``1`` for the leaf at ``n = 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    return math.comb(2 * n, n) // (n + 1) * n_decorations**n * n_types ** (n - 1)


# ---------------------------------------------------------------------------
# rooted trees


class RootedTree:
    """Canonical non-planar rooted tree ``R(dec;[t:child,...])``.

    Children are sorted on construction by ``(edge type, child text)``, so two
    trees differing by a permutation of siblings are equal values.
    """

    __slots__ = ("dec", "children", "size", "_str", "_hash")

    def __init__(self, dec: str, children: Iterable[tuple[str, RootedTree]] = ()):
        kids = tuple(sorted(((t, c) for t, c in children), key=lambda tc: (tc[0], tc[1]._str)))
        object.__setattr__(self, "dec", dec)
        object.__setattr__(self, "children", kids)
        object.__setattr__(self, "size", 1 + sum(c.size for _, c in kids))
        s = f"R({dec};[" + ",".join(f"{t}:{c._str}" for t, c in kids) + "])"
        object.__setattr__(self, "_str", s)
        object.__setattr__(self, "_hash", hash(s))

    def __setattr__(self, name, value):
        raise AttributeError("trees are immutable")

    def __str__(self) -> str:
        return self._str

    __repr__ = __str__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self._hash == other._hash and self._str == other._str

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: RootedTree) -> bool:
        return self._str < other._str

    def __reduce__(self):
        return (RootedTree, (self.dec, self.children))

    def vertices(self) -> list[RootedTree]:
        """Subtrees rooted at each vertex, in preorder; list index = vertex handle."""
        out = [self]
        for _, child in self.children:
            out.extend(child.vertices())
        return out

    def to_json(self) -> Any:
        return {"d": self.dec, "children": [{"t": t, "tree": c.to_json()} for t, c in self.children]}


def canonical_rooted(raw: Any) -> RootedTree:
    """Canonical form of a tree given as a ``RootedTree`` or nested ``(dec, [(t, child), ...])``."""
    if isinstance(raw, RootedTree):
        return RootedTree(raw.dec, [(t, canonical_rooted(c)) for t, c in raw.children])
    if isinstance(raw, str):
        return RootedTree(raw)
    dec, kids = raw
    return RootedTree(dec, [(t, canonical_rooted(c)) for t, c in kids])


def rooted_single(dec: str) -> RootedTree:
    return RootedTree(dec)


def graft_rooted_at(tree: RootedTree, vertex: int, scion: RootedTree, etype: str) -> RootedTree:
    """Attach ``scion`` below the vertex with preorder index ``vertex`` via an ``etype`` edge."""
    if not isinstance(vertex, int) or not 0 <= vertex < tree.size:
        raise InvalidVertex(f"vertex {vertex!r} not in 0..{tree.size - 1}")
    return _graft(tree, vertex, scion, etype)


def _graft(tree: RootedTree, vertex: int, scion: RootedTree, etype: str) -> RootedTree:
    if vertex == 0:
        return RootedTree(tree.dec, tree.children + ((etype, scion),))
    offset = 1
    kids = list(tree.children)
    for i, (t, child) in enumerate(kids):
        if vertex < offset + child.size:
            kids[i] = (t, _graft(child, vertex - offset, scion, etype))
            return RootedTree(tree.dec, kids)
        offset += child.size
    raise InvalidVertex(vertex)  # unreachable once the range check passed


def enumerate_rooted(n: int, decorations: Sequence[str], types: Sequence[str]) -> list[RootedTree]:
    """All isomorphism classes of rooted trees with ``n >= 1`` vertices, sorted by text form."""
    if n < 1:
        return []
    D, O = check_alphabets(decorations, types)
    return sorted(_rooted(n, D, O), key=str)


@lru_cache(maxsize=None)
def _rooted(n: int, D: tuple[str, ...], O: tuple[str, ...]) -> tuple[RootedTree, ...]:
    out = []
    for forest in _forests(n - 1, D, O):
        for d in D:
            out.append(RootedTree(d, forest))
    return tuple(out)


def _forests(m: int, D, O) -> list[tuple[tuple[str, RootedTree], ...]]:
    # multisets of typed subtrees with total size m, one representative each
    branches = []
    for s in range(1, m + 1):
        for t in O:
            for tree in sorted(_rooted(s, D, O), key=str):
                branches.append((t, tree))
    result: list[tuple] = []

    def extend(start: int, remaining: int, acc: list):
        if remaining == 0:
            result.append(tuple(acc))
            return
        for i in range(start, len(branches)):
            t, tree = branches[i]
            if tree.size <= remaining:
                acc.append((t, tree))
                extend(i, remaining - tree.size, acc)
                acc.pop()

    extend(0, m, [])
    return result


# ---------------------------------------------------------------------------
# parsing


class TreeSyntaxError(MatchboxError, ValueError):
    pass


class _Parser:
    def __init__(self, text: str):
        self.text = "".join(text.split())
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str) -> None:
        if not self.text.startswith(token, self.pos):
            raise TreeSyntaxError(f"expected {token!r} at offset {self.pos} in {self.text!r}")
        self.pos += len(token)

    def symbol(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in _RESERVED:
            self.pos += 1
        if start == self.pos:
            raise TreeSyntaxError(f"expected a symbol at offset {start} in {self.text!r}")
        return self.text[start:self.pos]

    def pbt(self) -> PlanarBinaryTree:
        if self.peek() == "|":
            self.pos += 1
            return LEAF
        self.expect("B(")
        d = self.symbol()
        self.expect(",")
        t1 = self.symbol()
        self.expect(",")
        left = self.pbt()
        self.expect(",")
        t2 = self.symbol()
        self.expect(",")
        right = self.pbt()
        self.expect(")")
        return graft_pbt(left, right, d, t1, t2)

    def rooted(self) -> RootedTree:
        self.expect("R(")
        d = self.symbol()
        self.expect(";[")
        kids = []
        while self.peek() != "]":
            if kids:
                self.expect(",")
            t = self.symbol()
            self.expect(":")
            kids.append((t, self.rooted()))
        self.expect("])")
        return RootedTree(d, kids)

    def done(self) -> None:
        if self.pos != len(self.text):
            raise TreeSyntaxError(f"trailing input at offset {self.pos} in {self.text!r}")


def parse_pbt(text: str) -> PlanarBinaryTree:
    p = _Parser(text)
    tree = p.pbt()
    p.done()
    return tree


def parse_rooted(text: str) -> RootedTree:
    p = _Parser(text)
    tree = p.rooted()
    p.done()
    return tree


def pbt_from_json(data: Any) -> PlanarBinaryTree:
    if data == "|":
        return LEAF
    if isinstance(data, str):
        return parse_pbt(data)
    return graft_pbt(pbt_from_json(data["l"]), pbt_from_json(data["r"]), data["d"], data["t1"], data["t2"])


def rooted_from_json(data: Any) -> RootedTree:
    if isinstance(data, str):
        return parse_rooted(data)
    return RootedTree(data["d"], [(k["t"], rooted_from_json(k["tree"])) for k in data["children"]])


def dumps_tree(tree: PlanarBinaryTree | RootedTree) -> str:
    return json.dumps(tree.to_json(), sort_keys=True)
