from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchbox.axioms import check
from matchbox.errors import AlphabetMismatch
from matchbox.exactalg import LinComb
from matchbox.prelie import RootedPreLie, prelie_star, rtree
from matchbox.trees import parse_rooted

from conftest import lincombs, rooted_pool

POOL2 = rooted_pool(2)
POOL3 = rooted_pool(3)
elements = lincombs(POOL2, max_terms=2)


# --- independent oracle on nested tuples (dec, sorted children) ---------------------

def _tup(t):
    return (t.dec, tuple(sorted((et, _tup(c)) for et, c in t.children)))


def _graft_everywhere(T, U, t):
    dec, kids = T
    yield (dec, tuple(sorted(kids + ((t, U),))))
    for i, (et, child) in enumerate(kids):
        for g in _graft_everywhere(child, U, t):
            rest = kids[:i] + kids[i + 1:]
            yield (dec, tuple(sorted(rest + ((et, g),))))


def test_star_matches_oracle():
    for T in POOL3:
        for U in POOL2:
            for t in ("alpha", "beta"):
                got = Counter({_tup(k): c for k, c in prelie_star(rtree(T), rtree(U), t).items()})
                assert got == Counter(_graft_everywhere(_tup(T), _tup(U), t))


def test_ladder_examples():
    ladder = rtree(parse_rooted("R(a;[red:R(b;[])])"))
    c = rtree("c")
    assert prelie_star(ladder, c, "red") == LinComb({
        parse_rooted("R(a;[red:R(b;[]),red:R(c;[])])"): 1,
        parse_rooted("R(a;[red:R(b;[red:R(c;[])])])"): 1,
    })
    assert prelie_star(ladder, c, "green") == LinComb({
        parse_rooted("R(a;[red:R(b;[]),green:R(c;[])])"): 1,
        parse_rooted("R(a;[red:R(b;[green:R(c;[])])])"): 1,
    })


def test_symmetric_graftings_merge_with_multiplicity():
    cherry = rtree(parse_rooted("R(a;[r:R(b;[]),r:R(b;[])])"))
    out = prelie_star(cherry, rtree("c"), "r")
    assert out.coeff(parse_rooted("R(a;[r:R(b;[]),r:R(b;[r:R(c;[])])])")) == 2
    assert sum(c for _, c in out.items()) == 3


@given(st.sampled_from(POOL3), st.sampled_from(POOL3), st.sampled_from(["alpha", "beta"]))
def test_term_count_equals_vertex_count(T, U, t):
    out = prelie_star(rtree(T), rtree(U), t)
    assert sum(c for _, c in out.items()) == T.size
    assert all(k.size == T.size + U.size for k, _ in out.items())


def test_alphabet_checks():
    alg = RootedPreLie(["a"], ["alpha", "beta"])
    with pytest.raises(AlphabetMismatch):
        alg.star(rtree("a"), rtree("a"), "gamma")
    with pytest.raises(AlphabetMismatch):
        alg.star(rtree("b"), rtree("a"), "alpha")


@settings(max_examples=60, deadline=None)
@given(elements, elements, elements, st.sampled_from(["alpha", "beta"]), st.sampled_from(["alpha", "beta"]))
def test_grafting_is_right_symmetric(x, y, z, a, b):
    # the grafting product grafts its right argument, so its associator is
    # symmetric in the last two (argument, index) pairs
    s = prelie_star
    assert s(s(x, y, a), z, b) - s(x, s(y, z, b), a) == s(s(x, z, b), y, a) - s(x, s(z, y, a), b)


@settings(max_examples=60, deadline=None)
@given(elements, elements, elements, st.sampled_from(["alpha", "beta"]), st.sampled_from(["alpha", "beta"]))
def test_opposite_product_is_left_symmetric(x, y, z, a, b):
    def s(u, v, w):
        return prelie_star(v, u, w)
    assert s(x, s(y, z, b), a) - s(s(x, y, a), z, b) == s(y, s(x, z, a), b) - s(s(y, x, b), z, a)


def test_rooted_structure_checks(rooted):
    assert check(rooted, "matching_prelie", mode="exhaustive").passed
    assert check(rooted, "matching_prelie", mode="random", seed=3, trials=100).passed
