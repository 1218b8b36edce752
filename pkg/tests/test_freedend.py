from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchbox.axioms import check
from matchbox.errors import AlphabetMismatch
from matchbox.exactalg import LinComb
from matchbox.freedend import FreeDendriform, dend_bullet, dend_prec, dend_succ, tree
from matchbox.trees import LEAF, parse_pbt

from conftest import lincombs, pbt_pool

POOL2 = pbt_pool(2)
POOL3 = pbt_pool(3)
elements = lincombs(POOL2, max_terms=2)


# --- independent oracle: the recursion written out on nested tuples -------------

def _tup(t):
    return None if t.is_leaf else (t.dec, t.ltype, _tup(t.left), t.rtype, _tup(t.right))


def _o_prec(T, U, w):
    if T is None:
        return Counter()
    if U is None:
        return Counter({T: 1})
    a, al, Tl, be, Tr = T
    out = Counter()
    for X, c in _o_prec(Tr, U, w).items():
        out[(a, al, Tl, be, X)] += c
    for X, c in _o_succ(Tr, U, be).items():
        out[(a, al, Tl, w, X)] += c
    return out


def _o_succ(T, U, w):
    if T is None:
        return Counter({U: 1})
    if U is None:
        return Counter()
    b, ga, Ul, de, Ur = U
    out = Counter()
    for X, c in _o_prec(T, Ul, ga).items():
        out[(b, w, X, de, Ur)] += c
    for X, c in _o_succ(T, Ul, w).items():
        out[(b, ga, X, de, Ur)] += c
    return out


def _as_counter(x: LinComb):
    return Counter({_tup(k): c for k, c in x.items()})


def _oracle_clean(c):
    return Counter({k: v for k, v in c.items() if v})


@pytest.mark.parametrize("w", ["alpha", "beta"])
def test_products_match_oracle(w):
    for S in POOL3:
        for T in POOL2:
            assert _as_counter(dend_prec(tree(S), tree(T), w)) == _oracle_clean(_o_prec(_tup(S), _tup(T), w))
            assert _as_counter(dend_succ(tree(S), tree(T), w)) == _oracle_clean(_o_succ(_tup(S), _tup(T), w))


# --- worked examples -------------------------------------------------------------

def test_prec_on_single_vertices():
    assert dend_prec(tree("a"), tree("b"), "alpha") == tree(parse_pbt("B(a,e,|,alpha,B(b,e,|,e,|))"))


def test_succ_on_single_vertices():
    assert dend_succ(tree("a"), tree("b"), "beta") == tree(parse_pbt("B(b,beta,B(a,e,|,e,|),e,|)"))


def test_bullet_is_sum_of_both_examples():
    expected = LinComb({parse_pbt("B(b,alpha,B(a,e,|,e,|),e,|)"): 1, parse_pbt("B(a,e,|,alpha,B(b,e,|,e,|))"): 1})
    assert dend_bullet(tree("a"), tree("b"), "alpha") == expected


def test_base_case_of_first_axiom_frozen():
    a, b, c = tree("a"), tree("b"), tree("c")
    lhs = dend_prec(dend_prec(a, b, "alpha"), c, "beta")
    rhs = dend_prec(a, dend_prec(b, c, "beta"), "alpha") + dend_prec(a, dend_succ(b, c, "alpha"), "beta")
    assert lhs == rhs
    assert lhs == LinComb({
        parse_pbt("B(a,e,|,alpha,B(b,e,|,beta,B(c,e,|,e,|)))"): 1,
        parse_pbt("B(a,e,|,beta,B(c,alpha,B(b,e,|,e,|),e,|))"): 1,
    })


def test_middle_axiom_on_explicit_trees_frozen():
    a, b, c = tree("a"), tree("b"), tree("c")
    lhs = dend_prec(dend_succ(a, b, "alpha"), c, "beta")
    assert lhs == dend_succ(a, dend_prec(b, c, "beta"), "alpha")
    assert lhs == tree(parse_pbt("B(b,alpha,B(a,e,|,e,|),beta,B(c,e,|,e,|))"))


# --- algebraic properties ---------------------------------------------------------

def test_zero_products():
    z = LinComb.zero()
    assert dend_prec(z, tree("a"), "alpha") == z
    assert dend_succ(tree("a"), z, "alpha") == z


def test_leaf_is_not_an_element():
    with pytest.raises(AlphabetMismatch):
        tree(LEAF)


def test_empty_index_rejected():
    with pytest.raises(AlphabetMismatch):
        dend_prec(tree("a"), tree("b"), "e")


def test_alphabet_checks():
    alg = FreeDendriform(["a"], ["alpha", "beta"])
    with pytest.raises(AlphabetMismatch):
        alg.prec(tree("a"), tree("b"), "alpha")
    with pytest.raises(AlphabetMismatch):
        alg.succ(tree("a"), tree("a"), "gamma")
    assert alg.bullet(tree("a"), tree("a"), "alpha") == dend_bullet(tree("a"), tree("a"), "alpha")


@given(elements, elements, elements, st.sampled_from(["alpha", "beta"]))
def test_products_are_bilinear(x, y, z, w):
    for op in (dend_prec, dend_succ):
        assert op(x + y, z, w) == op(x, z, w) + op(y, z, w)
        assert op(x, y + z, w) == op(x, y, w) + op(x, z, w)
        assert op(3 * x, y, w) == 3 * op(x, y, w)


@given(st.sampled_from(POOL3), st.sampled_from(POOL3), st.sampled_from(["alpha", "beta"]))
def test_grading(S, T, w):
    for op in (dend_prec, dend_succ):
        assert all(k.size == S.size + T.size for k, _ in op(tree(S), tree(T), w).items())


@settings(max_examples=60, deadline=None)
@given(elements, elements, elements, st.sampled_from(["alpha", "beta"]), st.sampled_from(["alpha", "beta"]))
def test_dendriform_identities_hold(x, y, z, a, b):
    p, q = dend_prec, dend_succ
    assert p(p(x, y, a), z, b) == p(x, p(y, z, b), a) + p(x, q(y, z, a), b)
    assert p(q(x, y, a), z, b) == q(x, p(y, z, b), a)
    assert q(p(x, y, b), z, a) + q(q(x, y, a), z, b) == q(x, q(y, z, b), a)


def test_each_bullet_associative_on_small_trees():
    for w in ("alpha", "beta"):
        for S in POOL2:
            for T in POOL2:
                for U in POOL2:
                    x, y, z = tree(S), tree(T), tree(U)
                    assert dend_bullet(dend_bullet(x, y, w), z, w) == dend_bullet(x, dend_bullet(y, z, w), w)


def test_exhaustive_axioms_and_bullet_behaviour(free_dd):
    assert check(free_dd, "matching_dendriform", mode="exhaustive").passed
    assert check(free_dd, "compatible_associative", mode="exhaustive").passed
    verdict = check(free_dd, "matching_associative", mode="exhaustive")
    assert not verdict.passed
    assert (verdict.witness.alpha, verdict.witness.beta) == ("alpha", "beta")
