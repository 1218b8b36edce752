"""Acceptance criteria, one test each. Run with ``pytest tests/test_acceptance.py``;
the terminal summary lists a PASS/FAIL line per criterion."""

import random
import time
from fractions import Fraction
from math import comb

from matchbox.axioms import check, dumps_report, report
from matchbox.catalog import (default_kernel_family, default_paybe_family, default_running_sum,
                              free_dendriform_structure, rooted_prelie_structure)
from matchbox.cli import main
from matchbox.exactalg import LinComb
from matchbox.freedend import dend_prec, dend_succ, tree
from matchbox.operators import combine_family
from matchbox.prelie import prelie_star, rtree
from matchbox.transforms import (antisymmetrize, dendriform_to_prelie, rb_to_dendriform, rb_to_tridendriform,
                                 rblie_to_prelie, split_to_assoc, tridendriform_to_postlie)
from matchbox.trees import count_pbt, enumerate_pbt, parse_pbt, parse_rooted

from test_trees import _labelled_count


def _families():
    return {"kernel": default_kernel_family(), "running": default_running_sum(), "paybe": default_paybe_family()}


def test_criterion_01_free_dendriform_axioms(criterion):
    criterion(1, "free dendriform axioms: exhaustive <=2 vertices, 4 index pairs, 200 random up to 4 vertices, <60 s")
    start = time.perf_counter()
    dd = free_dendriform_structure(("a",), ("alpha", "beta"), pool_vertices=2, sample_vertices=4)
    exhaustive = check(dd, "matching_dendriform", mode="exhaustive")
    sampled = check(dd, "matching_dendriform", mode="random", seed=0, trials=200)
    elapsed = time.perf_counter() - start
    assert exhaustive.passed and exhaustive.instances == 5 ** 3 * 4 * 3
    assert sampled.passed
    assert elapsed < 60


def test_criterion_02_worked_products(criterion):
    criterion(2, "worked products: a<_alpha b, a>_beta b and both ladder graftings reproduced exactly")
    assert dend_prec(tree("a"), tree("b"), "alpha") == tree(parse_pbt("B(a,e,|,alpha,B(b,e,|,e,|))"))
    assert dend_succ(tree("a"), tree("b"), "beta") == tree(parse_pbt("B(b,beta,B(a,e,|,e,|),e,|)"))
    ladder = rtree(parse_rooted("R(a;[red:R(b;[])])"))
    for t in ("red", "green"):
        expected = LinComb({parse_rooted(f"R(a;[red:R(b;[]),{t}:R(c;[])])"): 1,
                            parse_rooted(f"R(a;[red:R(b;[{t}:R(c;[])])])"): 1})
        assert prelie_star(ladder, rtree("c"), t) == expected


def test_criterion_03_matching_prelie(criterion):
    criterion(3, "matching pre-Lie identity: exhaustive rooted trees <=2 vertices, |Omega|=2, plus 200 random")
    rt = rooted_prelie_structure(("a",), ("alpha", "beta"), pool_vertices=2)
    assert check(rt, "matching_prelie", mode="exhaustive").passed
    assert check(rt, "matching_prelie", mode="random", seed=0, trials=200).passed


def test_criterion_04_matching_rb(criterion):
    criterion(4, "matching RB identity: kernel family (200), running sums on Q^6 (200), AYBE matrix family (100)")
    fams = _families()
    assert fams["running"].weights == {"alpha": Fraction(1, 2), "beta": Fraction(-1, 3)}
    assert check(fams["kernel"], "matching_rb", mode="random", seed=0, trials=200).passed
    assert check(fams["running"], "matching_rb", mode="random", seed=0, trials=200).passed
    assert check(fams["paybe"], "matching_rb", mode="random", seed=0, trials=100).passed


def test_criterion_05_linear_combinations(criterion):
    criterion(5, "linear combinations: 3 random coefficient tables per family keep the RB identity")
    rng = random.Random(5)
    for fam in _families().values():
        for _ in range(3):
            table = {i: {w: Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3))) for w in fam.omega}
                     for i in ("i", "j")}
            combined = combine_family(fam, table)
            for i, row in table.items():
                assert combined.weight(i) == sum(a * fam.weight(w) for w, a in row.items())
            assert check(combined, "matching_rb", mode="random", seed=rng.randrange(10 ** 6), trials=50).passed


def test_criterion_06_transform_gauntlet(criterion):
    criterion(6, "transform outputs pass their declared axiom sets (200 random triples each)")
    for fam in _families().values():
        dend, tri = rb_to_dendriform(fam), rb_to_tridendriform(fam)
        pre = dendriform_to_prelie(dend)
        post = tridendriform_to_postlie(tri)
        outputs = [dend, tri, pre, post, split_to_assoc(dend), split_to_assoc(tri), antisymmetrize(pre),
                   antisymmetrize(split_to_assoc(dend)), antisymmetrize(post)]
        for s in outputs:
            verdict = check(s, s.axioms, mode="random", seed=0, trials=200)
            assert verdict.passed, (s.name, verdict.witness)


def test_criterion_07_negative_witnesses(criterion):
    criterion(7, "negative witnesses: DD bullet not matching associative, tree bracket not matching Lie, <60 s")
    start = time.perf_counter()
    dd = free_dendriform_structure(pool_vertices=2)
    assert not check(dd, "matching_associative", mode="exhaustive").passed
    assert check(dd, "compatible_associative", mode="exhaustive").passed
    lie = antisymmetrize(rooted_prelie_structure(pool_vertices=2))
    assert not check(lie, "matching_lie", mode="exhaustive").passed
    assert check(lie, "compatible_lie", mode="exhaustive").passed
    assert time.perf_counter() - start < 60


def test_criterion_08_enumeration(criterion):
    criterion(8, "enumeration: |Y(n)| = Catalan(n)|D|^n|Omega|^(n-1) for n<=5, |D|,|Omega|<=2")
    for n in range(6):
        for d in (1, 2):
            for m in (1, 2):
                formula = comb(2 * n, n) // (n + 1) * d ** n * (m ** (n - 1) if n else 1)
                generated = enumerate_pbt(n, ["a", "b"][:d], ["r", "g"][:m])
                assert len(set(generated)) == len(generated) == formula == count_pbt(n, d, m)
                assert _labelled_count(n, d, m) == formula
    assert len(enumerate_pbt(3, ["a"], ["r", "g"])) == 20


def test_criterion_09_pipeline_coherence(criterion):
    criterion(9, "pre-Lie via dendriform equals the direct RB formula on 100 random pairs per family")
    for fam in _families().values():
        composed = dendriform_to_prelie(rb_to_dendriform(fam))["star"]
        direct = rblie_to_prelie(fam, form="assoc")["star"]
        rng = random.Random(9)
        for _ in range(100):
            x, y = fam.carrier.sample(rng), fam.carrier.sample(rng)
            for w in fam.omega:
                assert fam.carrier.is_zero(composed(x, y, w) - direct(x, y, w))


def test_criterion_10_determinism(criterion, tmp_path, capsys):
    criterion(10, "identical seeds give byte-identical reports")
    dd = free_dendriform_structure()
    texts = {dumps_report(report(check(dd, "matching_dendriform", mode="random", seed=4, trials=30), dd))
             for _ in range(2)}
    assert len(texts) == 1
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        main(["pipeline", "--from", "running-sum", "--steps", "tridend,postlie,antisym", "--seed", "3",
              "--trials", "40", "--report", str(p)])
        main(["check", "--structure", "free-dd", "--axioms", "matching_associative", "--exhaustive",
              "--report", str(p) + ".check"])
    capsys.readouterr()
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert (tmp_path / "a.json.check").read_bytes() == (tmp_path / "b.json.check").read_bytes()
