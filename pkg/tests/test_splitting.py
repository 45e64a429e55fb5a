import random

import pytest

from twistraag.freegroup import Word, power, product, inverse
from twistraag.splitting import (SplittingDatum as S, SplittingError, core, normal_form,
                                 translation_length, validate)

from conftest import all_reduced, fixture_splittings, random_word

T1 = S.hnn(2, ["x", "yxY"], "y", "x", "yxY", name="T1")
T2 = S.hnn(2, ["xy", "yx"], "y", "xy", "yx", name="T2")
A3 = S.amalgam(3, ["x", "y"], ["xyXY", "z"], "xyXY", name="A3")
P = lambda s, r=2: Word.parse(s, r).letters


def test_validate_examples():
    assert validate(T1).adapted
    bad = validate(S.hnn(2, ["x"], "y", "x", "x"))
    assert not bad.adapted
    assert "euler" in [name for name, _ in bad.failures()]
    assert validate(S.free_hnn(2, ["x"], "y")).adapted


def test_validate_catches_each_invariant():
    fails = lambda d: {n for n, _ in validate(d).failures()}
    assert "relation" in fails(S.hnn(2, ["x", "yxY"], "y", "x", "x"))
    assert "edge-membership" in fails(S.hnn(2, ["x", "yxY"], "y", "y", "yyY"))
    assert "generation" in fails(S.hnn(2, ["x", "yyxYY"], "yy", "x", "yyxYY"))
    assert "edge-nontrivial" in fails(S.amalgam(2, ["x"], ["y"], ""))
    assert "edge-absent" in fails(S(2, "FreeHNN", ((2,),), (1,), edge_a=(2,)))
    assert "orientation" in fails(S(2, "HNN", ((1,), P("yxY")), (2,), (1,), P("yxY"), orientation=0))
    assert "kind" in fails(S(2, "Graph"))


def test_normal_form_examples():
    nf = normal_form(T1, P("y"))
    assert [s.kind for s in nf.syllables if s.kind == "t" or s.element] == ["t"]
    nf = normal_form(T1, P("x"))
    assert nf.stable_count == 0 and [s.kind for s in nf.syllables] == ["V"]
    nf = normal_form(T1, P("yxY"))
    assert nf.stable_count == 0 and nf.evaluate() == P("yxY")


def test_normal_form_round_trip():
    rng = random.Random(1)
    for label, d in fixture_splittings():
        for _ in range(60):
            w = random_word(rng, d.rank, 10)
            nf = normal_form(d, w)
            assert nf.evaluate() == w, label
            assert nf.substitute_expressions() == w, label
            if d.is_hnn:
                # no pinch t g t^-1 with g in <a>, nor t^-1 g t with g in <b>
                syl = nf.syllables
                for i in range(len(syl) - 2):
                    if syl[i].kind == "t" and syl[i + 2].kind == "t" and syl[i].exponent == -syl[i + 2].exponent:
                        which = "a" if syl[i].exponent > 0 else "b"
                        assert d.in_edge_group(syl[i + 1].element, which) is None


def test_translation_length_examples():
    assert translation_length(T1, P("x")) == 0
    assert translation_length(T1, P("y")) == 1
    assert translation_length(T1, P("xy")) == 1
    assert translation_length(T2, P("x")) == 1
    sx = S.free_hnn(2, ["y"], "x")
    assert translation_length(sx, P("yxx")) == 2
    with pytest.raises(SplittingError):
        translation_length(T1, ())


def _min_conjugate_stable_count(d, w, depth=3):
    best = None
    for u in [()] + all_reduced(d.rank, depth):
        nf = normal_form(d, product(u, w, inverse(u)))
        n = nf.length
        best = n if best is None else min(best, n)
    return best


def test_translation_length_against_conjugate_search():
    for d in (T1, T2):
        for w in all_reduced(2, 4):
            assert translation_length(d, w) == _min_conjugate_stable_count(d, w), (d.name, w)


def test_translation_length_invariances():
    rng = random.Random(2)
    for label, d in fixture_splittings():
        for _ in range(40):
            w = random_word(rng, d.rank, 7, 1)
            u = random_word(rng, d.rank, 4)
            l = translation_length(d, w)
            assert translation_length(d, product(u, w, inverse(u))) == l
            assert translation_length(d, inverse(w)) == l
            assert translation_length(d, power(w, 3)) == 3 * l


def test_core_and_reversal():
    assert str(core(T1)) == "[x]"
    assert core(T2).same_curve(core(T2.reversed()))
    assert T1.reversed().orientation == -1
    with pytest.raises(SplittingError):
        core(S.free_hnn(2, ["y"], "x"))


def test_amalgam_normal_form_alternates():
    w = P("xzyZ", 3)
    nf = normal_form(A3, w)
    kinds = [s.kind for s in nf.syllables]
    assert all(a != b for a, b in zip(kinds, kinds[1:]))
    assert nf.evaluate() == w
    assert translation_length(A3, P("z", 3)) == 0
    assert translation_length(A3, P("xz", 3)) == 2
