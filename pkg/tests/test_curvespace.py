import random
from fractions import Fraction

import pytest

from twistraag.curvespace import (DegenerateVector, basis_letter, IntersectionVector, SphereFamily, basis_spheres, i_vector,
                                  orbit_experiment, projective_distance)
from twistraag.freegroup import Word, cyclic_split, letter_count
from twistraag.splitting import SplittingDatum as S, SplittingError, translation_length

from conftest import random_word

W = lambda s, r=2: Word.parse(s, r)
T1 = S.hnn(2, ["x", "yxY"], "y", "x", "yxY", name="T1")


def test_basis_spheres():
    F = basis_spheres(2)
    assert F.names == ("S_x", "S_y")
    assert i_vector(W("y"), F).entries == (0, 1)
    assert i_vector(W("xYx"), F).entries == (2, 1)
    with pytest.raises(SplittingError):
        basis_spheres(1)


def test_basis_sphere_is_letter_count():
    rng = random.Random(0)
    F = basis_spheres(3)
    assert [basis_letter(s) for s in F.spheres] == [1, 2, 3]
    assert basis_letter(S.free_hnn(2, ["xy"], "x")) is None
    for _ in range(300):
        w = random_word(rng, 3, 9, 1)
        core, _ = cyclic_split(w)
        want = tuple(letter_count(core, i) for i in (1, 2, 3))
        assert i_vector(Word(w, 3), F).entries == want
        # the closed form agrees with the tree computation
        assert tuple(translation_length(s, w) for s in F.spheres) == want


def test_generic_sphere(f2):
    F = f2.family("extended")
    assert i_vector(W("xy"), F).entries == (1, 1, 0)
    assert i_vector(W("xY"), F).entries == (1, 1, 2)


def test_i_vector_examples():
    F = basis_spheres(2)
    assert i_vector(W("x"), F).entries == (1, 0)
    for n in range(1, 6):
        assert i_vector(W("y") * W("x") ** n, F).entries == (n, 1)
    assert i_vector(W("xyXY"), F).entries == (2, 2)


def test_i_vector_scales_with_powers():
    rng = random.Random(1)
    F = basis_spheres(2)
    for _ in range(50):
        w = Word(random_word(rng, 2, 6, 1), 2)
        k = rng.randint(-4, 4) or 1
        assert i_vector(w ** k, F).entries == tuple(abs(k) * e for e in i_vector(w, F).entries)


def test_projective_distance_examples():
    V = lambda *e: IntersectionVector(e)
    assert projective_distance(V(2, 0), V(1, 0)) == 0
    assert projective_distance(V(1, 0), V(0, 1)) == 1
    for n in range(1, 10):
        assert projective_distance(V(n, 1), V(1, 0)) == Fraction(1, n)
    with pytest.raises(DegenerateVector):
        projective_distance(V(0, 0), V(1, 0))


def test_projective_distance_is_pseudometric():
    rng = random.Random(2)
    for _ in range(300):
        u, v, w = (IntersectionVector(tuple(rng.randint(0, 5) for _ in range(3)) or (1,)) for _ in range(3))
        if u.degenerate or v.degenerate or w.degenerate:
            continue
        assert projective_distance(u, v) == projective_distance(v, u)
        assert projective_distance(u, w) <= projective_distance(u, v) + projective_distance(v, w)
        assert projective_distance(u, u) == 0


def test_orbit_examples():
    F = basis_spheres(2)
    rep = orbit_experiment(T1, W("y"), 20, F)
    assert rep.ok and not rep.constant
    for row in rep.rows:
        assert row.vector.entries == (row.n, 1)
        assert row.distance == Fraction(1, row.n)
    rep = orbit_experiment(T1, W("x"), 20, F)
    assert rep.ok and rep.constant and rep.i_alpha_T == 0
    assert all(r.distance is None for r in rep.rows)


def test_orbit_csv():
    rep = orbit_experiment(T1, W("y"), 3, basis_spheres(2))
    assert rep.to_csv() == "n,S_x,S_y,distance\n1,1,1,1\n2,2,1,1/2\n3,3,1,1/3\n"


def test_factorial_only():
    F = basis_spheres(2)
    orbit_experiment(T1, W("Yyy"), 2, F, factorial_only=True)
    with pytest.raises(SplittingError):
        orbit_experiment(T1, W("xy"), 2, F, factorial_only=True)


def test_window_degenerate_flag():
    F = SphereFamily((S.free_hnn(2, ["x"], "y", name="S_y"),), ("S_y",))
    v = i_vector(W("x"), F)
    assert v.degenerate
    with pytest.raises(DegenerateVector):
        v.normalized()
    rep = orbit_experiment(T1, W("y"), 5, F)
    assert rep.degenerate and rep.ok


def test_family_validation():
    with pytest.raises(SplittingError):
        SphereFamily((), ())
    with pytest.raises(SplittingError):
        SphereFamily((T1,), ("T1",))
