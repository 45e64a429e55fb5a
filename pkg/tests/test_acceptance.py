"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""
import random
import time
from fractions import Fraction

import pytest

from twistraag import basstree as bt
from twistraag import raag
from twistraag.certify import coincidence_graph, injectivity_scan, penetration_matrix, bounds, phi
from twistraag.curvespace import basis_spheres, orbit_experiment
from twistraag.freegroup import ConjClass, Word, canonical_cyclic, inverse
from twistraag.subgroup import fold
from twistraag.twist import (apply, commutator, commutator_is_inner, compose, conjugation, from_splitting,
                             identity, inner_conjugator, inversion, is_inner, permutation, transvection)

from conftest import all_reduced, fixture_splittings, random_word
from oracles import inner_by_search, products_of_generators, raag_trivial_by_shuffles

FIXTURES = fixture_splittings()


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {k}: {'PASS' if ok else 'FAIL'} ({detail})")
    return emit


def test_criterion_1_tree_formula_agreement(report):
    t0 = time.perf_counter()
    rng = random.Random(1)
    mismatches = checked = 0
    for _, d in FIXTURES:
        phi_d = from_splitting(d)
        words = [(i,) for i in range(1, d.rank + 1)] + [random_word(rng, d.rank, 6) for _ in range(200)]
        for w in words:
            checked += 1
            if bt.conjugation_action(d, w).letters != apply(phi_d, w):
                mismatches += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and dt < 10
    report(1, ok, f"{checked} words over {len(FIXTURES)} splittings, {mismatches} mismatches, {dt:.1f}s")
    assert ok


def _lemma_violations(d, win, rng):
    v0 = bt.base_vertex(d)
    verts = list(win.vertices)
    twist = {v: bt.tree_twist(d, v0, v) for v in verts}
    bad = {"adjacency": 0, "inverse": 0, "conjugation": 0, "path": 0}
    for a, b in win.adjacent_pairs():
        if bt.distance(d, twist[a], twist[b]) != 1:
            bad["adjacency"] += 1
    for v in verts:
        if bt.tree_twist_inverse(d, v0, twist[v]) != v or bt.tree_twist(d, v0, bt.tree_twist_inverse(d, v0, v)) != v:
            bad["inverse"] += 1
    shifts = [(i,) for i in range(1, d.rank + 1)] + [(-i,) for i in range(1, d.rank + 1)]
    shifts += [random_word(rng, d.rank, 3, 2) for _ in range(2)]
    for w in shifts:
        wv0 = bt.translate(d, w, v0)
        for v in verts:
            lhs = bt.translate(d, w, bt.tree_twist(d, v0, bt.translate(d, inverse(w), v)))
            rhs = bt.tree_twist(d, wv0, v)
            if lhs != rhs:
                bad["conjugation"] += 1
    # any edge path, backtracking allowed, gives the same product as the geodesic
    for v in verts:
        u = rng.choice(verts)
        detour = bt.geodesic(d, v0, u) + bt.geodesic(d, u, v)
        if bt.path_product(d, detour) != bt.path_product(d, bt.geodesic(d, v0, v)):
            bad["path"] += 1
    return bad, len(verts)


def test_criterion_2_twist_lemma_suite(report):
    t0 = time.perf_counter()
    rng = random.Random(2)
    totals = {"adjacency": 0, "inverse": 0, "conjugation": 0, "path": 0}
    nverts = 0
    for _, d in FIXTURES:
        bad, n = _lemma_violations(d, bt.TreeWindow(d, radius=3), rng)
        nverts += n
        for k in totals:
            totals[k] += bad[k]
    dt = time.perf_counter() - t0
    ok = not any(totals.values()) and dt < 30
    report(2, ok, f"{nverts} window vertices, violations {totals}, {dt:.1f}s")
    assert ok


def test_criterion_3_commuting_decision(report, f2, f3):
    t0 = time.perf_counter()
    dy, dz = from_splitting(f3.splitting("Dy")), from_splitting(f3.splitting("Dz"))
    assert str(dy) == "x -> x, y -> yx, z -> z" and str(dz) == "x -> x, y -> y, z -> zx"
    disjoint = commutator_is_inner(dy, dz)
    d1, d2 = from_splitting(f2.splitting("T1")), from_splitting(f2.splitting("T2"))
    crossing = commutator_is_inner(d1, d2)
    non_inner = is_inner(commutator(d1, d2)) is None
    dt = time.perf_counter() - t0
    ok = disjoint and not crossing and non_inner and dt < 1
    report(3, ok, f"F3 disjoint: {'COMMUTE' if disjoint else 'CROSS'}, "
                  f"F2 crossing: {'COMMUTE' if crossing else 'CROSS'}, commutator non-inner: {non_inner}, {dt:.2f}s")
    assert ok


def test_criterion_4_main_bound_and_scan(report, f2):
    t0 = time.perf_counter()
    c = f2.collection("pair")
    m = penetration_matrix(c)
    b = bounds(c, m)
    assert (m[0][1], m[1][0]) == (1, 1)
    assert b.M == 1 and b.N == 5 * 1 + 8 == 13
    rep = injectivity_scan(c, (13, 13), 4)
    dt = time.perf_counter() - t0
    ok = (rep.words_checked == 160 and not rep.counterexamples and rep.mode == "CERTIFICATE" and dt < 300)
    report(4, ok, f"matrix entries ({m[0][1]},{m[1][0]}), M={b.M}, N={b.N}, {rep.words_checked} words, "
                  f"{len(rep.counterexamples)} inner images, max image {rep.max_image_length}, {dt:.1f}s")
    assert ok


def test_criterion_5_phi_respects_relations(report, f3):
    c = f3.collection("commuting")
    G = coincidence_graph(c)
    cores = c.cores
    assert not cores[0].same_curve(cores[1])
    assert penetration_matrix(c) == [[0, 0], [0, 0]]
    assert G.edges == {frozenset((0, 1))}
    comm = (1, 2, -1, -2)
    results = [is_inner(phi(c, ns, comm)) for ns in [(8, 8), (8, -8), (13, 21), (-9, 11)]]
    ok = all(r is not None and r.is_trivial() for r in results)
    report(5, ok, f"cores {cores[0]} and {cores[1]}, phi([T1,T2]) inner-trivial for 4 exponent pairs")
    assert ok


@pytest.fixture(scope="module")
def orbit_reports():
    t0 = time.perf_counter()
    reports = []
    for label, d in FIXTURES:
        F = basis_spheres(d.rank)
        classes = sorted({canonical_cyclic(w) for w in all_reduced(d.rank, 5)})
        for c in classes:
            reports.append((label, orbit_experiment(d, ConjClass(Word(c, d.rank)), 50, F)))
    return reports, time.perf_counter() - t0


def test_criterion_6_lemma_inequality(report, orbit_reports):
    reports, dt = orbit_reports
    violations = sum(len(r.lemma_violations) for _, r in reports)
    checks = sum(len(r.rows) * len(r.sphere_names) for _, r in reports)
    ok = violations == 0 and dt < 120
    report(6, ok, f"{len(reports)} orbits, {checks} sphere checks, {violations} violations, {dt:.1f}s")
    assert ok


def test_criterion_7_convergence(report, f2, orbit_reports):
    rep = orbit_experiment(f2.splitting("T1"), Word.parse("y", 2), 50, basis_spheres(2))
    exact = all(row.distance == Fraction(1, row.n) for row in rep.rows) and len(rep.rows) == 50
    reports, _ = orbit_reports
    mismatched = [(label, str(r.alpha)) for label, r in reports if r.constant != (r.i_alpha_T == 0)]
    bound_bad = sum(len(r.bound_violations) for _, r in reports)
    ok = exact and not mismatched and bound_bad == 0
    report(7, ok, f"T1/y distance = 1/n exactly for n<=50: {exact}; constancy iff i(alpha,T)=0 on "
                  f"{len(reports)} orbits, {len(mismatched)} mismatches; distance-bound violations {bound_bad}")
    assert ok


def test_criterion_8_oracles(report):
    rng = random.Random(8)
    # membership: products of <= 4 generator letters are members; every claimed
    # member is certified by substitution, every claimed non-member is absent
    # from the enumerated products
    sub_cases = sub_bad = 0
    pool = all_reduced(2, 6)
    while sub_cases < 10_000:
        gens = [random_word(rng, 2, 4, 1) for _ in range(rng.randint(1, 3))]
        g = fold(gens, 2)
        members = products_of_generators(gens, 4)
        for w in list(members)[:150] + rng.sample(pool, 100):
            if sub_cases >= 10_000:
                break
            sub_cases += 1
            e = g.express(w)
            got = e is not None
            if got and g.substitute(e) != w:
                sub_bad += 1
            elif not got and w in members:
                sub_bad += 1
            elif got != g.contains(w):
                sub_bad += 1
    # RAAG word problem against exhaustive shuffle search
    graphs = [raag.RaagGraph.from_edges("abc", e) for e in
              ([], [("a", "b")], [("a", "b"), ("b", "c")], [("a", "b"), ("b", "c"), ("a", "c")])]
    raag_cases = raag_bad = 0
    while raag_cases < 1000:
        G = rng.choice(graphs)
        half = [rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(rng.randint(0, 4))]
        w = half + [-x for x in reversed(half)]
        for _ in range(rng.randint(0, 3)):
            i = rng.randrange(len(w) + 1)
            w.insert(i, rng.choice([1, -1, 2, -2, 3, -3]))
        if rng.random() < 0.5:
            rng.shuffle(w)
        raag_cases += 1
        if raag.is_trivial(G, w) != raag_trivial_by_shuffles(G.commute, w):
            raag_bad += 1
    # is_inner against bounded conjugator search |u| <= 4
    nielsen = [transvection(2, 1, 2), transvection(2, 2, 1, False, -1), inversion(2, 2), permutation(2, [2, 1])]
    inner_cases = inner_bad = 0
    while inner_cases < 100:
        if inner_cases % 2 == 0:
            auto = conjugation(2, random_word(rng, 2, 4))
        else:
            auto = identity(2)
            for _ in range(rng.randint(1, 3)):
                auto = compose(auto, rng.choice(nielsen))
            auto = compose(conjugation(2, random_word(rng, 2, 2)), auto)
        inner_cases += 1
        got, want = inner_conjugator(auto.forward), inner_by_search(auto.forward, 4)
        if got != want:
            inner_bad += 1
    ok = sub_bad == raag_bad == inner_bad == 0
    report(8, ok, f"subgroup {sub_cases - sub_bad}/{sub_cases}, raag {raag_cases - raag_bad}/{raag_cases}, "
                  f"is_inner {inner_cases - inner_bad}/{inner_cases} agree")
    assert ok
