"""Intersection vectors of conjugacy classes against a finite family of spheres.

Spheres are free splittings; i(gamma, S) is the translation length of gamma on
the splitting's tree.  Vectors are compared projectively after dividing by
their largest coordinate.
"""
from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .freegroup import ALPHABET, ConjClass, Word, canonical_cyclic, inverse, letter_count
from .splitting import FREE_HNN, SplittingDatum, SplittingError, core, translation_length, validate
from .twist import MAX_IMAGE_LENGTH, _apply, from_splitting


class DegenerateVector(ValueError):
    """The all-zero vector has no projective class."""


@dataclass(frozen=True)
class SphereFamily:
    spheres: tuple
    names: tuple

    def __post_init__(self):
        if not self.spheres:
            raise SplittingError("a sphere family needs at least one sphere")
        if len(self.names) != len(self.spheres):
            raise SplittingError("one name per sphere")
        for s, n in zip(self.spheres, self.names):
            if not s.is_free:
                raise SplittingError(f"sphere {n} is not a free splitting")
            rep = validate(s)
            if not rep.adapted:
                raise SplittingError(f"sphere {n} does not validate: {rep.failures()}")

    def __len__(self):
        return len(self.spheres)


def basis_spheres(g: int) -> SphereFamily:
    """S_i: vertex group generated by the other basis letters, stable letter x_i."""
    if g < 2:
        raise SplittingError("basis spheres need rank >= 2")
    spheres = []
    for i in range(1, g + 1):
        others = [(j,) for j in range(1, g + 1) if j != i]
        spheres.append(SplittingDatum.free_hnn(g, others, (i,), name=f"S_{ALPHABET[i - 1]}"))
    return SphereFamily(tuple(spheres), tuple(s.name for s in spheres))


@dataclass(frozen=True)
class IntersectionVector:
    entries: tuple
    source: Optional[ConjClass] = None

    @property
    def degenerate(self) -> bool:
        """WINDOW-DEGENERATE: the class is elliptic in every sphere of the family."""
        return not any(self.entries)

    def normalized(self) -> tuple:
        if self.degenerate:
            raise DegenerateVector(f"zero intersection vector for {self.source}: WINDOW-DEGENERATE")
        m = max(self.entries)
        return tuple(Fraction(e, m) for e in self.entries)

    def __str__(self):
        return "(" + ", ".join(map(str, self.entries)) + ")"


def basis_letter(s: SplittingDatum) -> Optional[int]:
    """i when s is the basis sphere S_i (stable x_i, vertex group on the other letters)."""
    if s.kind != FREE_HNN or len(s.stable) != 1:
        return None
    i = abs(s.stable[0])
    others = {(j,) for j in range(1, s.rank + 1) if j != i}
    gens = {g if g[0] > 0 else inverse(g) for g in s.vertex_generators if len(g) == 1}
    return i if gens == others and len(s.vertex_generators) == s.rank - 1 else None


def _intersection(s: SplittingDatum, w: tuple) -> int:
    i = basis_letter(s)
    if i is None:
        return translation_length(s, w)
    # the axis of w crosses an edge of S_i once per x_i-letter of its cyclic core
    return letter_count(w, i)


def i_vector(gamma, F: SphereFamily) -> IntersectionVector:
    if isinstance(gamma, Word):
        gamma = ConjClass.of(gamma)
    w = gamma.representative.letters
    if not w:
        raise SplittingError("the trivial class has no intersection vector")
    return IntersectionVector(tuple(_intersection(s, w) for s in F.spheres), gamma)


def projective_distance(u: IntersectionVector, v: IntersectionVector) -> Fraction:
    if len(u.entries) != len(v.entries):
        raise ValueError("vectors over different families")
    a, b = u.normalized(), v.normalized()
    return max(abs(x - y) for x, y in zip(a, b))


@dataclass
class OrbitRow:
    n: int
    vector: IntersectionVector
    distance: Optional[Fraction]


@dataclass
class OrbitReport:
    splitting: str
    alpha: ConjClass
    sphere_names: tuple
    alpha_vector: IntersectionVector
    core_vector: IntersectionVector
    i_alpha_T: int
    rows: list = field(default_factory=list)
    lemma_violations: list = field(default_factory=list)   # (n, sphere, lhs, rhs)
    bound_violations: list = field(default_factory=list)   # (n, distance, bound)
    constant: bool = True

    @property
    def ok(self) -> bool:
        if self.lemma_violations or self.bound_violations:
            return False
        # a class crossing T must move; an elliptic one must not
        return self.constant == (self.i_alpha_T == 0) or self.core_vector.degenerate

    @property
    def degenerate(self) -> bool:
        return self.core_vector.degenerate or self.alpha_vector.degenerate

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["n", *self.sphere_names, "distance"])
        for r in self.rows:
            wr.writerow([r.n, *r.vector.entries, "" if r.distance is None else str(r.distance)])
        return buf.getvalue()


def is_basis_letter_class(alpha: ConjClass) -> bool:
    return len(alpha.representative.letters) == 1


def orbit_experiment(d: SplittingDatum, alpha, n_max: int, F: SphereFamily,
                     limit: int = MAX_IMAGE_LENGTH, factorial_only: bool = False) -> OrbitReport:
    """Iterate the twist of d on alpha and check the twist-sphere inequality

        | i(delta^n alpha, S) - n i(alpha, T) i(gamma, S) | <= i(alpha, S)

    for every sphere S, plus the projective bound it implies,
    dist <= 2 max_S i(alpha, S) / (n i(alpha, T) max_S i(gamma, S)).
    """
    if isinstance(alpha, Word):
        alpha = ConjClass.of(alpha)
    if factorial_only and not is_basis_letter_class(alpha):
        raise SplittingError(f"{alpha} is not a basis-letter class")
    delta = from_splitting(d)
    gamma = core(d)
    a_vec = i_vector(alpha, F)
    g_vec = i_vector(gamma, F)
    a = translation_length(d, alpha.representative.letters)
    rep = OrbitReport(d.name, alpha, F.names, a_vec, g_vec, a)
    w = alpha.representative.letters
    for n in range(1, n_max + 1):
        w = canonical_cyclic(_apply(delta.forward, w, limit))
        vec = i_vector(ConjClass(Word(w, d.rank)), F)
        for k, name in enumerate(F.names):
            lhs = abs(vec.entries[k] - n * a * g_vec.entries[k])
            if lhs > a_vec.entries[k]:
                rep.lemma_violations.append((n, name, lhs, a_vec.entries[k]))
        if vec.entries != a_vec.entries:
            rep.constant = False
        dist = None
        if a > 0 and not g_vec.degenerate and not vec.degenerate:
            dist = projective_distance(vec, g_vec)
            bound = Fraction(2 * max(a_vec.entries), n * a * max(g_vec.entries))
            if dist > bound:
                rep.bound_violations.append((n, dist, bound))
        rep.rows.append(OrbitRow(n, vec, dist))
    return rep


def _orbit_job(args):
    return orbit_experiment(*args)


def orbit_scan(d: SplittingDatum, alphas: Sequence, n_max: int, F: SphereFamily,
               limit: int = MAX_IMAGE_LENGTH, workers: int = 1) -> list:
    """orbit_experiment for many classes; each orbit is sequential, classes run in parallel."""
    jobs = [(d, a, n_max, F, limit) for a in alphas]
    if workers <= 1 or len(jobs) < 2:
        return [_orbit_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_orbit_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
