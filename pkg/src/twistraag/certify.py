"""Compatible collections of one-edge Z-splittings and the RAAG they generate.

Adjacency in the coincidence graph is decided by whether the two Dehn twists
commute in Out(F); the intersection numbers that enter the exponent bound are
translation lengths of each core on the other splittings' trees.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from math import lcm
from typing import NamedTuple, Optional, Sequence

from . import raag
from .freegroup import format_letters, free_reduce, inverse
from .splitting import SplittingDatum, SplittingError, core, translation_length, validate
from .twist import (MAX_IMAGE_LENGTH, TwistAutomorphism, _apply, commutator_is_inner,
                    compose, from_splitting, identity, inner_conjugator, inverse_of, outer_equal, power)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Collection:
    splittings: tuple
    names: tuple = ()

    def __post_init__(self):
        if not self.splittings:
            raise SplittingError("a collection needs at least one splitting")
        ranks = {d.rank for d in self.splittings}
        if len(ranks) != 1:
            raise SplittingError(f"splittings over different ranks: {sorted(ranks)}")
        for d in self.splittings:
            if d.is_free:
                raise SplittingError("collections hold Z-splittings only")
            rep = validate(d)
            if not rep.adapted:
                raise SplittingError(f"splitting {d.name or '?'} is not adapted: {rep.failures()}")
        if not self.names:
            object.__setattr__(self, "names", tuple(d.name or f"T{i + 1}" for i, d in enumerate(self.splittings)))

    @property
    def rank(self) -> int:
        return self.splittings[0].rank

    def __len__(self):
        return len(self.splittings)

    @cached_property
    def twists(self) -> tuple:
        return tuple(from_splitting(d) for d in self.splittings)

    @cached_property
    def cores(self) -> tuple:
        return tuple(core(d) for d in self.splittings)


def coincidence_graph(c: Collection) -> raag.RaagGraph:
    k = len(c)
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)
             if commutator_is_inner(c.twists[i], c.twists[j])]
    return raag.RaagGraph(c.names, frozenset(frozenset(e) for e in edges))


def penetration_matrix(c: Collection) -> list:
    """Entry (i, j) is i(core_i, T_j); the diagonal is 0."""
    k = len(c)
    return [[0 if i == j else translation_length(c.splittings[j], c.cores[i].representative)
             for j in range(k)] for i in range(k)]


@dataclass
class Verdict:
    passed: bool
    reasons: list = field(default_factory=list)
    failing_pairs: list = field(default_factory=list)

    def __str__(self):
        head = "PASS" if self.passed else "FAIL"
        return "\n".join([head] + [f"  {r}" for r in self.reasons])


def check_compatible(c: Collection, graph: Optional[raag.RaagGraph] = None,
                     matrix: Optional[list] = None) -> Verdict:
    """Cores pairwise distinct (as unoriented curves) and every crossing pair co-penetrates."""
    graph = graph or coincidence_graph(c)
    matrix = matrix or penetration_matrix(c)
    v = Verdict(True)
    k = len(c)
    for i in range(k):
        for j in range(i + 1, k):
            ni, nj = c.names[i], c.names[j]
            if c.cores[i].same_curve(c.cores[j]):
                v.passed = False
                v.reasons.append(f"cores of {ni} and {nj} coincide: {c.cores[i]}")
                v.failing_pairs.append((i, j))
                continue
            if graph.commute(i, j):
                continue
            if matrix[i][j] <= 0 or matrix[j][i] <= 0:
                v.passed = False
                v.reasons.append(f"{ni} and {nj} cross but do not co-penetrate "
                                 f"(i({ni} core, {nj}) = {matrix[i][j]}, i({nj} core, {ni}) = {matrix[j][i]})")
                v.failing_pairs.append((i, j))
    return v


class Bounds(NamedTuple):
    M: int
    Delta: int
    N: int


def bounds(c: Collection, matrix: Optional[list] = None) -> Bounds:
    m = matrix or penetration_matrix(c)
    k = len(m)
    M = max((m[i][j] for i in range(k) for j in range(k) if i != j), default=0)
    # lcm(0, n) = 0, as in math.lcm
    D = max((lcm(m[i][j], m[l][j]) for i in range(k) for j in range(k) for l in range(k)), default=0)
    return Bounds(M, D, 5 * M + 8)


def meets_threshold(c: Collection, exponents: Sequence[int], matrix: Optional[list] = None) -> bool:
    N = bounds(c, matrix).N
    return all(abs(n) >= N for n in exponents)


def _letter_images(c: Collection, exponents: Sequence[int], limit: int) -> dict:
    if len(exponents) != len(c):
        raise ValueError(f"need {len(c)} exponents, got {len(exponents)}")
    out = {}
    for i, (d, n) in enumerate(zip(c.twists, exponents)):
        p = power(d, n, limit)
        out[i + 1] = p
        out[-(i + 1)] = inverse_of(p)
    return out


def phi(c: Collection, exponents: Sequence[int], w: Sequence[int],
        limit: int = MAX_IMAGE_LENGTH) -> TwistAutomorphism:
    """Image of the RAAG word w under T_i -> delta_i^{n_i}."""
    images = _letter_images(c, exponents, limit)
    out = identity(c.rank)
    for x in w:
        out = compose(out, images[x], limit)
    return out


@dataclass
class ScanReport:
    length: int
    exponents: tuple
    words_checked: int = 0
    counterexamples: list = field(default_factory=list)
    max_image_length: int = 0
    seconds: float = 0.0
    certified: bool = False

    @property
    def mode(self) -> str:
        return "CERTIFICATE" if self.certified else "EXPERIMENT"

    def to_json(self, graph: Optional[raag.RaagGraph] = None, timings: bool = False) -> dict:
        fmt = graph.format if graph is not None else str
        out = {"length": self.length, "exponents": list(self.exponents),
               "words_checked": self.words_checked,
               "counterexamples": [fmt(w) for w in self.counterexamples],
               "max_image_length": self.max_image_length, "mode": self.mode}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def injectivity_scan(c: Collection, exponents: Sequence[int], L: int,
                     graph: Optional[raag.RaagGraph] = None, limit: int = MAX_IMAGE_LENGTH,
                     threads: int = 1) -> ScanReport:
    """Check that no nontrivial RAAG element of length <= L maps to an inner automorphism.

    Canonical words are grown one letter at a time, so the image of w.s is
    obtained from the stored image of w by one composition.
    """
    t0 = time.perf_counter()
    graph = graph or coincidence_graph(c)
    matrix = penetration_matrix(c)
    report = ScanReport(L, tuple(exponents))
    report.certified = check_compatible(c, graph, matrix).passed and meets_threshold(c, exponents, matrix)
    letters = _letter_images(c, exponents, limit)
    rank = c.rank
    layer = {(): tuple((i,) for i in range(1, rank + 1))}
    alphabet = [s * (i + 1) for i in range(len(c)) for s in (1, -1)]
    for n in range(1, L + 1):
        nxt: dict = {}
        for w, images in layer.items():
            for x in alphabet:
                cw = raag.reduce(graph, w + (x,))
                if len(cw) != n or cw in nxt:
                    continue
                nxt[cw] = tuple(_apply(images, img, limit) for img in letters[x].forward)
        work = list(nxt.items())
        report.words_checked += len(work)
        for _, images in work:
            report.max_image_length = max(report.max_image_length, max(len(i) for i in images))
        for cw, u in zip(nxt, _inner_checks([im for _, im in work], threads)):
            if u is not None:
                report.counterexamples.append(cw)
        layer = nxt
        log.info("scan length %d: %d words", n, len(nxt))
    report.counterexamples.sort(key=lambda w: (len(w), w))
    report.seconds = time.perf_counter() - t0
    return report


def _inner_checks(batch: list, threads: int) -> list:
    if threads <= 1 or len(batch) < 64:
        return [inner_conjugator(images) for images in batch]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(inner_conjugator, batch, chunksize=max(1, len(batch) // (4 * threads))))


@dataclass
class Certificate:
    names: tuple
    graph: raag.RaagGraph
    matrix: list
    bounds: Bounds
    verdict: Verdict
    exponents: tuple = ()
    scan: Optional[ScanReport] = None

    @property
    def meets_threshold(self) -> bool:
        return bool(self.exponents) and all(abs(n) >= self.bounds.N for n in self.exponents)

    def to_json(self, timings: bool = False) -> dict:
        edges = sorted(tuple(sorted(e)) for e in self.graph.edges)
        out = {
            "names": list(self.names),
            "coincidence_edges": [[self.names[i], self.names[j]] for i, j in edges],
            "penetration_matrix": self.matrix,
            "M": self.bounds.M, "Delta": self.bounds.Delta, "N": self.bounds.N,
            "compatible": self.verdict.passed,
            "reasons": list(self.verdict.reasons),
            "exponents": list(self.exponents),
            "meets_threshold": self.meets_threshold,
        }
        if self.scan is not None:
            out["scan"] = self.scan.to_json(self.graph, timings)
        return out


def certify(c: Collection, exponents: Sequence[int] = (), L: int = 0,
            limit: int = MAX_IMAGE_LENGTH, threads: int = 1) -> Certificate:
    graph = coincidence_graph(c)
    matrix = penetration_matrix(c)
    cert = Certificate(c.names, graph, matrix, bounds(c, matrix),
                       check_compatible(c, graph, matrix), tuple(exponents))
    if exponents and L > 0:
        cert.scan = injectivity_scan(c, exponents, L, graph, limit, threads)
    return cert


# -- fixture discovery ---------------------------------------------------------------

def _small_words(rank: int, max_len: int) -> list:
    letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    out = {}
    for n in range(1, max_len + 1):
        for w in cartesian(letters, repeat=n):
            r = free_reduce(w)
            if len(r) == n:
                out.setdefault(r, None)
    return list(out)


def discover_splittings(rank: int = 2, max_len: int = 4) -> list:
    """Adapted HNN splittings V = <s, t s t^-1, other basis letters>, stable t, edge s.

    Only bases obtained from {s, t} with short s, t and vertex generators of
    length <= max_len are tried; one representative per twist up to Out(F).
    """
    from .subgroup import fold
    found: list = []
    twists: list = []
    others = [(k,) for k in range(3, rank + 1)]
    for s in _small_words(2, 2):
        for t in _small_words(2, 2):
            base = [s, t] + others
            if not fold(base, rank).is_whole_group():
                continue
            conj = free_reduce(t + s + inverse(t))
            if len(conj) > max_len:
                continue
            d = SplittingDatum.hnn(rank, [s, conj] + others, t, s, conj,
                                   name=f"T[{format_letters(s)};{format_letters(t)}]")
            if not validate(d).adapted:
                continue
            phi_d = from_splitting(d)
            if any(outer_equal(phi_d, p) for p in twists):
                continue
            twists.append(phi_d)
            found.append(d)
    return found


def discover_compatible_pairs(rank: int = 2, max_len: int = 4) -> list:
    ds = discover_splittings(rank, max_len)
    out = []
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            c = Collection((ds[i], ds[j]))
            if check_compatible(c).passed:
                out.append((ds[i], ds[j]))
    return out
