"""One-edge splittings of F (HNN extensions and amalgams) as graph-of-groups data.

A splitting is given by words in F: generators of the vertex group(s), a
stable letter for HNN extensions, and the edge element(s).  Everything else
(normal forms, translation lengths, the Dehn twist) is computed by expressing
basis letters of F in the splitting's generators with a Stallings graph.

HNN convention: ``stable * edge_a * stable^-1 = edge_b``, both edge elements in
the vertex group V.  Amalgam convention: the edge element ``edge_a`` lies in
both A and B.  Free kinds have no edge element.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .freegroup import (ConjClass, Word, WordError, cyclic_power, free_reduce,
                        inverse, parse_letters, product)
from .subgroup import SubgroupGraph, fold

HNN = "HNN"
AMALGAM = "Amalgam"
FREE_HNN = "FreeHNN"
FREE_AMALGAM = "FreeAmalgam"
KINDS = (HNN, AMALGAM, FREE_HNN, FREE_AMALGAM)


class SplittingError(ValueError):
    pass


def _as_letters(w, rank: int) -> tuple:
    if isinstance(w, Word):
        return w.letters
    if isinstance(w, str):
        return free_reduce(parse_letters(w, rank))
    return free_reduce(w)


@dataclass(frozen=True)
class SplittingDatum:
    rank: int
    kind: str
    vertex_generators: tuple = ()
    stable: tuple = ()
    edge_a: tuple = ()
    edge_b: tuple = ()
    a_generators: tuple = ()
    b_generators: tuple = ()
    orientation: int = 1
    name: str = field(default="", compare=False)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def hnn(cls, rank, vertex_generators, stable, a, b, orientation=1, name=""):
        L = lambda w: _as_letters(w, rank)
        return cls(rank, HNN, tuple(L(g) for g in vertex_generators), L(stable),
                   L(a), L(b), orientation=orientation, name=name)

    @classmethod
    def amalgam(cls, rank, a_generators, b_generators, edge, orientation=1, name=""):
        L = lambda w: _as_letters(w, rank)
        return cls(rank, AMALGAM, edge_a=L(edge),
                   a_generators=tuple(L(g) for g in a_generators),
                   b_generators=tuple(L(g) for g in b_generators),
                   orientation=orientation, name=name)

    @classmethod
    def free_hnn(cls, rank, vertex_generators, stable, name=""):
        L = lambda w: _as_letters(w, rank)
        return cls(rank, FREE_HNN, tuple(L(g) for g in vertex_generators), L(stable), name=name)

    @classmethod
    def free_amalgam(cls, rank, a_generators, b_generators, name=""):
        L = lambda w: _as_letters(w, rank)
        return cls(rank, FREE_AMALGAM, a_generators=tuple(L(g) for g in a_generators),
                   b_generators=tuple(L(g) for g in b_generators), name=name)

    def reversed(self) -> "SplittingDatum":
        """Same splitting with the opposite orientation."""
        return SplittingDatum(self.rank, self.kind, self.vertex_generators, self.stable,
                              self.edge_a, self.edge_b, self.a_generators, self.b_generators,
                              -self.orientation, self.name)

    # -- derived structure ----------------------------------------------------

    @property
    def is_hnn(self) -> bool:
        return self.kind in (HNN, FREE_HNN)

    @property
    def is_free(self) -> bool:
        return self.kind in (FREE_HNN, FREE_AMALGAM)

    @property
    def generators(self) -> tuple:
        """All splitting generators; HNN: V-gens then stable; amalgam: A then B."""
        if self.is_hnn:
            return self.vertex_generators + (self.stable,)
        return self.a_generators + self.b_generators

    @cached_property
    def union_graph(self) -> SubgroupGraph:
        return fold(self.generators, self.rank)

    @cached_property
    def vertex_graph(self) -> SubgroupGraph:
        gens = self.vertex_generators if self.is_hnn else self.a_generators
        return fold(gens, self.rank)

    @cached_property
    def b_graph(self) -> SubgroupGraph:
        return fold(self.b_generators, self.rank)

    @cached_property
    def letter_expressions(self) -> tuple:
        """Expression of each basis letter over ``generators`` (1-based)."""
        out = []
        for i in range(1, self.rank + 1):
            e = self.union_graph.express((i,))
            if e is None:
                raise SplittingError(f"basis letter {i} is not generated by the splitting")
            out.append(e)
        return tuple(out)

    def express(self, w: Sequence[int]) -> tuple:
        ex = self.letter_expressions
        return free_reduce(x for l in w for x in (ex[l - 1] if l > 0 else inverse(ex[-l - 1])))

    def in_edge_group(self, g: tuple, which: str = "a") -> Optional[int]:
        """k with g = edge^k (edge_a or edge_b), else None.  Free kinds: only g = 1."""
        if self.is_free:
            return 0 if not g else None
        return cyclic_power(g, self.edge_a if which == "a" else self.edge_b)

    def edge_power(self, which: str, k: int) -> tuple:
        if self.is_free or k == 0:
            return ()
        from .freegroup import power
        return power(self.edge_a if which == "a" else self.edge_b, k)


# -- validation -----------------------------------------------------------------

@dataclass
class ValidityReport:
    checks: list

    @property
    def adapted(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list:
        return [(name, detail) for name, ok, detail in self.checks if not ok]

    def __str__(self):
        return "\n".join(f"{'PASS' if ok else 'FAIL'} {name}: {detail}" for name, ok, detail in self.checks)


def validate(d: SplittingDatum) -> ValidityReport:
    checks = []

    def check(name, ok, detail=""):
        checks.append((name, bool(ok), detail))

    check("kind", d.kind in KINDS, d.kind)
    if d.kind not in KINDS:
        return ValidityReport(checks)
    words = list(d.generators) + [d.edge_a, d.edge_b]
    try:
        for w in words:
            Word(tuple(w), d.rank)
        check("words", True, f"all words reduced, rank {d.rank}")
    except WordError as e:
        check("words", False, str(e))
        return ValidityReport(checks)
    check("orientation", d.orientation in (1, -1), str(d.orientation))

    if d.is_hnn:
        check("stable-letter", bool(d.stable), "stable letter must be nontrivial")
    if d.is_free:
        check("edge-absent", not d.edge_a and not d.edge_b, "free splittings carry no edge element")
    elif d.kind == HNN:
        check("edge-nontrivial", bool(d.edge_a) and bool(d.edge_b), "edge elements a, b nontrivial")
    else:
        check("edge-nontrivial", bool(d.edge_a), "edge element nontrivial")

    V = d.vertex_graph
    if d.kind == HNN and d.edge_a and d.edge_b:
        check("edge-membership", V.contains(d.edge_a) and V.contains(d.edge_b),
              "a and b lie in V")
        check("relation", product(d.stable, d.edge_a, inverse(d.stable)) == d.edge_b,
              "stable * a * stable^-1 = b")
    elif d.kind == AMALGAM and d.edge_a:
        check("edge-membership", V.contains(d.edge_a) and d.b_graph.contains(d.edge_a),
              "edge element lies in A and in B")

    g = d.rank
    if d.kind == HNN:
        check("euler", V.rank() == g, f"rank(V) = {V.rank()}, need {g}")
    elif d.kind == FREE_HNN:
        check("euler", V.rank() == g - 1, f"rank(V) = {V.rank()}, need {g - 1}")
    else:
        ra, rb = V.rank(), d.b_graph.rank()
        need = g + 1 if d.kind == AMALGAM else g
        check("euler", ra + rb == need, f"rank(A) + rank(B) = {ra} + {rb}, need {need}")
    check("generation", d.union_graph.is_whole_group(), "generators together generate F")
    return ValidityReport(checks)


# -- normal forms -----------------------------------------------------------------

@dataclass(frozen=True)
class Syllable:
    """``kind`` is "V", "A", "B" (vertex element) or "t" (stable letter).

    Vertex syllables carry the element as an F-word plus an expression over
    the vertex generators; stable syllables carry the exponent (+1 / -1).
    """

    kind: str
    element: tuple
    expression: tuple = ()
    exponent: int = 0


@dataclass(frozen=True)
class NormalForm:
    datum: SplittingDatum
    syllables: tuple

    @property
    def stable_count(self) -> int:
        return sum(1 for s in self.syllables if s.kind == "t")

    @property
    def length(self) -> int:
        """Edges crossed from the base vertex: stable letters (HNN) or syllables (amalgam)."""
        if self.datum.is_hnn:
            return self.stable_count
        return len(self.syllables)

    def evaluate(self) -> tuple:
        d = self.datum
        return product(*(s.element if s.kind != "t" else (d.stable if s.exponent > 0 else inverse(d.stable))
                         for s in self.syllables))

    def substitute_expressions(self) -> tuple:
        """Rebuild the word from the generator expressions only."""
        d = self.datum
        parts = []
        for s in self.syllables:
            if s.kind == "t":
                parts.append(d.stable if s.exponent > 0 else inverse(d.stable))
            else:
                graph = d.b_graph if s.kind == "B" else d.vertex_graph
                parts.append(graph.substitute(s.expression))
        return product(*parts)


def _raw_syllables(d: SplittingDatum, w: Sequence[int]) -> list:
    """Split w into runs over the splitting generators: ``[(kind, F-word or +-1)]``."""
    expr = d.express(w)
    gens = d.generators
    nv = len(d.vertex_generators) if d.is_hnn else len(d.a_generators)
    out: list = []
    run: list = []
    run_kind = None
    for x in expr:
        i = abs(x) - 1
        kind = "t" if d.is_hnn and i == nv else ("V" if d.is_hnn else "A") if i < nv else "B"
        if kind != run_kind and run_kind is not None:
            out.append((run_kind, free_reduce(run)))
            run = []
        run_kind = kind
        if kind == "t":
            out.append(("t", 1 if x > 0 else -1))
            run_kind = None
        else:
            run.extend(gens[i] if x > 0 else inverse(gens[i]))
    if run_kind is not None:
        out.append((run_kind, free_reduce(run)))
    return out


def _britton(d: SplittingDatum, raw: list) -> tuple:
    """Britton-reduce ``g0 t^e1 g1 ... t^ek gk``; returns (vertex elements, exponents)."""
    gs = [()]
    es: list = []
    for kind, val in raw:
        if kind == "V":
            gs[-1] = product(gs[-1], val)
            continue
        e = val
        if es and es[-1] == -e:
            which = "a" if es[-1] > 0 else "b"
            k = d.in_edge_group(gs[-1], which)
            if k is not None:
                # t a^k t^-1 = b^k ;  t^-1 b^k t = a^k
                image = d.edge_power("b" if which == "a" else "a", k)
                es.pop()
                gs.pop()
                gs[-1] = product(gs[-1], image)
                continue
        es.append(e)
        gs.append(())
    return gs, es


def _alternating(d: SplittingDatum, raw: list) -> list:
    """Reduced alternating A/B syllables; lone edge-group elements kept as is."""
    out: list = []

    def in_c(g):
        return d.in_edge_group(g) is not None

    for kind, g in raw:
        while g:
            if out and out[-1][0] == kind:
                g = product(out.pop()[1], g)
            elif out and in_c(g):
                kind = out[-1][0]
            elif out and len(out) == 1 and in_c(out[-1][1]):
                g = product(out.pop()[1], g)
            else:
                out.append((kind, g))
                break
    return out


def normal_form(d: SplittingDatum, w) -> NormalForm:
    w = w.letters if isinstance(w, Word) else tuple(w)
    raw = _raw_syllables(d, w)
    syl = []
    if d.is_hnn:
        gs, es = _britton(d, raw)
        V = d.vertex_graph
        for i, g in enumerate(gs):
            if g:
                syl.append(Syllable("V", g, _express_in(V, g)))
            if i < len(es):
                syl.append(Syllable("t", (), exponent=es[i]))
    else:
        for kind, g in _alternating(d, raw):
            graph = d.vertex_graph if kind == "A" else d.b_graph
            syl.append(Syllable(kind, g, _express_in(graph, g)))
    return NormalForm(d, tuple(syl))


def _express_in(graph: SubgroupGraph, g: tuple) -> tuple:
    e = graph.express(g)
    if e is None:
        raise SplittingError("vertex syllable escaped its vertex group; datum is not a splitting")
    return e


def translation_length(d: SplittingDatum, w) -> int:
    """Translation length of w on the Bass-Serre tree, i.e. i([w], T)."""
    w = w.letters if isinstance(w, Word) else tuple(w)
    if not w:
        raise SplittingError("translation length of the trivial word is undefined")
    if d.is_hnn:
        return _hnn_translation(d, w)
    return _amalgam_translation(d, w)


def _hnn_translation(d: SplittingDatum, w: tuple) -> int:
    while True:
        gs, es = _britton(d, _raw_syllables(d, w))
        k = len(es)
        if k == 0:
            return 0
        # rotate the last stable letter to the front; a pinch there shows up
        # as a drop in the stable-letter count
        parts = []
        for i in range(k - 1):
            parts.append(gs[i])
            parts.append(d.stable if es[i] > 0 else inverse(d.stable))
        parts.append(gs[k - 1])
        prefix = product(*parts)
        w2 = product(inverse(prefix), w, prefix)
        gs2, es2 = _britton(d, _raw_syllables(d, w2))
        if len(es2) == k:
            return k
        w = w2


def _amalgam_translation(d: SplittingDatum, w: tuple) -> int:
    while True:
        syl = _alternating(d, _raw_syllables(d, w))
        n = len(syl)
        if n <= 1:
            return 0
        if syl[0][0] != syl[-1][0]:
            return n
        first = syl[0][1]
        w = product(inverse(first), w, first)


def core(d: SplittingDatum) -> ConjClass:
    """Conjugacy class of the edge element."""
    if d.is_free:
        raise SplittingError("a free splitting has no core")
    return ConjClass.of(Word(d.edge_a, d.rank))
