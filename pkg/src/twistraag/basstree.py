"""Bass-Serre trees of one-edge splittings, seen through finite windows.

Vertices are left cosets of vertex groups and edges are left cosets of the
edge group, each stored by a canonical representative (the shortest, then
least, element of the coset, read off a Stallings graph).

Base edge conventions:

* HNN: the base edge joins ``t^-1 V`` to ``V`` and is stabilised by ``<a>``;
  the edge ``g.e`` runs from ``g t^-1 V`` to ``g V``.
* Amalgam: the base edge joins ``A`` to ``B``; ``g.e`` runs from ``gA`` to ``gB``.

With these, the orientation map sends the forward edge ``g.e`` to
``g a^s g^-1`` (s the datum's orientation sign) and the tree twist at the base
vertex induces exactly the generator-level twist of :mod:`twistraag.twist`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Optional, Sequence

from .freegroup import Word, format_letters, inverse, power, product
from .splitting import SplittingDatum, SplittingError, _alternating, _britton, _raw_syllables
from .subgroup import SubgroupGraph, fold


@dataclass(frozen=True)
class TreeVertex:
    rep: tuple
    kind: str  # "V" for HNN, "A"/"B" for amalgams

    def __str__(self):
        return f"{format_letters(self.rep) or '1'}.{self.kind}"


@dataclass(frozen=True)
class TreeEdgeOriented:
    rep: tuple
    forward: bool

    def reverse(self) -> "TreeEdgeOriented":
        return TreeEdgeOriented(self.rep, not self.forward)

    def __str__(self):
        return f"{format_letters(self.rep) or '1'}.e{'' if self.forward else '*'}"


@lru_cache(maxsize=None)
def _edge_graph(d: SplittingDatum) -> SubgroupGraph:
    return fold([d.edge_a], d.rank)


def _group_graph(d: SplittingDatum, kind: str) -> SubgroupGraph:
    return d.b_graph if kind == "B" else d.vertex_graph


def vertex(d: SplittingDatum, g, kind: Optional[str] = None) -> TreeVertex:
    """The vertex g.V (HNN) or g.A / g.B (amalgam)."""
    g = g.letters if isinstance(g, Word) else tuple(g)
    if kind is None:
        kind = "V" if d.is_hnn else "A"
    return TreeVertex(_group_graph(d, kind).left_coset_rep(g), kind)


def base_vertex(d: SplittingDatum) -> TreeVertex:
    return TreeVertex((), "V" if d.is_hnn else "A")


def edge(d: SplittingDatum, g, forward: bool = True) -> TreeEdgeOriented:
    g = g.letters if isinstance(g, Word) else tuple(g)
    if d.is_free:
        return TreeEdgeOriented(g, forward)
    return TreeEdgeOriented(_edge_graph(d).left_coset_rep(g), forward)


def endpoints(d: SplittingDatum, e: TreeEdgeOriented) -> tuple:
    """(start, end) of the oriented edge."""
    if d.is_hnn:
        tail = vertex(d, product(e.rep, inverse(d.stable)), "V")
        head = vertex(d, e.rep, "V")
    else:
        tail = vertex(d, e.rep, "A")
        head = vertex(d, e.rep, "B")
    return (tail, head) if e.forward else (head, tail)


def translate(d: SplittingDatum, w: Sequence[int], x):
    """Left action of w on a vertex or an oriented edge."""
    w = w.letters if isinstance(w, Word) else tuple(w)
    if isinstance(x, TreeVertex):
        return vertex(d, product(w, x.rep), x.kind)
    return edge(d, product(w, x.rep), x.forward)


def o_map(d: SplittingDatum, e: TreeEdgeOriented) -> tuple:
    """The orientation map: a generator of the edge stabiliser, signed by direction."""
    if d.is_free:
        raise SplittingError("free splittings carry no orientation map")
    s = d.orientation if e.forward else -d.orientation
    return product(e.rep, power(d.edge_a, s), inverse(e.rep))


def geodesic_from_base(d: SplittingDatum, v: TreeVertex) -> list:
    """Edges of the geodesic from the base vertex to v, read off the normal form."""
    raw = _raw_syllables(d, v.rep)
    path = []
    if d.is_hnn:
        gs, es = _britton(d, raw)
        h: tuple = ()
        for g, e in zip(gs, es):
            h = product(h, g)
            if e > 0:
                h = product(h, d.stable)
                path.append(edge(d, h, True))
            else:
                path.append(edge(d, h, False))
                h = product(h, inverse(d.stable))
        return path
    syl = _alternating(d, raw)
    if syl and syl[-1][0] == v.kind:
        syl = syl[:-1]
    cur, h = "A", ()
    for kind, s in syl:
        if kind != cur:
            path.append(edge(d, h, cur == "A"))
            cur = kind
        h = product(h, s)
        path.append(edge(d, h, cur == "A"))
        cur = "B" if cur == "A" else "A"
    if cur != v.kind:
        path.append(edge(d, h, cur == "A"))
    return path


def geodesic(d: SplittingDatum, start: TreeVertex, end: TreeVertex) -> list:
    """Unique reduced edge path from start to end (via the two base geodesics)."""
    p = geodesic_from_base(d, start)
    q = geodesic_from_base(d, end)
    j = 0
    while j < len(p) and j < len(q) and p[j] == q[j]:
        j += 1
    return [e.reverse() for e in reversed(p[j:])] + q[j:]


def distance(d: SplittingDatum, u: TreeVertex, v: TreeVertex) -> int:
    return len(geodesic(d, u, v))


def path_product(d: SplittingDatum, path: Iterable[TreeEdgeOriented], invert: bool = False) -> tuple:
    """o(e1) ... o(ek), or o(e1)^-1 ... o(ek)^-1 when ``invert``."""
    out: tuple = ()
    for e in path:
        o = o_map(d, e)
        out = product(out, inverse(o) if invert else o)
    return out


def tree_twist(d: SplittingDatum, v0: TreeVertex, v: TreeVertex) -> TreeVertex:
    return vertex(d, product(path_product(d, geodesic(d, v0, v)), v.rep), v.kind)


def tree_twist_inverse(d: SplittingDatum, v0: TreeVertex, v: TreeVertex) -> TreeVertex:
    return vertex(d, product(path_product(d, geodesic(d, v0, v), invert=True), v.rep), v.kind)


def conjugation_action(d: SplittingDatum, w, v0: Optional[TreeVertex] = None) -> Word:
    """The automorphism w -> delta w delta^-1 = o(e1)...o(ek) w, e_i the geodesic v0 -> w.v0."""
    letters = w.letters if isinstance(w, Word) else tuple(w)
    if v0 is None:
        v0 = base_vertex(d)
    path = geodesic(d, v0, translate(d, letters, v0))
    return Word(product(path_product(d, path), letters), d.rank)


# -- windows --------------------------------------------------------------------------

def _group_sample(graph: SubgroupGraph, length: int) -> list:
    """Distinct elements given by words of length <= ``length`` in the generators."""
    gens = [g for g in graph.generators if g]
    letters = [i + 1 for i in range(len(gens))] + [-(i + 1) for i in range(len(gens))]
    seen = {(): None}
    for n in range(1, length + 1):
        for word in cartesian(letters, repeat=n):
            seen.setdefault(graph.substitute(word), None)
    return list(seen)


def neighbours(d: SplittingDatum, v: TreeVertex, sample_length: int = 1) -> list:
    """Some (edge, vertex) pairs adjacent to v: finitely many of infinitely many."""
    out = []
    if d.is_hnn:
        for g in _group_sample(d.vertex_graph, sample_length):
            h = product(v.rep, g)
            out.append(edge(d, product(h, d.stable), True))
            out.append(edge(d, h, False))
    else:
        for g in _group_sample(_group_graph(d, v.kind), sample_length):
            out.append(edge(d, product(v.rep, g), v.kind == "A"))
    return [(e, endpoints(d, e)[1]) for e in out]


class TreeWindow:
    """Ball of the given radius about the base vertex, pruned to short representatives."""

    def __init__(self, d: SplittingDatum, radius: int = 3, sample_length: int = 1,
                 max_rep_length: int = 6):
        self.datum = d
        self.radius = radius
        v0 = base_vertex(d)
        self.vertices = {v0: 0}
        self.edges: dict = {}
        queue = deque([v0])
        while queue:
            v = queue.popleft()
            r = self.vertices[v]
            if r == radius:
                continue
            for e, u in neighbours(d, v, sample_length):
                if len(u.rep) > max_rep_length:
                    continue
                if u not in self.vertices:
                    self.vertices[u] = r + 1
                    queue.append(u)
                key = e if e.forward else e.reverse()
                self.edges.setdefault(key, None)

    def adjacent_pairs(self) -> list:
        out = []
        for e in self.edges:
            a, b = endpoints(self.datum, e)
            if a in self.vertices and b in self.vertices:
                out.append((a, b))
        return out

    def to_dot(self, annotate_twist: bool = True) -> str:
        d = self.datum
        v0 = base_vertex(d)
        names = {v: f"v{i}" for i, v in enumerate(self.vertices)}
        lines = ["graph window {"]
        for v, n in names.items():
            label = str(v)
            if annotate_twist and not d.is_free:
                label += f"\\n-> {tree_twist(d, v0, v)}"
            lines.append(f'  {n} [label="{label}"];')
        for a, b in self.adjacent_pairs():
            lines.append(f"  {names[a]} -- {names[b]};")
        lines.append("}")
        return "\n".join(lines)
