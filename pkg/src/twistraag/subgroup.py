"""Stallings graphs of finitely generated subgroups, with constructive membership.

Every edge carries a witness, a word over the generator alphabet (generator
``i`` of the input list is letter ``i + 1``).  The invariant kept through every
fold is that the witnesses read along a closed path at the basepoint, once the
generating words are substituted back in, reduce to the label of that path.
Folds keep it by a gauge change at a non-base vertex: multiplying the
witnesses of all edges entering a vertex by h on the right, and of all edges
leaving it by h^-1 on the left, changes no basepoint loop.
"""
from __future__ import annotations

from functools import cached_property
from typing import Optional, Sequence

from .freegroup import Word, free_reduce, inverse, letter_key, product

BASE = 0


class SubgroupGraph:
    """Folded, basepointed core graph of ``<generators>`` in F_rank.

    Build with :func:`fold`; instances are treated as immutable afterwards.
    ``adj[v]`` maps a signed label to ``(target, witness)``.
    """

    def __init__(self, rank: int, generators: Sequence[tuple], adj: dict):
        self.ambient_rank = rank
        self.generators = tuple(tuple(g) for g in generators)
        self.adj = adj

    @property
    def num_vertices(self) -> int:
        return len(self.adj)

    @property
    def num_edges(self) -> int:
        return sum(1 for v in self.adj for lab in self.adj[v] if lab > 0)

    def rank(self) -> int:
        if not self.num_edges:
            return 0
        return self.num_edges - self.num_vertices + 1

    def is_whole_group(self) -> bool:
        return (self.num_vertices == 1
                and len(self.adj[BASE]) == 2 * self.ambient_rank)

    def read(self, w: Sequence[int]) -> tuple:
        """Follow w from the basepoint; return ``(vertex, letters_read, witness)``."""
        v = BASE
        wit: list = []
        for i, x in enumerate(w):
            step = self.adj[v].get(x)
            if step is None:
                return v, i, free_reduce(wit)
            v, p = step
            wit.extend(p)
        return v, len(w), free_reduce(wit)

    def contains(self, w) -> bool:
        w = _letters(w)
        v, n, _ = self.read(w)
        return n == len(w) and v == BASE

    def express(self, w) -> Optional[tuple]:
        """Word over generator indices evaluating to w, or None if w is not a member."""
        w = _letters(w)
        v, n, wit = self.read(w)
        if n != len(w) or v != BASE:
            return None
        return wit

    def substitute(self, expr: Sequence[int]) -> tuple:
        return product(*(self.generators[x - 1] if x > 0 else inverse(self.generators[-x - 1])
                         for x in expr))

    @cached_property
    def _geodesics(self) -> dict:
        # lex-least shortest path from the basepoint to every vertex
        paths = {BASE: ()}
        layer = [BASE]
        while layer:
            nxt = []
            for v in sorted(layer, key=lambda u: [letter_key(x) for x in paths[u]]):
                for lab in sorted(self.adj[v], key=letter_key):
                    t = self.adj[v][lab][0]
                    if t not in paths:
                        paths[t] = paths[v] + (lab,)
                        nxt.append(t)
            layer = nxt
        return paths

    def right_coset_rep(self, h: Sequence[int]) -> tuple:
        """Shortest (then least) element of the right coset H h."""
        v, n, _ = self.read(h)
        return self._geodesics[v] + tuple(h[n:])

    def left_coset_rep(self, g: Sequence[int]) -> tuple:
        """Canonical representative of the left coset g H."""
        return inverse(self.right_coset_rep(inverse(g)))

    def canonical_form(self) -> tuple:
        """Vertex-relabelling-invariant description, for isomorphism tests."""
        order = {v: i for i, v in enumerate(
            sorted(self._geodesics, key=lambda u: (len(self._geodesics[u]),
                                                   [letter_key(x) for x in self._geodesics[u]])))}
        return tuple(sorted((order[v], lab, order[t])
                            for v in self.adj for lab, (t, _) in self.adj[v].items() if lab > 0))

    def to_dot(self) -> str:
        from .freegroup import format_letters
        lines = ["digraph stallings {", f'  {BASE} [shape=doublecircle];']
        for v in sorted(self.adj):
            for lab, (t, wit) in sorted(self.adj[v].items()):
                if lab > 0:
                    lines.append(f'  {v} -> {t} [label="{format_letters((lab,))}"];')
        lines.append("}")
        return "\n".join(lines)


def _letters(w) -> tuple:
    return w.letters if isinstance(w, Word) else tuple(w)


def fold(generators: Sequence, rank: Optional[int] = None) -> SubgroupGraph:
    """Fold the bouquet of the given reduced words into a Stallings graph."""
    gens = [_letters(g) for g in generators]
    if rank is None:
        rank = generators[0].rank if generators and isinstance(generators[0], Word) else \
            max([abs(x) for g in gens for x in g], default=2)
    # edges: id -> [src, label > 0, dst, witness]
    edges: dict = {}
    nxt_vertex = 1
    nxt_edge = 0
    for i, g in enumerate(gens):
        if not g:
            continue
        prev = BASE
        for j, x in enumerate(g):
            last = j == len(g) - 1
            if last:
                tgt = BASE
            else:
                tgt, nxt_vertex = nxt_vertex, nxt_vertex + 1
            wit = (i + 1,) if j == 0 else ()
            if x > 0:
                edges[nxt_edge] = [prev, x, tgt, wit]
            else:
                edges[nxt_edge] = [tgt, -x, prev, inverse(wit)]
            nxt_edge += 1
            prev = tgt
    _fold_edges(edges)
    return SubgroupGraph(rank, gens, _prune(edges))


def _fold_edges(edges: dict):
    while True:
        pair = _find_fold(edges)
        if pair is None:
            return
        (u, v1, p1, e1), (_, v2, p2, e2) = pair
        if v1 != v2:
            if v2 != BASE:
                z, h = v2, product(inverse(p2), p1)
            else:
                z, h = v1, product(inverse(p1), p2)
            _gauge(edges, z, h)
            keep = v1 if z == v2 else v2
            gone = v2 if z == v2 else v1
            for e in edges.values():
                if e[0] == gone:
                    e[0] = keep
                if e[2] == gone:
                    e[2] = keep
        del edges[e2]


def _half_edges(edges: dict):
    for eid, (s, lab, t, w) in edges.items():
        yield s, lab, t, w, eid
        yield t, -lab, s, inverse(w), eid


def _find_fold(edges: dict):
    seen: dict = {}
    for u, lab, t, w, eid in _half_edges(edges):
        other = seen.get((u, lab))
        if other is not None and other[3] != eid:
            return other, (u, t, w, eid)
        seen[(u, lab)] = (u, t, w, eid)
    return None


def _gauge(edges: dict, z: int, h: tuple):
    hi = inverse(h)
    for e in edges.values():
        if e[0] == z and e[2] == z:
            e[3] = product(hi, e[3], h)
        elif e[0] == z:
            e[3] = product(hi, e[3])
        elif e[2] == z:
            e[3] = product(e[3], h)


def _prune(edges: dict) -> dict:
    while True:
        deg: dict = {}
        for s, _, t, _ in edges.values():
            deg[s] = deg.get(s, 0) + 1
            deg[t] = deg.get(t, 0) + 1
        hanging = {v for v, d in deg.items() if d == 1 and v != BASE}
        if not hanging:
            break
        for eid in [k for k, e in edges.items() if e[0] in hanging or e[2] in hanging]:
            del edges[eid]
    adj: dict = {BASE: {}}
    for s, lab, t, w in edges.values():
        adj.setdefault(s, {})[lab] = (t, w)
        adj.setdefault(t, {})[-lab] = (s, inverse(w))
    return adj


def rank(g: SubgroupGraph) -> int:
    return g.rank()


def is_whole_group(g: SubgroupGraph) -> bool:
    return g.is_whole_group()


def contains(g: SubgroupGraph, w) -> bool:
    return g.contains(w)


def express(g: SubgroupGraph, w) -> Optional[tuple]:
    return g.express(w)
