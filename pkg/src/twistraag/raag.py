"""Right-angled Artin groups: word problem, normal forms, enumeration.

A RAAG word is a tuple of signed vertex letters: vertex ``i`` (0-based) is the
letter ``i + 1``, its inverse ``-(i + 1)``.  Canonical forms are the shortest
words that are lexicographically least among their shuffles, with the letter
order v1 < v1^-1 < v2 < v2^-1 < ...
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .freegroup import letter_key


class RaagError(ValueError):
    pass


@dataclass(frozen=True)
class RaagGraph:
    vertices: tuple
    edges: frozenset  # frozensets {i, j} of vertex indices

    @classmethod
    def from_edges(cls, vertices: Sequence, edges) -> "RaagGraph":
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        es = set()
        for a, b in edges:
            i, j = index.get(a, a), index.get(b, b)
            if i == j:
                raise RaagError(f"loop at {a!r}: graphs must be simple")
            es.add(frozenset((i, j)))
        return cls(vertices, frozenset(es))

    def __len__(self):
        return len(self.vertices)

    def commute(self, i: int, j: int) -> bool:
        return i == j or frozenset((i, j)) in self.edges

    def is_clique(self, verts) -> bool:
        verts = list(verts)
        return all(self.commute(a, b) for k, a in enumerate(verts) for b in verts[k + 1:])

    def is_complete(self) -> bool:
        return self.is_clique(range(len(self.vertices)))

    def parse(self, tokens: Sequence[str]) -> tuple:
        """Parse names like ``["T1", "T2^-1"]`` into a word."""
        index = {str(v): i for i, v in enumerate(self.vertices)}
        out = []
        for tok in tokens:
            name, _, exp = tok.partition("^")
            if name not in index:
                raise RaagError(f"unknown vertex {name!r}")
            e = int(exp) if exp else 1
            out.extend([(index[name] + 1) * (1 if e > 0 else -1)] * abs(e))
        return tuple(out)

    def format(self, w: Sequence[int]) -> str:
        return " ".join(f"{self.vertices[abs(x) - 1]}{'' if x > 0 else '^-1'}" for x in w) or "1"

    def to_dot(self) -> str:
        lines = ["graph coincidence {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e in sorted(tuple(sorted(e)) for e in self.edges):
            lines.append(f'  "{self.vertices[e[0]]}" -- "{self.vertices[e[1]]}";')
        lines.append("}")
        return "\n".join(lines)


def _check(G: RaagGraph, w: Sequence[int]):
    for x in w:
        if x == 0 or abs(x) > len(G.vertices):
            raise RaagError(f"unknown vertex letter {x}")


def _cancel(G: RaagGraph, w: Sequence[int]) -> list:
    # x cancels against an earlier x^-1 separated only by letters commuting with x
    out: list = []
    for x in w:
        v = abs(x) - 1
        for j in range(len(out) - 1, -1, -1):
            y = out[j]
            if y == -x:
                del out[j]
                break
            if abs(y) - 1 == v or not G.commute(abs(y) - 1, v):
                out.append(x)
                break
        else:
            out.append(x)
    return out


def _least_shuffle(G: RaagGraph, w: Sequence[int]) -> tuple:
    # greedy least linear extension of the dependence order of a reduced word
    rest = list(w)
    out = []
    while rest:
        best = None
        blocked: set = set()
        for k, x in enumerate(rest):
            v = abs(x) - 1
            if all(G.commute(v, u) and v != u for u in blocked):
                if best is None or letter_key(x) < letter_key(rest[best]):
                    best = k
            blocked.add(v)
        out.append(rest.pop(best))
    return tuple(out)


def reduce(G: RaagGraph, w: Sequence[int]) -> tuple:
    """Canonical reduced form of w in A(G)."""
    _check(G, w)
    return _least_shuffle(G, _cancel(G, w))


def is_trivial(G: RaagGraph, w: Sequence[int]) -> bool:
    _check(G, w)
    return not _cancel(G, w)


def support(G: RaagGraph, w: Sequence[int]) -> frozenset:
    _check(G, w)
    return frozenset(abs(x) - 1 for x in _cancel(G, w))


def inverse(w: Sequence[int]) -> tuple:
    return tuple(-x for x in reversed(w))


def central_form(G: RaagGraph, w: Sequence[int]) -> list:
    """Split the reduced word into consecutive blocks with clique support."""
    blocks: list = []
    for x in reduce(G, w):
        v = abs(x) - 1
        if blocks and G.is_clique({abs(y) - 1 for y in blocks[-1]} | {v}):
            blocks[-1].append(x)
        else:
            blocks.append([x])
    return [tuple(b) for b in blocks]


def left_greedy(G: RaagGraph, w: Sequence[int]) -> list:
    """Left greedy normal form, blocks listed left to right.

    Every letter is shuffled into the leftmost block it can reach; each block
    then has clique support and every vertex of a block fails to commute with
    some vertex of the block on its left.
    """
    blocks: list = []  # dicts vertex -> exponent
    for x in reduce(G, w):
        v = abs(x) - 1
        s = 1 if x > 0 else -1
        target = None
        for k in range(len(blocks) - 1, -1, -1):
            if v in blocks[k]:
                target = k
                break
            if not all(G.commute(u, v) for u in blocks[k]):
                break
            target = k
        if target is None:
            blocks.append({v: s})
        else:
            blocks[target][v] = blocks[target].get(v, 0) + s
    out = []
    for b in blocks:
        word = []
        for v in sorted(b):
            e = b[v]
            word.extend([(v + 1) if e > 0 else -(v + 1)] * abs(e))
        out.append(tuple(word))
    return out


def is_left_greedy(G: RaagGraph, blocks: Sequence[Sequence[int]]) -> bool:
    """The greediness predicate, read with x = x_k ... x_1 and blocks left to right."""
    supports = [{abs(x) - 1 for x in b} for b in blocks]
    if not all(G.is_clique(s) and s for s in supports):
        return False
    for left, right in zip(supports, supports[1:]):
        for v in right:
            if not any(not G.commute(u, v) for u in left):
                return False
    return True


def enumerate_nontrivial(G: RaagGraph, L: int) -> Iterator[tuple]:
    """One canonical word per nontrivial element of length <= L, by length."""
    letters = [s * (i + 1) for i in range(len(G.vertices)) for s in (1, -1)]
    layer = [()]
    for n in range(1, L + 1):
        seen: dict = {}
        for w in layer:
            for x in letters:
                c = reduce(G, w + (x,))
                if len(c) == n:
                    seen.setdefault(c, None)
        layer = sorted(seen, key=lambda c: [letter_key(x) for x in c])
        yield from layer


def sample(G: RaagGraph, L: int, seed: int) -> tuple:
    """Deterministic pseudo-random nontrivial canonical word of length <= L."""
    rng = random.Random(seed)
    letters = [s * (i + 1) for i in range(len(G.vertices)) for s in (1, -1)]
    while True:
        w = reduce(G, [rng.choice(letters) for _ in range(L)])
        if w:
            return w
