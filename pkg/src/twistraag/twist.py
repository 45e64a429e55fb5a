"""Automorphisms of F as image tables, with the Dehn twist of a one-edge splitting.

An automorphism stores the images of the basis letters together with the
images under its inverse, so composition and powers never need to invert a
general automorphism.  Images are kept freely reduced.

Twist convention (orientation s = +1 or -1):

* HNN:     identity on V, ``stable -> stable * a^s``
* Amalgam: identity on A, ``b -> w^s b w^-s`` for b in B
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .freegroup import Word, WordError, conjugator, format_letters, inverse, parse_letters, power as wpower, product
from .splitting import SplittingDatum, SplittingError, validate

MAX_IMAGE_LENGTH = 10 ** 6


class ResourceGuard(RuntimeError):
    """An image exceeded the configured length bound."""


def _apply(images: Sequence[tuple], w: Sequence[int], limit: Optional[int] = None) -> tuple:
    out: list = []
    for x in w:
        img = images[x - 1] if x > 0 else inverse(images[-x - 1])
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    if limit is not None and len(out) > limit:
        raise ResourceGuard(f"image of length {len(out)} exceeds the guard of {limit} letters")
    return tuple(out)


@dataclass(frozen=True)
class TwistAutomorphism:
    rank: int
    forward: tuple
    backward: tuple
    provenance: Optional[SplittingDatum] = None

    def __call__(self, w):
        return apply(self, w)

    def __mul__(self, other: "TwistAutomorphism") -> "TwistAutomorphism":
        return compose(self, other)

    def __str__(self):
        return ", ".join(f"{format_letters((i + 1,))} -> {format_letters(img) or '1'}"
                         for i, img in enumerate(self.forward))

    def max_image_length(self) -> int:
        return max(len(w) for w in self.forward)

    def to_json(self) -> dict:
        return {"rank": self.rank,
                "forward": [format_letters(w) for w in self.forward],
                "backward": [format_letters(w) for w in self.backward]}

    @classmethod
    def from_json(cls, data: dict) -> "TwistAutomorphism":
        r = data["rank"]
        fw = tuple(parse_letters(s, r) for s in data["forward"])
        bw = tuple(parse_letters(s, r) for s in data["backward"])
        phi = cls(r, fw, bw)
        check_inverse_pair(phi)
        return phi


def identity(rank: int) -> TwistAutomorphism:
    basis = tuple((i,) for i in range(1, rank + 1))
    return TwistAutomorphism(rank, basis, basis)


def check_inverse_pair(phi: TwistAutomorphism):
    for i in range(1, phi.rank + 1):
        if _apply(phi.backward, phi.forward[i - 1]) != (i,) or _apply(phi.forward, phi.backward[i - 1]) != (i,):
            raise WordError("forward and backward image tables are not mutually inverse")


def _twist_images(d: SplittingDatum, sign: int) -> tuple:
    gens = d.generators
    if d.kind == "HNN":
        gen_images = list(gens[:-1]) + [product(d.stable, wpower(d.edge_a, sign))]
    else:
        w = wpower(d.edge_a, sign)
        na = len(d.a_generators)
        gen_images = list(gens[:na]) + [product(w, g, inverse(w)) for g in gens[na:]]
    return tuple(_apply(gen_images, e) for e in d.letter_expressions)


def from_splitting(d: SplittingDatum) -> TwistAutomorphism:
    """Dehn twist of an (adapted) one-edge Z-splitting."""
    if d.is_free:
        raise SplittingError("Dehn twists need a Z-splitting, not a free splitting")
    report = validate(d)
    if not report.adapted:
        raise SplittingError(f"invalid splitting datum: {report.failures()}")
    return TwistAutomorphism(d.rank, _twist_images(d, d.orientation), _twist_images(d, -d.orientation), d)


def apply(phi: TwistAutomorphism, w, limit: Optional[int] = None):
    if isinstance(w, Word):
        if w.rank != phi.rank:
            raise WordError(f"rank mismatch: {w.rank} vs {phi.rank}")
        return Word(_apply(phi.forward, w.letters, limit), phi.rank)
    return _apply(phi.forward, w, limit)


def compose(phi: TwistAutomorphism, psi: TwistAutomorphism,
            limit: int = MAX_IMAGE_LENGTH) -> TwistAutomorphism:
    """phi o psi: first psi, then phi."""
    if phi.rank != psi.rank:
        raise WordError(f"rank mismatch: {phi.rank} vs {psi.rank}")
    fw = tuple(_apply(phi.forward, w, limit) for w in psi.forward)
    bw = tuple(_apply(psi.backward, w, limit) for w in phi.backward)
    return TwistAutomorphism(phi.rank, fw, bw)


def inverse_of(phi: TwistAutomorphism) -> TwistAutomorphism:
    return TwistAutomorphism(phi.rank, phi.backward, phi.forward)


def power(phi: TwistAutomorphism, n: int, limit: int = MAX_IMAGE_LENGTH) -> TwistAutomorphism:
    if n < 0:
        phi, n = inverse_of(phi), -n
    result = identity(phi.rank)
    sq = phi
    while n:
        if n & 1:
            result = compose(result, sq, limit)
        n >>= 1
        if n:
            sq = compose(sq, sq, limit)
    return result


def inner_conjugator(images: Sequence[tuple]) -> Optional[tuple]:
    """u with images[i] = u x_i u^-1 for every i, or None (rank >= 2).

    The conjugators taking x1 to its image form the coset c1<x1>, those for x2
    the coset c2<x2>; their intersection is read off c2^-1 c1 = x2^m x1^j.
    """
    c1 = conjugator((1,), images[0])
    if c1 is None:
        return None
    c2 = conjugator((2,), images[1])
    if c2 is None:
        return None
    h = product(inverse(c2), c1)
    i = 0
    while i < len(h) and abs(h[i]) == 2:
        i += 1
    rest = h[i:]
    if any(abs(x) != 1 for x in rest):
        return None
    # c1 x1^k = c2 x2^m  forces  k = -j where h = x2^m x1^j
    j = sum(rest)
    u = product(c1, wpower((1,), -j))
    ui = inverse(u)
    for k, img in enumerate(images):
        if product(u, (k + 1,), ui) != img:
            return None
    return u


def is_inner(phi: TwistAutomorphism) -> Optional[Word]:
    u = inner_conjugator(phi.forward)
    return None if u is None else Word(u, phi.rank)


def outer_equal(phi: TwistAutomorphism, psi: TwistAutomorphism) -> bool:
    return is_inner(compose(inverse_of(psi), phi)) is not None


def commutator(phi: TwistAutomorphism, psi: TwistAutomorphism) -> TwistAutomorphism:
    """phi psi phi^-1 psi^-1."""
    return compose(compose(phi, psi), compose(inverse_of(phi), inverse_of(psi)))


def commutator_is_inner(phi: TwistAutomorphism, psi: TwistAutomorphism) -> bool:
    return outer_equal(compose(phi, psi), compose(psi, phi))


# -- elementary Nielsen automorphisms ----------------------------------------------

def transvection(rank: int, i: int, j: int, right: bool = True, sign: int = 1) -> TwistAutomorphism:
    """x_i -> x_i x_j^sign (right) or x_j^sign x_i (left); i != j."""
    if i == j:
        raise WordError("transvection needs distinct letters")
    fw = [(k,) for k in range(1, rank + 1)]
    bw = list(fw)
    t = (sign * j,)
    fw[i - 1] = ((i,) + t) if right else (t + (i,))
    bw[i - 1] = ((i, -t[0])) if right else ((-t[0], i))
    return TwistAutomorphism(rank, tuple(fw), tuple(bw))


def inversion(rank: int, i: int) -> TwistAutomorphism:
    fw = [(k,) for k in range(1, rank + 1)]
    fw[i - 1] = (-i,)
    return TwistAutomorphism(rank, tuple(fw), tuple(fw))


def permutation(rank: int, perm: Sequence[int]) -> TwistAutomorphism:
    """x_k -> x_perm[k-1] (perm is a permutation of 1..rank)."""
    fw = tuple((p,) for p in perm)
    bw = [None] * rank
    for k, p in enumerate(perm):
        bw[p - 1] = (k + 1,)
    return TwistAutomorphism(rank, fw, tuple(bw))


def conjugation(rank: int, u: Sequence[int]) -> TwistAutomorphism:
    """The inner automorphism x -> u x u^-1."""
    u = tuple(u)
    ui = inverse(u)
    fw = tuple(product(u, (k,), ui) for k in range(1, rank + 1))
    bw = tuple(product(ui, (k,), u) for k in range(1, rank + 1))
    return TwistAutomorphism(rank, fw, bw)
