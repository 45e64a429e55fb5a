"""Exact arithmetic in a free group of finite rank.

Letters are nonzero integers: ``i`` is the i-th basis letter and ``-i`` its
inverse.  Hot paths in the other modules work on plain tuples through the
tuple-level helpers (``free_reduce``, ``inverse``, ...); :class:`Word` is the
validated value type handed across module boundaries.

String form uses the alphabet ``ALPHABET`` (x, y, z first, then a..w) with
upper case for inverses, so ``"xYx"`` is x y^-1 x.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

ALPHABET = "xyzabcdefghijklmnopqrstuvw"

Letters = tuple  # tuple[int, ...]


class WordError(ValueError):
    """Raised for out-of-range letters, rank mismatches and bad strings."""


# -- tuple level -------------------------------------------------------------

def free_reduce(seq: Iterable[int]) -> tuple:
    out: list = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Sequence[int]) -> tuple:
    return tuple(-x for x in reversed(w))


def product(*words: Sequence[int]) -> tuple:
    out: list = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def power(w: Sequence[int], n: int) -> tuple:
    """w**n for a reduced w."""
    if n == 0 or not w:
        return ()
    if n < 0:
        w, n = inverse(w), -n
    core, conj = cyclic_split(w)
    return tuple(conj) + tuple(core) * n + inverse(conj)


def cyclic_split(w: Sequence[int]) -> tuple:
    """Return ``(core, conj)`` with ``w = conj core conj^-1`` for reduced w."""
    n = len(w)
    i = 0
    while i < n - 1 - i and w[i] == -w[n - 1 - i]:
        i += 1
    return tuple(w[i:n - i]), tuple(w[:i])


def letter_key(x: int) -> tuple:
    # total order x < X < y < Y < ...
    return (abs(x), x < 0)


def word_key(w: Sequence[int]) -> tuple:
    return tuple(2 * abs(x) - (x > 0) for x in w)


def least_rotation(w: Sequence[int]) -> tuple:
    """Lexicographically least rotation of w under ``letter_key`` (Booth)."""
    n = len(w)
    if n == 0:
        return ()
    s = word_key(w) * 2
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    k %= n
    return tuple(w[k:]) + tuple(w[:k])


def _encode(w: Sequence[int]) -> str:
    return "".join(chr(0x8000 + x) for x in w)


def conjugator(u: Sequence[int], v: Sequence[int]) -> Optional[tuple]:
    """Some c with c u c^-1 = v (u, v reduced), or None."""
    cu, pu = cyclic_split(u)
    cv, pv = cyclic_split(v)
    if len(cu) != len(cv):
        return None
    if not cu:
        return ()
    i = _encode(cv + cv).find(_encode(cu))
    if i < 0:
        return None
    # cu = cv[i:] + cv[:i], hence cv = p cu p^-1 with p = cv[:i]
    return product(pv, cv[:i], inverse(pu))


def root(w: Sequence[int]) -> tuple:
    """``(r, e)`` with w = r**e, e >= 1 and r not a proper power."""
    if not w:
        raise WordError("the trivial word has no primitive root")
    core, conj = cyclic_split(w)
    n = len(core)
    for p in range(1, n + 1):
        if n % p == 0 and core[:p] * (n // p) == core:
            return tuple(conj) + core[:p] + inverse(conj), n // p
    raise AssertionError("unreachable")


def cyclic_power(v: Sequence[int], a: Sequence[int]) -> Optional[int]:
    """k with v = a**k, or None.  ``a`` must be nontrivial."""
    if not a:
        raise WordError("cyclic membership needs a nontrivial generator")
    if not v:
        return 0
    rv, ev = root(v)
    ra, ea = root(a)
    if rv == ra:
        sign = 1
    elif rv == inverse(ra):
        sign = -1
    else:
        return None
    if ev % ea:
        return None
    return sign * (ev // ea)


def canonical_cyclic(w: Sequence[int]) -> tuple:
    """Canonical representative of the conjugacy class of a reduced word."""
    return least_rotation(cyclic_split(w)[0])


def letter_count(w: Sequence[int], letter: int) -> int:
    """Occurrences of ``letter`` or its inverse in the cyclic reduction."""
    core, _ = cyclic_split(w)
    a = abs(letter)
    return sum(1 for x in core if abs(x) == a)


# -- strings -------------------------------------------------------------------

def parse_letters(text: str, rank: Optional[int] = None) -> tuple:
    out = []
    for ch in text.strip():
        if ch in " .*":
            continue
        i = ALPHABET.find(ch.lower())
        if i < 0:
            raise WordError(f"bad letter {ch!r} in word {text!r}")
        if rank is not None and i >= rank:
            raise WordError(f"letter {ch!r} out of range for rank {rank}")
        out.append(-(i + 1) if ch.isupper() else i + 1)
    return tuple(out)


def format_letters(w: Sequence[int]) -> str:
    return "".join(ALPHABET[x - 1] if x > 0 else ALPHABET[-x - 1].upper() for x in w)


# -- Word ------------------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    """A freely reduced word in the free group of the given rank."""

    letters: tuple
    rank: int

    def __post_init__(self):
        if self.rank < 2:
            raise WordError("rank must be at least 2")
        prev = 0
        for x in self.letters:
            if x == 0 or abs(x) > self.rank:
                raise WordError(f"letter {x} out of range for rank {self.rank}")
            if x == -prev:
                raise WordError("word is not freely reduced")
            prev = x

    @classmethod
    def parse(cls, text: str, rank: int) -> "Word":
        return reduce(parse_letters(text, rank), rank)

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return format_letters(self.letters) or "1"

    def __mul__(self, other: "Word") -> "Word":
        return mul(self, other)

    def __invert__(self) -> "Word":
        return inv(self)

    def __pow__(self, n: int) -> "Word":
        return Word(power(self.letters, n), self.rank)

    def is_trivial(self) -> bool:
        return not self.letters


def _check_rank(u: Word, v: Word):
    if u.rank != v.rank:
        raise WordError(f"rank mismatch: {u.rank} vs {v.rank}")


def reduce(raw: Iterable[int], rank: int) -> Word:
    raw = tuple(raw)
    for x in raw:
        if x == 0 or abs(x) > rank:
            raise WordError(f"letter {x} out of range for rank {rank}")
    return Word(free_reduce(raw), rank)


def mul(u: Word, v: Word) -> Word:
    _check_rank(u, v)
    return Word(product(u.letters, v.letters), u.rank)


def inv(u: Word) -> Word:
    return Word(inverse(u.letters), u.rank)


def cyclic_reduce(w: Word) -> tuple:
    """``(core, conjugator)`` with ``w = conjugator core conjugator^-1``."""
    core, conj = cyclic_split(w.letters)
    return Word(core, w.rank), Word(conj, w.rank)


def is_conjugate(u: Word, v: Word) -> Optional[Word]:
    """A conjugator c with ``c u c^-1 = v``, or None."""
    _check_rank(u, v)
    c = conjugator(u.letters, v.letters)
    return None if c is None else Word(c, u.rank)


def primitive_root(w: Word) -> tuple:
    r, e = root(w.letters)
    return Word(r, w.rank), e


def cyclic_member(v: Word, a: Word) -> Optional[int]:
    _check_rank(v, a)
    return cyclic_power(v.letters, a.letters)


@dataclass(frozen=True)
class ConjClass:
    """Conjugacy class, stored by its least cyclic rotation."""

    representative: Word

    @classmethod
    def of(cls, w: Word) -> "ConjClass":
        return cls(Word(canonical_cyclic(w.letters), w.rank))

    @property
    def unoriented_key(self) -> tuple:
        r = self.representative.letters
        return min(r, canonical_cyclic(inverse(r)), key=word_key)

    def same_curve(self, other: "ConjClass") -> bool:
        """Equality as unoriented closed curves (w ~ v or w ~ v^-1)."""
        return self.unoriented_key == other.unoriented_key

    def __str__(self):
        return f"[{self.representative}]"
