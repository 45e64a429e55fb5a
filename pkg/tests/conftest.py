import itertools
import random

import pytest

from twistraag.fixtures import shipped
from twistraag.freegroup import free_reduce


def all_reduced(rank, max_len, min_len=1):
    letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    out = []
    for n in range(min_len, max_len + 1):
        for w in itertools.product(letters, repeat=n):
            if all(w[k] != -w[k + 1] for k in range(n - 1)):
                out.append(w)
    return out


def random_word(rng, rank, max_len, min_len=0):
    letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    while True:
        w = free_reduce(rng.choice(letters) for _ in range(rng.randint(min_len, max_len)))
        if len(w) >= min_len:
            return w


@pytest.fixture(scope="session")
def f2():
    return shipped("f2_pair")


@pytest.fixture(scope="session")
def f3():
    return shipped("f3")


@pytest.fixture
def rng():
    return random.Random(20261016)


def fixture_splittings():
    """Every Z-splitting in every shipped bundle, as (label, datum)."""
    from twistraag.fixtures import shipped_names
    out = []
    for b in shipped_names():
        bundle = shipped(b)
        for name, d in bundle.splittings.items():
            if not d.is_free:
                out.append((f"{b}:{name}", d))
    return out
