import random
from math import gcd

import pytest

from jsjsplit import Move, SeifertSymbol


def random_symbol(rng: random.Random, allow_closed=True, max_pairs=4) -> SeifertSymbol:
    genus = rng.randint(-3, 3)
    h = rng.randint(0 if allow_closed else 1, 3)
    pairs = []
    for _ in range(rng.randint(0, max_pairs)):
        p = rng.randint(1, 6)
        q = rng.randint(-8, 8)
        while gcd(p, q) != 1:
            q = rng.randint(-8, 8)
        pairs.append((p, q))
    return SeifertSymbol(genus, h, tuple(pairs))


def random_move(rng: random.Random, s: SeifertSymbol) -> Move:
    k = len(s.pairs)
    options = ["add"]
    if k >= 2:
        options += ["shift", "swap"]
    if s.boundary > 0 and k >= 1:
        options.append("twist")
    trivial = [i for i, pq in enumerate(s.pairs) if pq == (1, 0)]
    if trivial:
        options.append("drop")
    kind = rng.choice(options)
    if kind == "add":
        return Move.add_trivial()
    if kind == "drop":
        return Move.drop_trivial(rng.choice(trivial))
    if kind == "twist":
        return Move.twist(rng.randrange(k), rng.choice([1, -1]))
    if kind == "shift":
        i, j = rng.sample(range(k), 2)
        return Move.shift(i, j)
    perm = list(range(k))
    i, j = rng.sample(range(k), 2)
    perm[i], perm[j] = perm[j], perm[i]
    return Move.permute(perm)


@pytest.fixture
def rng():
    return random.Random(20240901)
