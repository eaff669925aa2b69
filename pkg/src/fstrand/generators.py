"""Seeded random generators for elements, diagrams, and rearrangements.

Everything takes an explicit random.Random so corpora are reproducible;
callers own (and should report) the seed.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .binary import TailWord
from .plmap import PLMap, X0, X1, compose, identity, invert
from .strand import StrandDiagram, concatenate, generator_diagram, trivial_diagram

__all__ = [
    "GENERATORS",
    "all_words",
    "random_word",
    "word_to_map",
    "word_to_diagram",
    "random_dyadic",
    "random_tail_word",
    "random_rearrangement",
    "random_conjugate_pair",
    "distinct_elements",
]

# letters (generator index, exponent); words multiply as functions,
# rightmost letter acting first
GENERATORS = ((0, 1), (0, -1), (1, 1), (1, -1))

_BASE = {0: X0, 1: X1}


def word_to_map(word) -> PLMap:
    f = identity(1)
    for which, e in reversed(list(word)):
        base = _BASE[which]
        f = compose(f, base if e == 1 else invert(base))
    return f


def word_to_diagram(word) -> StrandDiagram:
    d = trivial_diagram()
    for which, e in reversed(list(word)):
        d = concatenate(d, generator_diagram(which, e))
    return d


def all_words(max_len: int):
    """Every word over the four letters up to the given length."""
    for n in range(max_len + 1):
        yield from itertools.product(GENERATORS, repeat=n)


def random_word(rng, max_len: int, min_len: int = 0):
    return tuple(rng.choice(GENERATORS) for _ in range(rng.randint(min_len, max_len)))


def random_dyadic(rng, max_exp: int = 8) -> Fraction:
    """Uniform dyadic in [0, 1) with denominator up to 2^max_exp."""
    k = rng.randint(1, max_exp)
    return Fraction(rng.randrange(0, 1 << k), 1 << k)


def random_tail_word(rng, max_pre: int = 4, max_period: int = 4) -> TailWord:
    pre = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, max_pre)))
    period = tuple(rng.randint(0, 1) for _ in range(rng.randint(1, max_period)))
    return TailWord(pre, period)


def _random_partition(rng, m: int, leaves: int):
    parts = [(Fraction(i), Fraction(i + 1)) for i in range(m)]
    while len(parts) < leaves:
        i = rng.randrange(len(parts))
        lo, hi = parts[i]
        mid = (lo + hi) / 2
        parts[i : i + 1] = [(lo, mid), (mid, hi)]
    return parts


def random_rearrangement(rng, m: int, n: int, extra_splits: int = 4) -> PLMap:
    """Random Thompson-like map [0,m] -> [0,n] from a random partition pair."""
    leaves = max(m, n) + rng.randint(0, extra_splits)
    dom = _random_partition(rng, m, leaves)
    ran = _random_partition(rng, n, leaves)
    pts = [(Fraction(0), Fraction(0))]
    for (_, b), (_, d) in zip(dom, ran):
        pts.append((b, d))
    return PLMap(pts)


def random_conjugate_pair(rng, max_len: int = 5):
    """(f, g f g^{-1}) for random words f and g."""
    f = word_to_map(random_word(rng, max_len, min_len=1))
    g = word_to_map(random_word(rng, max_len, min_len=1))
    h = compose(compose(invert(g), f), g)
    return f, h


def distinct_elements(max_len: int):
    """Map each distinct element of the ball of radius max_len to one word."""
    seen = {}
    for word in all_words(max_len):
        f = word_to_map(word)
        if f not in seen:
            seen[f] = word
    return seen
