import random
from fractions import Fraction as F

import pytest

from fstrand.binary import TailWord, rational_to_tails
from fstrand.generators import (
    all_words,
    random_rearrangement,
    random_word,
    word_to_diagram,
    word_to_map,
)
from fstrand.plmap import X0, X1, PLMap, compose, identity, invert
from fstrand.strand import (
    concatenate,
    equal_reduced,
    evaluate,
    from_pl_map,
    from_tree_pair,
    generator_diagram,
    invert_diagram,
    is_reduced,
    reduce,
    to_dot,
    to_pl_map,
    to_text,
    trivial_diagram,
)

SEED = 424242

LEAF = None
EX_11_DOMAIN = ((LEAF, LEAF), LEAF)  # left caret over three leaves
EX_11_RANGE = (LEAF, (LEAF, LEAF))  # right caret


def expansion(q, bits=12):
    """Finite dyadic expansion of q as a TailWord .bits(0)."""
    digits = []
    x = F(q)
    while x:
        x *= 2
        d = 1 if x >= 1 else 0
        digits.append(d)
        x -= d
    return TailWord(tuple(digits), (0,))


def test_from_tree_pair_trivial():
    d = from_tree_pair(LEAF, LEAF)
    assert to_pl_map(d) == identity(1)
    assert d.vertex_count() == 0


def test_from_tree_pair_x0():
    d = from_tree_pair((LEAF, (LEAF, LEAF)), ((LEAF, LEAF), LEAF))
    assert to_pl_map(d) == X0


def test_from_tree_pair_example_element():
    d = from_tree_pair(EX_11_DOMAIN, EX_11_RANGE)
    f = to_pl_map(d)
    assert f.points == ((0, 0), (F(1, 4), F(1, 2)), (F(1, 2), F(3, 4)), (1, 1))
    # .01a -> .10a
    sink, out = evaluate(d, 0, TailWord((0, 1), (1,)))
    assert sink == 0 and out == TailWord((1, 0), (1,))


def test_from_tree_pair_leaf_mismatch():
    with pytest.raises(ValueError):
        from_tree_pair((LEAF, LEAF), LEAF)


def test_evaluate_trivial_and_fixed_zero():
    d = trivial_diagram()
    w = TailWord((1, 0), (0, 1))
    assert evaluate(d, 0, w) == (0, w)
    d0 = generator_diagram(0)
    zero = TailWord((), (0,))
    assert evaluate(d0, 0, zero) == (0, zero)


def test_evaluate_agrees_with_map_on_random_dyadics():
    rng = random.Random(SEED)
    for _ in range(100):
        word = random_word(rng, 6)
        d = word_to_diagram(word)
        f = word_to_map(word)
        x = F(rng.randrange(0, 256), 256)
        sink, out = evaluate(d, 0, expansion(x))
        assert sink + out.value() == f(x)


def test_concatenate_is_composition():
    rng = random.Random(SEED + 1)
    for _ in range(50):
        w1 = random_word(rng, 4)
        w2 = random_word(rng, 4)
        d = concatenate(word_to_diagram(w1), word_to_diagram(w2))
        # concatenation applies the first diagram first
        assert to_pl_map(d) == compose(word_to_map(w1), word_to_map(w2))


def test_concatenate_arity_mismatch():
    two = from_pl_map(identity(2))
    with pytest.raises(ValueError):
        concatenate(two, trivial_diagram())


def test_reduce_cancels_inverse_pair():
    d = concatenate(generator_diagram(0), generator_diagram(0, -1))
    r = reduce(d)
    assert r.vertex_count() == 0
    assert equal_reduced(r, trivial_diagram())


def test_reduce_preserves_semantics():
    rng = random.Random(SEED + 2)
    for _ in range(100):
        word = random_word(rng, 6)
        d = word_to_diagram(word)
        f = to_pl_map(d)
        r = reduce(d)
        assert is_reduced(r)
        assert to_pl_map(r) == f


def test_reduce_is_confluent():
    rng = random.Random(SEED + 3)
    for trial in range(100):
        d = word_to_diagram(random_word(rng, 6))
        r1 = reduce(d, rng=random.Random(trial))
        r2 = reduce(d, rng=random.Random(trial + 10_000))
        assert equal_reduced(r1, r2)


def test_free_reduction_of_words():
    d1 = word_to_diagram([(0, 1), (0, -1), (1, 1)])
    d2 = word_to_diagram([(1, 1)])
    assert equal_reduced(reduce(d1), reduce(d2))


def test_equal_reduced_distinguishes():
    a = reduce(word_to_diagram([(0, 1), (1, 1)]))
    b = reduce(word_to_diagram([(1, 1), (0, 1)]))
    assert equal_reduced(a, a)
    assert not equal_reduced(a, b)
    with pytest.raises(ValueError):
        equal_reduced(word_to_diagram([(0, 1), (0, -1)]), a)


def test_relator_diagrams_reduce_to_trivial():
    a = [(0, 1), (1, -1)]
    for c in ([(0, -1), (1, 1), (0, 1)], [(0, -1), (0, -1), (1, 1), (0, 1), (0, 1)]):
        inv_a = [(g, -e) for g, e in reversed(a)]
        inv_c = [(g, -e) for g, e in reversed(c)]
        d = word_to_diagram(a + c + inv_a + inv_c)
        assert equal_reduced(reduce(d), trivial_diagram())


def test_invert_diagram():
    d = generator_diagram(0)
    assert to_pl_map(invert_diagram(d)) == invert(X0)
    assert to_pl_map(invert_diagram(invert_diagram(d))) == X0
    assert equal_reduced(invert_diagram(trivial_diagram()), trivial_diagram())
    assert to_pl_map(invert_diagram(d))(F(1, 4)) == F(1, 2)


def test_from_pl_map_round_trip_generators():
    for f in (X0, X1, invert(X0), compose(X0, X1)):
        d = from_pl_map(f)
        assert is_reduced(d)
        assert to_pl_map(d) == f


def test_from_pl_map_equals_reduced_word_diagram():
    for word in all_words(3):
        d = reduce(word_to_diagram(word))
        assert equal_reduced(d, from_pl_map(word_to_map(word)))


def test_from_pl_map_rejects_non_thompson():
    with pytest.raises(ValueError):
        from_pl_map(PLMap([(0, 0), (F(1, 3), F(1, 2)), (1, 1)]))


def test_groupoid_round_trips():
    rng = random.Random(SEED + 4)
    for _ in range(60):
        f = random_rearrangement(rng, rng.randint(1, 3), rng.randint(1, 3))
        d = from_pl_map(f)
        assert to_pl_map(d) == f
        assert is_reduced(d)
        assert d.m == f.x_hi and d.n == f.y_hi


def test_multi_source_evaluation():
    rng = random.Random(SEED + 5)
    for _ in range(40):
        m = rng.randint(1, 3)
        n = rng.randint(1, 3)
        f = random_rearrangement(rng, m, n)
        d = from_pl_map(f)
        k = rng.randrange(m)
        x = k + F(rng.randrange(0, 64), 64)
        sink, out = evaluate(d, k, expansion(x - k))
        assert sink + out.value() == f(x)


def test_text_and_dot_output():
    d = generator_diagram(0)
    text = to_text(d)
    assert "sources 1" in text and "split" in text and "merge" in text
    dot = to_dot(d)
    assert dot.startswith("digraph") and "invtriangle" in dot
