import random
from fractions import Fraction as F

import pytest

from fstrand.binary import (
    TailWord,
    apply_replacement,
    rational_to_tails,
    same_tail,
    tail_to_rational,
)

SEED = 20240117


def test_canonical_period_is_primitive():
    assert TailWord((), (0, 1, 0, 1)).period == (0, 1)
    assert TailWord((), (1, 1, 1)).period == (1,)


def test_canonical_preperiod_is_minimal():
    # .01(01) denotes the same number as .(01)
    assert TailWord((0, 1), (0, 1)) == TailWord((), (0, 1))
    # trailing bit equal to the rotated period's last bit gets absorbed
    w = TailWord((1, 0), (1, 0))
    assert w == TailWord((), (1, 0)).prepend((1, 0))
    assert len(w.pre) == 0


def test_cantor_pair_stays_distinct():
    lower = TailWord((1, 0), (1,))
    upper = TailWord((1, 1), (0,))
    assert lower.value() == upper.value() == F(3, 4)
    assert lower != upper


def test_tail_to_rational_examples():
    assert tail_to_rational(TailWord((), (0, 1))) == F(1, 3)
    assert tail_to_rational(TailWord((), (0,))) == 0
    assert tail_to_rational(TailWord((), (1, 1, 0, 1))) == F(13, 15)


def test_tail_value_against_digit_sum():
    rng = random.Random(SEED)
    for _ in range(50):
        w = TailWord(
            tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 5))),
            tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 5))),
        )
        approx = sum(F(w.digit(i), 2 ** (i + 1)) for i in range(40))
        assert abs(w.value() - approx) < F(1, 2**38)


def test_rational_to_tails_examples():
    assert rational_to_tails(F(3, 4)) == {TailWord((1, 0), (1,)), TailWord((1, 1), (0,))}
    assert rational_to_tails(0) == {TailWord((), (0,))}
    assert rational_to_tails(F(1, 5)) == {TailWord((), (0, 0, 1, 1))}


def test_rational_to_tails_rejects_outside_unit():
    with pytest.raises(ValueError):
        rational_to_tails(F(3, 2))


def test_round_trip_random_words():
    rng = random.Random(SEED + 1)
    for _ in range(200):
        w = TailWord(
            tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 6))),
            tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 6))),
        )
        assert w in rational_to_tails(tail_to_rational(w))


def test_same_tail_examples():
    (t13,) = rational_to_tails(F(1, 3))
    (t712,) = rational_to_tails(F(7, 12))
    (t15,) = rational_to_tails(F(1, 5))
    assert same_tail(t13, t712)
    assert F(7, 12) - F(1, 3) == F(1, 4)  # dyadic difference
    assert same_tail(t13, t13)
    assert not same_tail(t13, t15)


def test_same_tail_is_an_equivalence():
    rng = random.Random(SEED + 2)
    pool = [
        TailWord(
            tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 4))),
            tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 4))),
        )
        for _ in range(120)
    ]
    for a in pool[:40]:
        assert same_tail(a, a)
    for a in pool[:40]:
        for b in pool[40:80]:
            assert same_tail(a, b) == same_tail(b, a)
    for a in pool[:25]:
        for b in pool[25:50]:
            if not same_tail(a, b):
                continue
            for c in pool[50:75]:
                if same_tail(b, c):
                    assert same_tail(a, c)


def test_apply_replacement_examples():
    w = TailWord((1, 0, 1, 0), (1, 0))
    out = apply_replacement(((1, 0), ()), w)
    assert out == TailWord((1, 0), (1, 0)) == TailWord((), (1, 0))
    assert apply_replacement(((), ()), w) == w
    out = apply_replacement(((1, 1, 0, 0), (1, 1, 0)), TailWord((1, 1, 0, 0), (0,)))
    assert out == TailWord((1, 1, 0), (0,))


def test_apply_replacement_needs_matching_prefix():
    with pytest.raises(ValueError):
        apply_replacement(((1, 1), (0,)), TailWord((0, 1), (0,)))


def test_apply_replacement_preserves_tail():
    rng = random.Random(SEED + 3)
    for _ in range(100):
        w = TailWord(
            tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 4))),
            tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 4))),
        )
        k = rng.randint(0, 3)
        mu = w.digits(k)
        nu = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 4)))
        assert same_tail(w, apply_replacement((mu, nu), w))


def test_parse_and_str_round_trip():
    for text in [".10(01)", ".(0)", ".1101(10)", ".(1101)"]:
        w = TailWord.parse(text)
        assert TailWord.parse(str(w)) == w
    assert str(TailWord.parse(".10(01)")) == ".10(01)"
    with pytest.raises(ValueError):
        TailWord.parse("10(01)")
    with pytest.raises(ValueError):
        TailWord.parse(".10()")
