import random
from fractions import Fraction as F

import pytest

from cases import FOUR_FIXED, conjugate_by
from fstrand.binary import cyclic_normal, rational_to_tails
from fstrand.generators import random_word, word_to_map
from fstrand.plmap import (
    X0,
    X1,
    CantorPoint,
    PLMap,
    PointwiseInterval,
    compose,
    fixed_intervals,
    identity,
    invert,
    is_one_bump,
    plog,
    plog_inv,
    rescale_to_unit,
    slope_at,
)

SEED = 7091


def test_x0_convention():
    assert X0(F(1, 2)) == F(1, 4)
    assert X0(F(3, 4)) == F(1, 2)
    assert X1(F(1, 2)) == F(1, 2)
    assert X1(F(3, 4)) == F(5, 8)


def test_normalization_drops_redundant_breakpoints():
    f = PLMap([(0, 0), (F(1, 4), F(1, 4)), (F(1, 2), F(1, 2)), (1, 1)])
    assert f == identity(1)
    assert len(f.points) == 2


def test_compose_and_invert():
    assert compose(X0, invert(X0)) == identity(1)
    assert invert(invert(X0)) == X0
    assert invert(identity(3)) == identity(3)
    c = compose(X0, X0)
    assert c.slope(0, "right") == F(1, 4)
    assert invert(X0)(F(1, 4)) == F(1, 2)


def test_compose_requires_matching_intervals():
    half = PLMap([(0, 0), (1, 2)])
    with pytest.raises(ValueError):
        compose(half, half)


def test_standard_relators_are_trivial():
    a = [(0, 1), (1, -1)]
    for c in ([(0, -1), (1, 1), (0, 1)], [(0, -1), (0, -1), (1, 1), (0, 1), (0, 1)]):
        inv_a = [(g, -e) for g, e in reversed(a)]
        inv_c = [(g, -e) for g, e in reversed(c)]
        relator = a + c + inv_a + inv_c
        assert word_to_map(relator) == identity(1)


def test_evaluate_example_element():
    # the element defined by .00a -> .0a, .01a -> .10a, .1a -> .11a
    f = PLMap([(0, 0), (F(1, 4), F(1, 2)), (F(1, 2), F(3, 4)), (1, 1)])
    assert f(F(3, 8)) == F(5, 8)
    assert f(0) == 0
    assert f == invert(X0)


def test_evaluate_domain_errors():
    with pytest.raises(ValueError):
        X0(F(3, 2))


def test_slope_at_examples():
    assert slope_at(FOUR_FIXED, F(3, 4), "left") == -1
    assert slope_at(FOUR_FIXED, F(3, 4), "right") == 1
    assert slope_at(identity(1), F(1, 2), "left") == 0
    # an element fixing 1/3 has slope a power of 4 there
    assert slope_at(FOUR_FIXED, F(1, 3), "left") % 2 == 0
    with pytest.raises(ValueError):
        slope_at(X0, 0, "left")


def test_fixed_intervals_identity():
    assert fixed_intervals(identity(1)) == [PointwiseInterval(F(0), F(1))]


def test_fixed_intervals_x0():
    assert [iv.slope_exp for iv in fixed_intervals(X0)] == [-1, 1]


def test_fixed_intervals_x1():
    ivs = fixed_intervals(X1)
    assert ivs[0] == PointwiseInterval(F(0), F(1, 2))
    assert [iv.slope_exp for iv in ivs[1:]] == [-1, 1]
    assert ivs[1].value == F(1, 2) and ivs[2].value == 1


def test_fixed_intervals_four_fixed_element():
    ivs = fixed_intervals(FOUR_FIXED)
    assert [iv.slope_exp for iv in ivs] == [-1, 2, -1, 1, -1]
    assert [iv.value for iv in ivs] == [0, F(1, 3), F(3, 4), F(3, 4), 1]
    # the dyadic interior point appears as two Cantor points, left then right
    assert ivs[2].word.period == (1,)
    assert ivs[3].word.period == (0,)


def test_fixed_intervals_requires_square():
    with pytest.raises(ValueError):
        fixed_intervals(PLMap([(0, 0), (1, 2)]))


def test_conjugation_moves_fixed_data():
    rng = random.Random(SEED)
    done = 0
    while done < 25:
        f = word_to_map(random_word(rng, 5, min_len=1))
        g = word_to_map(random_word(rng, 5, min_len=1))
        h = conjugate_by(f, g)
        fa = fixed_intervals(f)
        ha = fixed_intervals(h)
        assert len(fa) == len(ha)
        for a, b in zip(fa, ha):
            if isinstance(a, PointwiseInterval):
                assert isinstance(b, PointwiseInterval)
                assert g(a.lo) == b.lo and g(a.hi) == b.hi
            else:
                assert isinstance(b, CantorPoint)
                assert a.slope_exp == b.slope_exp
                assert cyclic_normal(a.word.period) == cyclic_normal(b.word.period)
                assert g(a.value) == b.value
        done += 1


def test_slope_law_on_random_elements():
    rng = random.Random(SEED + 1)
    for _ in range(40):
        f = word_to_map(random_word(rng, 5, min_len=1))
        for iv in fixed_intervals(f):
            if isinstance(iv, CantorPoint):
                assert iv.slope_exp % len(iv.word.period) == 0


def test_evaluate_keeps_dyadics_dyadic():
    rng = random.Random(SEED + 2)
    for _ in range(60):
        f = word_to_map(random_word(rng, 5))
        k = rng.randint(1, 8)
        x = F(rng.randrange(0, 1 << k), 1 << k)
        y = f(x)
        assert y.denominator & (y.denominator - 1) == 0


def test_is_one_bump():
    assert is_one_bump(invert(X0))
    assert not is_one_bump(identity(1))
    assert not is_one_bump(FOUR_FIXED)
    assert not is_one_bump(X0)


def test_plog_endpoints_and_midpoint():
    for k in range(-3, 4):
        assert plog(F(2) ** k) == k
    assert plog(3) == F(3, 2)
    with pytest.raises(ValueError):
        plog(0)


def test_plog_doubling_identity():
    rng = random.Random(SEED + 3)
    for _ in range(50):
        k = rng.randint(1, 10)
        x = F(rng.randrange(1, 1 << k), 1 << k)
        assert plog(2 * x) - plog(x) == 1
        assert plog_inv(plog(x)) == x


def test_rescale_to_unit():
    assert rescale_to_unit(0, 1) == identity(1)
    assert rescale_to_unit(0, 2) == PLMap([(0, 0), (2, 1)])
    r = rescale_to_unit(F(1, 4), F(3, 8))
    assert r.is_thompson_like()
    assert (r(F(1, 4)), r(F(3, 8))) == (0, 1)
    with pytest.raises(ValueError):
        rescale_to_unit(F(1, 3), F(1, 2))


def test_json_round_trip():
    for f in (X0, X1, FOUR_FIXED, identity(2)):
        assert PLMap.from_json_dict(f.to_json_dict()) == f


def test_dyadic_fixed_point_expansions_match_sides():
    # endpoints of a pointwise interval belong to the interval itself
    ivs = fixed_intervals(X1)
    assert isinstance(ivs[0], PointwiseInterval)
    (lower, upper) = sorted(rational_to_tails(F(1, 2)))
    assert ivs[1].word == upper  # approached from the right
