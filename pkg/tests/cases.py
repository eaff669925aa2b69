"""Hand-built elements shared across test modules."""

from fractions import Fraction as F

from fstrand.plmap import PLMap, compose, invert

# Element of F with fixed points 0, 1/3, 3/4, 1 and slopes 1/2, 4, 1/2|2, 1/2:
# near 0 it prepends a digit, near 1/3 it swallows one period 01, at 3/4 the
# two sides behave differently, near 1 it prepends a 1.
FOUR_FIXED = PLMap(
    [
        (0, 0),
        (F(1, 4), F(1, 8)),
        (F(5, 16), F(1, 4)),
        (F(3, 8), F(1, 2)),
        (F(1, 2), F(5, 8)),
        (F(3, 4), F(3, 4)),
        (F(13, 16), F(7, 8)),
        (F(7, 8), F(15, 16)),
        (1, 1),
    ]
)

# Square rearrangement of [0,3], linear with slope 1/16 on [1,2] where it
# acts as .b -> .1101b; its middle fixed point is 1 + 13/15 with a
# four-merge loop of pattern 1101.
MERGE_LOOP_1101 = PLMap(
    [
        (0, 0),
        (F(13, 16), F(13, 8)),
        (1, F(29, 16)),
        (2, F(15, 8)),
        (F(23, 8), F(11, 4)),
        (3, 3),
    ]
)

# A square rearrangement of [0,4] together with three rescalings of [0,4]
# onto [0,1]; conjugating by them gives three elements of F that partition
# [0,1] into four intervals in three different ways, all conjugate to the
# groupoid element.
GROUPOID_SIGMA = PLMap([(0, 0), (1, 2), (2, 3), (4, 4)])

_RESCALINGS = [
    PLMap([(0, 0), (1, F(1, 4)), (2, F(1, 2)), (3, F(3, 4)), (4, 1)]),
    PLMap([(0, 0), (1, F(1, 2)), (2, F(3, 4)), (3, F(7, 8)), (4, 1)]),
    PLMap([(0, 0), (1, F(1, 8)), (2, F(1, 4)), (3, F(1, 2)), (4, 1)]),
]

CONJUGATE_TRIO = [
    compose(compose(invert(phi), GROUPOID_SIGMA), phi) for phi in _RESCALINGS
]


def conjugate_by(f, g):
    """g f g^{-1} as a function: apply g^{-1}, then f, then g."""
    return compose(compose(invert(g), f), g)
