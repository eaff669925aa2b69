"""Exact piecewise-linear homeomorphisms with rational breakpoints.

A PLMap is an increasing PL bijection between two closed rational
intervals, stored as its normalized breakpoint list (redundant collinear
points removed, so equality is structural).  Thompson's groupoid elements
are the Thompson-like maps [0,m] -> [0,n]: all slopes powers of two and
all breakpoints dyadic.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .binary import TailWord, is_dyadic, rational_to_tails

__all__ = [
    "PLMap",
    "CantorPoint",
    "PointwiseInterval",
    "MapComponent",
    "identity",
    "compose",
    "invert",
    "evaluate",
    "slope_at",
    "fixed_intervals",
    "fixed_point_components",
    "is_one_bump",
    "plog",
    "plog_inv",
    "rescale_to_unit",
    "dyadic_interval_map",
    "pow2_exponent",
    "X0",
    "X1",
]


def pow2_exponent(q):
    """Exponent e with q = 2^e, or None if q is not a power of two."""
    q = Fraction(q)
    n, d = q.numerator, q.denominator
    if n <= 0:
        return None
    if d == 1:
        return n.bit_length() - 1 if n & (n - 1) == 0 else None
    if n == 1:
        return -(d.bit_length() - 1)  # d is a power of two in lowest terms
    return None


class PLMap:
    """Increasing PL bijection given by breakpoints [(x0,y0), ..., (xk,yk)]."""

    __slots__ = ("points",)

    def __init__(self, points):
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        if len(pts) < 2:
            raise ValueError("a PLMap needs at least two breakpoints")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x1 <= x0 or y1 <= y0:
                raise ValueError(f"breakpoints not strictly increasing: {pts}")
        # drop interior collinear points
        out = [pts[0]]
        for i in range(1, len(pts) - 1):
            a, b, c = out[-1], pts[i], pts[i + 1]
            if (b[1] - a[1]) * (c[0] - b[0]) == (c[1] - b[1]) * (b[0] - a[0]):
                continue
            out.append(b)
        out.append(pts[-1])
        self.points = tuple(out)

    # -- geometry ---------------------------------------------------------

    @property
    def x_lo(self):
        return self.points[0][0]

    @property
    def x_hi(self):
        return self.points[-1][0]

    @property
    def y_lo(self):
        return self.points[0][1]

    @property
    def y_hi(self):
        return self.points[-1][1]

    def segments(self):
        return zip(self.points, self.points[1:])

    def is_square(self) -> bool:
        return self.x_lo == self.y_lo and self.x_hi == self.y_hi

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if x < self.x_lo or x > self.x_hi:
            raise ValueError(f"{x} outside domain [{self.x_lo}, {self.x_hi}]")
        xs = [p[0] for p in self.points]
        i = bisect_right(xs, x) - 1
        if i == len(xs) - 1:
            return self.points[-1][1]
        (x0, y0), (x1, y1) = self.points[i], self.points[i + 1]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def inverse_value(self, y) -> Fraction:
        y = Fraction(y)
        if y < self.y_lo or y > self.y_hi:
            raise ValueError(f"{y} outside range [{self.y_lo}, {self.y_hi}]")
        ys = [p[1] for p in self.points]
        i = bisect_right(ys, y) - 1
        if i == len(ys) - 1:
            return self.points[-1][0]
        (x0, y0), (x1, y1) = self.points[i], self.points[i + 1]
        return x0 + (x1 - x0) * (y - y0) / (y1 - y0)

    def slope(self, x, side: str) -> Fraction:
        """Slope of the segment on the given side ('left'/'right') of x."""
        x = Fraction(x)
        if side not in ("left", "right"):
            raise ValueError(f"bad side {side!r}")
        if x < self.x_lo or x > self.x_hi:
            raise ValueError(f"{x} outside domain")
        if side == "left" and x == self.x_lo:
            raise ValueError("no segment to the left of the domain start")
        if side == "right" and x == self.x_hi:
            raise ValueError("no segment to the right of the domain end")
        for (x0, y0), (x1, y1) in self.segments():
            if (side == "right" and x0 <= x < x1) or (side == "left" and x0 < x <= x1):
                return (y1 - y0) / (x1 - x0)
        raise AssertionError("unreachable")

    def restrict(self, a, b) -> "PLMap":
        a, b = Fraction(a), Fraction(b)
        if not (self.x_lo <= a < b <= self.x_hi):
            raise ValueError(f"[{a}, {b}] not inside the domain")
        pts = [(a, self(a))]
        pts += [p for p in self.points if a < p[0] < b]
        pts.append((b, self(b)))
        return PLMap(pts)

    def is_thompson_like(self) -> bool:
        for (x0, y0), (x1, y1) in self.segments():
            if pow2_exponent((y1 - y0) / (x1 - x0)) is None:
                return False
        return all(is_dyadic(x) and is_dyadic(y) for x, y in self.points)

    # -- housekeeping ------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, PLMap) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        pts = ", ".join(f"({x},{y})" for x, y in self.points)
        return f"PLMap[{pts}]"

    def to_json_dict(self) -> dict:
        if self.x_lo != 0 or self.y_lo != 0:
            raise ValueError("JSON form only covers maps [0,m] -> [0,n]")
        if self.x_hi.denominator != 1 or self.y_hi.denominator != 1:
            raise ValueError("JSON form only covers integer interval lengths")
        return {
            "domain": int(self.x_hi),
            "range": int(self.y_hi),
            "breakpoints": [
                [f"{x.numerator}/{x.denominator}", f"{y.numerator}/{y.denominator}"]
                for x, y in self.points
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PLMap":
        try:
            m = int(data["domain"])
            n = int(data["range"])
            pts = [(Fraction(x), Fraction(y)) for x, y in data["breakpoints"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad PLMap JSON: {exc}") from exc
        f = cls(pts)
        if (f.x_lo, f.x_hi, f.y_lo, f.y_hi) != (0, m, 0, n):
            raise ValueError("breakpoints do not match the declared domain/range")
        return f


def identity(m=1) -> PLMap:
    return PLMap([(0, 0), (m, m)])


# generator convention for F
X0 = PLMap([(0, 0), (Fraction(1, 2), Fraction(1, 4)), (Fraction(3, 4), Fraction(1, 2)), (1, 1)])
X1 = PLMap(
    [
        (0, 0),
        (Fraction(1, 2), Fraction(1, 2)),
        (Fraction(3, 4), Fraction(5, 8)),
        (Fraction(7, 8), Fraction(3, 4)),
        (1, 1),
    ]
)


def evaluate(f: PLMap, x) -> Fraction:
    return f(x)


def compose(f: PLMap, g: PLMap) -> PLMap:
    """g after f (apply f first); f's range must equal g's domain."""
    if (f.y_lo, f.y_hi) != (g.x_lo, g.x_hi):
        raise ValueError(
            f"range [{f.y_lo},{f.y_hi}] of the first map does not match "
            f"domain [{g.x_lo},{g.x_hi}] of the second"
        )
    xs = {p[0] for p in f.points}
    xs.update(f.inverse_value(q) for q, _ in g.points)
    return PLMap([(x, g(f(x))) for x in sorted(xs)])


def invert(f: PLMap) -> PLMap:
    return PLMap([(y, x) for x, y in f.points])


def slope_at(f: PLMap, x, side: str) -> int:
    """Slope exponent e (slope = 2^e) on the given side of x."""
    s = f.slope(x, side)
    e = pow2_exponent(s)
    if e is None:
        raise ValueError(f"slope {s} at {x} ({side}) is not a power of two")
    return e


# -- fixed point analysis --------------------------------------------------


@dataclass(frozen=True)
class CantorPoint:
    """An isolated fixed point seen from one side of the Cantor set.

    The point is offset + value(word); the word's period is the tail that
    classifies the orbit, and slope_exp is the slope exponent of the map on
    the side the word names (a ...(1) word is the left avatar, a ...(0)
    word the right avatar, a non-dyadic word both sides at once).
    """

    offset: int
    word: TailWord
    slope_exp: int

    @property
    def value(self) -> Fraction:
        return self.offset + self.word.value()

    @property
    def tail(self) -> tuple:
        return self.word.period


@dataclass(frozen=True)
class PointwiseInterval:
    """A maximal interval fixed pointwise; its endpoints are cut points."""

    lo: Fraction
    hi: Fraction


@dataclass(frozen=True)
class MapComponent:
    """Restriction of a square map between two consecutive cut points."""

    lo: Fraction
    hi: Fraction
    pointwise: bool
    intervals: tuple


def _require_square(f: PLMap):
    if not f.is_square():
        raise ValueError("fixed point analysis needs a square map")


def _fixed_pieces(f: PLMap):
    """Maximal subsets where f(x) = x, as closed [lo, hi] (lo = hi allowed)."""
    raw = []
    for (x0, y0), (x1, y1) in f.segments():
        s = (y1 - y0) / (x1 - x0)
        if s == 1:
            if y0 == x0:
                raw.append((x0, x1))
        else:
            xs = (y0 - s * x0) / (1 - s)
            if x0 <= xs <= x1:
                raw.append((xs, xs))
    raw.sort()
    merged = []
    for lo, hi in raw:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return [(lo, hi) for lo, hi in merged]


def _point_avatar(t: Fraction, side: str):
    """(offset, word) for the expansion of t approached from `side`."""
    i = t.numerator // t.denominator
    frac = t - i
    if frac == 0:
        if side == "left":
            return i - 1, TailWord((), (1,))
        return i, TailWord((), (0,))
    words = rational_to_tails(frac)
    if len(words) == 1:
        (w,) = words
        return i, w
    want = (1,) if side == "left" else (0,)
    (w,) = [w for w in words if w.period == want]
    return i, w


def fixed_point_components(f: PLMap):
    """Cut-point decomposition of a square map, with fixed intervals per part.

    Cut points are the isolated dyadic fixed points together with the
    endpoints of maximal pointwise-fixed intervals; each component between
    consecutive cut points contributes either a single PointwiseInterval or
    the ordered CantorPoints of its fixed set (component endpoints carry the
    slope on the side facing into the component, which doubles an interior
    dyadic fixed point across its two neighbouring components).
    """
    _require_square(f)
    pieces = _fixed_pieces(f)
    cuts = {f.x_lo, f.x_hi}
    for lo, hi in pieces:
        if lo == hi:
            if is_dyadic(lo):
                cuts.add(lo)
        else:
            cuts.add(lo)
            cuts.add(hi)
    cuts = sorted(cuts)
    comps = []
    for a, b in zip(cuts, cuts[1:]):
        if any(lo <= a and b <= hi for lo, hi in pieces if lo < hi):
            comps.append(MapComponent(a, b, True, (PointwiseInterval(a, b),)))
            continue
        items = [CantorPoint(*_point_avatar(a, "right"), slope_at(f, a, "right"))]
        for lo, hi in pieces:
            if lo == hi and a < lo < b:
                e_l = slope_at(f, lo, "left")
                e_r = slope_at(f, lo, "right")
                if e_l != e_r:
                    raise ValueError(
                        f"non-dyadic fixed point {lo} with unequal side slopes"
                    )
                items.append(CantorPoint(*_point_avatar(lo, "right"), e_r))
        items.append(CantorPoint(*_point_avatar(b, "left"), slope_at(f, b, "left")))
        comps.append(MapComponent(a, b, False, tuple(items)))
    return comps


def fixed_intervals(f: PLMap):
    """Ordered fixed intervals of a square map.

    Isolated interior dyadic fixed points appear twice (left avatar, then
    right avatar); pointwise intervals appear once and absorb their own
    endpoints.
    """
    return [iv for comp in fixed_point_components(f) for iv in comp.intervals]


def is_one_bump(f: PLMap) -> bool:
    """True iff f is square on [0,1] and f(x) > x strictly on (0, 1)."""
    if not f.is_square() or (f.x_lo, f.x_hi) != (0, 1):
        raise ValueError("one-bump test needs a square map on [0,1]")
    interior = f.points[1:-1]
    if not interior:
        return False
    return all(y > x for x, y in interior)


# -- the piecewise-linear logarithm ----------------------------------------


def _floor_log2(x: Fraction) -> int:
    n, d = x.numerator, x.denominator

    def le_pow(k):  # 2^k <= n/d
        return (d << k) <= n if k >= 0 else d <= (n << -k)

    k = n.bit_length() - d.bit_length()
    if not le_pow(k):
        k -= 1
    while le_pow(k + 1):
        k += 1
    return k


def plog(x) -> Fraction:
    """PL logarithm: [2^k, 2^(k+1)] is sent linearly onto [k, k+1]."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("plog needs a positive argument")
    k = _floor_log2(x)
    return k + x / (1 << k) - 1 if k >= 0 else k + x * (1 << -k) - 1


def plog_inv(y) -> Fraction:
    y = Fraction(y)
    k = y.numerator // y.denominator
    scale = Fraction(1 << k) if k >= 0 else Fraction(1, 1 << -k)
    return scale * (y - k + 1)


# -- dyadic rescaling -------------------------------------------------------


def _standard_dyadic_partition(a: Fraction, b: Fraction):
    """Greedy left-to-right cover of [a,b] by standard dyadic intervals."""
    out = []
    x = a
    while x < b:
        width = b - x
        j = _floor_log2(width)
        while True:
            w = Fraction(1 << j) if j >= 0 else Fraction(1, 1 << -j)
            if (x / w).denominator == 1 and x + w <= b:
                break
            j -= 1
        out.append((x, x + w))
        x += w
    return out


def rescale_to_unit(a, b) -> PLMap:
    """A Thompson-like homeomorphism [a, b] -> [0, 1] for dyadic a < b."""
    a, b = Fraction(a), Fraction(b)
    if not (is_dyadic(a) and is_dyadic(b)):
        raise ValueError("endpoints must be dyadic")
    if not a < b:
        raise ValueError("need a < b")
    src = _standard_dyadic_partition(a, b)
    k = len(src)
    # left comb partition of [0,1] with k standard dyadic leaves
    dst = []
    lo = Fraction(0)
    for i in range(k):
        hi = 1 - Fraction(1, 1 << (i + 1)) if i < k - 1 else Fraction(1)
        dst.append((lo, hi))
        lo = hi
    pts = [(src[0][0], Fraction(0))]
    for (s0, s1), (d0, d1) in zip(src, dst):
        pts.append((s1, d1))
    return PLMap(pts)


def dyadic_interval_map(a0, a1, b0, b1) -> PLMap:
    """Some Thompson-like homeomorphism [a0,a1] -> [b0,b1], dyadic ends."""
    return compose(rescale_to_unit(a0, a1), invert(rescale_to_unit(b0, b1)))
