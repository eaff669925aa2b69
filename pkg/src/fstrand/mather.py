"""Mather invariants for one-bump elements.

A one-bump map with slope 2^m at 0 and 2^-n at 1 acts on small
neighbourhoods of the endpoints as multiplication; pushing a fundamental
domain near 0 forward with a high iterate and reading both ends in PLog
coordinates gives a Thompson-like degree-one circle map R/mZ -> R/nZ, the
Mather invariant.  It matches the annular picture: removing the outer
split loop and the inner merge loop from the reduced annular diagram
leaves a cylindrical (m,n)-diagram, which encodes the same circle map up
to integer rotations of both circles.
"""

from __future__ import annotations

from fractions import Fraction

from .annular import MERGE, SPLIT, AnnularStrandDiagram
from .plmap import PLMap, compose, is_one_bump, plog, slope_at
from .strand import StrandDiagram, _Builder, _grow_merges, _grow_splits, _rules, is_reduced

__all__ = [
    "CircleMap",
    "CylindricalStrandDiagram",
    "mather_invariant",
    "rotate",
    "mather_equivalent",
    "cylindrical_from_annular",
    "circle_map_from_cylindrical",
    "cylindrical_from_circle_map",
]


class CircleMap:
    """Thompson-like degree-one circle map R/mZ -> R/nZ.

    Stored as the lift on [0, m] normalized so the value at 0 lies in
    [0, n); equality is structural equality of normalized lifts.
    """

    __slots__ = ("m", "n", "lift")

    def __init__(self, m: int, n: int, lift: PLMap):
        if lift.x_lo != 0 or lift.x_hi != m:
            raise ValueError("lift must live on [0, m]")
        if lift.y_hi - lift.y_lo != n:
            raise ValueError("lift must have degree n")
        if not 0 <= lift.y_lo < n:
            raise ValueError("lift must be normalized with value(0) in [0, n)")
        if not lift.is_thompson_like():
            raise ValueError("circle map must be Thompson-like")
        self.m = m
        self.n = n
        self.lift = lift

    @classmethod
    def from_lift(cls, m: int, n: int, lift: PLMap) -> "CircleMap":
        q = lift.y_lo / n
        k = q.numerator // q.denominator
        if k == 0:
            return cls(m, n, lift)
        return cls(m, n, PLMap([(x, y - k * n) for x, y in lift.points]))

    def __call__(self, theta) -> Fraction:
        """Value of the lift, extended by the degree over all of R."""
        theta = Fraction(theta)
        k, r = divmod(theta, self.m)
        return self.lift(r) + k * self.n

    def __eq__(self, other):
        return (
            isinstance(other, CircleMap)
            and (self.m, self.n) == (other.m, other.n)
            and self.lift == other.lift
        )

    def __hash__(self):
        return hash((self.m, self.n, self.lift))

    def __repr__(self):
        return f"CircleMap(R/{self.m}Z -> R/{self.n}Z, lift={self.lift!r})"

    def to_json_dict(self) -> dict:
        y0 = self.lift.y_lo
        return {
            "m": self.m,
            "n": self.n,
            "offset": f"{y0.numerator}/{y0.denominator}",
            "breakpoints": [
                [f"{x.numerator}/{x.denominator}", f"{y.numerator}/{y.denominator}"]
                for x, y in self.lift.points
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CircleMap":
        try:
            m = int(data["m"])
            n = int(data["n"])
            pts = [(Fraction(x), Fraction(y)) for x, y in data["breakpoints"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad CircleMap JSON: {exc}") from exc
        return cls(m, n, PLMap(pts))


def rotate(c: CircleMap, k: int, side: str) -> CircleMap:
    """Pre- or postcompose with an integer rotation (side 'domain'/'range')."""
    if side == "domain":
        k %= c.m
        if k == 0:
            return c
        xs = {Fraction(0), Fraction(c.m)}
        xs.update((x - k) % c.m for x, _ in c.lift.points)
        pts = [(t, c(t + k)) for t in sorted(xs)]
        return CircleMap.from_lift(c.m, c.n, PLMap(pts))
    if side == "range":
        k %= c.n
        if k == 0:
            return c
        return CircleMap.from_lift(
            c.m, c.n, PLMap([(x, y + k) for x, y in c.lift.points])
        )
    raise ValueError(f"bad side {side!r}")


def mather_equivalent(c1: CircleMap, c2: CircleMap) -> bool:
    """True iff the maps differ by integer rotations of both circles."""
    if (c1.m, c1.n) != (c2.m, c2.n):
        return False
    for k in range(c1.m):
        rk = rotate(c1, k, "domain")
        for l in range(c1.n):
            if rotate(rk, l, "range") == c2:
                return True
    return False


def _neg_log2(x: Fraction) -> int:
    """a with 2^-a the largest power of two <= x (x in (0,1])."""
    a = 0
    while Fraction(1, 1 << a) > x:
        a += 1
    return a


def _complement_plog_map(lo: Fraction, hi: Fraction) -> PLMap:
    """s -> -plog(1-s) on [lo, hi] with 0 < lo < hi < 1."""
    breaks = {lo, hi}
    t = 1
    while 1 - Fraction(1, 1 << t) < hi:
        s = 1 - Fraction(1, 1 << t)
        if lo < s < hi:
            breaks.add(s)
        t += 1
    return PLMap(sorted((s, -plog(1 - s)) for s in breaks))


def mather_invariant(f: PLMap, extra_steps: int = 0) -> CircleMap:
    """The circle map R/mZ -> R/nZ induced by a one-bump element.

    extra_steps pushes the iterate beyond the minimal one; the result must
    not depend on it, which the tests exercise.
    """
    if not is_one_bump(f):
        raise ValueError("the Mather invariant needs a one-bump map")
    m = slope_at(f, Fraction(0), "right")
    n = -slope_at(f, Fraction(1), "left")
    if m < 1:
        raise ValueError("slope at 0 must exceed 1")
    a = _neg_log2(f.points[1][0])
    b = _neg_log2(1 - f.points[-2][0])
    eps = Fraction(1, 1 << a)
    delta = Fraction(1, 1 << b)
    lo = Fraction(1, 1 << (a + m))
    hi = eps

    x = f(lo)
    steps = 1
    while x <= 1 - delta:
        x = f(x)
        steps += 1
    steps += extra_steps

    push = f.restrict(lo, hi)
    for _ in range(steps - 1):
        push = compose(push, f.restrict(push.y_lo, push.y_hi))

    shift = PLMap([(0, -a - m), (m, -a)])
    plog_inv_seg = PLMap([(j, Fraction(2) ** j) for j in range(-a - m, -a + 1)])
    tail = _complement_plog_map(push.y_lo, push.y_hi)
    lift = compose(compose(compose(shift, plog_inv_seg), push), tail)
    if lift.y_hi - lift.y_lo != n:
        raise ValueError("lift degree mismatch: map is not one-bump Thompson-like")
    return CircleMap.from_lift(m, n, lift)


# -- cylindrical strand diagrams -------------------------------------------------


class CylindricalStrandDiagram:
    """(m,n)-strand diagram whose sources and sinks carry cyclic order.

    The wrapped square diagram fixes a base ordering; relabelling the base
    points acts by integer rotations on the corresponding circle map.
    """

    __slots__ = ("diagram",)

    def __init__(self, diagram: StrandDiagram):
        self.diagram = diagram

    @property
    def m(self):
        return self.diagram.m

    @property
    def n(self):
        return self.diagram.n

    def is_reduced(self) -> bool:
        return is_reduced(self.diagram)

    def __repr__(self):
        return f"CylindricalStrandDiagram(m={self.m}, n={self.n}, vertices={self.diagram.vertex_count()})"


def cylindrical_from_annular(a: AnnularStrandDiagram) -> CylindricalStrandDiagram:
    """Delete the outer split loop and inner merge loop of a one-bump diagram."""
    a._need_reduced()
    if len(a.slots) != 1 or a.slots[0][0] != "comp":
        raise ValueError("not a one-bump diagram: expected a single component")
    comp = a.slots[0][1]
    if len(comp.loops) != 2:
        raise ValueError("not a one-bump diagram: expected exactly two loops")
    outer, inner = comp.loops
    if outer.kind != SPLIT or inner.kind != MERGE:
        raise ValueError("not a one-bump diagram: outer loop must split")
    cycle_plugs = set(outer.cycle_plugs) | set(inner.cycle_plugs)
    # Circle positions run against the loop flow on both ends: consuming one
    # more zero around the split loop lowers PLog t by one, and pushing one
    # more one around the merge loop raises -PLog(1-t) by one.
    source_of = {}
    dangle_of = {v: ("o", v, 1 - plug[2]) for v, plug in zip(outer.verts, outer.cycle_plugs)}
    for i, v in enumerate(reversed(outer.verts)):
        source_of[dangle_of[v]] = i
    sink_of = {}
    inner_plugs = set(inner.cycle_plugs)
    for j, v in enumerate(reversed(inner.verts)):
        # the cycle enters each merge through exactly one input; the other dangles
        (cyc_side,) = [s for s in (0, 1) if a.prevs[("i", v, s)] in inner_plugs]
        sink_of[("i", v, 1 - cyc_side)] = j
    loop_verts = set(outer.verts) | set(inner.verts)
    kinds = {v: k for v, k in a.kinds.items() if v not in loop_verts}
    nexts = {}
    for p, bjoin in a.nexts.items():
        if p in cycle_plugs:
            continue
        tail = ("src", source_of[p]) if p in source_of else p
        head = ("snk", sink_of[bjoin]) if bjoin in sink_of else bjoin
        nexts[tail] = head
    return CylindricalStrandDiagram(StrandDiagram(kinds, nexts, len(outer.verts), len(inner.verts)))


def circle_map_from_cylindrical(c: CylindricalStrandDiagram, labeling=(0, 0)) -> CircleMap:
    """Read the circle map off a labeled reduced cylindrical diagram.

    labeling = (base source, base sink); integer offsets of the lift are
    fixed by continuity around the domain circle.
    """
    if not c.is_reduced():
        raise ValueError("cylindrical diagram must be reduced")
    d = c.diagram
    s0, k0 = labeling
    m, n = d.m, d.n
    rules = []
    for s, mu, t, nu in _rules(d):
        p = (s - s0) % m
        q = (t - k0) % n
        rules.append((p + _bits_value(mu), Fraction(1, 1 << len(mu)), q + _bits_value(nu), Fraction(1, 1 << len(nu))))
    rules.sort()
    if rules[0][0] != 0:
        raise ValueError("paths do not start at the base point")
    points = []
    x = Fraction(0)
    y = None
    for dx, dw, qy, qw in rules:
        if dx != x:
            raise ValueError("paths do not tile the domain circle")
        if y is None:
            y = qy
        else:
            if ((y - qy) / n).denominator != 1:
                raise ValueError("path images do not join continuously")
        points.append((x, y))
        x += dw
        y += qw
    if x != m or ((y - points[0][1]) != n):
        raise ValueError("lift does not close up with degree n")
    points.append((Fraction(m), y))
    return CircleMap.from_lift(m, n, PLMap(points))


def _bits_value(bits) -> Fraction:
    v = Fraction(0)
    for i, bit in enumerate(bits):
        if bit:
            v += Fraction(1, 1 << (i + 1))
    return v


def cylindrical_from_circle_map(f: CircleMap) -> CylindricalStrandDiagram:
    """Forest pair of the minimal dyadic subdivisions realizing a circle map."""
    lift = f.lift
    breaks = [x for x, _ in lift.points]

    def affine_on(lo, hi):
        return not any(lo < t < hi for t in breaks)

    leaves = []

    def subdivide(lo, width):
        hi = lo + width
        if affine_on(lo, hi):
            y0, y1 = lift(lo), lift(hi)
            iw = y1 - y0
            if iw <= 1 and (y0 / iw).denominator == 1:
                leaves.append((lo, width, y0 % f.n, iw))
                return None
        mid = lo + width / 2
        return (subdivide(lo, width / 2), subdivide(mid, width / 2))

    domain_trees = [subdivide(Fraction(i), Fraction(1)) for i in range(f.m)]
    images = sorted(range(len(leaves)), key=lambda i: leaves[i][2])

    def build_range_tree(lo, width, idxs):
        if len(idxs) == 1 and leaves[idxs[0]][3] == width:
            return None, idxs
        mid = lo + width / 2
        left = [i for i in idxs if leaves[i][2] < mid]
        right = [i for i in idxs if leaves[i][2] >= mid]
        if not left or not right:
            raise ValueError("image intervals do not tile the range circle")
        lt, lidx = build_range_tree(lo, width / 2, left)
        rt, ridx = build_range_tree(mid, width / 2, right)
        return (lt, rt), lidx + ridx

    range_trees = []
    range_leaf_order = []
    for j in range(f.n):
        idxs = [i for i in images if j <= leaves[i][2] < j + 1]
        tree, order = build_range_tree(Fraction(j), Fraction(1), idxs)
        range_trees.append(tree)
        range_leaf_order += order
    target = {leaf: slot for slot, leaf in enumerate(range_leaf_order)}
    b = _Builder()
    outs = []
    for i, tree in enumerate(domain_trees):
        outs += _grow_splits(b, tree, ("src", i))
    ins = []
    for j, tree in enumerate(range_trees):
        ins += _grow_merges(b, tree, ("snk", j))
    for leaf, o in enumerate(outs):
        b.wire(o, ins[target[leaf]])
    return CylindricalStrandDiagram(b.build(f.m, f.n))
