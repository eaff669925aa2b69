"""Orbits of interior points under Thompson's group F.

Two interior points lie in the same orbit exactly when their binary
expansions share a tail.  The transporters built here realize the
pipeline construction: the witness maps the dyadic block around one point
affinely onto the block around the other and fills the complement with
arbitrary Thompson-like rescalings.
"""

from __future__ import annotations

from fractions import Fraction

from .binary import TailWord, rational_to_tails, same_tail
from .plmap import PLMap, compose, dyadic_interval_map, identity, invert

__all__ = ["in_same_orbit", "pipeline_element", "multipoint_transporter"]


def _require_interior(t: TailWord):
    v = t.value()
    if v <= 0 or v >= 1:
        raise ValueError(f"{t} is not an interior point of (0, 1)")


def in_same_orbit(t: TailWord, u: TailWord) -> bool:
    """Orbit equivalence of interior points: do the expansions share a tail?

    Rationals with two expansions count as one point: any matching pairing
    of expansions wins.
    """
    _require_interior(t)
    _require_interior(u)
    ts = rational_to_tails(t.value())
    us = rational_to_tails(u.value())
    return any(same_tail(a, b) for a in ts for b in us)


def _align(t: TailWord, u: TailWord):
    """Finite prefixes mu, nu with t = .mu w and u = .nu w literally."""
    rot = None
    p = t.period
    q = u.period
    for j in range(len(q)):
        if q[j:] + q[:j] == p:
            rot = j
            break
    if rot is None:
        raise ValueError(f"{t} and {u} do not share a tail")
    mu = list(t.pre)
    nu = list(u.pre) + list(q[:rot])
    # pad with common tail digits until both prefixes contain both digits
    k = 0
    while {0, 1} - set(mu) or {0, 1} - set(nu):
        d = p[k % len(p)]
        mu.append(d)
        nu.append(d)
        k += 1
    return tuple(mu), tuple(nu)


def _word_value(bits) -> Fraction:
    v = Fraction(0)
    for i, b in enumerate(bits):
        if b:
            v += Fraction(1, 1 << (i + 1))
    return v


def pipeline_element(t: TailWord, u: TailWord) -> PLMap:
    """An element g of F with g(t) = u, for points in the same orbit.

    Realizes the rule .mu alpha -> .nu alpha on the dyadic block around t
    and pads the two complementary blocks with dyadic rescalings.
    """
    _require_interior(t)
    _require_interior(u)
    if t == u:
        return identity(1)
    if not same_tail(t, u):
        raise ValueError(f"{t} and {u} lie in different orbits")
    mu, nu = _align(t, u)
    a0 = _word_value(mu)
    a1 = a0 + Fraction(1, 1 << len(mu))
    b0 = _word_value(nu)
    b1 = b0 + Fraction(1, 1 << len(nu))
    points = []
    if a0 > 0:
        points += dyadic_interval_map(0, a0, 0, b0).points
    points += [(a0, b0), (a1, b1)]
    if a1 < 1:
        points += dyadic_interval_map(a1, 1, b1, 1).points
    g = PLMap(sorted(set(points)))
    if g(t.value()) != u.value():
        raise AssertionError("pipeline failed to transport the point")
    return g


def _dyadic_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Some dyadic strictly inside (lo, hi)."""
    if not lo < hi:
        raise ValueError("empty interval")
    k = 0
    while True:
        step = Fraction(1, 1 << k)
        c = (lo / step).numerator // (lo / step).denominator + 1
        cand = c * step
        if lo < cand < hi:
            return cand
        k += 1


def multipoint_transporter(ts, us) -> PLMap:
    """One element of F sending each t_i to u_i, tails matching pairwise.

    Consecutive points are separated by dyadic cut positions; each block
    carries its own pipeline conjugated into place.
    """
    ts = list(ts)
    us = list(us)
    if len(ts) != len(us):
        raise ValueError("point lists must have equal length")
    if not ts:
        return identity(1)
    vals_t = [t.value() for t in ts]
    vals_u = [u.value() for u in us]
    for vs in (vals_t, vals_u):
        if any(b <= a for a, b in zip(vs, vs[1:])):
            raise ValueError("points must be strictly increasing")
    for t, u in zip(ts, us):
        if not in_same_orbit(t, u):
            raise ValueError(f"{t} and {u} lie in different orbits")
    cuts_t = [Fraction(0)]
    cuts_u = [Fraction(0)]
    for i in range(len(ts) - 1):
        cuts_t.append(_dyadic_between(vals_t[i], vals_t[i + 1]))
        cuts_u.append(_dyadic_between(vals_u[i], vals_u[i + 1]))
    cuts_t.append(Fraction(1))
    cuts_u.append(Fraction(1))
    points = []
    for i, (t, u) in enumerate(zip(ts, us)):
        d0, d1 = cuts_t[i], cuts_t[i + 1]
        e0, e1 = cuts_u[i], cuts_u[i + 1]
        phi = dyadic_interval_map(d0, d1, 0, 1)
        psi = dyadic_interval_map(e0, e1, 0, 1)
        # Thompson-like maps preserve tails; at dyadic images take the lower
        # expansion on both sides so the pipeline sees matching tails
        ft = sorted(rational_to_tails(phi(t.value())))[0]
        fu = sorted(rational_to_tails(psi(u.value())))[0]
        block = pipeline_element(ft, fu)
        # conjugate the unit pipeline back into [d0,d1] -> [e0,e1]
        piece = compose(compose(phi, block), invert(psi))
        points += piece.points
    g = PLMap(sorted(set(points)))
    for t, u in zip(ts, us):
        if g(t.value()) != u.value():
            raise AssertionError("transporter failed to move a marked point")
    return g
