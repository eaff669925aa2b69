"""Annular strand diagrams: closure, reduction, conjugacy invariants.

Closing an (n,n)-diagram glues sink k to source k; edges that cross the
gluing ray carry a winding tag.  The reduced annular diagram is the
conjugacy invariant: its directed cycles are the split and merge loops,
free loops stand for pointwise-fixed intervals, and the radial
(outside-in) order of connected components mirrors the left-to-right
order of the underlying map's fixed-point components.  Placement uses the
analytic side as an ordering oracle only; every structural claim (loop
kinds, sizes, connection patterns) is computed from the diagram and
cross-checked, and a mismatch raises.
"""

from __future__ import annotations

from .binary import cyclic_normal
from .plmap import (
    CantorPoint,
    PLMap,
    compose,
    fixed_point_components,
    identity,
    invert,
    rescale_to_unit,
)
from .strand import MERGE, SPLIT, StrandDiagram, from_pl_map, to_pl_map

__all__ = [
    "AnnularStrandDiagram",
    "LoopInfo",
    "close",
    "reduce_annular",
    "canonical_key",
    "are_conjugate",
    "classify_loops",
    "fixed_intervals_from_loops",
    "components",
    "cut",
    "to_dot",
]


class _Loop:
    """A directed cycle: all splits or all merges, walked in flow order."""

    __slots__ = ("kind", "verts", "pattern", "cycle_plugs")

    def __init__(self, kind, verts, pattern, cycle_plugs):
        self.kind = kind  # SPLIT or MERGE
        self.verts = tuple(verts)
        self.pattern = tuple(pattern)  # binary tail of the fixed point
        self.cycle_plugs = tuple(cycle_plugs)  # out-plugs of the cycle edges

    @property
    def size(self):
        return len(self.verts)


class _Component:
    __slots__ = ("verts", "loops")

    def __init__(self, verts, loops):
        self.verts = frozenset(verts)
        self.loops = tuple(loops)  # outside-in

    def signature(self):
        return tuple((l.kind, l.size, cyclic_normal(l.pattern)) for l in self.loops)


class LoopInfo:
    """Classification of one directed loop; radial_index counts outside-in."""

    __slots__ = ("kind", "size", "pattern", "radial_index")

    def __init__(self, kind, size, pattern, radial_index):
        self.kind = kind  # 'split' | 'merge' | 'free'
        self.size = size
        self.pattern = tuple(pattern)
        self.radial_index = radial_index

    def __repr__(self):
        return (
            f"LoopInfo({self.kind}, size={self.size}, "
            f"pattern={''.join(map(str, self.pattern))!r}, radial={self.radial_index})"
        )


class AnnularStrandDiagram:
    """Annular diagram; built by close() and normalized by reduce_annular()."""

    __slots__ = (
        "kinds",
        "nexts",
        "prevs",
        "winds",
        "free_count",
        "element",
        "reduced",
        "slots",
    )

    def __init__(self, kinds, nexts, winds, free_count, element, reduced=False, slots=()):
        self.kinds = dict(kinds)
        self.nexts = dict(nexts)
        self.prevs = {b: a for a, b in self.nexts.items()}
        self.winds = dict(winds)
        self.free_count = free_count
        self.element = element
        self.reduced = reduced
        self.slots = tuple(slots)

    def vertex_count(self):
        return len(self.kinds)

    def loop_count(self):
        self._need_reduced()
        return sum(1 if tag == "free" else len(c.loops) for tag, c in self.slots)

    def _need_reduced(self):
        if not self.reduced:
            raise ValueError("operation needs a reduced annular diagram")

    def __repr__(self):
        state = "reduced" if self.reduced else "raw"
        return (
            f"AnnularStrandDiagram({state}, vertices={len(self.kinds)}, "
            f"free_loops={self.free_count})"
        )


def close(d: StrandDiagram) -> AnnularStrandDiagram:
    """Identify sink k with source k of a square diagram."""
    if d.m != d.n:
        raise ValueError(f"cannot close a ({d.m},{d.n})-diagram")
    element = to_pl_map(d)
    # pure boundary cycles become free loops; since the map is increasing,
    # a chain of plain strands can only close up over a single position
    free = sum(1 for j in range(d.m) if d.nexts[("src", j)] == ("snk", j))
    nexts = {}
    winds = {}
    for a in d.nexts:
        if a[0] != "o":
            continue
        b = d.nexts[a]
        w = 0
        while b[0] == "snk":
            w += 1
            if w > 2 * d.m:
                raise ValueError("runaway gluing chain: invalid diagram")
            b = d.nexts[("src", b[1])]
        nexts[a] = b
        winds[a] = w
    return AnnularStrandDiagram(d.kinds, nexts, winds, free, element)


# -- reduction ----------------------------------------------------------------


def _out_plugs(kinds, v):
    return [("o", v, 0), ("o", v, 1)] if kinds[v] == SPLIT else [("o", v, 0)]


def _in_plugs(kinds, v):
    return [("i", v, 0)] if kinds[v] == SPLIT else [("i", v, 0), ("i", v, 1)]


def _reduce_impl(kinds, nexts, winds) -> int:
    """Exhaust annular reductions in place; returns free loops created."""
    prevs = {b: a for a, b in nexts.items()}
    free_created = 0

    def drop_edge(a):
        b = nexts.pop(a)
        winds.pop(a)
        prevs.pop(b)

    def rewire(a, b, w):
        nexts[a] = b
        prevs[b] = a
        winds[a] = w

    def enqueue_plug(plug):
        work.append(plug[1])

    work = list(kinds)
    while work:
        v = work.pop()
        if v not in kinds:
            continue
        if kinds[v] == SPLIT:
            h0 = nexts[("o", v, 0)]
            h1 = nexts[("o", v, 1)]
            is_redex = (
                h0[0] == "i"
                and h1[0] == "i"
                and h0[1] == h1[1]
                and kinds[h0[1]] == MERGE
                and h0[2] == 0
                and h1[2] == 1
                and winds[("o", v, 0)] == winds[("o", v, 1)]
            )
            if not is_redex:
                continue
            w = h0[1]
            feed = prevs[("i", v, 0)]
            target = nexts[("o", w, 0)]
            w_mid = winds[("o", v, 0)]
            w_out = winds[("o", w, 0)]
            w_in = winds[feed]
            drop_edge(("o", v, 0))
            drop_edge(("o", v, 1))
            if feed == ("o", w, 0):
                # the merge fed the split directly: everything closes up
                total = w_out + w_mid
                if total != 1:
                    raise ValueError(f"free loop with winding {total}: nonplanar data")
                drop_edge(("o", w, 0))
                free_created += 1
            else:
                drop_edge(feed)
                drop_edge(("o", w, 0))
                rewire(feed, target, w_in + w_mid + w_out)
                enqueue_plug(feed)
                enqueue_plug(target)
            del kinds[v], kinds[w]
        else:
            h = nexts[("o", v, 0)]
            if not (h[0] == "i" and kinds[h[1]] == SPLIT):
                continue
            w = h[1]
            wf = winds[("o", v, 0)]
            feeds = [prevs[("i", v, 0)], prevs[("i", v, 1)]]
            targets = [nexts[("o", w, 0)], nexts[("o", w, 1)]]
            wouts = [winds[("o", w, 0)], winds[("o", w, 1)]]
            cross = [feeds[0] == ("o", w, 1), feeds[1] == ("o", w, 0)]
            drop_edge(("o", v, 0))
            if all(cross):
                # both outputs wrap back crossed; the closed strand would
                # wind at least twice around the hole
                raise ValueError("crossed merge-split pair: nonplanar data")
            if any(cross):
                # one output wraps back into the opposite input: the two
                # pass-throughs chain into a single edge that runs the
                # merge-split corridor twice
                s = 0 if cross[0] else 1  # feed on side s is w's other output
                o = 1 - s
                feed, target = feeds[o], targets[s]
                w_new = winds[feed] + wf + wouts[o] + wf + wouts[s]
                drop_edge(feed)
                drop_edge(("o", w, 0))
                drop_edge(("o", w, 1))
                rewire(feed, target, w_new)
                enqueue_plug(feed)
                enqueue_plug(target)
                del kinds[v], kinds[w]
                continue
            for s in (0, 1):
                feed, target = feeds[s], targets[s]
                if feed == ("o", w, s):
                    total = wouts[s] + wf
                    if total != 1:
                        raise ValueError(
                            f"free loop with winding {total}: nonplanar data"
                        )
                    drop_edge(("o", w, s))
                    free_created += 1
                else:
                    w_feed = winds[feed]
                    drop_edge(feed)
                    drop_edge(("o", w, s))
                    rewire(feed, target, w_feed + wf + wouts[s])
                    enqueue_plug(feed)
                    enqueue_plug(target)
            del kinds[v], kinds[w]
    return free_created


# -- structural analysis -------------------------------------------------------


def _strongly_connected(kinds, nexts):
    """Iterative Tarjan over the vertex graph."""
    succ = {v: [] for v in kinds}
    for a, b in nexts.items():
        succ[a[1]].append(b[1])
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    counter = [0]
    for root in kinds:
        if root in index:
            continue
        call = [(root, iter(succ[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while call:
            v, it = call[-1]
            advanced = False
            for u in it:
                if u not in index:
                    index[u] = low[u] = counter[0]
                    counter[0] += 1
                    stack.append(u)
                    on_stack.add(u)
                    call.append((u, iter(succ[u])))
                    advanced = True
                    break
                if u in on_stack:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            call.pop()
            if call:
                pv = call[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack.discard(u)
                    comp.append(u)
                    if u == v:
                        break
                sccs.append(comp)
    return sccs


def _walk_loop(kinds, nexts, prevs, scc):
    """Order an SCC into a directed cycle and read off its pattern."""
    members = set(scc)
    kind = kinds[scc[0]]
    for v in scc:
        if kinds[v] != kind:
            raise ValueError("mixed split/merge cycle: diagram is not reduced")
    start = min(scc)
    verts = []
    digits = []
    cycle_plugs = []
    v = start
    while True:
        verts.append(v)
        if kind == SPLIT:
            conts = [
                p
                for p in (0, 1)
                if nexts[("o", v, p)][0] == "i" and nexts[("o", v, p)][1] in members
            ]
            if len(conts) != 1:
                raise ValueError("split cycle without a unique continuation")
            p = conts[0]
            digits.append(p)
            cycle_plugs.append(("o", v, p))
            v = nexts[("o", v, p)][1]
        else:
            entries = [
                s
                for s in (0, 1)
                if prevs[("i", v, s)][0] == "o" and prevs[("i", v, s)][1] in members
            ]
            if len(entries) != 1:
                raise ValueError("merge cycle without a unique entry")
            digits.append(entries[0])
            cycle_plugs.append(("o", v, 0))
            v = nexts[("o", v, 0)][1]
        if v == start:
            break
        if len(verts) > len(scc):
            raise ValueError("cycle walk escaped its component")
    if set(verts) != members:
        raise ValueError("strongly connected part is not a simple cycle")
    # A split loop consumes its digits in flow order; a merge loop pushes
    # them, so the resulting tail reads in reverse flow order.
    pattern = tuple(digits) if kind == SPLIT else tuple(reversed(digits))
    return _Loop(kind, verts, pattern, cycle_plugs)


class _DisjointSet:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _loop_regions(kinds, nexts, comp_verts, loops):
    """Map each filler vertex to a region and each region/edge to loop pairs.

    Returns (vertex_to_loop, region_of, adjacency) where adjacency is a set
    of frozensets {i, j} of loop indices linked by fillers or direct edges.
    """
    vertex_to_loop = {}
    for i, loop in enumerate(loops):
        for v in loop.verts:
            vertex_to_loop[v] = i
    filler = [v for v in comp_verts if v not in vertex_to_loop]
    ds = _DisjointSet(filler)
    for a, b in nexts.items():
        u, v = a[1], b[1]
        if u in comp_verts and v in comp_verts:
            if u not in vertex_to_loop and v not in vertex_to_loop:
                ds.union(u, v)
    region_of = {v: ds.find(v) for v in filler}
    region_contacts = {}
    adjacency = set()
    for a, b in nexts.items():
        u, v = a[1], b[1]
        if u not in comp_verts or v not in comp_verts:
            continue
        lu = vertex_to_loop.get(u)
        lv = vertex_to_loop.get(v)
        if lu is not None and lv is not None:
            if lu != lv:
                adjacency.add(frozenset((lu, lv)))
            continue
        if lu is not None:
            region_contacts.setdefault(region_of[v], set()).add(lu)
        elif lv is not None:
            region_contacts.setdefault(region_of[u], set()).add(lv)
    for region, touched in region_contacts.items():
        if len(touched) != 2:
            raise ValueError(
                f"filler region touches {len(touched)} loops; expected exactly 2"
            )
        adjacency.add(frozenset(touched))
    return vertex_to_loop, region_of, region_contacts, adjacency


def _order_loops(loops, adjacency):
    """Radial (outside-in) order: the path of loops, all-0 pattern outermost."""
    if len(loops) == 1:
        raise ValueError("a non-free component must contain at least two loops")
    neighbors = {i: set() for i in range(len(loops))}
    for pair in adjacency:
        i, j = tuple(pair)
        neighbors[i].add(j)
        neighbors[j].add(i)
    ends = [i for i, ns in neighbors.items() if len(ns) == 1]
    if len(ends) != 2 or any(len(ns) > 2 for ns in neighbors.values()):
        raise ValueError("loop adjacency is not a path")
    zero_ends = [i for i in ends if set(loops[i].pattern) == {0}]
    one_ends = [i for i in ends if set(loops[i].pattern) == {1}]
    if len(zero_ends) != 1 or len(one_ends) != 1:
        raise ValueError("component ends are not a 0-loop and a 1-loop")
    order = [zero_ends[0]]
    prev = None
    while len(order) < len(loops):
        (nxt,) = [j for j in neighbors[order[-1]] if j != prev]
        prev = order[-1]
        order.append(nxt)
    if order[-1] != one_ends[0]:
        raise ValueError("loop path does not end at the 1-loop")
    for a, b in zip(order, order[1:]):
        if loops[a].kind == loops[b].kind:
            raise ValueError("adjacent loops of equal kind: alternation fails")
    return [loops[i] for i in order]


def _analyze(kinds, nexts, winds):
    """Split the reduced graph into components with radially ordered loops."""
    prevs = {b: a for a, b in nexts.items()}
    sccs = _strongly_connected(kinds, nexts)

    def self_loop(v):
        return any(nexts[p][1] == v for p in _out_plugs(kinds, v))

    loops_raw = []
    for scc in sccs:
        if len(scc) > 1 or self_loop(scc[0]):
            loops_raw.append(_walk_loop(kinds, nexts, prevs, scc))
    ds = _DisjointSet(list(kinds))
    for a, b in nexts.items():
        ds.union(a[1], b[1])
    groups = {}
    for v in kinds:
        groups.setdefault(ds.find(v), set()).add(v)
    comps = []
    for verts in groups.values():
        loops = [l for l in loops_raw if l.verts[0] in verts]
        if not loops:
            raise ValueError("component without a directed loop")
        *_, adjacency = _loop_regions(kinds, nexts, verts, loops)
        comps.append(_Component(verts, _order_loops(loops, adjacency)))
    return comps


def _expected_signature(items):
    """Loop signature an analytic component's fixed intervals predict."""
    sig = []
    for item in items:
        e = item.slope_exp
        kind = SPLIT if e > 0 else MERGE
        size = abs(e)
        period = item.word.period
        if size % len(period) != 0:
            raise ValueError(
                f"slope exponent {e} is not a multiple of the tail period length"
            )
        sig.append((kind, size, cyclic_normal(period * (size // len(period)))))
    return tuple(sig)


def _restriction_encoding(element, acomp, kinds, nexts, winds):
    """Canonical encoding of the reduced diagram of one map component.

    The restriction between two cut points, conjugated into F by a dyadic
    rescaling, has the same reduced annular diagram as the component it
    fills (it is a single-component element, so no further disambiguation
    recursion can start).
    """
    phi = rescale_to_unit(acomp.lo, acomp.hi)
    piece = element.restrict(acomp.lo, acomp.hi)
    conj = compose(compose(invert(phi), piece), phi)
    sub = reduce_annular(close(from_pl_map(conj)))
    ((tag, comp),) = sub.slots
    if tag != "comp":
        raise ValueError("restriction unexpectedly reduced to a free loop")
    return _encode_component(sub.kinds, sub.nexts, sub.prevs, sub.winds, comp)


def _place(comps, free_count, element, kinds, nexts, winds):
    """Radial slots for components and free loops via the analytic order."""
    analytic = fixed_point_components(element)
    free_needed = sum(1 for c in analytic if c.pointwise)
    if free_count < free_needed:
        raise ValueError(
            f"{free_count} free loops for {free_needed} pointwise components"
        )
    if free_count > free_needed and free_needed == 0:
        raise ValueError("free loops without a pointwise-fixed component")
    prevs = {b: a for a, b in nexts.items()}
    pools = {}
    for comp in comps:
        pools.setdefault(comp.signature(), []).append(comp)
    slots = []
    for acomp in analytic:
        if acomp.pointwise:
            slots.append(("free", None))
            continue
        sig = _expected_signature(acomp.intervals)
        pool = pools.get(sig)
        if not pool:
            raise ValueError(
                "no reduced component matches the fixed-point data "
                f"{[(k, s) for k, s, _ in sig]}"
            )
        if len(pool) == 1:
            slots.append(("comp", pool.pop()))
            continue
        # several components share the loop signature; tell them apart by
        # the full diagram of the corresponding analytic restriction
        expected = _restriction_encoding(element, acomp, kinds, nexts, winds)
        for idx, comp in enumerate(pool):
            if _encode_component(kinds, nexts, prevs, winds, comp) == expected:
                slots.append(("comp", pool.pop(idx)))
                break
        else:
            raise ValueError(
                "no reduced component matches the restriction's diagram"
            )
    leftover = [c for pool in pools.values() for c in pool]
    if leftover:
        raise ValueError(f"{len(leftover)} reduced components left unplaced")
    return tuple(slots)


def reduce_annular(a: AnnularStrandDiagram) -> AnnularStrandDiagram:
    """The unique reduced annular diagram equivalent to a."""
    if a.reduced:
        return a
    kinds = dict(a.kinds)
    nexts = dict(a.nexts)
    winds = dict(a.winds)
    free = a.free_count + _reduce_impl(kinds, nexts, winds)
    comps = _analyze(kinds, nexts, winds)
    slots = _place(comps, free, a.element, kinds, nexts, winds)
    # adjacent concentric free loops merge: one survives per pointwise slot
    merged_free = sum(1 for tag, _ in slots if tag == "free")
    return AnnularStrandDiagram(kinds, nexts, winds, merged_free, a.element, True, slots)


# -- canonical form -------------------------------------------------------------


def _encode_component(kinds, nexts, prevs, winds, comp: _Component) -> str:
    """Canonical string: min over roots of a gauged, port-ordered traversal.

    Windings are normalized by a spanning-tree gauge, so the encoding
    depends only on the winding class (cycle sums), which is the isotopy
    content of the tags.
    """
    verts = comp.verts

    def encode_from(root):
        ids = {root: 0}
        phi = {root: 0}
        order = [root]
        queue = [root]
        while queue:
            v = queue.pop(0)
            steps = []
            if kinds[v] == SPLIT:
                plugs = [("i", v, 0), ("o", v, 0), ("o", v, 1)]
            else:
                plugs = [("i", v, 0), ("i", v, 1), ("o", v, 0)]
            for p in plugs:
                # an edge tail t -> head h has gauged winding w + phi[t] - phi[h];
                # assigning phi along the traversal tree gauges tree edges to zero
                if p[0] == "o":
                    u = nexts[p][1]
                    dphi = winds[p]
                else:
                    astart = prevs[p]
                    u = astart[1]
                    dphi = -winds[astart]
                if u not in ids:
                    ids[u] = len(ids)
                    phi[u] = phi[v] + dphi
                    order.append(u)
                    queue.append(u)
        kinds_str = "".join("S" if kinds[v] == SPLIT else "M" for v in order)
        edges = []
        for v in order:
            for p in _out_plugs(kinds, v):
                b = nexts[p]
                u = b[1]
                gauged = winds[p] + phi[v] - phi[u]
                edges.append(f"{ids[v]}.{p[2]}>{ids[u]}.{b[2]}w{gauged}")
        return kinds_str + "|" + ";".join(edges)

    return min(encode_from(v) for v in verts)


def canonical_key(a: AnnularStrandDiagram) -> bytes:
    """Equal keys iff equal reduced annular diagrams (annular isotopy)."""
    a._need_reduced()
    parts = []
    for tag, comp in a.slots:
        if tag == "free":
            parts.append("F")
        else:
            parts.append(_encode_component(a.kinds, a.nexts, a.prevs, a.winds, comp))
    return ("[" + "][".join(parts) + "]").encode() if parts else b"[]"


def are_conjugate(f: PLMap, g: PLMap) -> bool:
    """Conjugacy in Thompson's groupoid, decided by reduced annular diagrams."""
    for h in (f, g):
        if not h.is_square():
            raise ValueError("conjugacy needs square maps")
    kf = canonical_key(reduce_annular(close(from_pl_map(f))))
    kg = canonical_key(reduce_annular(close(from_pl_map(g))))
    return kf == kg


# -- dynamical readings ----------------------------------------------------------


def classify_loops(a: AnnularStrandDiagram):
    """All loops outside-in with kind, size and connection pattern.

    Pattern digits follow the fixed point's binary tail: 1 for an outward
    connection, 0 for an inward one.
    """
    a._need_reduced()
    out = []
    idx = 0
    for tag, comp in a.slots:
        if tag == "free":
            out.append(LoopInfo("free", 0, (), idx))
            idx += 1
            continue
        for loop in comp.loops:
            out.append(LoopInfo("split" if loop.kind == SPLIT else "merge", loop.size, loop.pattern, idx))
            idx += 1
    return out


def fixed_intervals_from_loops(a: AnnularStrandDiagram, element: PLMap):
    """Fixed intervals read from the loops, located via the analytic order.

    Slopes and tails come from the diagram (loop kind/size and connection
    pattern); the analytic fixed intervals only fix absolute positions.
    Any structural disagreement raises.
    """
    a._need_reduced()
    analytic = fixed_point_components(element)
    if len(analytic) != len(a.slots):
        raise ValueError(
            f"{len(a.slots)} slots against {len(analytic)} analytic components"
        )
    out = []
    for (tag, comp), acomp in zip(a.slots, analytic):
        if tag == "free":
            if not acomp.pointwise:
                raise ValueError("free loop against a non-pointwise component")
            out.append(acomp.intervals[0])
            continue
        if acomp.pointwise:
            raise ValueError("reduced component against a pointwise interval")
        if len(comp.loops) != len(acomp.intervals):
            raise ValueError(
                f"{len(comp.loops)} loops against {len(acomp.intervals)} fixed intervals"
            )
        for loop, item in zip(comp.loops, acomp.intervals):
            e = loop.size if loop.kind == SPLIT else -loop.size
            if e != item.slope_exp:
                raise ValueError(
                    f"loop slope 2^{e} against analytic slope 2^{item.slope_exp}"
                )
            period = item.word.period
            expected = period * (loop.size // len(period))
            if cyclic_normal(expected) != cyclic_normal(loop.pattern):
                raise ValueError(
                    f"loop pattern {loop.pattern} is not a rotation of {expected}"
                )
            out.append(CantorPoint(item.offset, item.word, e))
    return out


def components(a: AnnularStrandDiagram):
    """Connected components in radial order, each a reduced annular diagram.

    A non-free component is reported as the annular diagram of the matching
    restriction of the element conjugated into F by a dyadic rescaling.
    """
    a._need_reduced()
    analytic = fixed_point_components(a.element)
    out = []
    for (tag, comp), acomp in zip(a.slots, analytic):
        if tag == "free":
            out.append(
                AnnularStrandDiagram(
                    {}, {}, {}, 1, identity(1), True, (("free", None),)
                )
            )
            continue
        lo, hi = acomp.lo, acomp.hi
        phi = rescale_to_unit(lo, hi)
        piece = a.element.restrict(lo, hi)
        conj = compose(compose(invert(phi), piece), phi)
        kinds = {v: a.kinds[v] for v in comp.verts}
        nexts = {p: b for p, b in a.nexts.items() if p[1] in comp.verts}
        winds = {p: w for p, w in a.winds.items() if p[1] in comp.verts}
        out.append(
            AnnularStrandDiagram(kinds, nexts, winds, 0, conj, True, (("comp", comp),))
        )
    return out


# -- cutting back to the square ---------------------------------------------------


def _solve_gauge(verts, edges, mode, chosen=None):
    """Integer potentials phi with gauged windings in the allowed sets.

    edges: list of (tail_vertex, head_vertex, winding, is_cycle_edge, plug).
    mode 'strict': filler edges forced to 0 crossings; 'loose': filler in
    {0,1}.  chosen: optional set of plugs forced to cross exactly once.
    Difference constraints solved Bellman-Ford style; returns phi or None.
    """
    cons = []  # phi[u] - phi[v] <= c
    for u, v, w, is_cycle, plug in edges:
        force = None
        if chosen is not None and plug in chosen:
            force = 1
        elif chosen is not None and is_cycle:
            force = 0
        elif not is_cycle and mode == "strict":
            force = 0
        if force is None:
            lo, hi = 0, 1
        else:
            lo = hi = force
        # lo <= w + phi[u] - phi[v] <= hi
        cons.append((u, v, hi - w))
        cons.append((v, u, w - lo))
    dist = {v: 0 for v in verts}
    for _ in range(len(verts) + 1):
        changed = False
        for u, v, c in cons:
            # phi[u] - phi[v] <= c
            if dist[v] + c < dist[u]:
                dist[u] = dist[v] + c
                changed = True
        if not changed:
            return dist
    return None


def cut(a: AnnularStrandDiagram, path=None) -> StrandDiagram:
    """Cut along a ray crossing every directed loop once; a minimal square form.

    `path`, when given, lists one cycle out-plug per directed loop
    (outside-in) to cut at; the default picks crossings automatically.
    Free loops each contribute one plain strand.
    """
    a._need_reduced()
    chosen = list(path) if path is not None else None
    chosen_iter = iter(chosen) if chosen is not None else None
    crossings = []  # list of ('strand',) or ('edge', plug)
    for tag, comp in a.slots:
        if tag == "free":
            if chosen_iter is not None:
                pass  # free loops have no edges to pick
            crossings.append(("strand",))
            continue
        cycle_plugs = set()
        for loop in comp.loops:
            cycle_plugs.update(loop.cycle_plugs)
        comp_chosen = None
        if chosen_iter is not None:
            comp_chosen = set()
            for loop in comp.loops:
                plug = next(chosen_iter, None)
                if plug is None or plug not in loop.cycle_plugs:
                    raise ValueError("invalid path: must pick one edge per loop")
                comp_chosen.add(plug)
        edges = []
        for p, b in a.nexts.items():
            if p[1] in comp.verts:
                edges.append((p[1], b[1], a.winds[p], p in cycle_plugs, p))
        phi = _solve_gauge(comp.verts, edges, "strict", comp_chosen)
        if phi is None:
            phi = _solve_gauge(comp.verts, edges, "loose", comp_chosen)
        if phi is None:
            raise ValueError("invalid path: some directed cycle stays uncut")
        crossed = []
        for u, v, w, is_cycle, plug in edges:
            gauged = w + phi[u] - phi[v]
            if gauged not in (0, 1):
                raise ValueError("gauge solution out of range")
            if gauged == 1:
                crossed.append(plug)
        # order crossings outside-in: loop crossings in radial loop order,
        # filler crossings right after the loop they sit under
        vertex_to_loop, region_of, region_contacts, _ = _loop_regions(
            a.kinds, a.nexts, comp.verts, comp.loops
        )
        plug_to_loop = {}
        for i, loop in enumerate(comp.loops):
            for p in loop.cycle_plugs:
                plug_to_loop[p] = i

        def position(plug):
            if plug in plug_to_loop:
                return (plug_to_loop[plug], 0, str(plug))
            u, v = plug[1], a.nexts[plug][1]
            touched = set()
            for x in (u, v):
                if x in vertex_to_loop:
                    touched.add(vertex_to_loop[x])
                else:
                    touched.update(region_contacts.get(region_of[x], set()))
            outer = min(touched) if touched else 0
            return (outer, 1, str(plug))

        crossed.sort(key=position)
        ncross = sum(1 for p in crossed if p in plug_to_loop)
        if ncross != len(comp.loops):
            raise ValueError("gauge crossed a loop more than once")
        crossings.extend(("edge", p) for p in crossed)
    if chosen_iter is not None and next(chosen_iter, None) is not None:
        raise ValueError("invalid path: too many edges picked")

    k = len(crossings)
    kinds = dict(a.kinds)
    nexts = {}
    cut_edges = {item[1] for item in crossings if item[0] == "edge"}
    for p, b in a.nexts.items():
        if p not in cut_edges:
            nexts[p] = b
    for i, item in enumerate(crossings):
        if item[0] == "strand":
            nexts[("src", i)] = ("snk", i)
        else:
            plug = item[1]
            nexts[plug] = ("snk", i)
            nexts[("src", i)] = a.nexts[plug]
    return StrandDiagram(kinds, nexts, k, k)


# -- output -----------------------------------------------------------------------


def to_dot(a: AnnularStrandDiagram) -> str:
    lines = ["digraph annular {", "  layout=twopi;"]
    if a.reduced:
        ring = 0
        for tag, comp in a.slots:
            if tag == "free":
                lines.append(f'  free{ring} [shape=circle, label="free"];')
                ring += 1
                continue
            names = ", ".join(f"v{v}" for v in sorted(comp.verts))
            lines.append(f"  subgraph cluster_ring{ring} {{ {names} }}")
            ring += 1
    else:
        for _ in range(a.free_count):
            lines.append('  free [shape=circle, label="free"];')
    for v, kshape in sorted(a.kinds.items()):
        shape = "invtriangle" if kshape == SPLIT else "triangle"
        lines.append(f'  v{v} [shape={shape}, label=""];')
    for p, b in sorted(a.nexts.items(), key=str):
        style = ' [style=dashed, label="w1"]' if a.winds[p] else ""
        lines.append(f"  v{p[1]} -> v{b[1]}{style};")
    lines.append("}")
    return "\n".join(lines)
