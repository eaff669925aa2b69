"""Strand diagrams in the square.

A diagram is a planar acyclic directed graph of splits (one input, ordered
left/right outputs) and merges (ordered left/right inputs, one output) with
m sources along the top and n sinks along the bottom.  The embedding is
carried entirely by the port order and the source/sink order.

Plugs name the two ends of an edge:

    ('src', i)      start at source i
    ('snk', j)      end at sink j
    ('o', v, p)     start at output port p of vertex v (splits: 0=left, 1=right)
    ('i', v, p)     end at input port p of vertex v (merges: 0=left, 1=right)

Each diagram acts on binary expansions as a stack machine: a split pops the
leading digit and routes left on 0, right on 1; a merge pushes 0 when the
signal enters on the left and 1 on the right.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .binary import TailWord
from .plmap import PLMap

__all__ = [
    "StrandDiagram",
    "trivial_diagram",
    "from_tree_pair",
    "from_forest_pair",
    "generator_diagram",
    "evaluate",
    "concatenate",
    "reduce",
    "invert_diagram",
    "to_pl_map",
    "from_pl_map",
    "equal_reduced",
    "is_reduced",
    "to_dot",
    "to_text",
]

SPLIT = "split"
MERGE = "merge"


class StrandDiagram:
    """Immutable (m, n)-strand diagram."""

    __slots__ = ("kinds", "nexts", "prevs", "m", "n")

    def __init__(self, kinds, nexts, m, n, _validate=True):
        self.kinds = dict(kinds)
        self.nexts = dict(nexts)
        self.prevs = {b: a for a, b in self.nexts.items()}
        self.m = m
        self.n = n
        if _validate:
            self._validate()

    def _out_plugs(self, v):
        return [("o", v, 0), ("o", v, 1)] if self.kinds[v] == SPLIT else [("o", v, 0)]

    def _in_plugs(self, v):
        return [("i", v, 0)] if self.kinds[v] == SPLIT else [("i", v, 0), ("i", v, 1)]

    def _validate(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("need at least one source and one sink")
        if len(self.prevs) != len(self.nexts):
            raise ValueError("duplicate edge targets")
        for v, kind in self.kinds.items():
            if kind not in (SPLIT, MERGE):
                raise ValueError(f"bad vertex kind {kind!r}")
            for p in self._out_plugs(v):
                if p not in self.nexts:
                    raise ValueError(f"unwired output {p}")
            for p in self._in_plugs(v):
                if p not in self.prevs:
                    raise ValueError(f"unwired input {p}")
        for i in range(self.m):
            if ("src", i) not in self.nexts:
                raise ValueError(f"unwired source {i}")
        for j in range(self.n):
            if ("snk", j) not in self.prevs:
                raise ValueError(f"unwired sink {j}")
        n_out = sum(2 if k == SPLIT else 1 for k in self.kinds.values()) + self.m
        if len(self.nexts) != n_out:
            raise ValueError("stray edges")
        # acyclicity (Kahn on the vertex-to-vertex graph)
        indeg = {v: 0 for v in self.kinds}
        succs = {v: [] for v in self.kinds}
        for a, b in self.nexts.items():
            if a[0] == "o" and b[0] == "i":
                succs[a[1]].append(b[1])
                indeg[b[1]] += 1
        ready = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for w in succs[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        if seen != len(self.kinds):
            raise ValueError("diagram contains a directed cycle")

    def vertex_count(self) -> int:
        return len(self.kinds)

    def __repr__(self):
        return f"StrandDiagram(m={self.m}, n={self.n}, vertices={len(self.kinds)})"


class _Builder:
    def __init__(self):
        self.kinds = {}
        self.nexts = {}

    def add(self, kind) -> int:
        v = len(self.kinds)
        self.kinds[v] = kind
        return v

    def wire(self, a, b):
        if a in self.nexts:
            raise ValueError(f"plug {a} wired twice")
        self.nexts[a] = b

    def build(self, m, n) -> StrandDiagram:
        return StrandDiagram(self.kinds, self.nexts, m, n)


def trivial_diagram(m: int = 1) -> StrandDiagram:
    b = _Builder()
    for i in range(m):
        b.wire(("src", i), ("snk", i))
    return b.build(m, m)


def _grow_splits(b: _Builder, tree, feed):
    """Expand a caret tree into splits below `feed`; returns leaf out-plugs."""
    if tree is None:
        return [feed]
    left, right = tree
    v = b.add(SPLIT)
    b.wire(feed, ("i", v, 0))
    return _grow_splits(b, left, ("o", v, 0)) + _grow_splits(b, right, ("o", v, 1))


def _grow_merges(b: _Builder, tree, drain):
    """Expand a caret tree into merges above `drain`; returns leaf in-plugs."""
    if tree is None:
        return [drain]
    left, right = tree
    v = b.add(MERGE)
    b.wire(("o", v, 0), drain)
    return _grow_merges(b, left, ("i", v, 0)) + _grow_merges(b, right, ("i", v, 1))


def count_leaves(tree) -> int:
    if tree is None:
        return 1
    return count_leaves(tree[0]) + count_leaves(tree[1])


def from_tree_pair(domain_tree, range_tree) -> StrandDiagram:
    """Glue the split tree of the domain onto the merge tree of the range.

    Trees are nested pairs with None as leaf: ((None, None), None) is the
    left caret.  Leaf counts must agree.
    """
    return from_forest_pair([domain_tree], [range_tree])


def from_forest_pair(domain_forest, range_forest) -> StrandDiagram:
    b = _Builder()
    outs = []
    for i, tree in enumerate(domain_forest):
        outs += _grow_splits(b, tree, ("src", i))
    ins = []
    for j, tree in enumerate(range_forest):
        ins += _grow_merges(b, tree, ("snk", j))
    if len(outs) != len(ins):
        raise ValueError(
            f"leaf counts differ: {len(outs)} domain vs {len(ins)} range"
        )
    for o, i in zip(outs, ins):
        b.wire(o, i)
    return b.build(len(domain_forest), len(range_forest))


_X0_TREES = ((None, (None, None)), ((None, None), None))
_X1_TREES = (
    (None, (None, (None, None))),
    (None, ((None, None), None)),
)


def generator_diagram(which: int, exponent: int = 1) -> StrandDiagram:
    """Diagram of x0 or x1 (or an inverse), per the breakpoint convention."""
    if which not in (0, 1):
        raise ValueError("only generators x0 and x1 exist")
    dom, ran = _X0_TREES if which == 0 else _X1_TREES
    if exponent == 1:
        return from_tree_pair(dom, ran)
    if exponent == -1:
        return from_tree_pair(ran, dom)
    raise ValueError("exponent must be +1 or -1")


# -- stack machine -----------------------------------------------------------


def evaluate(d: StrandDiagram, source_index: int, w: TailWord):
    """Feed .w into the given source; returns (sink_index, output word).

    The number is a single stack: a merge pushes a digit onto the front,
    and a later split pops whatever is in front (a pushed digit if any,
    otherwise the next digit of the input).
    """
    if not 0 <= source_index < d.m:
        raise ValueError(f"source {source_index} out of range")
    plug = d.nexts[("src", source_index)]
    consumed = 0
    front = []  # pushed digits; front[-1] is the current leading digit
    while plug[0] != "snk":
        _, v, p = plug
        if d.kinds[v] == SPLIT:
            if front:
                digit = front.pop()
            else:
                digit = w.digit(consumed)
                consumed += 1
            plug = d.nexts[("o", v, digit)]
        else:
            front.append(p)
            plug = d.nexts[("o", v, 0)]
    out = w.shift(consumed).prepend(tuple(reversed(front)))
    return plug[1], out


def _rules(d: StrandDiagram):
    """All (source, consumed input digits, sink, final front digits) paths.

    Splits branch only when the pushed front is empty; otherwise the route
    is forced by the digit on top.
    """
    rules = []
    for k in range(d.m):
        stack = [(d.nexts[("src", k)], (), ())]
        while stack:
            plug, mu, front = stack.pop()
            while plug[0] != "snk":
                _, v, p = plug
                if d.kinds[v] == SPLIT:
                    if front:
                        digit, front = front[-1], front[:-1]
                        plug = d.nexts[("o", v, digit)]
                    else:
                        stack.append((d.nexts[("o", v, 1)], mu + (1,), front))
                        plug, mu = d.nexts[("o", v, 0)], mu + (0,)
                else:
                    front = front + (p,)
                    plug = d.nexts[("o", v, 0)]
            rules.append((k, mu, plug[1], tuple(reversed(front))))
    return rules


def to_pl_map(d: StrandDiagram) -> PLMap:
    """The dyadic rearrangement [0,m] -> [0,n] computed by the diagram."""
    rules = sorted(_rules(d), key=lambda r: (r[0], r[1]))
    points = [(Fraction(0), Fraction(0))]
    x = Fraction(0)
    y = Fraction(0)
    for k, mu, j, nu in rules:
        x0 = k + _word_value(mu)
        y0 = j + _word_value(nu)
        if x0 != x or y0 != y:
            raise ValueError("paths do not tile the square: invalid diagram")
        x = x0 + Fraction(1, 1 << len(mu))
        y = y0 + Fraction(1, 1 << len(nu))
        points.append((x, y))
    if x != d.m or y != d.n:
        raise ValueError("paths do not cover the full interval")
    return PLMap(points)


def _word_value(bits) -> Fraction:
    v = Fraction(0)
    for i, b in enumerate(bits):
        if b:
            v += Fraction(1, 1 << (i + 1))
    return v


def from_pl_map(f: PLMap) -> StrandDiagram:
    """Reduced diagram of a Thompson-like map [0,m] -> [0,n]."""
    if not f.is_thompson_like():
        raise ValueError("map is not Thompson-like")
    if f.x_lo != 0 or f.y_lo != 0 or f.x_hi.denominator != 1 or f.y_hi.denominator != 1:
        raise ValueError("need a map [0,m] -> [0,n] with integer m, n")
    m, n = int(f.x_hi), int(f.y_hi)
    breaks = [x for x, _ in f.points]

    def affine_on(lo, hi):
        return not any(lo < x < hi for x in breaks)

    leaves = []  # (domain_lo, domain_width_exp_as_Fraction, image_lo, image_width)

    def subdivide(lo, width):
        hi = lo + width
        if affine_on(lo, hi):
            y0, y1 = f(lo), f(hi)
            iw = y1 - y0
            if iw <= 1 and (y0 / iw).denominator == 1:
                leaves.append((lo, width, y0, iw))
                return None
        mid = lo + width / 2
        return (subdivide(lo, width / 2), subdivide(mid, width / 2))

    domain_trees = [subdivide(Fraction(i), Fraction(1)) for i in range(m)]

    # assemble the range forest over the image intervals, in image order
    images = sorted(range(len(leaves)), key=lambda i: leaves[i][2])

    def build_range_tree(lo, width, idxs):
        if len(idxs) == 1 and leaves[idxs[0]][3] == width:
            return None, idxs
        mid = lo + width / 2
        left = [i for i in idxs if leaves[i][2] < mid]
        right = [i for i in idxs if leaves[i][2] >= mid]
        if not left or not right:
            raise ValueError("image intervals do not tile the range")
        lt, lidx = build_range_tree(lo, width / 2, left)
        rt, ridx = build_range_tree(mid, width / 2, right)
        return (lt, rt), lidx + ridx

    range_trees = []
    range_leaf_order = []
    for j in range(n):
        idxs = [i for i in images if j <= leaves[i][2] < j + 1]
        tree, order = build_range_tree(Fraction(j), Fraction(1), idxs)
        range_trees.append(tree)
        range_leaf_order += order

    # leaf i of the domain connects to the range leaf holding its image
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
    return b.build(m, n)


# -- algebra -----------------------------------------------------------------


def concatenate(d1: StrandDiagram, d2: StrandDiagram) -> StrandDiagram:
    """Stack d1 on top of d2 (so the result acts as d1 then d2)."""
    if d1.n != d2.m:
        raise ValueError(f"cannot join {d1.n} sinks to {d2.m} sources")
    off = len(d1.kinds)

    def re2(plug):
        tag = plug[0]
        if tag in ("o", "i"):
            return (tag, plug[1] + off, plug[2])
        return plug

    kinds = dict(d1.kinds)
    for v, k in d2.kinds.items():
        kinds[v + off] = k
    nexts = {}
    for a, bp in d1.nexts.items():
        if bp[0] == "snk":
            continue
        nexts[a] = bp
    pending = {}
    for a, bp in d2.nexts.items():
        if a[0] == "src":
            pending[a[1]] = re2(bp)
        else:
            nexts[re2(a)] = re2(bp)
    # fuse sink j of d1 onto source j of d2
    for j in range(d1.n):
        tail = d1.prevs[("snk", j)]
        nexts[tail] = pending[j]
    return StrandDiagram(kinds, nexts, d1.m, d2.n)


def invert_diagram(d: StrandDiagram) -> StrandDiagram:
    """Vertical flip: swap splits with merges and sources with sinks."""

    def flip(plug):
        tag = plug[0]
        if tag == "src":
            return ("snk", plug[1])
        if tag == "snk":
            return ("src", plug[1])
        if tag == "o":
            return ("i", plug[1], plug[2])
        return ("o", plug[1], plug[2])

    kinds = {v: (MERGE if k == SPLIT else SPLIT) for v, k in d.kinds.items()}
    nexts = {flip(b): flip(a) for a, b in d.nexts.items()}
    return StrandDiagram(kinds, nexts, d.n, d.m)


# -- reduction ----------------------------------------------------------------


def _find_type1(kinds, nexts, v):
    """Split v whose outputs feed the same merge left-to-left, right-to-right."""
    if kinds.get(v) != SPLIT:
        return None
    h0 = nexts[("o", v, 0)]
    h1 = nexts[("o", v, 1)]
    if h0[0] == "i" and h1[0] == "i" and h0[1] == h1[1] and h0[2] == 0 and h1[2] == 1:
        if kinds[h0[1]] == MERGE:
            return h0[1]
    return None


def _find_type2(kinds, nexts, v):
    """Merge v whose output feeds a split."""
    if kinds.get(v) != MERGE:
        return None
    h = nexts[("o", v, 0)]
    if h[0] == "i" and kinds[h[1]] == SPLIT:
        return h[1]
    return None


def is_reduced(d: StrandDiagram) -> bool:
    for v in d.kinds:
        if _find_type1(d.kinds, d.nexts, v) is not None:
            return False
        if _find_type2(d.kinds, d.nexts, v) is not None:
            return False
    return True


def reduce(d: StrandDiagram, rng=None) -> StrandDiagram:
    """Apply reductions until none is left; the result is the normal form.

    The application order is irrelevant (and may be randomized through rng
    to exercise that).
    """
    kinds = dict(d.kinds)
    nexts = dict(d.nexts)
    prevs = {b: a for a, b in nexts.items()}

    def rewire(a, b):
        nexts[a] = b
        prevs[b] = a

    def unplug(v):
        plugs = (
            [("o", v, 0), ("o", v, 1), ("i", v, 0)]
            if kinds[v] == SPLIT
            else [("o", v, 0), ("i", v, 0), ("i", v, 1)]
        )
        for p in plugs:
            if p[0] == "o":
                b = nexts.pop(p, None)
                if b is not None and prevs.get(b) == p:
                    prevs.pop(b)
            else:
                a = prevs.pop(p, None)
                if a is not None and nexts.get(a) == p:
                    nexts.pop(a)

    work = list(d.kinds)
    if rng is not None:
        rng.shuffle(work)

    def push(plug):
        if plug[0] in ("o", "i"):
            work.append(plug[1])

    while work:
        if rng is not None and len(work) > 1 and rng.random() < 0.5:
            i = rng.randrange(len(work))
            work[i], work[-1] = work[-1], work[i]
        v = work.pop()
        if v not in kinds:
            continue
        w = _find_type1(kinds, nexts, v)
        if w is not None:
            feed = prevs[("i", v, 0)]
            target = nexts[("o", w, 0)]
            unplug(v)
            unplug(w)
            del kinds[v], kinds[w]
            rewire(feed, target)
            push(feed)
            push(target)
            continue
        w = _find_type2(kinds, nexts, v)
        if w is not None:
            feeds = [prevs[("i", v, 0)], prevs[("i", v, 1)]]
            targets = [nexts[("o", w, 0)], nexts[("o", w, 1)]]
            unplug(v)
            unplug(w)
            del kinds[v], kinds[w]
            for feed, target in zip(feeds, targets):
                rewire(feed, target)
                push(feed)
                push(target)
            continue
    return StrandDiagram(kinds, nexts, d.m, d.n)


# -- comparison ----------------------------------------------------------------


def canonical_string(d: StrandDiagram) -> str:
    """Canonical encoding of the ordered-port graph, sources/sinks in order."""
    ids = {}
    kinds_out = []

    def vid(v):
        if v not in ids:
            ids[v] = len(ids)
            kinds_out.append("S" if d.kinds[v] == SPLIT else "M")
        return ids[v]

    def token(plug):
        tag = plug[0]
        if tag in ("src", "snk"):
            return f"{tag}{plug[1]}"
        return f"v{vid(plug[1])}{tag}{plug[2]}"

    seen = set()
    queue = deque(("src", i) for i in range(d.m))
    edges = []
    while queue:
        a = queue.popleft()
        if a in seen:
            continue
        seen.add(a)
        b = d.nexts[a]
        edges.append((token(a), token(b)))
        if b[0] == "i":
            v = b[1]
            for p in (
                [("i", v, 0), ("o", v, 0), ("o", v, 1)]
                if d.kinds[v] == SPLIT
                else [("i", v, 0), ("i", v, 1), ("o", v, 0)]
            ):
                if p[0] == "o":
                    if p not in seen:
                        queue.append(p)
                else:
                    back = d.prevs[p]
                    if back not in seen:
                        queue.append(back)
    body = ";".join(f"{a}>{b}" for a, b in edges)
    return f"{d.m},{d.n}|{''.join(kinds_out)}|{body}"


def equal_reduced(d1: StrandDiagram, d2: StrandDiagram) -> bool:
    """Ordered-port isomorphism of reduced diagrams."""
    for d in (d1, d2):
        if not is_reduced(d):
            raise ValueError("equal_reduced needs reduced diagrams")
    if (d1.m, d1.n) != (d2.m, d2.n):
        return False
    return canonical_string(d1) == canonical_string(d2)


# -- output ---------------------------------------------------------------------


def to_text(d: StrandDiagram) -> str:
    lines = [f"sources {d.m}", f"sinks {d.n}"]
    for v in sorted(d.kinds):
        lines.append(f"v{v} {d.kinds[v]}")

    def name(plug):
        tag = plug[0]
        if tag in ("src", "snk"):
            return f"{tag}{plug[1]}"
        v = plug[1]
        port = ("l", "r")[plug[2]]
        # a split's single input and a merge's single output carry no side
        if tag == "o":
            return f"v{v}.out{port}" if d.kinds[v] == SPLIT else f"v{v}.out"
        return f"v{v}.in{port}" if d.kinds[v] == MERGE else f"v{v}.in"

    for a in sorted(d.nexts, key=str):
        lines.append(f"{name(a)} -> {name(d.nexts[a])}")
    return "\n".join(lines)


def to_dot(d: StrandDiagram) -> str:
    lines = ["digraph strand {", "  rankdir=TB;"]
    for i in range(d.m):
        lines.append(f'  src{i} [shape=point, xlabel="{i}"];')
    for j in range(d.n):
        lines.append(f'  snk{j} [shape=point, xlabel="{j}"];')
    for v, k in sorted(d.kinds.items()):
        shape = "invtriangle" if k == SPLIT else "triangle"
        lines.append(f'  v{v} [shape={shape}, label=""];')

    def node(plug):
        if plug[0] in ("src", "snk"):
            return f"{plug[0]}{plug[1]}"
        return f"v{plug[1]}"

    for a, b in sorted(d.nexts.items(), key=str):
        sides = []
        if a[0] == "o" and d.kinds[a[1]] == SPLIT:
            sides.append("L" if a[2] == 0 else "R")
        if b[0] == "i" and d.kinds[b[1]] == MERGE:
            sides.append("L" if b[2] == 0 else "R")
        attr = f' [label="{"/".join(sides)}"]' if sides else ""
        lines.append(f"  {node(a)} -> {node(b)}{attr};")
    lines.append("}")
    return "\n".join(lines)
