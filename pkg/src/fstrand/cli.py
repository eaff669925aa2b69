"""Command-line front end.

Elements are written as generator words (``x0 x1^-1 x0^2``), tree pairs
(``((**)*) | (*(**))`` with ``*`` a leaf), or PLMap JSON; ``-`` reads JSON
from stdin.  Words multiply like functions, the rightmost letter acting
first.  All numeric output is exact.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import annular, mather, orbits, plmap, strand
from .binary import TailWord
from .plmap import PLMap

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARSE = 2


class ParseError(ValueError):
    pass


class Element:
    """An element carried as a map, with its diagram built on demand."""

    def __init__(self, pl: PLMap, diagram=None):
        self.map = pl
        self._diagram = diagram

    @property
    def diagram(self):
        if self._diagram is None:
            self._diagram = strand.from_pl_map(self.map)
        return self._diagram


_WORD_TOKEN = re.compile(r"^x([01])(?:\^(-?\d+))?$")


def _parse_word(text: str) -> Element:
    letters = []
    for tok in text.split():
        m = _WORD_TOKEN.match(tok)
        if m is None:
            raise ParseError(f"bad word token {tok!r}")
        which = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) else 1
        sign = 1 if exp >= 0 else -1
        letters += [(which, sign)] * abs(exp)
    d = strand.trivial_diagram()
    f = plmap.identity(1)
    for which, e in reversed(letters):
        d = strand.concatenate(d, strand.generator_diagram(which, e))
        base = plmap.X0 if which == 0 else plmap.X1
        f = plmap.compose(f, base if e == 1 else plmap.invert(base))
    return Element(f, d)


def _parse_tree(text: str, i: int):
    while i < len(text) and text[i].isspace():
        i += 1
    if i >= len(text):
        raise ParseError(f"unexpected end of tree at position {i}")
    if text[i] == "*":
        return None, i + 1
    if text[i] == "(":
        left, i = _parse_tree(text, i + 1)
        right, i = _parse_tree(text, i)
        while i < len(text) and text[i].isspace():
            i += 1
        if i >= len(text) or text[i] != ")":
            raise ParseError(f"expected ')' at position {i}")
        return (left, right), i + 1
    raise ParseError(f"unexpected character {text[i]!r} at position {i}")


def _parse_tree_pair(text: str) -> Element:
    left_txt, right_txt = text.split("|", 1)
    dom, i = _parse_tree(left_txt, 0)
    if left_txt[i:].strip():
        raise ParseError(f"trailing input after domain tree: {left_txt[i:]!r}")
    ran, j = _parse_tree(right_txt, 0)
    if right_txt[j:].strip():
        raise ParseError(f"trailing input after range tree: {right_txt[j:]!r}")
    try:
        d = strand.from_tree_pair(dom, ran)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return Element(strand.to_pl_map(d), d)


def parse_element(text: str) -> Element:
    text = text.strip()
    if text == "-":
        text = sys.stdin.read().strip()
    if not text:
        raise ParseError("empty element")
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from exc
        try:
            f = PLMap.from_json_dict(data)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        if not f.is_thompson_like():
            raise ParseError("map is not Thompson-like")
        return Element(f)
    if "|" in text:
        return _parse_tree_pair(text)
    return _parse_word(text)


def _parse_tail(text: str) -> TailWord:
    try:
        return TailWord.parse(text)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _fmt_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _element_output(f: PLMap, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(f.to_json_dict())
    pts = " ".join(f"({_fmt_fraction(x)},{_fmt_fraction(y)})" for x, y in f.points)
    return f"element [0,{f.x_hi}]->[0,{f.y_hi}] breakpoints {pts}"


def _interval_rows(items):
    rows = []
    for iv in items:
        if isinstance(iv, plmap.PointwiseInterval):
            rows.append(
                {
                    "kind": "interval",
                    "lo": _fmt_fraction(iv.lo),
                    "hi": _fmt_fraction(iv.hi),
                }
            )
        else:
            rows.append(
                {
                    "kind": "point",
                    "location": _fmt_fraction(iv.value),
                    "word": f"{iv.offset}+{iv.word}",
                    "slope_exp": iv.slope_exp,
                    "tail": "".join(map(str, iv.tail)),
                }
            )
    return rows


def _cmd_reduce(args, fmt):
    elem = parse_element(args.elem)
    r = strand.reduce(elem.diagram)
    if fmt == "dot":
        return strand.to_dot(r)
    return strand.to_text(r)


def _cmd_mul(args, fmt):
    a = parse_element(args.left)
    b = parse_element(args.right)
    return _element_output(plmap.compose(b.map, a.map), fmt)


def _cmd_inv(args, fmt):
    return _element_output(plmap.invert(parse_element(args.elem).map), fmt)


def _cmd_conj(args, fmt):
    f = parse_element(args.left).map
    g = parse_element(args.right).map
    kf = annular.canonical_key(annular.reduce_annular(annular.close(strand.from_pl_map(f))))
    kg = annular.canonical_key(annular.reduce_annular(annular.close(strand.from_pl_map(g))))
    verdict = "conjugate" if kf == kg else "not-conjugate"
    if fmt == "json":
        return json.dumps({"verdict": verdict, "keys": [kf.hex(), kg.hex()]})
    return f"{verdict}\nkey1 {kf.hex()}\nkey2 {kg.hex()}"


def _cmd_fixed(args, fmt):
    f = parse_element(args.elem).map
    analytic = plmap.fixed_intervals(f)
    flag = ""
    try:
        a = annular.reduce_annular(annular.close(strand.from_pl_map(f)))
        from_loops = annular.fixed_intervals_from_loops(a, f)
        if from_loops != analytic:
            flag = "DISAGREE"
    except ValueError as exc:
        from_loops = None
        flag = f"DISAGREE: {exc}"
    payload = {
        "analytic": _interval_rows(analytic),
        "from_loops": _interval_rows(from_loops) if from_loops is not None else None,
        "flag": flag or "agree",
    }
    if fmt == "json":
        return json.dumps(payload)
    lines = [f"fixed intervals ({payload['flag']}):"]
    for row in payload["analytic"]:
        if row["kind"] == "interval":
            lines.append(f"  interval [{row['lo']}, {row['hi']}]")
        else:
            lines.append(
                f"  point {row['location']} = {row['word']} "
                f"slope 2^{row['slope_exp']} tail ({row['tail']})"
            )
    return "\n".join(lines)


def _cmd_mather(args, fmt):
    f = parse_element(args.elem).map
    c = mather.mather_invariant(f)
    if fmt == "json":
        return json.dumps(c.to_json_dict())
    pts = " ".join(
        f"({_fmt_fraction(x)},{_fmt_fraction(y)})" for x, y in c.lift.points
    )
    return f"circle map R/{c.m}Z -> R/{c.n}Z lift {pts}"


def _cmd_mather_eq(args, fmt):
    c1 = mather.mather_invariant(parse_element(args.left).map)
    c2 = mather.mather_invariant(parse_element(args.right).map)
    verdict = "equivalent" if mather.mather_equivalent(c1, c2) else "not-equivalent"
    if fmt == "json":
        return json.dumps({"verdict": verdict})
    return verdict


def _cmd_orbit(args, fmt):
    t = _parse_tail(args.left)
    u = _parse_tail(args.right)
    verdict = "same-orbit" if orbits.in_same_orbit(t, u) else "different-orbit"
    if fmt == "json":
        return json.dumps({"verdict": verdict})
    return verdict


def _cmd_transport(sources, targets, fmt):
    ts = [_parse_tail(s) for s in sources]
    us = [_parse_tail(s) for s in targets]
    if len(ts) == 1:
        g = orbits.pipeline_element(ts[0], us[0])
    else:
        g = orbits.multipoint_transporter(ts, us)
    return _element_output(g, "json" if fmt == "json" else fmt)


def _cmd_render(args, fmt):
    elem = parse_element(args.elem)
    if args.annular:
        a = annular.reduce_annular(annular.close(strand.from_pl_map(elem.map)))
        return annular.to_dot(a)
    return strand.to_dot(strand.reduce(elem.diagram))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fstrand",
        description="exact computations in Thompson's group F",
    )
    p.add_argument(
        "--format",
        choices=["text", "json", "dot"],
        default="text",
        help="output format (default text)",
    )
    p.add_argument(
        "--seed",
        type=int,
        default=None,
        help="reproducibility seed for randomized helpers",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("reduce", help="reduced strand diagram of an element")
    sp.add_argument("elem")
    sp.set_defaults(run=_cmd_reduce)

    sp = sub.add_parser("mul", help="product of two elements (left acts after right)")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(run=_cmd_mul)

    sp = sub.add_parser("inv", help="inverse of an element")
    sp.add_argument("elem")
    sp.set_defaults(run=_cmd_inv)

    sp = sub.add_parser("conj", help="decide conjugacy and print canonical keys")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(run=_cmd_conj)

    sp = sub.add_parser("fixed", help="fixed intervals, analytic and loop-derived")
    sp.add_argument("elem")
    sp.set_defaults(run=_cmd_fixed)

    sp = sub.add_parser("mather", help="Mather invariant of a one-bump element")
    sp.add_argument("elem")
    sp.set_defaults(run=_cmd_mather)

    sp = sub.add_parser("mather-eq", help="compare Mather invariants up to rotations")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(run=_cmd_mather_eq)

    sp = sub.add_parser("orbit", help="same-orbit test for two tail words")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(run=_cmd_orbit)

    sub.add_parser(
        "transport",
        help="element moving tails t1 ... -- u1 ... (handled before argparse)",
    )

    sp = sub.add_parser("render", help="DOT rendering of a diagram")
    sp.add_argument("elem")
    sp.add_argument("--annular", action="store_true", help="render the reduced annular closure")
    sp.add_argument("--dot", action="store_true", help="accepted for compatibility")
    sp.set_defaults(run=_cmd_render)

    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        # `transport a b -- c d` keeps its own separator, which argparse
        # would swallow; peel it off first
        if "transport" in argv:
            i = argv.index("transport")
            gp = argparse.ArgumentParser(add_help=False)
            gp.add_argument("--format", choices=["text", "json", "dot"], default="text")
            gp.add_argument("--seed", type=int, default=None)
            gns, extra = gp.parse_known_args(argv[:i])
            if extra:
                raise ParseError(f"unknown options before transport: {extra}")
            rest = argv[i + 1 :]
            if "--" not in rest:
                raise ParseError("transport needs `--` between sources and targets")
            j = rest.index("--")
            sources, targets = rest[:j], rest[j + 1 :]
            if not sources or len(sources) != len(targets):
                raise ParseError("transport needs equal nonempty point lists")
            print(_cmd_transport(sources, targets, gns.format))
            return EXIT_OK
        ns = build_parser().parse_args(argv)
        print(ns.run(ns, ns.format))
        return EXIT_OK
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
