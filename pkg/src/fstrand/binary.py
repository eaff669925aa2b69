"""Exact binary expansions: finite words and eventually periodic tails.

A point of [0, 1] is written ``.pre(period)`` with the period repeated
forever.  Canonical form keeps the period primitive and the preperiod
minimal, so structural equality coincides with equality of real numbers,
except that the two expansions of an interior dyadic rational (``.x0(1)``
and ``.x1(0)``) are deliberately kept distinct: they name the two Cantor
set points sitting over the same rational.
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = [
    "TailWord",
    "make_bits",
    "bits_to_str",
    "parse_bits",
    "primitive_root",
    "is_rotation",
    "cyclic_normal",
    "is_dyadic",
    "tail_to_rational",
    "rational_to_tails",
    "same_tail",
    "apply_replacement",
]


def make_bits(seq) -> tuple:
    """Coerce a sequence (or string) of 0/1 into a bit tuple."""
    bits = tuple(int(b) for b in seq)
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"not a binary word: {seq!r}")
    return bits


def parse_bits(text: str) -> tuple:
    return make_bits(text.strip())


def bits_to_str(bits) -> str:
    return "".join(str(b) for b in bits)


def primitive_root(word):
    """Shortest w such that word = w^k."""
    word = tuple(word)
    n = len(word)
    for d in range(1, n):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d]
    return word


def is_rotation(a, b) -> bool:
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        return False
    return any(a[i:] + a[:i] == b for i in range(len(a) or 1))


def cyclic_normal(word):
    """Least rotation, a canonical representative of the cyclic word."""
    word = tuple(word)
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


def is_dyadic(q) -> bool:
    d = Fraction(q).denominator
    return d & (d - 1) == 0


_TAIL_RE = re.compile(r"^\.([01]*)\(([01]+)\)$")


class TailWord:
    """Eventually periodic binary expansion ``.pre(period)`` in [0, 1]."""

    __slots__ = ("pre", "period")

    def __init__(self, pre=(), period=(0,)):
        pre = make_bits(pre)
        period = make_bits(period)
        if not period:
            raise ValueError("period must be nonempty")
        period = primitive_root(period)
        # Minimal preperiod: absorb trailing bits that match the rotated period.
        pre_l = list(pre)
        while pre_l and pre_l[-1] == period[-1]:
            pre_l.pop()
            period = period[-1:] + period[:-1]
        self.pre = tuple(pre_l)
        self.period = period

    @classmethod
    def parse(cls, text: str) -> "TailWord":
        m = _TAIL_RE.match(text.strip())
        if m is None:
            raise ValueError(f"bad tail word {text!r}, expected like .10(01)")
        return cls(make_bits(m.group(1)), make_bits(m.group(2)))

    def digit(self, i: int) -> int:
        if i < len(self.pre):
            return self.pre[i]
        return self.period[(i - len(self.pre)) % len(self.period)]

    def digits(self, k: int) -> tuple:
        return tuple(self.digit(i) for i in range(k))

    def shift(self, k: int) -> "TailWord":
        """Drop the first k digits."""
        if k < 0:
            raise ValueError("cannot shift by a negative amount")
        if k <= len(self.pre):
            return TailWord(self.pre[k:], self.period)
        j = (k - len(self.pre)) % len(self.period)
        return TailWord((), self.period[j:] + self.period[:j])

    def prepend(self, bits) -> "TailWord":
        return TailWord(make_bits(bits) + self.pre, self.period)

    def value(self) -> Fraction:
        lp = len(self.pre)
        head = int(bits_to_str(self.pre), 2) if self.pre else 0
        per = int(bits_to_str(self.period), 2)
        return Fraction(head, 1 << lp) + Fraction(per, ((1 << len(self.period)) - 1) << lp)

    def __eq__(self, other):
        return (
            isinstance(other, TailWord)
            and self.pre == other.pre
            and self.period == other.period
        )

    def __hash__(self):
        return hash((self.pre, self.period))

    def __lt__(self, other):
        if not isinstance(other, TailWord):
            return NotImplemented
        if self.value() != other.value():
            return self.value() < other.value()
        # lower expansion (.x0(1)) precedes upper (.x1(0)) at a shared dyadic
        return (self.period, self.pre) > (other.period, other.pre)

    def __str__(self):
        return f".{bits_to_str(self.pre)}({bits_to_str(self.period)})"

    def __repr__(self):
        return f"TailWord({self.pre!r}, {self.period!r})"


def tail_to_rational(w: TailWord) -> Fraction:
    """Exact value of an eventually periodic expansion."""
    return w.value()


def rational_to_tails(q) -> set:
    """All canonical expansions of q in [0, 1].

    Interior dyadics get two (the Cantor pair), everything else one.
    """
    q = Fraction(q)
    if q < 0 or q > 1:
        raise ValueError(f"{q} is outside [0, 1]")
    if q == 0:
        return {TailWord((), (0,))}
    if q == 1:
        return {TailWord((), (1,))}
    if is_dyadic(q):
        k = q.denominator.bit_length() - 1
        num = q.numerator
        bits = tuple((num >> (k - 1 - i)) & 1 for i in range(k))
        upper = TailWord(bits, (0,))
        lower = TailWord(bits[:-1] + (0,), (1,))
        return {lower, upper}
    seen = {}
    digits = []
    x = q
    while x not in seen:
        seen[x] = len(digits)
        x *= 2
        d = 1 if x >= 1 else 0
        digits.append(d)
        x -= d
    s = seen[x]
    return {TailWord(tuple(digits[:s]), tuple(digits[s:]))}


def same_tail(t: TailWord, u: TailWord) -> bool:
    """True iff t = .mu w and u = .nu w for a common infinite tail w.

    For canonical words this happens exactly when the primitive periods
    are rotations of one another.
    """
    return is_rotation(t.period, u.period)


def apply_replacement(rule, w: TailWord) -> TailWord:
    """Apply a local rule .mu alpha -> .nu alpha to w = .mu alpha."""
    mu, nu = rule
    mu = make_bits(mu)
    nu = make_bits(nu)
    if w.digits(len(mu)) != mu:
        raise ValueError(f"{w} does not begin with {bits_to_str(mu)!r}")
    return w.shift(len(mu)).prepend(nu)
