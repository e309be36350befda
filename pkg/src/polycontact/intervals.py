"""Canonical polytopes on the line: finite unions of closed intervals and rays.

A value is a sorted tuple of maximal closed pieces ``(lo, hi)`` where ``None``
stands for an unbounded end.  Canonical form means pieces are pairwise
separated by gaps of positive length and no piece is a single point, so two
values denote the same regular closed set iff they are equal tuples.

Only finite unions are representable.  Regular closed sets built from
infinitely many segments (for instance the closure of an infinite union of
shrinking intervals accumulating at a point) fall outside this class, and
the algebra here makes no attempt to simulate them.

On the line the topological contact C and the strong contact SC coincide for
these sets, so ``contact_sc`` is the same predicate as ``contact_c``; the
test suite checks the coincidence against an independent witness-interval
decision rather than trusting the aliasing.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .numeric import rational

# a piece is (lo, hi); None means -inf / +inf respectively
Piece = tuple[Fraction | None, Fraction | None]


def _lo_key(lo: Fraction | None) -> tuple[int, Fraction]:
    return (0, Fraction(0)) if lo is None else (1, lo)


@dataclass(frozen=True)
class IntervalPolytope:
    pieces: tuple[Piece, ...]

    def __post_init__(self):
        for lo, hi in self.pieces:
            if lo is not None and hi is not None and lo >= hi:
                raise ValueError(f"degenerate piece [{lo}, {hi}] in canonical value")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_pieces(raw: Iterable[Piece]) -> "IntervalPolytope":
        return canonicalize(raw)

    # -- predicates ----------------------------------------------------

    def is_empty(self) -> bool:
        return not self.pieces

    def is_all(self) -> bool:
        return self.pieces == ((None, None),)

    def contains(self, x: Fraction) -> bool:
        return any((lo is None or lo <= x) and (hi is None or x <= hi)
                   for lo, hi in self.pieces)

    # -- Boolean algebra -----------------------------------------------

    def complement(self) -> "IntervalPolytope":
        """Closure of the set complement; rays make this class closed."""
        if self.is_empty():
            return ALL
        out: list[Piece] = []
        lo0 = self.pieces[0][0]
        if lo0 is not None:
            out.append((None, lo0))
        for (_, hi), (lo, _) in zip(self.pieces, self.pieces[1:]):
            out.append((hi, lo))
        hi_last = self.pieces[-1][1]
        if hi_last is not None:
            out.append((hi_last, None))
        return IntervalPolytope(tuple(out))

    def union(self, other: "IntervalPolytope") -> "IntervalPolytope":
        return canonicalize(self.pieces + other.pieces)

    def reg_meet(self, other: "IntervalPolytope") -> "IntervalPolytope":
        """Regularised intersection; touching-point intersections vanish."""
        out = []
        for a in self.pieces:
            for b in other.pieces:
                lo = _max_lo(a[0], b[0])
                hi = _min_hi(a[1], b[1])
                if _positive_length(lo, hi):
                    out.append((lo, hi))
        return canonicalize(out)

    def equals(self, other: "IntervalPolytope") -> bool:
        return self.pieces == other.pieces

    # -- contact -------------------------------------------------------

    def contact_c(self, other: "IntervalPolytope") -> bool:
        """Topological contact: the closed sets share a point."""
        return any(_pieces_touch(a, b) for a in self.pieces for b in other.pieces)

    def overlap(self, other: "IntervalPolytope") -> bool:
        return not self.reg_meet(other).is_empty()

    def contact_sc(self, other: "IntervalPolytope") -> bool:
        """Strong contact; on the line it coincides with contact_c."""
        return self.contact_c(other)

    def __repr__(self) -> str:
        return f"IntervalPolytope({format_intervals(self)})"


EMPTY = IntervalPolytope(())
ALL = IntervalPolytope(((None, None),))


def _max_lo(a: Fraction | None, b: Fraction | None) -> Fraction | None:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _min_hi(a: Fraction | None, b: Fraction | None) -> Fraction | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _positive_length(lo: Fraction | None, hi: Fraction | None) -> bool:
    return lo is None or hi is None or lo < hi


def _pieces_touch(a: Piece, b: Piece) -> bool:
    lo = _max_lo(a[0], b[0])
    hi = _min_hi(a[1], b[1])
    return lo is None or hi is None or lo <= hi


def canonicalize(raw: Iterable[Piece]) -> IntervalPolytope:
    """Merge overlapping or touching pieces, drop single points, sort.

    Accepts pieces with ``lo == hi`` (they disappear: a point is not
    regular closed); rejects ``lo > hi``.
    """
    pieces = []
    for lo, hi in raw:
        lo = None if lo is None else rational(lo)
        hi = None if hi is None else rational(hi)
        if lo is not None and hi is not None and lo > hi:
            raise ValueError(f"piece with lo > hi: [{lo}, {hi}]")
        pieces.append((lo, hi))
    pieces.sort(key=lambda p: _lo_key(p[0]))
    merged: list[Piece] = []
    for lo, hi in pieces:
        if merged:
            plo, phi = merged[-1]
            # closed pieces merge when they overlap or merely touch
            if phi is None or lo is None or lo <= phi:
                merged[-1] = (plo, _max_hi_merge(phi, hi))
                continue
        merged.append((lo, hi))
    kept = tuple(p for p in merged if _positive_length(*p))
    return IntervalPolytope(kept)


def _max_hi_merge(a: Fraction | None, b: Fraction | None) -> Fraction | None:
    if a is None or b is None:
        return None
    return max(a, b)


def contact_witness(p: IntervalPolytope, q: IntervalPolytope) -> tuple[Fraction, Fraction] | None:
    """An open interval inside ``p | q`` meeting both, when they touch.

    Mirrors the construction behind the line coincidence of C and SC: at a
    shared point either the pieces properly overlap, or they meet end to
    end and a short open interval straddling the junction works.
    """
    for a in p.pieces:
        for b in q.pieces:
            lo = _max_lo(a[0], b[0])
            hi = _min_hi(a[1], b[1])
            if lo is None or hi is None or lo < hi:
                if lo is None and hi is None:
                    return (Fraction(0), Fraction(1))
                if lo is None:
                    lo = hi - 1
                elif hi is None:
                    hi = lo + 1
                return (lo, hi)
            if lo == hi:
                x = lo
                delta = min(_reach_below(a, b, x), _reach_above(a, b, x))
                return (x - delta, x + delta)
    return None


def _reach_below(a: Piece, b: Piece, x: Fraction) -> Fraction:
    best = Fraction(0)
    for lo, hi in (a, b):
        if (hi is None or hi >= x) and (lo is None or lo < x):
            best = max(best, Fraction(1) if lo is None else x - lo)
    return best if best else Fraction(1, 2)


def _reach_above(a: Piece, b: Piece, x: Fraction) -> Fraction:
    best = Fraction(0)
    for lo, hi in (a, b):
        if (lo is None or lo <= x) and (hi is None or hi > x):
            best = max(best, Fraction(1) if hi is None else hi - x)
    return best if best else Fraction(1, 2)


# -- text form ---------------------------------------------------------
#
#   (-inf,0]; [1/2,3]; [5,inf)        empty        all

_PIECE_RE = re.compile(
    r"^\s*([(\[])\s*(-inf|[-+]?\d+(?:/\d+)?)\s*,\s*(inf|[-+]?\d+(?:/\d+)?)\s*([)\]])\s*$")


class IntervalFormatError(ValueError):
    pass


def parse_intervals(text: str) -> IntervalPolytope:
    body = text.strip()
    if body == "empty":
        return EMPTY
    if body == "all":
        return ALL
    pieces: list[Piece] = []
    for chunk in body.split(";"):
        m = _PIECE_RE.match(chunk)
        if not m:
            raise IntervalFormatError(f"bad interval piece: {chunk.strip()!r}")
        open_b, lo_s, hi_s, close_b = m.groups()
        lo = None if lo_s == "-inf" else Fraction(lo_s)
        hi = None if hi_s == "inf" else Fraction(hi_s)
        if (lo is None) != (open_b == "("):
            raise IntervalFormatError(f"finite ends must use '[': {chunk.strip()!r}")
        if (hi is None) != (close_b == ")"):
            raise IntervalFormatError(f"finite ends must use ']': {chunk.strip()!r}")
        pieces.append((lo, hi))
    return canonicalize(pieces)


def format_intervals(p: IntervalPolytope) -> str:
    if p.is_empty():
        return "empty"
    if p.is_all():
        return "all"
    parts = []
    for lo, hi in p.pieces:
        left = "(-inf" if lo is None else f"[{lo}"
        right = "inf)" if hi is None else f"{hi}]"
        parts.append(f"{left},{right}")
    return "; ".join(parts)


def random_interval_polytope(rng: random.Random, *, max_pieces: int = 3,
                             span: int = 8, max_den: int = 8,
                             allow_rays: bool = True) -> IntervalPolytope:
    """Seeded generator for audits and property tests."""
    def coord() -> Fraction:
        return Fraction(rng.randint(-span * max_den, span * max_den),
                        rng.randint(1, max_den))

    raw: list[Piece] = []
    for _ in range(rng.randint(0, max_pieces)):
        a, b = coord(), coord()
        if a > b:
            a, b = b, a
        raw.append((a, b))
    if allow_rays and rng.random() < 0.2:
        raw.append((None, coord()))
    if allow_rays and rng.random() < 0.2:
        raw.append((coord(), None))
    return canonicalize(raw)
