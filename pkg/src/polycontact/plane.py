"""Plane polytopes: unions of half-plane intersections, exact contact predicates.

The carrier is the Boolean algebra of regular closed sets generated by closed
half-planes: a basic polytope is a regularised intersection of half-planes
(stored only when its interior is nonempty, with redundant constraints
dropped), and a polytope is a finite union of basics.  All emptiness and
redundancy questions reduce to feasibility of small linear systems with
strict or non-strict inequalities, decided exactly by Fourier-Motzkin
elimination over rationals.

Contact relations, strongest to weakest:

* ``overlap``    - the regularised meet is nonempty;
* ``contact_sc`` - strong contact: a connected open subset of the union
  meets both regions.  Decided as overlap, or a shared crossing facet: a
  positive-length segment on some constraint line with the interior of one
  region on one open side and the interior of the other region opposite.
  The facet search walks the arrangement of all pooled constraint lines and
  classifies each open edge by sampling just off both sides at an exactly
  safe distance;
* ``contact_c``  - the closed point sets intersect.

Every half-disk/ball construction used by ``sc_witness`` is returned with a
rational radius small enough to be checked by exact containment tests
(``sc_witness_valid``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional, Sequence

from .numeric import (
    DimensionMismatch,
    HalfSpace,
    Hyperplane,
    LineRelation,
    Point,
    dot,
    flip,
    intersect_lines,
    rational,
    sqrt_lower,
)

# linear constraint a*x + b*y (< | <=) c
LinCon = tuple[Fraction, Fraction, Fraction, bool]


# ---------------------------------------------------------------------------
# exact feasibility of strict/non-strict systems (Fourier-Motzkin)
# ---------------------------------------------------------------------------

def _solve_1d(cons: list[tuple[Fraction, Fraction, bool]]) -> Optional[Fraction]:
    """Witness for a system of constraints ``a*t (<|<=) c``, or None."""
    lo: tuple[Fraction, bool] | None = None  # t > / >= value
    hi: tuple[Fraction, bool] | None = None  # t < / <= value
    for a, c, strict in cons:
        if a == 0:
            if c < 0 or (c == 0 and strict):
                return None
            continue
        bound = c / a
        if a > 0:
            if hi is None or bound < hi[0] or (bound == hi[0] and strict):
                hi = (bound, strict)
        else:
            if lo is None or bound > lo[0] or (bound == lo[0] and strict):
                lo = (bound, strict)
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi[0] - 1
    if hi is None:
        return lo[0] + 1
    if lo[0] < hi[0]:
        return (lo[0] + hi[0]) / 2
    if lo[0] == hi[0] and not lo[1] and not hi[1]:
        return lo[0]
    return None


def feasible_point(cons: Iterable[LinCon]) -> Optional[Point]:
    """A rational point satisfying every constraint, or None.

    Eliminates y first: each (lower, upper) pair of y-bounds yields an
    x-constraint, strict when either side is strict; the resulting
    one-variable system is solved directly and y is back-substituted.
    """
    cons = list(cons)
    x_cons: list[tuple[Fraction, Fraction, bool]] = []
    uppers: list[LinCon] = []
    lowers: list[LinCon] = []
    for a, b, c, strict in cons:
        if b == 0:
            if a == 0:
                if c < 0 or (c == 0 and strict):
                    return None
            else:
                x_cons.append((a, c, strict))
        elif b > 0:
            uppers.append((a, b, c, strict))
        else:
            lowers.append((a, b, c, strict))
    for al, bl, cl, sl in lowers:
        for au, bu, cu, su in uppers:
            # (cl - al*x)/bl <= (cu - au*x)/bu with bl<0<bu
            a_new = bu * al - bl * au
            c_new = bu * cl - bl * cu
            x_cons.append((a_new, c_new, sl or su))
    x = _solve_1d(x_cons)
    if x is None:
        return None
    y_cons = [(b, c - a * x, strict) for a, b, c, strict in cons if b != 0]
    y = _solve_1d(y_cons)
    if y is None:
        return None
    return (x, y)


def _as_con(h: HalfSpace, strict: bool) -> LinCon:
    (a, b), c = h.normal, h.offset
    return (a, b, c, strict)


def _negated_strict(h: HalfSpace) -> LinCon:
    """The open complement ``normal.x > offset`` as a strict constraint."""
    (a, b), c = h.normal, h.offset
    return (-a, -b, -c, True)


# ---------------------------------------------------------------------------
# basic polytopes and polytopes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class BasicPolytope:
    """Irredundant closed half-plane intersection with nonempty interior.

    An irredundant inequality description of a full-dimensional region is
    unique once half-spaces are canonically scaled, so equality of basics
    is plain tuple equality.
    """

    constraints: tuple[HalfSpace, ...]

    def contains(self, p: Point) -> bool:
        return all(h.value_at(p) <= 0 for h in self.constraints)

    def strictly_contains(self, p: Point) -> bool:
        return all(h.value_at(p) < 0 for h in self.constraints)

    def interior_point(self) -> Point:
        pt = feasible_point(_as_con(h, True) for h in self.constraints)
        if pt is None:  # excluded by the mk_basic invariant
            raise ValueError("basic polytope lost its interior")
        return pt

    def __repr__(self) -> str:
        return f"BasicPolytope({len(self.constraints)} constraints)"


def mk_basic(halfspaces: Iterable[HalfSpace]) -> Optional[BasicPolytope]:
    """Canonical basic polytope of the given half-planes, or None.

    None exactly when the strict system has no solution, i.e. the interior
    of the intersection is empty (so the regularised intersection is empty).
    Redundant constraints are removed: h is redundant when the others
    already force ``normal.x <= offset``.
    """
    current = sorted(set(halfspaces))
    for h in current:
        if h.dim != 2:
            raise DimensionMismatch("mk_basic expects half-planes")
    if feasible_point(_as_con(h, True) for h in current) is None:
        return None
    for h in list(current):
        rest = [g for g in current if g != h]
        system = [_as_con(g, False) for g in rest]
        system.append(_negated_strict(h))
        if feasible_point(system) is None:
            current = rest
    return BasicPolytope(tuple(current))


R2_BASIC = BasicPolytope(())


@dataclass(frozen=True)
class PlanePolytope:
    """Finite union of basic polytopes; equality is semantic, not syntactic."""

    parts: tuple[BasicPolytope, ...]

    @staticmethod
    def from_basics(basics: Iterable[Optional[BasicPolytope]]) -> "PlanePolytope":
        kept = sorted({b for b in basics if b is not None})
        return PlanePolytope(tuple(kept))

    @staticmethod
    def from_constraint_sets(sets: Iterable[Iterable[HalfSpace]]) -> "PlanePolytope":
        return PlanePolytope.from_basics(mk_basic(s) for s in sets)

    def is_empty(self) -> bool:
        return not self.parts

    def contains(self, p: Point) -> bool:
        return any(part.contains(p) for part in self.parts)

    def union(self, other: "PlanePolytope") -> "PlanePolytope":
        return PlanePolytope.from_basics(self.parts + other.parts)

    def reg_meet(self, other: "PlanePolytope") -> "PlanePolytope":
        basics = [mk_basic(a.constraints + b.constraints)
                  for a in self.parts for b in other.parts]
        return PlanePolytope.from_basics(basics)

    def complement(self) -> "PlanePolytope":
        """De Morgan expansion: flip every constraint, distribute the
        regularised intersections over the unions, drop empty basics."""
        result = R2
        for part in self.parts:
            flipped = PlanePolytope.from_basics(
                mk_basic([flip(h)]) for h in part.constraints)
            result = result.reg_meet(flipped)
        return result

    def equals(self, other: "PlanePolytope") -> bool:
        return (self.reg_meet(other.complement()).is_empty()
                and other.reg_meet(self.complement()).is_empty())

    def contact_c(self, other: "PlanePolytope") -> bool:
        return contact_c(self, other)

    def contact_sc(self, other: "PlanePolytope") -> bool:
        return contact_sc(self, other)

    def overlap(self, other: "PlanePolytope") -> bool:
        return overlap(self, other)

    def sc_witness(self, other: "PlanePolytope"):
        return sc_witness(self, other)

    def constraint_lines(self) -> list[Hyperplane]:
        return sorted({h.boundary() for part in self.parts
                       for h in part.constraints})

    def __repr__(self) -> str:
        return f"PlanePolytope({len(self.parts)} parts)"


EMPTY = PlanePolytope(())
R2 = PlanePolytope((R2_BASIC,))


# ---------------------------------------------------------------------------
# contact predicates
# ---------------------------------------------------------------------------

def contact_c(p: PlanePolytope, q: PlanePolytope) -> bool:
    """Topological contact: the closed sets share a point."""
    for a in p.parts:
        for b in q.parts:
            combined = [_as_con(h, False) for h in a.constraints + b.constraints]
            if feasible_point(combined) is not None:
                return True
    return False


def _overlap_witness(p: PlanePolytope, q: PlanePolytope
                     ) -> Optional[tuple[Point, BasicPolytope, BasicPolytope]]:
    for a in p.parts:
        for b in q.parts:
            combined = [_as_con(h, True) for h in a.constraints + b.constraints]
            z = feasible_point(combined)
            if z is not None:
                return z, a, b
    return None


def overlap(p: PlanePolytope, q: PlanePolytope) -> bool:
    return _overlap_witness(p, q) is not None


def _line_param(mu: Hyperplane) -> tuple[Point, tuple[Fraction, Fraction]]:
    """A rational base point on the line and a direction vector along it."""
    (a, b), c = mu.normal, mu.offset
    base = (Fraction(0), c / b) if b != 0 else (c / a, Fraction(0))
    return base, (-b, a)


def _point_on(base: Point, direction, t: Fraction) -> Point:
    return (base[0] + t * direction[0], base[1] + t * direction[1])


def _events_on(mu: Hyperplane, base: Point, direction, lines: Sequence[Hyperplane]
               ) -> list[Fraction]:
    ts = set()
    for nu in lines:
        if nu == mu:
            continue
        denom = dot(nu.normal, direction)
        if denom == 0:
            continue  # parallel, never meets mu
        t = (nu.offset - dot(nu.normal, base)) / denom
        ts.add(t)
    return sorted(ts)


def _safe_normal_step(x: Point, mu: Hyperplane, lines: Sequence[Hyperplane]) -> Fraction:
    """An eps such that x +/- eps*normal crosses no line except mu itself."""
    bounds = []
    for nu in lines:
        if nu == mu:
            continue
        shift = dot(nu.normal, mu.normal)
        if shift == 0:
            continue
        val = nu.value_at(x)
        bounds.append(abs(val) / abs(shift))
    return min(bounds) / 2 if bounds else Fraction(1)


def _facet_probe(p: PlanePolytope, q: PlanePolytope, mu: Hyperplane,
                 x: Point, lines: Sequence[Hyperplane]) -> bool:
    """True when, locally at x on mu, Int(p) fills one open side and Int(q)
    the other.  x must avoid every line except mu."""
    eps = _safe_normal_step(x, mu, lines)
    n = mu.normal
    plus = (x[0] + eps * n[0], x[1] + eps * n[1])
    minus = (x[0] - eps * n[0], x[1] - eps * n[1])
    p_plus, p_minus = p.contains(plus), p.contains(minus)
    q_plus, q_minus = q.contains(plus), q.contains(minus)
    return (p_plus and q_minus) or (p_minus and q_plus)


def _sc_analysis(p: PlanePolytope, q: PlanePolytope):
    """None, or ("overlap", point, basic, basic), or ("facet", line, point).

    The facet search pools the constraint lines of both arguments, cuts each
    line at its intersections with the others, and probes one interior point
    per resulting open piece.  Side classification is constant along a piece
    because the probe points of a piece all lie in the same two open cells
    of the pooled arrangement.
    """
    if p.is_empty() or q.is_empty():
        return None
    ow = _overlap_witness(p, q)
    if ow is not None:
        return ("overlap", *ow)
    lines = sorted(set(p.constraint_lines()) | set(q.constraint_lines()))
    for mu in lines:
        base, direction = _line_param(mu)
        ts = _events_on(mu, base, direction, lines)
        if ts:
            reps = [ts[0] - 1]
            reps += [(a + b) / 2 for a, b in zip(ts, ts[1:])]
            reps.append(ts[-1] + 1)
        else:
            reps = [Fraction(0)]
        for t in reps:
            x = _point_on(base, direction, t)
            if _facet_probe(p, q, mu, x, lines):
                return ("facet", mu, x)
    return None


def contact_sc(p: PlanePolytope, q: PlanePolytope) -> bool:
    """Strong contact: overlap or a shared crossing facet."""
    return _sc_analysis(p, q) is not None


def point_line_dist_sq(z: Point, line: Hyperplane) -> Fraction:
    v = line.value_at(z)
    return v * v / dot(line.normal, line.normal)


def sc_witness(p: PlanePolytope, q: PlanePolytope
               ) -> Optional[tuple[Point, Fraction]]:
    """An open disk inside ``p | q`` meeting both, when SC holds.

    Overlap case: a ball around an interior point of the regularised meet.
    Facet case: the half-disk construction at the probed facet point, with
    radius half the distance to the nearest other constraint line.
    """
    analysis = _sc_analysis(p, q)
    if analysis is None:
        return None
    if analysis[0] == "overlap":
        _, z, a, b = analysis
        dists = [sqrt_lower(point_line_dist_sq(z, h.boundary()))
                 for h in a.constraints + b.constraints]
        r = min(dists) / 2 if dists else Fraction(1)
        return z, r
    _, mu, x = analysis
    lines = sorted(set(p.constraint_lines()) | set(q.constraint_lines()))
    dists = [sqrt_lower(point_line_dist_sq(x, nu)) for nu in lines if nu != mu]
    r = min(dists) / 2 if dists else Fraction(1)
    return x, r


# ---------------------------------------------------------------------------
# exact ball containment (witness validation)
# ---------------------------------------------------------------------------

def point_basic_dist_sq(z: Point, basic: BasicPolytope) -> Fraction:
    """Exact squared distance from a point to a closed basic polytope.

    The closest point is z itself, the foot of a perpendicular on a facet,
    or a vertex; all candidates are rational.
    """
    if basic.contains(z):
        return Fraction(0)
    best: Fraction | None = None
    cons = basic.constraints
    for h in cons:
        n, val = h.normal, h.value_at(z)
        nn = dot(n, n)
        foot = (z[0] - val * n[0] / nn, z[1] - val * n[1] / nn)
        if basic.contains(foot):
            d = val * val / nn
            best = d if best is None else min(best, d)
    for i in range(len(cons)):
        for j in range(i + 1, len(cons)):
            kind, v = intersect_lines(cons[i].boundary(), cons[j].boundary())
            if kind is LineRelation.POINT and basic.contains(v):
                d = (z[0] - v[0]) ** 2 + (z[1] - v[1]) ** 2
                best = d if best is None else min(best, d)
    if best is None:
        raise ValueError("unreachable: nonempty basic with no boundary candidate")
    return best


def ball_meets(center: Point, radius: Fraction, poly: PlanePolytope) -> bool:
    return any(point_basic_dist_sq(center, part) < radius * radius
               for part in poly.parts)


def ball_within(center: Point, radius: Fraction, poly: PlanePolytope) -> bool:
    """Whether the open disk is contained in the (regular closed) polytope."""
    comp = poly.complement()
    return all(point_basic_dist_sq(center, part) >= radius * radius
               for part in comp.parts)


def sc_witness_valid(p: PlanePolytope, q: PlanePolytope,
                     center: Point, radius: Fraction) -> bool:
    return (radius > 0
            and ball_within(center, radius, p.union(q))
            and ball_meets(center, radius, p)
            and ball_meets(center, radius, q))


# ---------------------------------------------------------------------------
# interior membership at a point (used by boundary machinery)
# ---------------------------------------------------------------------------

def _angle_cmp(d1, d2) -> int:
    def half(d):
        x, y = d
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    h1, h2 = half(d1), half(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


def _sector_step(v: Point, direction, other_lines: Sequence[Hyperplane]) -> Fraction:
    bounds = []
    for lam in other_lines:
        shift = dot(lam.normal, direction)
        if shift == 0:
            continue
        bounds.append(abs(lam.value_at(v)) / abs(shift))
    return min(bounds) / 2 if bounds else Fraction(1)


def point_in_interior(poly: PlanePolytope, v: Point) -> bool:
    """Exact interior test, correct even when v lies on constraint lines.

    Samples one point per angular sector around v between consecutive
    constraint-line directions; v is interior iff v is a member and every
    sector sample is.
    """
    if not poly.contains(v):
        return False
    lines = poly.constraint_lines()
    thru = [l for l in lines if l.contains(v)]
    off = [l for l in lines if not l.contains(v)]
    if not thru:
        return True
    if len(thru) == 1:
        n = thru[0].normal
        mids = [n, (-n[0], -n[1])]
    else:
        dirs = set()
        for l in thru:
            _, d = _line_param(l)
            dirs.add(d)
            dirs.add((-d[0], -d[1]))
        ordered = sorted(dirs, key=cmp_to_key(_angle_cmp))
        mids = []
        for d1, d2 in zip(ordered, ordered[1:] + ordered[:1]):
            mids.append((d1[0] + d2[0], d1[1] + d2[1]))
    for m in mids:
        eps = _sector_step(v, m, off)
        sample = (v[0] + eps * m[0], v[1] + eps * m[1])
        if not poly.contains(sample):
            return False
    return True


def point_on_boundary(poly: PlanePolytope, v: Point) -> bool:
    return poly.contains(v) and not point_in_interior(poly, v)


# ---------------------------------------------------------------------------
# text form and random generation
# ---------------------------------------------------------------------------
#
#   poly { basic { 1 0 <= 1; -1 0 <= 0; 0 1 <= 1; 0 -1 <= 0 } basic { ... } }

class PlaneFormatError(ValueError):
    pass


def _tokenize_poly(text: str) -> list[str]:
    out = []
    for raw in text.replace("{", " { ").replace("}", " } ").replace(";", " ; ").split():
        out.append(raw)
    return out


def parse_plane(text: str) -> PlanePolytope:
    toks = _tokenize_poly(text)
    pos = 0

    def expect(tok):
        nonlocal pos
        if pos >= len(toks) or toks[pos] != tok:
            got = toks[pos] if pos < len(toks) else "<end>"
            raise PlaneFormatError(f"expected {tok!r}, got {got!r}")
        pos += 1

    def at(tok):
        return pos < len(toks) and toks[pos] == tok

    expect("poly")
    expect("{")
    sets: list[list[HalfSpace]] = []
    while at("basic"):
        expect("basic")
        expect("{")
        cons: list[HalfSpace] = []
        while not at("}"):
            try:
                a = rational(toks[pos])
                b = rational(toks[pos + 1])
                if toks[pos + 2] != "<=":
                    raise PlaneFormatError("expected '<='")
                c = rational(toks[pos + 3])
            except (IndexError, ValueError, TypeError) as exc:
                raise PlaneFormatError(f"bad constraint near token {pos}: {exc}") from exc
            pos += 4
            cons.append(HalfSpace((a, b), c))
            if at(";"):
                pos += 1
        expect("}")
        sets.append(cons)
    expect("}")
    if pos != len(toks):
        raise PlaneFormatError(f"trailing input: {toks[pos]!r}")
    return PlanePolytope.from_constraint_sets(sets)


def format_plane(p: PlanePolytope) -> str:
    blocks = []
    for part in p.parts:
        cons = "; ".join(f"{h.normal[0]} {h.normal[1]} <= {h.offset}"
                         for h in part.constraints)
        blocks.append("basic { " + cons + " }" if cons else "basic { }")
    inner = " ".join(blocks)
    return "poly { " + inner + " }" if blocks else "poly { }"


def random_plane_polytope(rng: random.Random, *, max_parts: int = 2,
                          max_cons: int = 4, span: int = 4, max_den: int = 4,
                          bounded: bool = False, box: int = 5) -> PlanePolytope:
    """Seeded generator with coordinates in [-span, span], denominators
    bounded by max_den.  With bounded=True every part carries box
    constraints, so the polytope fits in [-box, box]^2."""
    def halfplane() -> HalfSpace:
        while True:
            a, b = rng.randint(-2, 2), rng.randint(-2, 2)
            if a or b:
                break
        den = rng.randint(1, max_den)
        c = Fraction(rng.randint(-span * den, span * den), den)
        return HalfSpace((Fraction(a), Fraction(b)), c)

    box_cons = [HalfSpace((Fraction(1), Fraction(0)), Fraction(box)),
                HalfSpace((Fraction(-1), Fraction(0)), Fraction(box)),
                HalfSpace((Fraction(0), Fraction(1)), Fraction(box)),
                HalfSpace((Fraction(0), Fraction(-1)), Fraction(box))]

    for _ in range(200):
        sets = []
        for _ in range(rng.randint(1, max_parts)):
            cons = [halfplane() for _ in range(rng.randint(2, max_cons))]
            if bounded:
                cons += box_cons
            sets.append(cons)
        poly = PlanePolytope.from_constraint_sets(sets)
        if not poly.is_empty():
            return poly
    raise RuntimeError("generator failed to produce a nonempty polytope")
