"""Independent strong-contact oracles used by the test suite only.

The plane oracle rasterises a bounding box and flood-fills, never touching
the production facet criterion:

* resolution: a power-of-two cell size at most an eighth of the minimum
  feature separation (pairwise arrangement-vertex distances, vertex-to-line
  distances, parallel line gaps), computed exactly;
* the grid is offset so that no cell centre lies on a constraint line and
  no arrangement vertex shares a row or column with the centres;
* cells are marked by exact membership of their centre in each region;
* two 4-adjacent marked cells are linked only when the whole segment
  between their centres stays inside the union, decided by exact rational
  1-D clipping of the region onto the grid column/row.

With those guarantees a linked chain from a p-cell to a q-cell yields
either a common interior point or a boundary crossing through the interior
of an arrangement edge with the two regions' interiors on opposite sides,
and conversely any overlap face or shared crossing facet is wide enough to
catch a centre, so component analysis decides strong contact exactly.

The line oracle decides strong contact from the definition: some maximal
piece of the union must contain pieces of both operands.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from polycontact.intervals import IntervalPolytope
from polycontact.numeric import Hyperplane, LineRelation, dot, intersect_lines, sqrt_lower
from polycontact.plane import PlanePolytope


class OracleInfeasible(RuntimeError):
    """The instance needs a finer grid than the oracle is willing to run."""


def interval_sc_oracle(p: IntervalPolytope, q: IntervalPolytope) -> bool:
    """A connected open subset of the union meets both iff some maximal
    piece of the union contains a piece of each operand."""
    union = p.union(q)
    for lo, hi in union.pieces:
        def inside(piece):
            plo, phi = piece
            lo_ok = lo is None or (plo is not None and plo >= lo)
            hi_ok = hi is None or (phi is not None and phi <= hi)
            return lo_ok and hi_ok
        if any(inside(a) for a in p.pieces) and any(inside(b) for b in q.pieces):
            return True
    return False


def _pooled_lines(p: PlanePolytope, q: PlanePolytope) -> list[Hyperplane]:
    return sorted(set(p.constraint_lines()) | set(q.constraint_lines()))


def _vertices(lines: list[Hyperplane]) -> list:
    pts = set()
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            kind, v = intersect_lines(lines[i], lines[j])
            if kind is LineRelation.POINT:
                pts.add(v)
    return sorted(pts)


def _separation_sq(lines, vertices) -> Fraction:
    best = None

    def keep(d):
        nonlocal best
        if best is None or d < best:
            best = d

    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            a, b = vertices[i], vertices[j]
            keep((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2)
    for v in vertices:
        for line in lines:
            val = line.value_at(v)
            if val != 0:
                keep(val * val / dot(line.normal, line.normal))
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a, b = lines[i], lines[j]
            if a.normal == b.normal and a.offset != b.offset:
                d = a.offset - b.offset
                keep(d * d / dot(a.normal, a.normal))
    return best if best is not None else Fraction(1)


def _fits_lattice(value: Fraction, origin: Fraction, step: Fraction) -> bool:
    return ((value - origin) / step).denominator == 1


def _line_hits_lattice(line: Hyperplane, x0: Fraction, y0: Fraction,
                       h: Fraction) -> bool:
    """Whether some grid centre (x0 + i*h, y0 + j*h) lies on the line."""
    (a, b), c = line.normal, line.offset
    v = (c - a * x0 - b * y0) / h
    av, bv = a, b
    den = av.denominator * bv.denominator * v.denominator
    ai, bi, vi = int(av * den), int(bv * den), int(v * den)
    if ai == 0 and bi == 0:
        return vi == 0
    return vi % gcd(ai, bi) == 0


def _choose_offsets(lines, vertices, xmin, ymin, h):
    """Offsets keeping centres off every line and every vertex off every
    grid row and column."""
    for k in range(1, 400, 2):
        x0 = xmin + h / 2 + h / (k + 2)
        y0 = ymin + h / 2 + h / (k + 4)
        if any(_line_hits_lattice(line, x0, y0, h) for line in lines):
            continue
        if any(_fits_lattice(v[0], x0, h) or _fits_lattice(v[1], y0, h)
               for v in vertices):
            continue
        return x0, y0
    raise OracleInfeasible("no safe grid offset found")


def _part_masks(poly: PlanePolytope, xs, ys) -> np.ndarray:
    """Exact membership of every centre, via integer arithmetic."""
    from math import lcm
    nx, ny = len(xs), len(ys)
    dx = lcm(*[f.denominator for f in xs]) if len(xs) else 1
    dy = lcm(*[f.denominator for f in ys]) if len(ys) else 1
    xi = np.array([int(f * dx) for f in xs], dtype=np.int64)
    yi = np.array([int(f * dy) for f in ys], dtype=np.int64)
    mask = np.zeros((nx, ny), dtype=bool)
    for part in poly.parts:
        pm = np.ones((nx, ny), dtype=bool)
        for hs in part.constraints:
            (a, b), c = hs.normal, hs.offset
            k = lcm(a.denominator, b.denominator, c.denominator)
            ai, bi, ci = int(a * k), int(b * k), int(c * k)
            # a*x + b*y <= c over denominators dx, dy; all int64, guarded
            bound = (abs(ai) * dy * int(np.abs(xi).max(initial=0))
                     + abs(bi) * dx * int(np.abs(yi).max(initial=0))
                     + abs(ci) * dx * dy)
            if bound >= 1 << 62:
                raise OracleInfeasible("membership arithmetic exceeds 64 bits")
            lhs = (ai * dy) * xi[:, None] + (bi * dx) * yi[None, :]
            pm &= lhs <= ci * dx * dy
            if not pm.any():
                break
        mask |= pm
    return mask


def _axis_intervals(poly: PlanePolytope, fixed: Fraction, axis: int):
    """Exact 1-D restriction of the region to a grid line.

    axis=0: the vertical line x=fixed, intervals in y.
    axis=1: the horizontal line y=fixed, intervals in x.
    Returns a merged, sorted list of closed intervals (None = unbounded).
    """
    raw = []
    for part in poly.parts:
        lo, hi = None, None
        ok = True
        for hs in part.constraints:
            (a, b), c = hs.normal, hs.offset
            coef = b if axis == 0 else a
            rest = (a if axis == 0 else b) * fixed
            bound = c - rest
            if coef == 0:
                if bound < 0:
                    ok = False
                    break
            elif coef > 0:
                val = bound / coef
                hi = val if hi is None else min(hi, val)
            else:
                val = bound / coef
                lo = val if lo is None else max(lo, val)
        if ok and (lo is None or hi is None or lo <= hi):
            raw.append((lo, hi))
    raw.sort(key=lambda iv: (iv[0] is not None, iv[0]))
    merged = []
    for lo, hi in raw:
        if merged:
            plo, phi = merged[-1]
            if phi is None or lo is None or lo <= phi:
                if phi is not None and (hi is None or hi > phi):
                    merged[-1] = (plo, hi)
                continue
        merged.append((lo, hi))
    return merged


def _interval_ids(intervals, origin: Fraction, step: Fraction, count: int) -> np.ndarray:
    """Label each lattice point origin + i*step with the index of the
    containing interval, or -1."""
    import math
    ids = np.full(count, -1, dtype=np.int32)
    for idx, (lo, hi) in enumerate(intervals):
        if lo is None:
            first = 0
        else:
            first = max(0, math.ceil((lo - origin) / step))
        if hi is None:
            last = count - 1
        else:
            last = min(count - 1, math.floor((hi - origin) / step))
        if first <= last:
            ids[first:last + 1] = idx
    return ids


def plane_sc_oracle(p: PlanePolytope, q: PlanePolytope,
                    max_cells: int = 2_000_000) -> bool:
    """Grid flood-fill decision of strong contact for bounded polytopes."""
    if p.is_empty() or q.is_empty():
        return False
    lines = _pooled_lines(p, q)
    vertices = _vertices(lines)
    if not vertices:
        raise OracleInfeasible("oracle expects bounded operands with vertices")

    sep = sqrt_lower(_separation_sq(lines, vertices))
    h = Fraction(1)
    while h > sep / 8:
        h /= 2
        if h.denominator > 1 << 24:
            raise OracleInfeasible("resolution finer than 2^-24")

    import math
    xs_all = [v[0] for v in vertices]
    ys_all = [v[1] for v in vertices]
    # snapping the box to the h-lattice keeps centre denominators small,
    # which keeps the integer membership arithmetic inside 64 bits
    xmin = (math.floor((min(xs_all) - 3 * h) / h)) * h
    xmax = (math.ceil((max(xs_all) + 3 * h) / h)) * h
    ymin = (math.floor((min(ys_all) - 3 * h) / h)) * h
    ymax = (math.ceil((max(ys_all) + 3 * h) / h)) * h
    nx = int((xmax - xmin) / h) + 1
    ny = int((ymax - ymin) / h) + 1
    if nx * ny > max_cells:
        raise OracleInfeasible(f"grid of {nx}x{ny} cells is too large")

    x0, y0 = _choose_offsets(lines, vertices, xmin, ymin, h)
    xs = [x0 + i * h for i in range(nx)]
    ys = [y0 + j * h for j in range(ny)]

    mark_p = _part_masks(p, xs, ys)
    mark_q = _part_masks(q, xs, ys)
    marked = mark_p | mark_q

    # column ids: for each x, the 1-D component of (p|q) restricted to the column
    col_ids = np.full((nx, ny), -1, dtype=np.int32)
    union = p.union(q)
    for i, x in enumerate(xs):
        col_ids[i] = _interval_ids(_axis_intervals(union, x, axis=0), y0, h, ny)
    row_ids = np.full((ny, nx), -1, dtype=np.int32)
    for j, y in enumerate(ys):
        row_ids[j] = _interval_ids(_axis_intervals(union, y, axis=1), x0, h, nx)

    if not ((col_ids >= 0) == marked).all():
        raise AssertionError("column restriction disagrees with membership")
    if not ((row_ids.T >= 0) == marked).all():
        raise AssertionError("row restriction disagrees with membership")

    idx = np.arange(nx * ny).reshape(nx, ny)
    # vertical links (i, j)-(i, j+1); horizontal links (i, j)-(i+1, j)
    v_ok = (col_ids[:, :-1] == col_ids[:, 1:]) & (col_ids[:, :-1] >= 0)
    h_ok = ((row_ids[:, :-1] == row_ids[:, 1:]) & (row_ids[:, :-1] >= 0)).T

    rows = np.concatenate([idx[:, :-1][v_ok], idx[:-1, :][h_ok]])
    cols = np.concatenate([idx[:, 1:][v_ok], idx[1:, :][h_ok]])

    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)),
                       shape=(nx * ny, nx * ny))
    _, labels = connected_components(graph, directed=False)
    labels_p = np.unique(labels.reshape(nx, ny)[mark_p])
    labels_q = np.unique(labels.reshape(nx, ny)[mark_q])
    return bool(np.intersect1d(labels_p, labels_q).size)
