"""Shared test machinery: tree enumeration and batched Kripke evaluation."""

from __future__ import annotations

from itertools import product

import numpy as np

from polycontact.adjacency import AdjacencySpace, mk_space
from polycontact.algebra import FiniteContactAlgebra
from polycontact.logic import Complement, Contact, Eq, Join, Not, Or, Variable, free_variables

CELLS = "abcdefghijklmnopqrstuvwxyz"


def prufer_tree(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    """Decode a Prufer sequence into tree edges on 0..n-1."""
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    import heapq
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = leaves[0], leaves[1]
    edges.append((u, w))
    return edges


def _ahu_encode(adj: dict[int, list[int]], root: int, parent: int) -> str:
    subs = sorted(_ahu_encode(adj, c, root)
                  for c in adj[root] if c != parent)
    return "(" + "".join(subs) + ")"


def _tree_canonical(edges: list[tuple[int, int]], n: int) -> str:
    if n == 1:
        return "()"
    adj: dict[int, list[int]] = {v: [] for v in range(n)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    # peel leaves to find the centre(s)
    degree = {v: len(adj[v]) for v in range(n)}
    layer = [v for v in range(n) if degree[v] <= 1]
    remaining = n
    while remaining > 2:
        nxt = []
        for v in layer:
            remaining -= 1
            for u in adj[v]:
                degree[u] -= 1
                if degree[u] == 1:
                    nxt.append(u)
        layer = nxt
    return min(_ahu_encode(adj, c, -1) for c in layer)


def all_trees(max_cells: int) -> list[AdjacencySpace]:
    """One representative per isomorphism class of trees up to max_cells."""
    out = []
    for n in range(1, max_cells + 1):
        cells = list(CELLS[:n])
        if n == 1:
            out.append(mk_space(cells, []))
            continue
        if n == 2:
            out.append(mk_space(cells, [("a", "b")]))
            continue
        seen = set()
        for seq in product(range(n), repeat=n - 2):
            edges = prufer_tree(seq, n)
            key = _tree_canonical(edges, n)
            if key in seen:
                continue
            seen.add(key)
            out.append(mk_space(cells, [(cells[a], cells[b]) for a, b in edges]))
    return out


def batch_true_in_algebra(formula, algebra: FiniteContactAlgebra) -> bool:
    """Truth of the formula under every valuation, vectorised over masks.

    Mirrors the scalar evaluator structurally; elements are bitmasks, so a
    valuation ensemble is a numpy array per variable and the Boolean
    operations act elementwise.
    """
    names = sorted(free_variables(formula))
    n_cells = len(algebra.cells)
    size = 1 << n_cells
    full = algebra.full
    grids = np.meshgrid(*[np.arange(size, dtype=np.int64)] * len(names),
                        indexing="ij") if names else []
    env = {name: grid.ravel() for name, grid in zip(names, grids)}
    count = size ** len(names) if names else 1

    succ = np.array(algebra.succ, dtype=np.int64)

    def contact(xs, ys):
        acc = np.zeros_like(xs)
        for i in range(n_cells):
            acc |= np.where(xs >> i & 1 == 1, succ[i], 0)
        return (acc & ys) != 0

    def term(t):
        match t:
            case Variable(name):
                return env[name]
            case Complement(inner):
                return full ^ term(inner)
            case Join(left, right):
                return term(left) | term(right)
        raise TypeError(t)

    def form(f):
        match f:
            case Eq(left, right):
                return term(left) == term(right)
            case Contact(left, right):
                return contact(term(left), term(right))
            case Not(body):
                return ~form(body)
            case Or(left, right):
                return form(left) | form(right)
        raise TypeError(f)

    if not names:
        from polycontact.logic import evaluate
        return evaluate(formula, algebra, {})
    return bool(form(formula).all())
