"""Difference-constraint feasibility by Bellman-Ford potentials.

A system of constraints ``x[v] - x[u] <= w`` is feasible iff the constraint
graph (edge u -> v with weight w) has no negative cycle. Starting from the
all-zero potential, Bellman-Ford returns the pointwise largest solution that
is <= 0, which is also the solution closest to zero when zero is feasible.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def solve_difference_constraints(n: int, edges: Iterable[tuple[int, int, object]]) -> list | None:
    """Return potentials ``x`` with ``x[v] - x[u] <= w`` for every edge, or None."""
    edges = list(edges)
    dist = [0] * n
    for _ in range(n):
        changed = False
        for u, v, w in edges:
            d = dist[u] + w
            if d < dist[v]:
                dist[v] = d
                changed = True
        if not changed:
            return dist
    for u, v, w in edges:
        if dist[u] + w < dist[v]:
            return None
    return dist


def equal(u: int, v: int, c) -> list[tuple[int, int, object]]:
    """Edges encoding ``x[v] - x[u] == c``."""
    return [(u, v, c), (v, u, -c)]


def check(x: Sequence, edges: Iterable[tuple[int, int, object]]) -> bool:
    return all(x[v] - x[u] <= w for u, v, w in edges)
