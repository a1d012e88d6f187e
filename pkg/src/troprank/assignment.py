"""Tropical determinant and singularity via exact optimal assignment."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .errors import DimensionError, GuardError
from .semiring import TropMatrix

MAX_ENUMERATION = 7


@dataclass(frozen=True)
class DetResult:
    value: Fraction
    witness: tuple[int, ...]
    singular: bool
    second_witness: tuple[int, ...] | None = None


def _hungarian(cost: Sequence[Sequence[int]], forbidden: tuple[int, int] | None = None):
    """Minimum-cost perfect assignment, O(n^3), exact on integer costs.

    Returns ``(value, perm)`` with ``perm[i]`` the column of row ``i``, or None
    when the forbidden cell leaves no perfect assignment. Ties go to the lowest
    column index, so results are reproducible.
    """
    n = len(cost)
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [None] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            row = cost[i0 - 1]
            delta = None
            j1 = 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                if forbidden != (i0 - 1, j - 1):
                    cur = row[j - 1] - u[i0] - v[j]
                    if minv[j] is None or cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] is not None and (delta is None or minv[j] < delta):
                    delta = minv[j]
                    j1 = j
            if delta is None:
                return None
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                elif minv[j] is not None:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    perm = [0] * n
    for j in range(1, n + 1):
        perm[p[j] - 1] = j - 1
    return sum(cost[i][perm[i]] for i in range(n)), tuple(perm)


def _square(a: TropMatrix):
    if a.rows != a.cols:
        raise DimensionError(f"determinant needs a square matrix, got {a.rows}x{a.cols}")
    return a.scaled_integers()


def trop_det(a: TropMatrix) -> DetResult:
    """Value and one optimal permutation; ``singular`` is left False here.

    Use :func:`is_singular` for the singularity flag.
    """
    cost, d = _square(a)
    value, perm = _hungarian(cost)
    return DetResult(Fraction(value, d), perm, False)


def is_singular(a: TropMatrix) -> DetResult:
    """Full determinant result with the singularity flag.

    After one optimal assignment, each of its cells is forbidden in turn and the
    assignment re-solved; the matrix is singular iff some re-solve still
    reaches the optimum.
    """
    cost, d = _square(a)
    value, perm = _hungarian(cost)
    for i in range(len(cost)):
        alt = _hungarian(cost, forbidden=(i, perm[i]))
        if alt is not None and alt[0] == value:
            return DetResult(Fraction(value, d), perm, True, alt[1])
    return DetResult(Fraction(value, d), perm, False)


def count_optimal_permutations(a: TropMatrix) -> int:
    """Brute-force count of permutations attaining the determinant."""
    if a.rows != a.cols:
        raise DimensionError("square matrix required")
    if a.rows > MAX_ENUMERATION:
        raise GuardError(f"enumeration guard: r={a.rows} > {MAX_ENUMERATION}")
    return enumerate_permutations(a)[1]


def enumerate_permutations(a: TropMatrix) -> tuple[Fraction, int]:
    """(minimum, number of permutations attaining it) by full enumeration."""
    cost, d = a.scaled_integers()
    r = len(cost)
    best, count = None, 0
    for sigma in permutations(range(r)):
        s = sum(cost[i][sigma[i]] for i in range(r))
        if best is None or s < best:
            best, count = s, 1
        elif s == best:
            count += 1
    return Fraction(best, d), count


def singular_small(cost: Sequence[Sequence[int]]) -> bool:
    """Singularity of an integer matrix of size <= 3 by direct enumeration."""
    r = len(cost)
    if r == 1:
        return False
    if r == 2:
        return cost[0][0] + cost[1][1] == cost[0][1] + cost[1][0]
    sums = sorted(cost[0][s[0]] + cost[1][s[1]] + cost[2][s[2]] for s in permutations(range(3)))
    return sums[0] == sums[1]
