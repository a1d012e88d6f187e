"""Tropical rank by minor enumeration and Barvinok rank by branch-and-bound."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .assignment import _hungarian, singular_small
from .constraints import solve_difference_constraints
from .errors import ChainViolation, GuardError
from .semiring import TropMatrix, outer_sum, trop_matadd

BARVINOK_GUARD = 6


@dataclass(frozen=True)
class TropicalRankWitness:
    rank: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]


@dataclass(frozen=True)
class BarvinokWitness:
    rank: int
    pairs: tuple[tuple[tuple[Fraction, ...], tuple[Fraction, ...]], ...]

    def matrix(self) -> TropMatrix:
        out = None
        for a, b in self.pairs:
            term = outer_sum(a, b)
            out = term if out is None else trop_matadd(out, term)
        return out


def _minor_singular(cost, rows, cols) -> bool:
    sub = [[cost[i][j] for j in cols] for i in rows]
    if len(sub) <= 3:
        return singular_small(sub)
    value, perm = _hungarian(sub)
    for i in range(len(sub)):
        alt = _hungarian(sub, forbidden=(i, perm[i]))
        if alt is not None and alt[0] == value:
            return True
    return False


def _greedy_nonsingular(cost, m, n, starts=6):
    """Grow a nonsingular minor one line pair at a time; returns (rows, cols)."""
    best = ((0,), (0,))
    for k in range(min(starts, m * n)):
        rows, cols = [k % m], [(k // m) % n]
        grown = True
        while grown:
            grown = False
            for i in range(m):
                if i in rows:
                    continue
                for j in range(n):
                    if j not in cols and not _minor_singular(cost, rows + [i], cols + [j]):
                        rows.append(i)
                        cols.append(j)
                        grown = True
                        break
                if grown:
                    break
        if len(rows) > len(best[0]):
            best = (tuple(rows), tuple(cols))
        if len(best[0]) == min(m, n):
            return best
    return best


def tropical_rank(a: TropMatrix, *, greedy: bool = True) -> TropicalRankWitness:
    """Exact tropical rank with a nonsingular witness minor.

    Every square size above the returned rank is enumerated exhaustively; the
    greedy lower bound only saves enumerating the witness size itself.
    """
    cost, _ = a.scaled_integers()
    m, n = a.shape
    floor_rows, floor_cols = ((0,), (0,))
    if greedy:
        floor_rows, floor_cols = _greedy_nonsingular(cost, m, n)
    lower = len(floor_rows)
    for k in range(min(m, n), lower, -1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                if not _minor_singular(cost, rows, cols):
                    return TropicalRankWitness(k, rows, cols)
    return TropicalRankWitness(lower, tuple(sorted(floor_rows)), tuple(sorted(floor_cols)))


def minor_is_nonsingular(a: TropMatrix, rows: Sequence[int], cols: Sequence[int]) -> bool:
    cost, _ = a.scaled_integers()
    return not _minor_singular(cost, rows, cols)


# --- Barvinok rank -----------------------------------------------------------


class _GroupOracle:
    """Feasibility of tight-cell groups as difference-constraint systems.

    Variables are row potentials ``a_i`` (nodes 0..m-1) and ``y_j = -b_j``
    (nodes m..m+n-1). Domination ``a_i + b_j >= M_ij`` reads
    ``y_j - a_i <= -M_ij``; tightness adds ``a_i - y_j <= M_ij``.
    """

    def __init__(self, cost, m, n):
        self.cost, self.m, self.n = cost, m, n
        self.base = [(i, m + j, -cost[i][j]) for i in range(m) for j in range(n)]
        self.cache: dict[frozenset, list | None] = {}

    def solve(self, cells: frozenset):
        if cells not in self.cache:
            edges = self.base + [(self.m + j, i, self.cost[i][j]) for i, j in cells]
            self.cache[cells] = solve_difference_constraints(self.m + self.n, edges)
        return self.cache[cells]

    def feasible(self, cells: frozenset) -> bool:
        return self.solve(cells) is not None


def _search_cover(oracle: _GroupOracle, cells, r, compat):
    """Assign every cell to one of at most r feasible groups (DFS)."""
    groups: list[frozenset] = []

    def options(cell):
        return [g for g, grp in enumerate(groups) if all(compat[cell][c] for c in grp) and oracle.feasible(grp | {cell})]

    remaining = list(cells)

    def dfs():
        if not remaining:
            return True
        # most constrained cell first
        best_idx, best_opts = None, None
        for idx, cell in enumerate(remaining):
            opts = options(cell)
            if len(groups) >= r and not opts:
                return False
            if best_opts is None or len(opts) < len(best_opts):
                best_idx, best_opts = idx, opts
                if not opts:
                    break
        cell = remaining.pop(best_idx)
        for g in best_opts:
            old = groups[g]
            groups[g] = old | {cell}
            if dfs():
                return True
            groups[g] = old
        if len(groups) < r:
            groups.append(frozenset([cell]))
            if dfs():
                return True
            groups.pop()
        remaining.insert(best_idx, cell)
        return False

    return list(groups) if dfs() else None


def barvinok_rank(a: TropMatrix, max_r: int | None = None, *, lower: int | None = None) -> BarvinokWitness | None:
    """Exact Barvinok rank if it is at most ``max_r``; None means "exceeds max_r".

    Cells are partitioned into groups whose members are simultaneously tight
    for one dominating outer sum; the smallest such partition size is the rank.
    """
    m, n = a.shape
    if m > BARVINOK_GUARD or n > BARVINOK_GUARD:
        raise GuardError(f"Barvinok search guard: shape {m}x{n} exceeds {BARVINOK_GUARD}x{BARVINOK_GUARD}")
    if max_r is None:
        max_r = min(m, n)
    cost, d = a.scaled_integers()
    oracle = _GroupOracle(cost, m, n)
    cells = [(i, j) for i in range(m) for j in range(n)]
    compat = {c: {e: oracle.feasible(frozenset([c, e])) for e in cells} for c in cells}
    start = max(1, lower or 1)
    for r in range(start, max_r + 1):
        groups = _search_cover(oracle, cells, r, compat)
        if groups is None:
            continue
        pairs = []
        for grp in groups:
            x = oracle.solve(grp)
            avec = tuple(Fraction(x[i], d) for i in range(m))
            bvec = tuple(Fraction(-x[m + j], d) for j in range(n))
            pairs.append((avec, bvec))
        w = BarvinokWitness(r, tuple(pairs))
        if w.matrix() != a:
            raise ChainViolation("Barvinok witness failed re-verification", a)
        return w
    return None


# --- rank chain ---------------------------------------------------------------


@dataclass
class ChainReport:
    tropical: int
    kapranov_lower: int
    kapranov_upper: int | None
    barvinok: int | None
    min_dim: int
    notes: list[str] = field(default_factory=list)


def check_chain(a: TropMatrix, kapranov_bounds: tuple[int, int | None], *, barvinok: int | None = None,
                constructive: bool = True) -> ChainReport:
    """Assert 1 <= rk_t <= lower <= upper <= rk_B <= min(m, n).

    ``kapranov_bounds`` is (lower, upper); ``upper`` may be None when no bound
    is known. Raises :class:`ChainViolation` on any failed inequality.
    """
    m, n = a.shape
    lo, hi = kapranov_bounds
    rt = tropical_rank(a).rank
    if barvinok is None and m <= BARVINOK_GUARD and n <= BARVINOK_GUARD:
        w = barvinok_rank(a, lower=rt)
        barvinok = w.rank if w is not None else None
    mn = min(m, n)
    report = ChainReport(rt, lo, hi, barvinok, mn)

    def need(cond, what):
        if not cond:
            raise ChainViolation(f"rank chain violated ({what}) for {a}", a)

    need(1 <= rt, "1 <= rk_t")
    need(rt <= lo, "rk_t <= kapranov lower")
    if hi is not None:
        need(lo <= hi, "kapranov lower <= upper")
        if barvinok is not None:
            need(hi <= barvinok, "kapranov upper <= rk_B")
        need(hi <= mn, "kapranov upper <= min(m, n)")
        if constructive and rt in (1, mn):
            need(hi == rt, "kapranov upper equals rk_t when rk_t is 1 or min(m, n)")
    if barvinok is not None:
        need(rt <= barvinok <= mn, "rk_t <= rk_B <= min(m, n)")
    else:
        report.notes.append("barvinok rank not computed")
    return report
