"""Developing a line of a tropical matrix from a lift of the other lines.

A target line ``t`` is developed from lifted lines ``F`` when coefficients
``lambda`` exist with ``ord(lambda @ F) == t``. Two tools live here:

* :func:`residue_space` decides exactly whether such coefficients exist for a
  given ``F``: after rescaling column j by ``tau**-t_j``, a reduced basis of
  the row space is read off at a maximal minor of least valuation; ``t`` is
  reachable iff the residue (order-0 part) of that basis has no zero column.
* :func:`solve_coefficients` builds coefficients with prescribed orders,
  generic leading constants, and pivot lines solved so that chosen entries hit
  ``tau**t_j`` exactly.

:func:`plan_generator` proposes order prescriptions, pattern-based ones first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import lcm
from typing import Iterator, Sequence

from ..errors import LiftError, PlanInfeasible, RetryBudgetExhausted
from ..puiseux import (LiftMatrix, PuiseuxScalar, combine_rows, cramer, det, laurent_row, monomial, promote_rows,
                       required_ramification, row_basis)
from ..semiring import TropMatrix
from .generic import DEFAULT_RETRIES, Generic

PLAN_RETRIES = 12


@dataclass(frozen=True)
class LeadingConstraint:
    """Condition on leading coefficients of the coefficients lambda.

    kind ``"sum"``: ``sum_i weights[i] * orc(lambda_i) * orc(F[i][column]) != 0``
    (``column`` None drops the F factor). kind ``"ratio"``:
    ``orc(lambda_i) / orc(lambda_k) != value`` for ``positions == (i, k)``.
    """

    kind: str
    positions: tuple[int, ...]
    column: int | None = None
    weights: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    def holds(self, lams, rows) -> bool:
        if self.kind == "sum":
            w = self.weights or (Fraction(1),) * len(self.positions)
            acc = Fraction(0)
            for c, i in zip(w, self.positions):
                if lams[i] is None or not lams[i]:
                    continue
                term = lams[i].orc() * c
                if self.column is not None:
                    term *= rows[i][self.column].orc()
                acc += term
            return acc != 0
        if self.kind == "ratio":
            i, k = self.positions
            return lams[i].orc() / lams[k].orc() != self.value
        raise ValueError(f"unknown constraint kind {self.kind!r}")


@dataclass(frozen=True)
class DevelopPlan:
    target: int
    base: tuple[int, ...]
    orders: tuple[Fraction | None, ...]
    pivots: tuple[tuple[int, int], ...] | None = None
    constraints: tuple[LeadingConstraint, ...] = ()
    origin: str = "auto-search"
    axis: str = "row"

    def describe(self) -> dict:
        return {
            "axis": self.axis,
            "target": self.target,
            "base": list(self.base),
            "orders": [None if x is None else str(x) for x in self.orders],
            "pivots": None if self.pivots is None else [list(p) for p in self.pivots],
            "origin": self.origin,
        }


# --- exact membership -----------------------------------------------------------------


@dataclass
class ResidueData:
    member: bool
    basis: list[int]
    pivot_cols: tuple[int, ...]
    residue: list[list[Fraction]]
    min_cols: list[tuple[int, ...]] = field(default_factory=list)
    minors: dict = field(default_factory=dict, repr=False)


def _rows_of(f) -> list[list[PuiseuxScalar]]:
    return [list(r) for r in (f.entries if isinstance(f, LiftMatrix) else f)]


def maximal_minors(rows) -> tuple[list[int], dict]:
    """A row basis and its nonzero maximal minors, keyed by sorted column tuples."""
    rows = _rows_of(rows)
    basis = row_basis(rows)
    d, n = len(basis), len(rows[0])
    minors = {}
    for cols in combinations(range(n), d):
        v = det([[rows[b][j] for j in cols] for b in basis])
        if v:
            minors[cols] = v
    return basis, minors


def _signed_minor(minors, cols):
    """Minor for an ordered column list, with the sign of the sorting permutation."""
    if len(set(cols)) < len(cols):
        return None
    key = tuple(sorted(cols))
    v = minors.get(key)
    if v is None:
        return None
    inv = sum(1 for x in range(len(cols)) for y in range(x + 1, len(cols)) if cols[x] > cols[y])
    return -v if inv % 2 else v


def residue_space(f, target: Sequence[Fraction], *, minors=None) -> ResidueData:
    """Decide whether some vector of the row space of ``f`` has valuation ``target``.

    With columns rescaled by ``tau**-target`` the maximal minors of a basis are
    ``p_I * tau**-sum(target_I)``. Take J of least valuation; the reduced
    basis ``S_J^-1 S`` has entries ``p_{J with J_k -> j} / p_J`` (Cramer), all
    of order >= 0, and the target is reachable iff their order-0 parts leave
    no column zero. ``minors`` may pass a cached :func:`maximal_minors` result.
    """
    target = [Fraction(t) for t in target]
    basis, mins = minors if minors is not None else maximal_minors(f)
    n = len(target)
    val = {c: v.ord() - sum(target[j] for j in c) for c, v in mins.items()}
    best = min(val.values())
    min_cols = [c for c, v in val.items() if v == best]
    cols = min_cols[0]
    lead = mins[cols].orc()
    residue = []
    for k in range(len(cols)):
        rrow = []
        for j in range(n):
            swapped = list(cols)
            swapped[k] = j
            p = _signed_minor(mins, swapped)
            if p is None:
                rrow.append(Fraction(0))
                continue
            v = p.ord() - sum(target[c] for c in swapped)
            rrow.append(p.orc() / lead if v == best else Fraction(0))
        residue.append(rrow)
    member = all(any(residue[k][j] for k in range(len(cols))) for j in range(n))
    return ResidueData(member, basis, cols, residue, min_cols, mins)


def in_tropical_rowspace(f, target) -> bool:
    return residue_space(f, target).member


# --- coefficient solver -----------------------------------------------------------------


def _generic_minima(vals, orders, n):
    used = [i for i, l in enumerate(orders) if l is not None]
    mins, attain = [], []
    for j in range(n):
        cand = [(orders[i] + vals[i][j], i) for i in used if vals[i][j] is not None]
        lo = min(c for c, _ in cand)
        mins.append(lo)
        attain.append([i for c, i in cand if c == lo])
    return mins, attain


def solve_coefficients(f_base, target: Sequence[Fraction], plan: DevelopPlan, seed=0,
                       retries: int = DEFAULT_RETRIES, *, gen: Generic | None = None) -> list[PuiseuxScalar | None]:
    """Coefficients ``lambda`` with ``ord(lambda_i) == plan.orders[i]`` and ``ord(lambda @ F) == target``.

    Free coefficients are ``c_i * tau**l_i`` with generic ``c_i``. Each pivot
    pair (line p, column j) marks a coefficient solved jointly with the others
    so that entry j of the combination equals ``d_j * tau**target_j`` exactly.
    Without explicit pivots, every column whose generic minimum lies below its
    target gets one, matched to a distinct line attaining that minimum.
    Raises :class:`PlanInfeasible` for structurally impossible plans and
    :class:`RetryBudgetExhausted` when no draw verifies.
    """
    mus, d, _ = _solve(f_base, target, plan, seed, retries, gen=gen)
    inv = d.inverse()
    return [None if m is None else m * inv for m in mus]


def _solve(f_base, target, plan, seed=0, retries=DEFAULT_RETRIES, *, gen=None):
    """Scaled coefficients ``(mu, d, rows)`` with ``lambda_i = mu_i / d``.

    Keeping the common denominator ``d`` of the pivot solve apart avoids
    rational-function sums; on Laurent rows everything stays polynomial.
    """
    rows = _rows_of(f_base)
    k, n = len(rows), len(rows[0])
    if len(plan.orders) != k:
        raise PlanInfeasible(f"plan has {len(plan.orders)} orders for {k} base lines")
    target = [Fraction(t) for t in target]
    if len(target) != n:
        raise PlanInfeasible("target length differs from the number of columns")
    if all(l is None for l in plan.orders):
        raise PlanInfeasible("plan uses no base line")
    ram = lcm(*(x.ram for r in rows for x in r),
              required_ramification([l for l in plan.orders if l is not None], target))
    rows, _ = promote_rows(rows, ram)
    vals = [[x.ord() if x else None for x in r] for r in rows]
    mins, attain = _generic_minima(vals, plan.orders, n)
    for j in range(n):
        if mins[j] > target[j]:
            raise PlanInfeasible(f"column {j}: generic order {mins[j]} exceeds target {target[j]}")

    if plan.pivots is not None:
        assignments = [tuple(plan.pivots)]
    else:
        cancel = [j for j in range(n) if mins[j] < target[j]]
        for j in cancel:
            if len(attain[j]) < 2:
                raise PlanInfeasible(f"column {j}: a single leading term cannot cancel")
        assignments = []
        for lines in product(*(attain[j] for j in cancel)):
            if len(set(lines)) == len(lines):
                assignments.append(tuple(zip(lines, cancel)))
            if len(assignments) >= 24:
                break
        if not assignments:
            raise PlanInfeasible("no distinct pivot lines for the columns needing cancellation")
        if len(assignments) > 1 and len(cancel) == 0:
            assignments = assignments[:1]

    gen = gen or Generic(seed, retries)
    local_budget = retries
    attempt = 0
    while True:
        piv = assignments[attempt % len(assignments)]
        first_round = attempt < len(assignments)
        attempt += 1
        drawn = _draw(rows, target, plan, piv, gen, ram, unit_targets=first_round)
        if drawn is not None and _check(rows, target, plan, *drawn):
            return (*drawn, rows)
        gen.retry("solve_coefficients")
        local_budget -= 1
        if local_budget <= 0:
            raise RetryBudgetExhausted(f"no verified coefficients for plan {plan.origin!r}")


def _draw(rows, target, plan, piv, gen, ram, *, unit_targets):
    k, n = len(rows), len(rows[0])
    pivot_lines = [p for p, _ in piv]
    pivot_cols = [j for _, j in piv]
    lams: list[PuiseuxScalar | None] = [None] * k
    for i, l in enumerate(plan.orders):
        if l is not None and i not in pivot_lines:
            lams[i] = monomial(l, gen.const(), ram)
    if not piv:
        return lams, PuiseuxScalar.const(1, ram)
    if any(plan.orders[p] is None for p in pivot_lines):
        raise PlanInfeasible("pivot line has no prescribed order")
    coeff = [[rows[p][j] for j in pivot_cols] for p in pivot_lines]
    rhs = []
    for j in pivot_cols:
        d = 1 if unit_targets else gen.const()
        acc = monomial(target[j], d, ram)
        for i in range(k):
            if lams[i] is not None:
                acc = acc - lams[i] * rows[i][j]
        rhs.append(acc)
    sol = cramer(coeff, rhs)
    if sol is None:
        return None
    nums, d = sol
    mus = [None if x is None else x * d for x in lams]
    for p, x in zip(pivot_lines, nums):
        mus[p] = x
    return mus, d


def _check(rows, target, plan, mus, d) -> bool:
    """Verify scaled coefficients: ``ord(lambda_i) = ord(mu_i) - ord(d)``, likewise for the combination."""
    shift = d.ord()
    for i, l in enumerate(plan.orders):
        if l is None:
            continue
        if mus[i] is None or not mus[i] or mus[i].ord() - shift != l:
            return False
    # both constraint kinds are unchanged by the common factor d
    for c in plan.constraints:
        if not c.holds(mus, rows):
            return False
    n = len(rows[0])
    for j in range(n):
        acc = None
        for i, mu in enumerate(mus):
            if mu is not None:
                term = mu * rows[i][j]
                acc = term if acc is None else acc + term
        if acc is None or not acc or acc.ord() - shift != target[j]:
            return False
    return True


def combine(lams, rows) -> list[PuiseuxScalar]:
    rows = _rows_of(rows)
    out = []
    for j in range(len(rows[0])):
        acc = None
        for i, lam in enumerate(lams):
            if lam is not None:
                term = lam * rows[i][j]
                acc = term if acc is None else acc + term
        out.append(acc)
    return out


# --- plan generation -----------------------------------------------------------------------


def _residue_plans(a: TropMatrix, target: int, base: Sequence[int], lift, axis, info=None) -> Iterator[DevelopPlan]:
    """Plans pinning ``x_J = c * tau**t_J`` at the least-valuation minors J.

    The coefficients are ``lambda_B = x_J @ F_{B,J}^-1``; their generic orders
    come from the cofactors of ``F_{B,J}``.
    """
    rows = _rows_of(lift)
    t = [Fraction(x) for x in a.row(target)]
    info = info or residue_space(rows, t)
    if not info.member:
        return
    d = len(info.basis)
    for cols in info.min_cols:
        sub = [[rows[b][j] for j in cols] for b in info.basis]
        full = info.minors[cols]
        orders: list[Fraction | None] = [None] * len(rows)
        for pos, b in enumerate(info.basis):
            # (F_{B,J}^-1)_{k,pos} = cofactor(pos, k) / det
            cands = []
            for k in range(d):
                minor = [[sub[r][c] for c in range(d) if c != k] for r in range(d) if r != pos]
                cof = det(minor) if minor else PuiseuxScalar.const(1, full.ram)
                if cof:
                    cands.append(t[cols[k]] + cof.ord() - full.ord())
            orders[b] = min(cands)
        yield DevelopPlan(target, tuple(base), tuple(orders), tuple(zip(info.basis, cols)), (),
                          "auto-search (residue minor)", axis)


def _pattern_3322_plans(a: TropMatrix, target: int, base: Sequence[int], axis) -> Iterator[DevelopPlan]:
    """Case 1.1 of the 3+3+2+2 zero pattern: target row (b+h, t, w, 0, 0)."""
    n = a.cols
    if n != 5:
        return
    t = a.row(target)
    zeros_t = [j for j in range(n) if t[j] == 0]
    for c4, c5 in permutations(zeros_t, 2):
        rest = [j for j in range(n) if j not in (c4, c5)]
        for p3 in base:
            r3 = a.row(p3)
            if r3[c4] != 0 or r3[c5] != 0:
                continue
            for p2 in base:
                if p2 == p3 or a[p2, c4] != 0:
                    continue
                for p1 in base:
                    if p1 in (p2, p3) or any(a[p1, j] != 0 for j in rest):
                        continue
                    for c1, c2, c3 in permutations(rest):
                        r2 = a.row(p2)
                        aa, b = r2[c2], r3[c2]
                        h = r2[c1] - aa
                        if h <= 0 or aa > b or t[c1] != b + h:
                            continue
                        u, s, y = r2[c3], r3[c1], r3[c3]
                        tt, w = t[c2], t[c3]
                        if not (tt > b and min(w, s, y) > b + h and u > aa + h):
                            continue
                        if any(x < 0 for p in (p1, p2, p3) for x in a.row(p)):
                            continue
                        lo = min(w, y, u + b - aa)
                        orders = {p1: lo, p2: b - aa, p3: Fraction(0)}
                        if y == u + b - aa and w <= y:
                            orders[p1] = w
                        elif y == u + b - aa:
                            orders = {p2: b - aa, p3: Fraction(0)}
                        yield DevelopPlan(target, tuple(base), tuple(orders.get(p) for p in base), None, (),
                                          "3+3+2+2 zero pattern, first case", axis)


def plan_generator(a: TropMatrix, target: int, base: Sequence[int], lift=None, axis: str = "row",
                   residue: ResidueData | None = None) -> Iterator[DevelopPlan]:
    """Candidate plans for developing line ``target`` of ``a`` from lines ``base``, in priority order.

    ``a`` is expected normalized (nonnegative, line minima 0). Order: the zero
    row, the row with four zeroes, the 3+3+2+2 pattern, uniform order-0 and
    tropical-span prescriptions, then residue-minor plans computed from
    ``lift`` (the rows of a lift of the base lines, aligned with ``base``).
    """
    t = a.row(target)
    base = list(base)
    base_rows = [a.row(i) for i in base]
    n = a.cols
    nonneg = all(x >= 0 for r in base_rows for x in r) and all(x >= 0 for x in t)
    covered = all(any(r[j] == 0 for r in base_rows) for j in range(n))
    zero = Fraction(0)
    seen = set()

    def emit(plan):
        key = (plan.orders, plan.pivots)
        if key in seen:
            return None
        seen.add(key)
        return plan

    if nonneg and covered and all(x == 0 for x in t):
        p = emit(DevelopPlan(target, tuple(base), (zero,) * len(base), None, (), "zero row", axis))
        if p:
            yield p
    pos = [j for j in range(n) if t[j] != 0]
    if nonneg and covered and n == 5 and len(pos) == 1:
        j0 = pos[0]
        zl = [k for k, r in enumerate(base_rows) if r[j0] == 0]
        if len(zl) >= 2:
            pivot = zl[0]
            cons = (LeadingConstraint("sum", tuple(zl[1:]), column=j0),)
            p = emit(DevelopPlan(target, tuple(base), (zero,) * len(base), ((pivot, j0),), cons,
                                 "row with four zeroes", axis))
            if p:
                yield p
    for p in _pattern_3322_plans(a, target, base, axis):
        p = emit(p)
        if p:
            yield p
    if nonneg and covered and min(t) == 0:
        p = emit(DevelopPlan(target, tuple(base), (zero,) * len(base), None, (), "order-0 coefficients", axis))
        if p:
            yield p
    principal = tuple(max(t[j] - r[j] for j in range(n)) for r in base_rows)
    if all(min(principal[k] + base_rows[k][j] for k in range(len(base))) == t[j] for j in range(n)):
        p = emit(DevelopPlan(target, tuple(base), principal, None, (), "tropical span (differences of entries)", axis))
        if p:
            yield p
    if lift is not None:
        for p in _residue_plans(a, target, base, lift, axis, residue):
            p = emit(p)
            if p:
                yield p


def develop_line(a: TropMatrix, target: int, base: Sequence[int], rows, gen: Generic, *,
                 axis="row", plan_retries=PLAN_RETRIES):
    """Develop line ``target`` of ``a`` from lifted lines ``rows`` (aligned with ``base``).

    Returns ``(new_row, plan)`` or None when the row space of ``rows`` misses
    the target line tropically.
    """
    t = list(a.row(target))
    info = residue_space(rows, t)
    if not info.member:
        return None
    for k, plan in enumerate(plan_generator(a, target, base, lift=rows, axis=axis, residue=info)):
        try:
            mus, d, prows = _solve(rows, t, plan, retries=plan_retries, gen=gen.fork(f"{target}:{k}"))
        except RetryBudgetExhausted:
            gen.spent += 1
            if gen.spent > gen.budget:
                raise
            continue
        except LiftError:
            continue
        # mu @ F is d times the developed row; rescale by the unit tau**-ord(d) / orc(d)
        unit = monomial(-d.ord(), 1 / d.orc(), d.ram)
        row = laurent_row([x * unit for x in combine_rows(mus, prows)])
        return row, plan
    return None
