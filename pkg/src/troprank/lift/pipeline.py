"""Rank-3 lifts of g x 5 tropical matrices, and the Kapranov-bound dispatcher.

The construction grows a lift line by line. A set of rows S is lifted by
removing one row, lifting the rest, and developing the removed row from that
lift; four rows are the hyperplane base case. When no row of S can be
developed from the lifts at hand, S is lifted column-wise instead: four
columns of S form an |S| x 4 matrix whose transpose is a hyperplane base
case, and the fifth column is developed from them. Every step is checked
exactly, so a wrong certificate cannot be produced; only a failure can.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..errors import LiftError, PatternMismatch, PipelineFailure, PreconditionError, RetryBudgetExhausted
from ..puiseux import LiftMatrix
from ..ranks import BARVINOK_GUARD, BarvinokWitness, barvinok_rank, tropical_rank
from ..semiring import TropMatrix, shift
from .certificate import KapranovCertificate, lift_from_barvinok, lift_full, lift_rank1, map_back, verify_lift
from .develop import PLAN_RETRIES, develop_line
from .generic import DEFAULT_RETRIES, Generic
from .mirror import lift_mirrored_block
from .hyperplane import find_hyperplane, lift_hyperplane_base

RANK = 3


@dataclass
class PipelineConfig:
    seed: object = 0
    retries: int = DEFAULT_RETRIES
    plan_retries: int = PLAN_RETRIES
    rounds: int = 4
    column_developing: bool = True


class _RowLifter:
    """Memoized top-down lifting of row subsets of a g x 5 matrix."""

    def __init__(self, a: TropMatrix, base: tuple[int, ...], cfg: PipelineConfig, gen: Generic):
        self.a = a
        self.base = base
        self.cfg = cfg
        self.gen = gen
        self.memo: dict[frozenset, tuple[dict, list] | None] = {}
        self.round = 0

    def _base_lift(self, s: tuple[int, ...]):
        sub = self.a.submatrix(list(s), range(self.a.cols))
        if len(s) < RANK + 1:
            cert = lift_full(sub, seed=f"{self.gen.seed}/full/{s}/{self.round}")
            kind = "generic"
        else:
            cert = lift_hyperplane_base(sub, seed=None, gen=self.gen.fork(f"base/{s}/{self.round}"), check_rank=False)
            kind = "hyperplane"
        rows = {i: list(r) for i, r in zip(s, cert.lift.entries)}
        return rows, [{"step": "base", "kind": kind, "rows": list(s)}]

    def lift(self, s: frozenset):
        if s in self.memo:
            return self.memo[s]
        self.memo[s] = None  # guards against re-entry
        out = self._lift(s)
        self.memo[s] = out
        return out

    def _lift(self, s: frozenset):
        srt = tuple(sorted(s))
        if len(s) <= RANK + 1:
            return self._base_lift(srt)
        order = [i for i in srt if i not in self.base] + [i for i in srt if i in self.base]
        for i in order:
            rest = s - {i}
            got = self.lift(rest)
            if got is None:
                continue
            rows, trace = got
            base = tuple(sorted(rest))
            dev = develop_line(self.a, i, base, [rows[b] for b in base], self.gen,
                               plan_retries=self.cfg.plan_retries)
            if dev is None:
                continue
            row, plan = dev
            new = dict(rows)
            new[i] = row
            step = {"step": "develop", **plan.describe(), "target": i, "base": list(base)}
            return new, trace + [step]
        if self.cfg.column_developing:
            got = self._column_lift(srt)
            if got is not None:
                return got
        return self._mirror_lift(srt)

    def _mirror_lift(self, srt):
        sub = self.a.submatrix(list(srt), range(self.a.cols))
        try:
            cert = lift_mirrored_block(sub, gen=self.gen.fork(f"mirror/{srt}/{self.round}"))
        except (PatternMismatch, LiftError):
            return None
        rows = {i: list(r) for i, r in zip(srt, cert.lift.entries)}
        return rows, [{**step, "rows": list(srt)} for step in cert.trace]

    def _column_lift(self, srt):
        """Lift rows ``srt`` by developing one column from a lift of the other four."""
        sub = self.a.submatrix(list(srt), range(self.a.cols))
        t = sub.transpose()  # 5 x |S|
        n = t.rows
        for j in range(n):
            others = tuple(k for k in range(n) if k != j)
            four = t.submatrix(list(others), range(t.cols))
            if tropical_rank(four).rank > RANK:
                continue
            try:
                cert = lift_hyperplane_base(four, gen=self.gen.fork(f"col/{srt}/{j}/{self.round}"), check_rank=False)
            except LiftError:
                continue
            rows = [list(r) for r in cert.lift.entries]
            dev = develop_line(t, j, others, rows, self.gen, axis="column", plan_retries=self.cfg.plan_retries)
            if dev is None:
                continue
            row, plan = dev
            cols = {k: r for k, r in zip(others, rows)}
            cols[j] = row
            lifted = {i: [cols[c][pos] for c in range(n)] for pos, i in enumerate(srt)}
            step = {"step": "develop", **plan.describe(), "rows": list(srt)}
            return lifted, [{"step": "base", "kind": "hyperplane", "columns": list(others), "rows": list(srt)}, step]
        return None


def _choose_base(a: TropMatrix) -> tuple[int, ...]:
    for s in combinations(range(a.rows), RANK + 1):
        if tropical_rank(a.submatrix(list(s), range(a.cols))).rank == RANK:
            return s
    raise PreconditionError("no four rows of tropical rank 3")


def _normalize_for(a: TropMatrix, base: tuple[int, ...]):
    """Shift so the base rows have twin zeroes in every column and other rows have minimum 0."""
    sub = a.submatrix(list(base), range(a.cols))
    w = find_hyperplane(sub)
    if w is None:
        raise PreconditionError("base rows do not lie in a tropical hyperplane")
    ro = [Fraction(0)] * a.rows
    for k, i in enumerate(base):
        ro[i] = w.coefficients[k]
    m = shift(a, ro)
    co = [min(m[i, j] for i in base) for j in range(a.cols)]
    m = shift(m, None, [-x for x in co])
    for i in range(a.rows):
        if i not in base:
            lo = min(m.row(i))
            ro[i] -= lo
    m = shift(a, ro, [-x for x in co])
    # original = m - ro - (-co)
    return m, [-x for x in ro], co


def kapranov_rank3_5col(a: TropMatrix, seed=0, retries: int = DEFAULT_RETRIES, *,
                        config: PipelineConfig | None = None) -> KapranovCertificate:
    """Verified rank-3 lift of a g x 5 (or 5 x g) matrix of tropical rank 3."""
    cfg = config or PipelineConfig(seed=seed, retries=retries)
    if a.cols != 5 and a.rows == 5:
        cert = kapranov_rank3_5col(a.transpose(), config=cfg)
        out = verify_lift(cert.lift.transpose(), a, RANK)
        out.method, out.seed = cert.method, cert.seed
        out.trace = [{"step": "transpose"}] + cert.trace
        return out
    if a.cols != 5:
        raise PreconditionError(f"expected 5 columns or 5 rows, got {a.rows}x{a.cols}")
    rk = tropical_rank(a).rank
    if rk != RANK:
        raise PreconditionError(f"tropical rank is {rk}, not 3")
    base = _choose_base(a)
    m, row_off, col_off = _normalize_for(a, base)
    gen = Generic(cfg.seed, cfg.retries)
    everything = frozenset(range(a.rows))
    for rnd in range(cfg.rounds):
        lifter = _RowLifter(m, base, cfg, gen.fork(f"round{rnd}"))
        lifter.round = rnd
        try:
            got = lifter.lift(everything)
        except RetryBudgetExhausted:
            break
        finally:
            gen.join(lifter.gen)
        if got is None:
            gen.retry("pipeline round")
            continue
        rows, trace = got
        f = LiftMatrix.from_rows([rows[i] for i in range(a.rows)])
        cert = verify_lift(f, m, RANK)
        if not cert.verified:
            gen.retry("pipeline verification")
            continue
        cert.method = "rank-3 pipeline"
        cert.seed = cfg.seed
        cert.trace = [{"step": "normalize", "base": list(base),
                       "row_offsets": [str(x) for x in row_off],
                       "col_offsets": [str(x) for x in col_off]}] + trace
        out = map_back(cert, a, row_off, col_off)
        if not out.verified:
            raise LiftError("certificate did not survive mapping back to the input matrix")
        return out
    try:
        return lift_mirrored_block(a, gen=gen.fork("mirror"))
    except (PatternMismatch, LiftError):
        pass
    raise PipelineFailure("rank-3 pipeline exhausted its plans and retries", matrix=a)


@dataclass
class KapranovBounds:
    """Bounds ``lower <= rk_K <= upper``; ``certificate`` backs ``upper`` when constructive."""

    lower: int
    upper: int
    certificate: KapranovCertificate | None
    method: str
    barvinok: BarvinokWitness | None = None

    @property
    def constructive(self) -> bool:
        return self.certificate is not None and self.certificate.verified


def kapranov_bounds(a: TropMatrix, seed=0, retries: int = DEFAULT_RETRIES) -> KapranovBounds:
    """Lower bound rk_t and the best upper bound the library can certify.

    Rank 1 and full rank get direct lifts; rank 3 with five lines goes through
    the pipeline; a (k+1)-line matrix of rank k gets the hyperplane lift. Rank
    2 is exact by the inequality chain but comes without a lift. Otherwise the
    upper bound is the Barvinok rank with a lift built from its decomposition.
    """
    rk = tropical_rank(a).rank
    m, n = a.shape
    mn = min(m, n)
    if rk == 1:
        return KapranovBounds(1, 1, lift_rank1(a), "rank-1 monomial lift")
    if rk == mn:
        return KapranovBounds(rk, rk, lift_full(a, seed), "generic full-rank lift")
    if rk == 2:
        return KapranovBounds(2, 2, None, "theorem-cited, no certificate (rank 2 forces Kapranov rank 2)")
    if rk == RANK and 5 in (m, n):
        cert = kapranov_rank3_5col(a, seed, retries)
        return KapranovBounds(rk, RANK, cert, cert.method)
    if rk == mn - 1:
        tall = m > n
        cert = lift_hyperplane_base(a.transpose() if tall else a, seed=seed, retries=retries)
        if tall:
            cert = verify_lift(cert.lift.transpose(), a, rk)
            cert.method = "hyperplane base case (transposed)"
        return KapranovBounds(rk, rk, cert, cert.method)
    if m > BARVINOK_GUARD or n > BARVINOK_GUARD:
        return KapranovBounds(rk, mn, lift_full(a, seed), "generic full-rank lift")
    w = barvinok_rank(a, lower=rk)
    cert = lift_from_barvinok(a, w, seed, retries)
    return KapranovBounds(rk, w.rank, cert, cert.method, w)
