"""Tropical hyperplanes through the columns of a (k+1) x n matrix, and the base-case lift."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..constraints import solve_difference_constraints
from ..errors import LiftError, PreconditionError
from ..puiseux import LiftMatrix, PuiseuxScalar, monomial, required_ramification
from ..ranks import tropical_rank
from ..semiring import TropMatrix
from .certificate import KapranovCertificate, verify_lift
from .generic import DEFAULT_RETRIES, Generic


@dataclass(frozen=True)
class HyperplaneWitness:
    coefficients: tuple[Fraction, ...]
    tight_pairs: tuple[tuple[int, ...], ...]

    def is_valid_for(self, m: TropMatrix) -> bool:
        for j in range(m.cols):
            vals = [self.coefficients[i] + m[i, j] for i in range(m.rows)]
            if sum(v == min(vals) for v in vals) < 2:
                return False
        return True


def _tight_sets(m: TropMatrix, a) -> tuple[tuple[int, ...], ...]:
    out = []
    for j in range(m.cols):
        vals = [a[i] + m[i, j] for i in range(m.rows)]
        lo = min(vals)
        out.append(tuple(i for i, v in enumerate(vals) if v == lo))
    return tuple(out)


def find_hyperplane(m: TropMatrix) -> HyperplaneWitness | None:
    """Offsets ``a`` so every column minimum of ``a_i + M_ij`` is attained twice.

    Depth-first over one tight pair per column; each partial choice is a
    difference-constraint system checked by Bellman-Ford. Pairs already tight
    at zero offsets are tried first, so a matrix with twin zeroes in every
    column gets ``a = 0``. Returns None when no hyperplane exists.
    """
    rows = m.rows
    if rows < 2:
        return None
    cost, d = m.scaled_integers()
    n = m.cols
    choices = []
    for j in range(n):
        col = [cost[i][j] for i in range(rows)]
        lo = min(col)
        pairs = sorted(combinations(range(rows), 2), key=lambda pq: (max(col[pq[0]], col[pq[1]]) - lo, pq))
        choices.append(pairs)

    def edges_for(j, p, q):
        col = [cost[i][j] for i in range(rows)]
        out = [(p, q, col[p] - col[q]), (q, p, col[q] - col[p])]
        out += [(l, p, col[l] - col[p]) for l in range(rows) if l != p]
        return out

    found = None

    def dfs(j, edges):
        nonlocal found
        if j == n:
            found = solve_difference_constraints(rows, edges)
            return True
        for p, q in choices[j]:
            trial = edges + edges_for(j, p, q)
            if solve_difference_constraints(rows, trial) is not None:
                if dfs(j + 1, trial):
                    return True
        return False

    if not dfs(0, []):
        return None
    lo = min(found)
    a = tuple(Fraction(x - lo, d) for x in found)
    return HyperplaneWitness(a, _tight_sets(m, a))


def lift_hyperplane_base(m: TropMatrix, w: HyperplaneWitness | None = None, seed=0,
                         retries: int = DEFAULT_RETRIES, *, gen: Generic | None = None,
                         check_rank: bool = True) -> KapranovCertificate:
    """Lift of a (k+1) x n matrix of tropical rank <= k whose columns share one linear relation.

    With ``alpha_i = tau**a_i`` every column is chosen in the kernel of alpha:
    all entries but one tight entry are generic monomials, and the tight entry
    is solved from the relation, so the rows become linearly dependent.
    """
    k = m.rows - 1
    if check_rank and tropical_rank(m).rank > k:
        raise PreconditionError(f"tropical rank is {k + 1}; no hyperplane through the columns")
    if w is None:
        w = find_hyperplane(m)
        if w is None:
            raise PreconditionError("columns do not lie in a tropical hyperplane")
    elif not w.is_valid_for(m):
        raise PreconditionError("hyperplane witness does not fit the matrix")
    gen = gen or Generic(seed, retries)
    a = w.coefficients
    ram = required_ramification(a, *m.entries)
    alpha = [monomial(x, 1, ram) for x in a]
    cols = []
    for j in range(m.cols):
        tight = w.tight_pairs[j]
        q = tight[-1]
        while True:
            col = [None] * m.rows
            acc = PuiseuxScalar.zero(ram)
            for i in range(m.rows):
                if i != q:
                    col[i] = monomial(m[i, j], gen.const(), ram)
                    acc = acc + alpha[i] * col[i]
            col[q] = -acc / alpha[q]
            if col[q] and col[q].ord() == m[q, j]:
                break
            gen.retry("hyperplane base column")
        cols.append(col)
    f = LiftMatrix(tuple(tuple(cols[j][i] for j in range(m.cols)) for i in range(m.rows)), ram)
    cert = verify_lift(f, m, k)
    if not cert.verified:
        raise LiftError("hyperplane base lift failed verification")
    cert.method = "hyperplane base case"
    cert.seed = gen.seed
    cert.trace = [{"step": "base", "kind": "hyperplane", "offsets": [str(x) for x in a]}]
    return cert
