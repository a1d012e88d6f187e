"""Explicit rank-3 lift for the mirrored block pattern.

Up to permuting and shifting lines, the matrix is nonnegative with

    v' u' r' 0 0
    v  u  r  0 0
    0  0  0  . .
    ...
    0  0  0  . .

Three columns are lifted by hand (one with entries ``-1 + 3 t^min(v',r')`` and
``-1 + 2 t^r``), the r'-column is their sum, and the u-column is developed
from them. All five columns then lie in a 3-dimensional space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..constraints import solve_difference_constraints
from ..errors import LiftError, PatternMismatch
from ..puiseux import LiftMatrix, PuiseuxScalar, monomial, required_ramification
from ..semiring import TropMatrix, shift
from .certificate import KapranovCertificate, map_back, verify_lift
from .develop import develop_line
from .generic import DEFAULT_RETRIES, Generic


@dataclass(frozen=True)
class MirrorMatch:
    top: tuple[int, int]
    right: tuple[int, int]
    row_offsets: tuple[Fraction, ...]
    col_offsets: tuple[Fraction, ...]
    normalized: TropMatrix


def match_mirror(a: TropMatrix) -> MirrorMatch | None:
    """Find rows, columns and line shifts putting ``a`` in the mirrored block pattern.

    Shifted entries ``a_ij + x_i - y_j`` must vanish on the two block corners
    and be nonnegative elsewhere: a difference-constraint system per choice of
    the two top rows and the two right columns.
    """
    m, n = a.shape
    if n != 5 or m < 3:
        return None
    for top in combinations(range(m), 2):
        for right in combinations(range(n), 2):
            edges = []
            for i in range(m):
                for j in range(n):
                    edges.append((i, m + j, a[i, j]))
                    if (i in top) == (j in right):
                        edges.append((m + j, i, -a[i, j]))
            x = solve_difference_constraints(m + n, edges)
            if x is None:
                continue
            ro = tuple(Fraction(v) for v in x[:m])
            co = tuple(-Fraction(v) for v in x[m:])
            norm = shift(a, ro, co)
            return MirrorMatch(top, right, ro, co, norm)
    return None


def lift_mirrored_block(a: TropMatrix, seed=0, retries: int = DEFAULT_RETRIES, *,
                      gen: Generic | None = None) -> KapranovCertificate:
    """Verified rank-3 lift of a g x 5 matrix in the mirrored block pattern."""
    match = match_mirror(a)
    if match is None:
        raise PatternMismatch("matrix does not fit the mirrored block pattern")
    gen = gen or Generic(seed, retries)
    p = match.normalized
    left = [j for j in range(5) if j not in match.right]
    # put r = min of the top-left block in the second top row, third left column
    i_r, j_r = min(((i, j) for i in match.top for j in left), key=lambda ij: (p[ij], ij))
    rows = [i for i in match.top if i != i_r] + [i_r] + [i for i in range(p.rows) if i not in match.top]
    cols = [j for j in left if j != j_r] + [j_r] + list(match.right)
    q = p.submatrix(rows, cols)
    v1, u1, r1 = q[0, 0], q[0, 1], q[0, 2]
    v, r = q[1, 0], q[1, 2]
    g = q.rows
    ram = required_ramification(*q.entries)
    one = PuiseuxScalar.const(1, ram)
    while True:
        f4 = [one, one] + [monomial(q[i, 3], gen.const(), ram) for i in range(2, g)]
        f5 = [monomial(min(v1, r1), 3, ram) - 1, monomial(r, 2, ram) - 1]
        f5 += [monomial(q[i, 4], gen.const(), ram) for i in range(2, g)]
        c = monomial(0, -3, ram) + monomial(r1 - v1, gen.const(), ram) if v1 < r1 else PuiseuxScalar.const(gen.const(), ram)
        f1 = [c * monomial(v1, 1, ram), monomial(v, gen.const(), ram)]
        f1 += [PuiseuxScalar.const(gen.const(), ram) for _ in range(2, g)]
        f3 = [x + y + z for x, y, z in zip(f1, f4, f5)]
        known = {0: f1, 2: f3, 3: f4, 4: f5}
        if all(x and x.ord() == q[i, j] for j, col in known.items() for i, x in enumerate(col)):
            lines = TropMatrix.from_rows([q.col(0), q.col(3), q.col(4), q.col(1)])
            dev = develop_line(lines, 3, (0, 1, 2), [f1, f4, f5], gen, axis="column")
            if dev is not None:
                known[1] = dev[0]
                f = LiftMatrix.from_rows([[known[j][i] for j in range(5)] for i in range(g)])
                cert = verify_lift(f, q, 3)
                if cert.verified:
                    break
        gen.retry("mirrored block lift")
    # undo the permutation, then the shifts
    inv_r = {i: k for k, i in enumerate(rows)}
    inv_c = {j: k for k, j in enumerate(cols)}
    entries = [[f[inv_r[i], inv_c[j]] for j in range(5)] for i in range(p.rows)]
    cert = verify_lift(LiftMatrix.from_rows(entries), p, 3)
    cert.method = "mirrored block construction"
    cert.seed = gen.seed
    cert.trace = [{"step": "pattern", "origin": "mirrored block", "top": list(match.top), "right": list(match.right),
                   "row_order": rows, "column_order": cols}]
    out = map_back(cert, a, [-x for x in match.row_offsets], [-x for x in match.col_offsets])
    if not out.verified:
        raise LiftError("mirrored block lift failed verification")
    return out


# alias
lift_casospecchio = lift_mirrored_block
