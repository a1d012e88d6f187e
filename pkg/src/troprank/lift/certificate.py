"""Kapranov certificates and the elementary lifts (rank one, full rank, Barvinok)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import DimensionError, PreconditionError
from ..puiseux import LiftMatrix, PuiseuxScalar, matrix_rank, monomial, required_ramification
from ..ranks import BarvinokWitness
from ..semiring import TropMatrix
from .generic import Generic


@dataclass
class KapranovCertificate:
    matrix: TropMatrix
    rank_bound: int
    lift: LiftMatrix | None
    verified: bool
    method: str = ""
    seed: object = None
    trace: list = field(default_factory=list)

    @property
    def constructive(self) -> bool:
        return self.lift is not None


def verify_lift(f, m: TropMatrix, r: int) -> KapranovCertificate:
    """Check ``ord(F) == M`` entrywise and ``rank(F) <= r``, both exactly.

    ``f`` may be a :class:`LiftMatrix` or nested lists of field elements; a zero
    entry raises :class:`ZeroEntryError`.
    """
    if not isinstance(f, LiftMatrix):
        f = LiftMatrix.from_rows(f)
    if f.shape != m.shape:
        raise DimensionError(f"lift shape {f.shape} differs from matrix shape {m.shape}")
    ok = f.ords() == m and matrix_rank(f) <= r
    return KapranovCertificate(m, r, f, ok)


def _outer_sum_parts(m: TropMatrix):
    a = [m[i, 0] - m[0, 0] for i in range(m.rows)]
    b = [m[0, j] for j in range(m.cols)]
    if any(a[i] + b[j] != m[i, j] for i in range(m.rows) for j in range(m.cols)):
        return None
    return a, b


def lift_rank1(m: TropMatrix) -> KapranovCertificate:
    """Monomial lift ``tau**(a_i + b_j)`` of an outer sum, certified at rank 1."""
    parts = _outer_sum_parts(m)
    if parts is None:
        raise PreconditionError("matrix is not tropical rank 1 (not an outer sum)")
    ram = required_ramification(*m.entries)
    f = LiftMatrix(tuple(tuple(monomial(x, 1, ram) for x in row) for row in m.entries), ram)
    cert = verify_lift(f, m, 1)
    cert.method = "rank-1 monomial lift"
    return cert


def lift_full(m: TropMatrix, seed=0) -> KapranovCertificate:
    """Generic monomial lift, certified at min(m, n)."""
    gen = Generic(seed)
    ram = required_ramification(*m.entries)
    f = LiftMatrix(tuple(tuple(monomial(x, gen.const(), ram) for x in row) for row in m.entries), ram)
    cert = verify_lift(f, m, min(m.shape))
    cert.method = "generic full-rank lift"
    cert.seed = seed
    return cert


def lift_from_barvinok(m: TropMatrix, witness: BarvinokWitness, seed=0, retries: int = 1000) -> KapranovCertificate:
    """Lift ``sum_k u_k v_k^T`` built from a Barvinok decomposition.

    Each term is a generic monomial outer product, so the classical rank is at
    most the number of terms; leading-coefficient cancellation is redrawn.
    """
    gen = Generic(seed, retries)
    exps = [x for a, b in witness.pairs for x in (*a, *b)]
    ram = required_ramification(exps, *m.entries)
    while True:
        terms = []
        for a, b in witness.pairs:
            u = [monomial(x, gen.const(), ram) for x in a]
            v = [monomial(x, gen.const(), ram) for x in b]
            terms.append((u, v))
        rows = []
        for i in range(m.rows):
            row = []
            for j in range(m.cols):
                acc = PuiseuxScalar.zero(ram)
                for u, v in terms:
                    acc = acc + u[i] * v[j]
                row.append(acc)
            rows.append(row)
        if all(x and x.ord() == m[i, j] for i, row in enumerate(rows) for j, x in enumerate(row)):
            cert = verify_lift(LiftMatrix(tuple(map(tuple, rows)), ram), m, witness.rank)
            cert.method = "Barvinok decomposition lift"
            cert.seed = seed
            return cert
        gen.retry("Barvinok lift")


def map_back(cert: KapranovCertificate, original: TropMatrix, row_offsets: Sequence[Fraction],
             col_offsets: Sequence[Fraction]) -> KapranovCertificate:
    """Transport a certificate through ``original = matrix + row_off + col_off``.

    Scaling lines of the lift by monomials keeps its classical rank.
    """
    f = cert.lift.scaled(row_offsets, col_offsets)
    out = verify_lift(f, original, cert.rank_bound)
    out.method, out.seed, out.trace = cert.method, cert.seed, cert.trace
    return out
