"""Seeded random matrices, including a row-by-row rejection sampler for a target tropical rank."""

from __future__ import annotations

import random
from itertools import combinations

from .errors import GuardError, PreconditionError
from .ranks import _minor_singular, tropical_rank
from .semiring import TropMatrix, outer_sum

MAX_ENTRY = 4
MAX_TRIES = 200_000


def rng_for(seed, *labels) -> random.Random:
    """Independent deterministic stream for ``(seed, *labels)``."""
    return random.Random(":".join(str(x) for x in (seed, *labels)))


def random_matrix(rng: random.Random, m: int, n: int, lo: int = 0, hi: int = MAX_ENTRY) -> TropMatrix:
    return TropMatrix.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)])


def random_outer_sum(rng: random.Random, m: int, n: int, lo: int = -5, hi: int = 5) -> TropMatrix:
    return outer_sum([rng.randint(lo, hi) for _ in range(m)], [rng.randint(lo, hi) for _ in range(n)])


def _keeps_rank(rows, new_row, k) -> bool:
    """Whether every (k+1)-minor through the new row is singular (the old rows already have rank <= k)."""
    cost = rows + [new_row]
    last = len(rows)
    n = len(new_row)
    if k + 1 > min(len(cost), n):
        return True
    for others in combinations(range(last), k):
        sel = list(others) + [last]
        for cols in combinations(range(n), k + 1):
            if not _minor_singular(cost, sel, cols):
                return False
    return True


def sample_tropical_rank(rng: random.Random, m: int, n: int, rank: int, *, hi: int = MAX_ENTRY,
                         max_tries: int = MAX_TRIES) -> TropMatrix:
    """Integer matrix in ``[0, hi]`` of tropical rank exactly ``rank``.

    Rows are drawn one at a time and kept only if the rank stays at most
    ``rank``; the finished matrix is re-checked exhaustively and restarted if
    its rank fell short. Raises :class:`GuardError` after ``max_tries`` draws.
    """
    if not 1 <= rank <= min(m, n):
        raise PreconditionError(f"no {m}x{n} matrix has tropical rank {rank}")
    if rank == 1:
        a = random_outer_sum(rng, m, n, 0, hi)
        return a
    tries = 0
    while True:
        rows: list[list[int]] = []
        while len(rows) < m:
            tries += 1
            if tries > max_tries:
                raise GuardError(f"sampler gave up after {max_tries} draws for a {m}x{n} matrix of rank {rank}")
            r = [rng.randint(0, hi) for _ in range(n)]
            if _keeps_rank(rows, r, rank):
                rows.append(r)
        a = TropMatrix.from_rows(rows)
        if tropical_rank(a).rank == rank:
            return a


def generated_matrix(seed, m: int, n: int, rank: int, index: int, *, hi: int = MAX_ENTRY,
                     max_tries: int = MAX_TRIES) -> TropMatrix:
    """The ``index``-th matrix emitted by ``troprank gen`` for these arguments."""
    rng = rng_for(seed, "gen", f"{m}x{n}", rank, index)
    return sample_tropical_rank(rng, m, n, rank, hi=hi, max_tries=max_tries)


def parse_shape(text: str, default_rows: int | None = None) -> tuple[int, int]:
    """``"6x5"``, ``"6×5"``; a leading ``g`` stands for ``default_rows``."""
    parts = text.lower().replace("×", "x").split("x")
    if len(parts) != 2:
        raise GuardError(f"cannot parse shape {text!r}")
    m, n = parts
    if m == "g":
        if default_rows is None:
            raise GuardError("shape 'g' needs --rows")
        m = default_rows
    try:
        m, n = int(m), int(n)
    except ValueError as exc:
        raise GuardError(f"cannot parse shape {text!r}") from exc
    if m < 1 or n < 1:
        raise GuardError(f"shape {text!r} must be positive")
    return m, n
