"""Seeded corpus runs: assignment oracle, rank chain, and the g x 5 rank-3 lifts.

Each matrix gets its own generator derived from ``(seed, suite, shape, index)``,
so results do not depend on how tasks are split across workers.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool
from typing import Any

from .assignment import enumerate_permutations, is_singular, trop_det
from .errors import InvariantViolation, PipelineFailure
from .lift.pipeline import kapranov_bounds, kapranov_rank3_5col
from .lift.generic import DEFAULT_RETRIES
from .ranks import barvinok_rank, check_chain, tropical_rank
from .sampling import generated_matrix, random_matrix, rng_for
from .semiring import TropMatrix

SUITES = ("oracle", "dis", "mio")
DEFAULT_COUNTS = {"oracle": 100, "dis": 200, "mio": 100}
ORACLE_SIZES = (2, 3, 4, 5, 6)
DIS_SHAPES = ((3, 3), (4, 4), (4, 5), (5, 5))
MIO_ROWS = (4, 5, 6, 7, 8)


@dataclass
class CorpusConfig:
    suite: str
    count: int | None = None  # per size or shape
    seed: Any = 0
    jobs: int = 1
    retries: int = DEFAULT_RETRIES

    def per_group(self) -> int:
        return DEFAULT_COUNTS[self.suite] if self.count is None else self.count


@dataclass
class Record:
    index: int
    shape: tuple[int, int]
    status: str
    tropical_rank: int | None = None
    barvinok_rank: int | None = None
    kapranov: tuple[int, int] | None = None
    method: str = ""
    millis: int = 0
    matrix: list | None = None


@dataclass
class CorpusReport:
    suite: str
    seed: Any
    records: list[Record] = field(default_factory=list)

    @property
    def counts(self) -> dict:
        return dict(Counter(r.status for r in self.records))

    @property
    def ok(self) -> bool:
        return all(_good(r) for r in self.records)

    def to_json(self) -> dict:
        recs = []
        for r in self.records:
            d = asdict(r)
            d["shape"] = list(r.shape)
            if _good(r):
                d.pop("matrix")
            recs.append(d)
        return {"suite": self.suite, "seed": self.seed, "total": len(self.records), "counts": self.counts,
                "ok": self.ok, "records": recs}


def _tasks(cfg: CorpusConfig):
    k = cfg.per_group()
    if cfg.suite == "oracle":
        groups = [(r, r) for r in ORACLE_SIZES]
    elif cfg.suite == "dis":
        groups = list(DIS_SHAPES)
    elif cfg.suite == "mio":
        groups = [(g, 5) for g in MIO_ROWS]
    else:
        raise ValueError(f"unknown suite {cfg.suite!r}; choose from {SUITES}")
    idx = 0
    for shape in groups:
        for i in range(k):
            yield (cfg.suite, cfg.seed, idx, shape, i, cfg.retries)
            idx += 1


def corpus_matrix(suite: str, seed, shape, i) -> TropMatrix:
    """The i-th matrix of a suite group; identical across runs and workers."""
    m, n = shape
    rng = rng_for(seed, suite, f"{m}x{n}", i)
    if suite == "oracle":
        return random_matrix(rng, m, n, 0, 9)
    if suite == "dis":
        return random_matrix(rng, m, n, 0, 4)
    return generated_matrix(seed, m, n, 3, i)


def run_task(task) -> Record:
    suite, seed, idx, shape, i, retries = task
    a = corpus_matrix(suite, seed, shape, i)
    t0 = time.perf_counter()
    if suite == "oracle":
        det = trop_det(a)
        sing = is_singular(a)
        best, count = enumerate_permutations(a)
        good = det.value == best and sing.singular == (count >= 2)
        rec = Record(idx, shape, "agree" if good else "MISMATCH")
    elif suite == "dis":
        rt = tropical_rank(a).rank
        w = barvinok_rank(a, lower=rt)
        b = kapranov_bounds(a, seed=f"{seed}:{idx}", retries=retries)
        try:
            check_chain(a, (b.lower, b.upper), barvinok=w.rank, constructive=b.constructive)
            status = "ok" if b.constructive else "theorem-cited"
            if rt in (1, min(shape)) and not (b.constructive and b.upper == rt):
                status = "CHAIN-VIOLATION"
        except InvariantViolation:
            status = "CHAIN-VIOLATION"
        rec = Record(idx, shape, status, rt, w.rank, (b.lower, b.upper), b.method)
    else:
        try:
            cert = kapranov_rank3_5col(a, seed=f"{seed}:{idx}", retries=retries)
            status = "verified" if cert.verified and cert.rank_bound == 3 else "UNVERIFIED"
            method = cert.method
        except PipelineFailure as exc:
            status, method = "PIPELINE-FAILURE", str(exc)
        rec = Record(idx, shape, status, 3, None, (3, 3) if status == "verified" else None, method)
    rec.millis = int((time.perf_counter() - t0) * 1000)
    rec.matrix = [[str(x) for x in row] for row in a.entries]
    return rec


def run_corpus(cfg: CorpusConfig, *, fail_fast: bool = True) -> CorpusReport:
    """Run a suite; with ``fail_fast`` the first violation raises :class:`InvariantViolation`."""
    tasks = list(_tasks(cfg))
    if cfg.jobs > 1:
        with Pool(cfg.jobs) as pool:
            records = pool.map(run_task, tasks, chunksize=4)
    else:
        records = []
        for t in tasks:
            rec = run_task(t)
            records.append(rec)
            if fail_fast and not _good(rec):
                break
    records.sort(key=lambda r: r.index)
    report = CorpusReport(cfg.suite, cfg.seed, records)
    if fail_fast:
        bad = next((r for r in records if not _good(r)), None)
        if bad is not None:
            err = InvariantViolation(f"{cfg.suite} suite: {bad.status} on matrix {bad.matrix}", bad.matrix)
            err.report = report
            raise err
    return report


GOOD_STATUSES = ("agree", "ok", "verified", "theorem-cited")


def _good(rec: Record) -> bool:
    return rec.status in GOOD_STATUSES
