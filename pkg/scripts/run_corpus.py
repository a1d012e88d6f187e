"""Run one or all seeded suites and write JSON reports.

    python3 scripts/run_corpus.py --suite all --jobs 4 --out results/
"""

import argparse
import json
import time
from pathlib import Path

from troprank.corpus import SUITES, CorpusConfig, run_corpus
from troprank.errors import InvariantViolation


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--count", type=int, default=None, help="matrices per size or shape (suite default if omitted)")
    p.add_argument("--seed", default="0")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="results")
    args = p.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    status = 0
    for suite in SUITES if args.suite == "all" else (args.suite,):
        t0 = time.perf_counter()
        try:
            rep = run_corpus(CorpusConfig(suite, args.count, args.seed, args.jobs), fail_fast=False)
        except InvariantViolation as exc:
            rep, status = exc.report, 4
        (out / f"{suite}.json").write_text(json.dumps(rep.to_json(), indent=1) + "\n")
        print(f"{suite:7s} {len(rep.records):5d} matrices  {rep.counts}  {time.perf_counter() - t0:.1f} s")
        if not rep.ok:
            status = 4
    raise SystemExit(status)


if __name__ == "__main__":
    main()
