"""Push the rank-3 pipeline beyond the acceptance sizes: taller matrices and wider entry ranges.

    python3 scripts/stress_mio.py --rows 9 10 --max-entry 9 --count 30
"""

import argparse
import time

from troprank.errors import PipelineFailure
from troprank.lift import kapranov_rank3_5col
from troprank.sampling import generated_matrix


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--rows", type=int, nargs="+", default=[5, 6, 7, 8, 9, 10])
    p.add_argument("--max-entry", type=int, nargs="+", default=[2, 4, 9])
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", default="stress")
    args = p.parse_args()
    failures = 0
    for hi in args.max_entry:
        for g in args.rows:
            t0 = time.perf_counter()
            ok = 0
            for i in range(args.count):
                a = generated_matrix(f"{args.seed}:{hi}", g, 5, 3, i, hi=hi)
                try:
                    ok += kapranov_rank3_5col(a, seed=i).verified
                except PipelineFailure:
                    print("FAILURE", a.to_lists())
            failures += args.count - ok
            print(f"entries 0..{hi}  g={g:2d}  {ok}/{args.count} verified  {time.perf_counter() - t0:.1f} s")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
