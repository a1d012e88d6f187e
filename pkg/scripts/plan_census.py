"""Which develop plans fire on the g x 5 rank-3 corpus, and how often the fallbacks are needed.

    python3 scripts/plan_census.py --count 100 --rows 4 5 6 7 8
"""

import argparse
import json
import time
from collections import Counter

from troprank.lift import kapranov_rank3_5col
from troprank.sampling import generated_matrix


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--rows", type=int, nargs="+", default=[4, 5, 6, 7, 8])
    p.add_argument("--max-entry", type=int, default=4)
    p.add_argument("--seed", default="census")
    p.add_argument("--json", action="store_true", help="print the census as JSON")
    args = p.parse_args()
    origins, bases, methods = Counter(), Counter(), Counter()
    t0 = time.perf_counter()
    for g in args.rows:
        for i in range(args.count):
            a = generated_matrix(args.seed, g, 5, 3, i, hi=args.max_entry)
            c = kapranov_rank3_5col(a, seed=i)
            assert c.verified, a
            methods[c.method] += 1
            for step in c.trace:
                if step.get("step") == "develop":
                    origins[f"{step['axis']}: {step['origin']}"] += 1
                elif step.get("step") == "base":
                    bases[step.get("kind", "?")] += 1
                elif "origin" in step:
                    origins[step["origin"]] += 1
    census = {"matrices": args.count * len(args.rows), "seconds": round(time.perf_counter() - t0, 1),
              "methods": dict(methods), "bases": dict(bases), "plans": dict(origins.most_common())}
    if args.json:
        print(json.dumps(census, indent=1))
        return
    print(f"{census['matrices']} matrices in {census['seconds']} s")
    for k, v in census["plans"].items():
        print(f"  {v:6d}  {k}")
    print("bases:", census["bases"])
    print("methods:", census["methods"])


if __name__ == "__main__":
    main()
