"""Enumerate small integer tensor maps on an algebra and tally their classes.

Used to pick the nilpotent and singular examples in ``saletan.suite``.

    python scripts/search_instances.py heisenberg3 --entries -1 0 1 2 --limit 5
"""

import argparse
import itertools
from collections import Counter

from saletan import builtin, classify_and_contract
from saletan import linalg


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("algebra")
    parser.add_argument("--entries", type=int, nargs="+", default=[-1, 0, 1])
    parser.add_argument("--lower-triangular", action="store_true",
                        help="only strictly lower-triangular maps (nilpotent by construction)")
    parser.add_argument("--limit", type=int, default=3, help="examples to print per class")
    args = parser.parse_args()

    mu = builtin(args.algebra).tensor
    m = mu.dim
    cells = [(i, j) for i in range(m) for j in range(m) if not args.lower_triangular or i > j]
    tally, shown = Counter(), Counter()
    for values in itertools.product(args.entries, repeat=len(cells)):
        n = linalg.zeros(m, m)
        for (i, j), v in zip(cells, values):
            n[i, j] = linalg.to_rational(v)
        nilpotent = linalg.is_zero(linalg.matrix_power(n, m))
        singular = linalg.det(n) == 0
        kind = "nilpotent" if nilpotent else ("singular" if singular else "invertible")
        cls = classify_and_contract(mu, n).classification.value
        tally[kind, cls] += 1
        if shown[kind, cls] < args.limit:
            shown[kind, cls] += 1
            print(f"{kind:<10} {cls:<16} {[[str(x) for x in row] for row in n]}")
    print()
    for (kind, cls), count in sorted(tally.items()):
        print(f"{kind:<10} {cls:<16} {count}")


if __name__ == "__main__":
    main()
