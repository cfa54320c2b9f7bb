"""Classify every coordinate projection on a few algebras.

Prints one row per (algebra, kept coordinates) with the classification and,
for contractible cases, whether the float limit oracle agrees.

    python scripts/sweep_projections.py [algebra ...]
"""

import argparse
import itertools

from saletan import builtin, classify_and_contract, limit_probe
from saletan.linalg import matrix


def coordinate_projection(m, kept):
    return matrix([[int(i == j and i in kept) for j in range(m)] for i in range(m)])


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("algebras", nargs="*", default=["su2", "e2", "heisenberg3", "gl2"])
    args = parser.parse_args()
    print(f"{'algebra':<12} {'kept':<14} {'class':<16} {'witness':<8} oracle")
    for name in args.algebras:
        alg = builtin(name)
        m = alg.dim
        for r in range(1, m):
            for kept in itertools.combinations(range(m), r):
                n = coordinate_projection(m, kept)
                report = classify_and_contract(alg.tensor, n)
                expected = report.contracted if report.contractible else report.delta
                probe = limit_probe(alg.tensor, n, expected=expected)
                verdict = "converges" if probe.converged else ("diverges" if probe.diverging else "unclear")
                labels = ",".join(alg.label(i) for i in kept)
                witness = str(report.witness) if report.witness else "-"
                print(f"{name:<12} {labels:<14} {report.classification.value:<16} {witness:<8} {verdict}")


if __name__ == "__main__":
    main()
