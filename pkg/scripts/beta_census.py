"""Count graphs on exactly n vertices by beta (number of internal edges)."""
import argparse
from collections import Counter

from minorlab.io import all_graphs
from minorlab.minor_theory import beta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=7, help="at most 7 (graph atlas limit)")
    args = ap.parse_args()
    print("n,beta,count")
    for n in range(1, args.max_n + 1):
        counts = Counter(beta(H) for H in all_graphs(n, min_n=n))
        for b in sorted(counts):
            print(f"{n},{b},{counts[b]}")


if __name__ == "__main__":
    main()
