"""Print the fitted walk-cost exponent table as CSV (or a text table with --text)."""
import argparse
import csv
import sys

from minorlab.walk_cost import DEFAULT_SIZES, exponent_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min-log2", type=int, default=10)
    ap.add_argument("--max-log2", type=int, default=24)
    ap.add_argument("--text", action="store_true")
    args = ap.parse_args()
    sizes = [2 ** j for j in range(args.min_log2, args.max_log2 + 1)] or list(DEFAULT_SIZES)
    rows = exponent_table(sizes)
    if args.text:
        for r in rows:
            gap = r.fit.slope - float(r.predicted)
            print(f"{r.problem:32s} predicted {float(r.predicted):.4f}  fitted {r.fit.slope:.4f}  diff {gap:+.4f}")
        return
    w = csv.writer(sys.stdout)
    w.writerow(["problem", "predicted", "fitted", "diff"])
    for r in rows:
        w.writerow([r.problem, float(r.predicted), r.fit.slope, r.fit.slope - float(r.predicted)])


if __name__ == "__main__":
    main()
