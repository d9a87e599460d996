"""Sweep n for a relation family, print m, m', l_max and both bounds, then the log-log slope."""
import argparse

from minorlab.adversary import family_forest, family_subgraphlb, quantities_symmetric, scaling_fit


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", choices=["forest", "subgraphlb"], default="forest")
    ap.add_argument("--d", type=int, default=3, help="clique size for subgraphlb")
    ap.add_argument("--sizes", default="12,18,27,40,60")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    fam = family_forest() if args.family == "forest" else family_subgraphlb(None, args.d)
    print("n,m,m_prime,l_max,quantum_bound,classical_bound")
    for n in sizes:
        q = quantities_symmetric(fam, n)
        print(f"{n},{q.m},{q.m_prime},{q.l_max},{q.quantum_bound:.6g},{q.classical_bound:.6g}")
    if len(sizes) >= 4:
        fit = scaling_fit(fam, sizes)
        print(f"# slope {fit.slope:.4f} (stderr {fit.residual:.4f})")


if __name__ == "__main__":
    main()
