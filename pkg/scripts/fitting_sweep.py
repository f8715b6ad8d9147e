"""Tabulate the Fitting-ideal quotient dimensions over a grid of (p, r)."""
import argparse

from genusone.kaehler import fitting_analysis


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3, 5, 7])
    ap.add_argument("--r", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--trunc", type=int, default=None)
    args = ap.parse_args()
    kw = {"N": args.trunc} if args.trunc else {}
    print(f"{'p':>2} {'r':>2} {'unit':>5} {'dim R/b':>8} {'dim R1/b':>9}")
    for p in args.p:
        for r in args.r:
            fa = fitting_analysis(p, r, **kw)
            print(f"{p:>2} {r:>2} {str(fa['unit_ideal']):>5} {fa['dim_R_quot']:>8} {fa['dim_Rprime_quot']:>9}")


if __name__ == "__main__":
    main()
