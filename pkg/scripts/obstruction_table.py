"""Print the Sym^2 kernel dimensions and where the complete-intersection obstruction fires."""
import argparse

from genusone.kaehler import ci_obstruction


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", nargs="+", default=["2:1", "2:2", "2:3", "3:1", "3:2", "5:1", "7:1"],
                    help="p:r pairs; every s < r is tried")
    args = ap.parse_args()
    print(" p  r  s   n  ker/L  obstruction")
    for case in args.cases:
        p, r = map(int, case.split(":"))
        for s in range(r):
            o = ci_obstruction(p, r, s)
            print(f"{p:>2} {r:>2} {s:>2} {o['n']:>3} {o['dim_kernel_over_L']:>6}  {o['obstruction']}")


if __name__ == "__main__":
    main()
