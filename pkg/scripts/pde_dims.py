"""Compare the PDE solution-space dimension with a direct stabilizer count."""
import argparse

from genusone import laurent as lr
from genusone.weyl import pde_solve, stabilizer_dimension


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", nargs="+", default=["2:1", "2:2", "3:1", "3:2"],
                    help="p:r pairs")
    args = ap.parse_args()
    for case in args.cases:
        p, r = map(int, case.split(":"))
        E = lr.height_one_field(p, r)
        alpha = [E.w(k) for k in range(1, r + 1)]
        a, b = len(pde_solve(alpha, p)), stabilizer_dimension(alpha, p)
        print(f"p={p} r={r} pde={a} stabilizer={b} {'ok' if a == b else 'MISMATCH'}")


if __name__ == "__main__":
    main()
