"""List dominant weights where the ell = 2 sum formula decomposes with a negative coefficient."""

import argparse

from extq.rootdata import build_root_system, weights_below_bound
from extq.sumformula import jantzen_sum_chi


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ranks", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--bound", type=int, default=10, help="max <lam + rho, alpha_0^vee>")
    args = ap.parse_args()
    for n in args.ranks:
        rs = build_root_system("C", n)
        hsr = rs.highest_short_root
        weights = list(weights_below_bound(hsr.coroot_coords, args.bound - hsr.pair(rs.rho)))
        bad = 0
        for lam in weights:
            d = jantzen_sum_chi(lam, rs)
            if any(v < 0 for _, v in d):
                bad += 1
                print(f"C{n} {lam}: " + " + ".join(f"{v}*chi{k}" for k, v in d))
        print(f"C{n}: {bad} of {len(weights)} weights have a negative coefficient\n")


if __name__ == "__main__":
    main()
