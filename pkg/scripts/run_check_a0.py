"""Run the A_0 support check and report how often no presentation is found."""

import argparse
import json
import time

from extq.extcalc import check_A0_bound
from extq.kl import KLTable
from extq.rootdata import make_context


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("configs", nargs="*", default=["A1:3", "A1:5", "C2:5"], help="TYPE RANK:ELL, e.g. C2:5")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    for item in args.configs:
        label, ell = item.split(":")
        ctx = make_context(label[0], int(label[1:]), int(ell))
        start = time.perf_counter()
        rep = check_A0_bound(ctx, KLTable(ctx))
        secs = time.perf_counter() - start
        if args.json:
            d = rep.as_dict()
            d["seconds"] = round(secs, 3)
            print(json.dumps(d, sort_keys=True))
            continue
        rate = rep.not_covered / rep.queries if rep.queries else 0.0
        print(
            f"{label} ell={ell}: {rep.pairs} pairs, {rep.queries} queries, "
            f"not covered {rep.not_covered} ({rate:.1%}), violations {len(rep.violations)}, "
            f"inconsistent {len(rep.inconsistent)}, round-trips {rep.roundtrip_checked} "
            f"({len(rep.roundtrip_mismatches)} mismatches), {rep.nonzero_tables} nonzero tables, {secs:.2f}s"
        )
        for (lam0, mu0), nz in sorted(rep.tables.items()):
            print(f"   E1{lam0},{mu0} = {dict(sorted(nz.items()))}")


if __name__ == "__main__":
    main()
