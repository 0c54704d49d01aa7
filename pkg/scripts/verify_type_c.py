"""Type C_n at ell = 2: dimensions, V(x)V and the sum formula checks for n = 2..4."""

import sys

from extq.sumformula import verify_very_special


def main(ranks=(2, 3, 4)):
    ok = True
    for n in ranks:
        rep = verify_very_special(n)
        print(rep.text())
        print(f"  dims: {rep.dims}\n")
        ok &= rep.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main(tuple(int(a) for a in sys.argv[1:]) or (2, 3, 4)))
