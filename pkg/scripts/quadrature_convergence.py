"""Convergence of the grid quantization on R.

Applies the multiplier 1/(1+X'^2) to e^{-|x|} and compares with the exact
(1+|x|)e^{-|x|}/2 as the grid is refined. The kink at 0 limits the order to
about two, so the error should at least halve per doubling.
"""

import argparse

import numpy as np

from ncq.nilpotent import multiplier_error


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--half-width", type=float, default=24.0)
    ap.add_argument("--max-points", type=int, default=512)
    args = ap.parse_args()
    sizes = [16]
    while sizes[-1] * 2 <= args.max_points:
        sizes.append(sizes[-1] * 2)
    errs = [multiplier_error(n, args.half_width) for n in sizes]
    print(f"{'N':>5} {'max error':>12} {'ratio':>7} {'order':>6}")
    for i, (n, e) in enumerate(zip(sizes, errs)):
        if i:
            r = errs[i - 1] / e
            print(f"{n:5d} {e:12.4e} {r:7.2f} {np.log2(r):6.2f}")
        else:
            print(f"{n:5d} {e:12.4e}")


if __name__ == "__main__":
    main()
