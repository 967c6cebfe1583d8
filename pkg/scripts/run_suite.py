"""Run the invariant battery and print a per-criterion summary table."""

import argparse
import json

from ncq.suite import CRITERIA, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--groups", help="comma-separated catalog specs")
    ap.add_argument("--json", help="also write the full report here")
    args = ap.parse_args()
    rep = run_suite(args.groups.split(",") if args.groups else None, seed=args.seed)
    print(f"{'criterion':<36} {'checks':>6} {'worst residual/tol':>20} {'time':>7}")
    for k, title in CRITERIA.items():
        checks = rep.criterion(k)
        ratio = max((c.residual / c.tol for c in checks if c.tol), default=0.0)
        status = "ok" if all(c.passed for c in checks) else "FAIL"
        print(f"{k:2d} {title:<33} {len(checks):>6} {ratio:>20.2e} {sum(c.elapsed for c in checks):>6.2f}s {status}")
    print(f"overall: {'pass' if rep.passed else 'FAIL'} in {rep.elapsed:.1f}s (seed {rep.seed})")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rep.as_dict(timings=True), fh, indent=1)
    raise SystemExit(0 if rep.passed else 1)


if __name__ == "__main__":
    main()
