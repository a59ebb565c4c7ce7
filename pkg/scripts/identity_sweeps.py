"""Run the identity sweeps at a larger sample size than the test-suite uses."""
import argparse
import os
import time

from resultant_sieve.sweeps import SweepConfig, run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ns = ap.parse_args()
    cfg = SweepConfig(samples=ns.samples, degrees=(3, 5, 7), box=9, seed=ns.seed, jobs=ns.jobs)
    t = time.time()
    for r in run_all(cfg):
        print(f"{r.name:16s} passed={r.passed:8d} failed={r.failed} singular={r.singular}")
        for f in r.failures[:5]:
            print("   ", f)
    print(f"{time.time() - t:.1f}s")


if __name__ == "__main__":
    main()
