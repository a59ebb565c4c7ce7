"""T(B,B,B) and N+(B) over a grid of box sizes, with the normalised ratios."""
import argparse
import os
import time
from dataclasses import dataclass

from resultant_sieve.sieve import density_csv, density_report


@dataclass
class Config:
    grid: tuple = (5, 10, 20, 40, 80)
    jobs: int = os.cpu_count() or 1
    out: str = "density_report.csv"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=lambda s: tuple(int(t) for t in s.split(",")), default=Config.grid)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    ap.add_argument("--out", default=Config.out)
    cfg = Config(**vars(ap.parse_args()))

    t = time.time()
    rows = density_report(cfg.grid, cfg.jobs)
    with open(cfg.out, "w") as fh:
        fh.write(density_csv(rows))
    for r in rows:
        print(f"B={r.B:4d}  T={r.T:9d}  N+={r.Nplus:9d}  N+/T={r.Nplus / r.T:.4f}  "
              f"ratio_T={r.ratio_T:.4f}  ratio_N={r.ratio_N:.4f}")
    ratios = [r.ratio_N for r in rows]
    print(f"ratio_N max/min = {max(ratios) / min(ratios):.3f}   ({time.time() - t:.1f}s, wrote {cfg.out})")


if __name__ == "__main__":
    main()
