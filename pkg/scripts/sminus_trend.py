"""S^-(X) for h_odd and for n-torsion, normalised by X^1.5 / sqrt(ln X)."""
import argparse
import csv
import math
import os
from dataclasses import dataclass

from resultant_sieve.classgroup import S_minus, sminus_csv, sminus_rows


@dataclass
class Config:
    grid: tuple = (100, 300, 1000, 3000, 10_000)
    torsion: tuple = (2, 3)
    jobs: int = os.cpu_count() or 1
    out: str = "sminus.csv"


def main():
    ints = lambda s: tuple(int(t) for t in s.split(","))
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=ints, default=Config.grid)
    ap.add_argument("--torsion", type=ints, default=Config.torsion)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    ap.add_argument("--out", default=Config.out)
    cfg = Config(**vars(ap.parse_args()))

    rows = sminus_rows(cfg.grid, cfg.jobs)
    with open(cfg.out, "w") as fh:
        fh.write(sminus_csv(rows))
    for r in rows:
        print(f"X={r['X']:6d}  S-_odd={r['S_minus_odd']:8d}  ratio={r['ratio']:.4f}")

    # h_n sums grow like X (odd n) or X log X (even n) under the usual heuristics
    for n in cfg.torsion:
        for X in cfg.grid:
            s = S_minus(X, "torsion", n, cfg.jobs)
            scale = X * math.log(X) if n % 2 == 0 else X
            print(f"n={n} X={X:6d}  S-_n={s:8d}  S-_n/{'XlogX' if n % 2 == 0 else 'X'}={s / scale:.4f}")


if __name__ == "__main__":
    main()
