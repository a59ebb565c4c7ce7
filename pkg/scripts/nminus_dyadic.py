"""Negative-discriminant triples carrying a unit resultant, against the dyadic S_n^- sum.

The left column is a lower bound: find_R only searches |r_i| <= H. The right
column is B^2 * sum_j S_n^-(2^j) / 2^j over 2^j <= 4 B^2.
"""
import argparse
import itertools
import os
from dataclasses import dataclass

from resultant_sieve.classgroup import S_minus
from resultant_sieve.parallel import ordered_map
from resultant_sieve.pell import find_R
from resultant_sieve.resultant import QuadTriple


@dataclass
class Config:
    grid: tuple = (2, 3, 4, 5)
    degree: int = 3
    height: int = 2
    jobs: int = os.cpu_count() or 1


def _slice(a, B, n, H):
    hits = 0
    for b, c in itertools.product(range(-B, B + 1), repeat=2):
        Q = QuadTriple(a, b, c)
        if Q.disc < 0 and find_R(Q, n, H) is not None:
            hits += 1
    return hits


def dyadic_sum(B, n, jobs):
    total, j = 0.0, 2
    while 2**j <= 4 * B * B:
        total += S_minus(2**j, "torsion", n, jobs) / 2**j
        j += 1
    return B * B * total


def main():
    ints = lambda s: tuple(int(t) for t in s.split(","))
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=ints, default=Config.grid)
    ap.add_argument("--degree", type=int, default=Config.degree)
    ap.add_argument("--height", type=int, default=Config.height)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    cfg = Config(**vars(ap.parse_args()))

    for B in cfg.grid:
        avals = [a for a in range(-B, B + 1) if a]
        lower = sum(ordered_map(lambda a: _slice(a, B, cfg.degree, cfg.height), avals, 1))
        bound = dyadic_sum(B, cfg.degree, cfg.jobs)
        print(f"B={B:3d}  N-_{cfg.degree}(B) >= {lower:6d}  dyadic={bound:10.1f}  ratio={lower / bound:.4f}")


if __name__ == "__main__":
    main()
