"""Exact S_p for small primes and the growth of L(Q) against sqrt(log Q)."""
import argparse
import math
from dataclasses import dataclass

from resultant_sieve.sieve import L_sum, local_density


@dataclass
class Config:
    primes: tuple = (3, 5, 7, 11, 13)
    grid: tuple = (10**2, 10**3, 10**4)


def main():
    ints = lambda s: tuple(int(t) for t in s.split(","))
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=ints, default=Config.primes)
    ap.add_argument("--grid", type=ints, default=Config.grid)
    cfg = Config(**vars(ap.parse_args()))

    for p in cfg.primes:
        d = local_density(p)
        closed = p**3 * (p - 1) ** 2 // 2
        print(f"p={p:3d}  S_p={d.S_p:8d}  closed={closed:8d}  omega_p={d.omega_p}  "
              f"2p*omega_p={float(2 * p * d.omega_p):.4f}")
    base = None
    for Q in cfg.grid:
        L = L_sum(Q)
        r = float(L.value) / math.sqrt(math.log(Q))
        base = base or r
        flag = " (1/(2p) beyond 13)" if L.uses_main_term else ""
        print(f"Q={Q:7d}  L={float(L.value):.6f}  L/sqrt(lnQ)={r:.4f}  vs first={r / base:.4f}{flag}")


if __name__ == "__main__":
    main()
