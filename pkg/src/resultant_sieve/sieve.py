"""Exhaustive box counts, local densities mod p^2 and the large-sieve sum L(Q)."""
import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial

import numpy as np

from .conic import soluble_normal_form
from .ntheory import factor, is_prime, jacobi, small_primes
from .parallel import ordered_map

EXACT_DENSITY_MAX_P = 13


@lru_cache(maxsize=1 << 17)
def _exact_primes(D):
    return tuple(p for p, e in factor(D).factors if e == 1)


def _in_omega(a, b, c):
    D = b * b - 4 * a * c
    if D == 0:
        return True
    return all(jacobi(c, p) != -1 for p in _exact_primes(D))


def _omega_slice(a, B2, B3):
    out = np.zeros((2 * B2 + 1, 2 * B3 + 1), dtype=bool)
    for b in range(-B2, B2 + 1):
        for c in range(-B3, B3 + 1):
            out[b + B2, c + B3] = _in_omega(a, b, c)
    return out


def _nplus_slice(a, B):
    out = np.zeros((2 * B + 1, 2 * B + 1), dtype=bool)
    if a == 0:
        return out
    for b in range(-B, B + 1):
        if b == 0:
            continue
        for c in range(-B, B + 1):
            if c != 0:
                out[b + B, c + B] = soluble_normal_form(b * b - 4 * a * c, c)
    return out


def omega_mask(B1, B2, B3, jobs=1):
    """Boolean array over |a|<=B1, |b|<=B2, |c|<=B3, indexed [a+B1, b+B2, c+B3]."""
    slices = ordered_map(partial(_omega_slice, B2=B2, B3=B3), range(-B1, B1 + 1), jobs)
    return np.stack(slices)


def nplus_mask(B, jobs=1):
    """Triples with 0 < |a|, |b|, |c| <= B whose conic X^2 - D Y^2 = c Z^2 has a rational point."""
    slices = ordered_map(partial(_nplus_slice, B=B), range(-B, B + 1), jobs)
    return np.stack(slices)


def count_T(B1, B2, B3, jobs=1):
    if min(B1, B2, B3) < 1:
        raise ValueError("bounds must be >= 1")
    return int(omega_mask(B1, B2, B3, jobs).sum())


def count_Nplus(B, jobs=1):
    if B < 1:
        raise ValueError("B must be >= 1")
    return int(nplus_mask(B, jobs).sum())


@dataclass(frozen=True)
class DensityRow:
    B: int
    T: int
    Nplus: int

    @property
    def ratio_T(self):
        return self.T * math.sqrt(math.log(self.B)) / (2 * self.B + 1) ** 3

    @property
    def ratio_N(self):
        return self.Nplus * math.sqrt(math.log(self.B)) / (2 * self.B) ** 3


def density_report(grid, jobs=1):
    grid = list(grid)
    if grid != sorted(grid) or len(set(grid)) != len(grid):
        raise ValueError("grid must be strictly ascending")
    rows = []
    for B in grid:
        om = omega_mask(B, B, B, jobs)
        npl = nplus_mask(B, jobs)
        if np.any(npl & ~om):
            raise AssertionError(f"N+ triple outside Omega at B={B}")
        rows.append(DensityRow(B, int(om.sum()), int(npl.sum())))
    return rows


DENSITY_FIELDS = ["B", "T", "Nplus", "ratio_T", "ratio_N"]


def density_rows_as_dicts(rows):
    return [
        {"B": r.B, "T": r.T, "Nplus": r.Nplus, "ratio_T": f"{r.ratio_T:.6f}", "ratio_N": f"{r.ratio_N:.6f}"}
        for r in rows
    ]


def density_csv(rows):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=DENSITY_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(density_rows_as_dicts(rows))
    return buf.getvalue()


# --- local densities --------------------------------------------------------


@dataclass(frozen=True)
class LocalDensity:
    p: int
    S_p: int

    @property
    def omega_p(self):
        return Fraction(self.S_p, self.p**6)

    @property
    def omega_count(self):
        """#(Omega mod p^2)."""
        return self.p**6 - self.S_p


@lru_cache(maxsize=None)
def local_density(p):
    """Count (a, b, c) mod p^2 with v_p(b^2 - 4ac) = 1 and (c/p) = -1."""
    if p == 2:
        raise ValueError("p = 2 is vacuous: b^2 - 4ac is never exactly divisible by 2")
    if not is_prime(p) or p < 2:
        raise ValueError(f"{p} is not an odd prime")
    if p > EXACT_DENSITY_MAX_P:
        raise ValueError(f"p = {p} exceeds the enumeration cap {EXACT_DENSITY_MAX_P}")
    m = p * p
    r = np.arange(m, dtype=np.int64)
    a, b = np.meshgrid(r, r, indexing="ij")
    b2 = b * b
    S = 0
    for c in range(m):
        if jacobi(c, p) != -1:
            continue
        D = (b2 - 4 * a * c) % m
        S += int(np.count_nonzero((D % p == 0) & (D != 0)))
    return LocalDensity(p, S)


@dataclass(frozen=True)
class LSum:
    Qmax: int
    value: Fraction
    exact_up_to: int
    # True when some prime above exact_up_to entered with omega_p := 1/(2p)
    uses_main_term: bool

    def __float__(self):
        return float(self.value)


def sieve_weight(p, densities=None):
    """(omega_p / (1 - omega_p), main_term_used); omega_2 = 0."""
    if p == 2:
        return Fraction(0), False
    if densities is not None and p in densities:
        w, main = densities[p].omega_p, False
    elif p <= EXACT_DENSITY_MAX_P:
        w, main = local_density(p).omega_p, False
    else:
        w, main = Fraction(1, 2 * p), True
    return w / (1 - w), main


def L_sum(Qmax, densities=None):
    """Sum over squarefree q <= Qmax of prod_{p | q} omega_p / (1 - omega_p)."""
    if Qmax < 1:
        raise ValueError("Qmax must be >= 1")
    primes = [p for p in small_primes(Qmax) if p != 2]
    weighted = [sieve_weight(p, densities) for p in primes]
    weights = [w for w, _ in weighted]
    total = Fraction(1)
    used_main = False
    stack = [(0, 1, Fraction(1))]
    terms = []
    while stack:
        start, q, w = stack.pop()
        for idx in range(start, len(primes)):
            p = primes[idx]
            nq = q * p
            if nq > Qmax:
                break
            nw = w * weights[idx]
            terms.append(nw)
            used_main = used_main or weighted[idx][1]
            stack.append((idx + 1, nq, nw))
    total += sum(terms, Fraction(0))
    return LSum(Qmax, total, EXACT_DENSITY_MAX_P, used_main)
