"""Generalized Pell equations from the cubic case and bounded searches for R."""
import itertools
import math
from dataclasses import dataclass
from functools import partial

import numpy as np

from .exact_arith import det_exact
from .parallel import ordered_map
from .resultant import IntPoly, lemma21_witness, resultant, sylvester_matrix, witness_system


@dataclass(frozen=True)
class PellEquation:
    """q1 x^2 + q2 xy + q3 y^2 = N."""

    q1: int
    q2: int
    q3: int
    N: int

    def __post_init__(self):
        if self.q1 == self.q2 == self.q3 == 0:
            raise ValueError("zero binary form")

    def evaluate(self, x, y):
        return self.q1 * x * x + self.q2 * x * y + self.q3 * y * y

    def __str__(self):
        return f"{self.q1}*x^2 + {self.q2}*x*y + {self.q3}*y^2 = {self.N}"


def cubic_conics(Q):
    """The three integral equations a cubic R with Res(R, Q) = 1 forces on Q.

    They come from the index pairs (1,2), (1,3), (1,4); the right-hand side
    is det(B_{2,1,j})^2 divided by the prefactor a^(i-1) c^(n-j+1).
    """
    a, b, c = Q
    return [
        PellEquation(c, -b, a, c * c),
        PellEquation(c * c, b * b - 2 * a * c, a * a, b * b * c),
        PellEquation(c**3, -(b**3 - 3 * a * b * c), a**3, (b * b - a * c) ** 2),
    ]


def cubic_scaled_witness(R, Q, j):
    """(det B * X, det B * Y) for pair (1, j): integral whenever the witness exists."""
    B, _ = witness_system(R, Q, 1, j)
    det = det_exact(B)
    w = lemma21_witness(R, Q, 1, j)
    if w is None:
        return None
    x, y = det * w.X, det * w.Y
    assert x.denominator == 1 and y.denominator == 1
    return int(x), int(y)


def solve_bqf_diophantine(E, H):
    """All integer (x, y) with |x|, |y| <= H solving E, sorted lexicographically."""
    if H < 1:
        raise ValueError("H must be >= 1")
    q1, q2, q3, N = E.q1, E.q2, E.q3, E.N
    out = set()
    for x in range(-H, H + 1):
        # q3 y^2 + (q2 x) y + (q1 x^2 - N) = 0
        A, Bc, C = q3, q2 * x, q1 * x * x - N
        if A == 0:
            if Bc == 0:
                if C == 0:
                    out.update((x, y) for y in range(-H, H + 1))
                continue
            if C % Bc == 0:
                ys = [-C // Bc]
            else:
                continue
        else:
            disc = Bc * Bc - 4 * A * C
            if disc < 0:
                continue
            s = math.isqrt(disc)
            if s * s != disc:
                continue
            ys = [num // (2 * A) for num in (-Bc + s, -Bc - s) if num % (2 * A) == 0]
        out.update((x, y) for y in ys if abs(y) <= H)
    return sorted(out)


def resultant_gram(Q, n):
    """Res(R, Q) as a quadratic form in (r0, ..., rn): upper-triangular coefficients."""
    def res(vec):
        m = sylvester_matrix(IntPoly(vec), Q)
        return det_exact(m)

    size = n + 1
    unit = [[int(s == t) for t in range(size)] for s in range(size)]
    diag = [res(unit[s]) for s in range(size)]
    K = [[0] * size for _ in range(size)]
    for s in range(size):
        K[s][s] = diag[s]
        for t in range(s + 1, size):
            both = [u + v for u, v in zip(unit[s], unit[t])]
            K[s][t] = res(both) - diag[s] - diag[t]
    return K


def _eval_block(K, prefix, free, H):
    """Resultant values over prefix + every tail in [-H, H]^free, in lex order."""
    size = len(prefix) + free
    bound = sum(abs(K[s][t]) for s in range(size) for t in range(s, size)) * H * H
    dtype = np.int64 if bound < 2**62 else object
    vals = np.arange(-H, H + 1, dtype=dtype)
    cols = [np.full(1, v, dtype=dtype) for v in prefix]
    if free:
        grids = np.meshgrid(*([vals] * free), indexing="ij")
        tail = [g.ravel() for g in grids]
        length = tail[0].size
        cols = [np.full(length, v, dtype=dtype) for v in prefix] + tail
    total = np.zeros(cols[0].size, dtype=dtype)
    for s in range(size):
        for t in range(s, size):
            if K[s][t]:
                total = total + K[s][t] * cols[s] * cols[t]
    return total


def _search_chunk(prefix, K, n, H):
    free = n + 1 - len(prefix)
    res = _eval_block(K, prefix, free, H)
    hits = np.flatnonzero((res == 1) | (res == -1))
    if hits.size == 0:
        return None
    idx = int(hits[0])
    tail = []
    for _ in range(free):
        tail.append(idx % (2 * H + 1) - H)
        idx //= 2 * H + 1
    return tuple(prefix) + tuple(reversed(tail))


MAX_BLOCK = 1 << 20


def find_R(Q, n, H, jobs=1):
    """First R (lexicographic, r0 = 1..H, others -H..H) with Res(R, Q) = +-1.

    Res(-R, Q) = Res(R, Q), so r0 > 0 loses nothing. Res is a quadratic form
    in the coefficients of R, evaluated block-wise over the whole box.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and >= 3")
    if H < 1:
        raise ValueError("H must be >= 1")
    K = resultant_gram(Q, n)
    fixed = 1
    while (2 * H + 1) ** (n + 1 - fixed) > MAX_BLOCK:
        fixed += 1
    prefixes = [
        (r0,) + rest
        for r0 in range(1, H + 1)
        for rest in itertools.product(range(-H, H + 1), repeat=fixed - 1)
    ]
    work = partial(_search_chunk, K=K, n=n, H=H)
    if jobs <= 1:
        for p in prefixes:
            hit = work(p)
            if hit is not None:
                return IntPoly(hit)
        return None
    for hit in ordered_map(work, prefixes, jobs):
        if hit is not None:
            return IntPoly(hit)
    return None


def find_R_naive(Q, n, H):
    """Reference search calling resultant() on every candidate, same order as find_R."""
    for r0 in range(1, H + 1):
        for rest in itertools.product(range(-H, H + 1), repeat=n):
            R = IntPoly((r0,) + rest)
            if resultant(R, Q) in (1, -1):
                return R
    return None
