"""Factorization, primality, Jacobi and Hilbert symbols."""
import math
import random
from dataclasses import dataclass
from functools import lru_cache

INF = math.inf

# Deterministic for n < 3.3e24, which covers every 64-bit input.
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

TRIAL_LIMIT = 10_000
SPF_LIMIT = 1 << 20


def _spf_table(limit):
    spf = list(range(limit + 1))
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


_SPF = None


def _spf():
    global _SPF
    if _SPF is None:
        _SPF = _spf_table(SPF_LIMIT)
    return _SPF


def small_primes(limit):
    spf = _spf() if limit <= SPF_LIMIT else _spf_table(limit)
    return [p for p in range(2, limit + 1) if spf[p] == p]


def is_prime(n):
    if n < 2:
        return False
    for p in MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n, rng):
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n, out, rng):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple  # ((p, e), ...) with p strictly increasing

    def v(self, p):
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    @property
    def primes(self):
        return tuple(p for p, _ in self.factors)

    @property
    def value(self):
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def __str__(self):
        body = "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors) or "1"
        return f"-{body}" if self.sign < 0 else body


@lru_cache(maxsize=1 << 16)
def factor(n):
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    found = {}
    if n <= SPF_LIMIT:
        spf = _spf()
        while n > 1:
            p = spf[n]
            found[p] = found.get(p, 0) + 1
            n //= p
    else:
        for p in small_primes(TRIAL_LIMIT):
            if p * p > n:
                break
            while n % p == 0:
                found[p] = found.get(p, 0) + 1
                n //= p
        if n > 1:
            # fixed seed keeps the factor routine a pure function
            _split(n, found, random.Random(n))
    return Factorization(sign, tuple(sorted(found.items())))


def valuation(n, p):
    """v_p(n); v_p(0) is infinite."""
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def squarefree_part(n):
    """Signed squarefree kernel: n = s * m^2 with s squarefree."""
    f = factor(n)
    out = f.sign
    for p, e in f.factors:
        if e % 2:
            out *= p
    return out


def is_square(n):
    return n >= 0 and math.isqrt(n) ** 2 == n


def jacobi(a, n):
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def legendre(a, p):
    return jacobi(a, p)


def hilbert_symbol(u, v, place):
    """(u, v) at a prime or at INF; 1 iff z^2 = u x^2 + v y^2 is locally soluble."""
    if u == 0 or v == 0:
        raise ValueError("Hilbert symbol needs non-zero arguments")
    if place == INF:
        return -1 if (u < 0 and v < 0) else 1
    p = place
    alpha = valuation(u, p)
    beta = valuation(v, p)
    u1 = u // p**alpha
    v1 = v // p**beta
    if p == 2:
        eps_u = ((u1 - 1) // 2) % 2
        eps_v = ((v1 - 1) // 2) % 2
        om_u = ((u1 * u1 - 1) // 8) % 2
        om_v = ((v1 * v1 - 1) // 8) % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    s = 1
    if (alpha * beta * ((p - 1) // 2)) % 2:
        s = -s
    if beta % 2:
        s *= legendre(u1, p)
    if alpha % 2:
        s *= legendre(v1, p)
    return s


def relevant_places(*nums):
    """INF followed by the primes dividing 2 * prod(nums)."""
    ps = {2}
    for x in nums:
        ps.update(factor(x).primes)
    return [INF] + sorted(ps)


def omega(n):
    """Number of distinct prime divisors of |n|."""
    return len(factor(n).factors)
