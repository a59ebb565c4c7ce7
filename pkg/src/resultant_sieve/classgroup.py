"""Binary quadratic forms: reduction, composition, class groups of negative discriminant."""
import csv
import io
import math
from dataclasses import dataclass
from functools import partial

from .ntheory import factor, is_square
from .parallel import ordered_map


@dataclass(frozen=True)
class BQF:
    """a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self):
        return math.gcd(self.a, self.b, self.c) == 1

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def transform(self, alpha, beta, gamma, delta):
        """f(alpha x + beta y, gamma x + delta y)."""
        a, b, c = self.a, self.b, self.c
        return BQF(
            self(alpha, gamma),
            2 * a * alpha * beta + b * (alpha * delta + beta * gamma) + 2 * c * gamma * delta,
            self(beta, delta),
        )

    def inverse(self):
        return BQF(self.a, -self.b, self.c)

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def is_fundamental(d):
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n):
    return all(e == 1 for _, e in factor(n).factors)


def fundamental_discriminants(lo, hi):
    """Fundamental discriminants d with lo < d < hi, ascending."""
    return [d for d in range(lo + 1, hi) if is_fundamental(d)]


def _mul(m1, m2):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def reduce_neg_with_transform(f):
    """Reduced form equivalent to a positive definite f, plus the SL2(Z) matrix used.

    Returns (g, ((alpha, beta), (gamma, delta))) with
    g = f(alpha x + beta y, gamma x + delta y).
    """
    if f.disc >= 0 or f.a <= 0:
        raise ValueError(f"{f} is not positive definite")
    a, b, c = f
    M = ((1, 0), (0, 1))
    while True:
        # translate b into (-a, a]
        if not -a < b <= a:
            t = (a - b) // (2 * a)
            c = a * t * t + b * t + c
            b = b + 2 * a * t
            M = _mul(M, ((1, t), (0, 1)))
        if a > c:
            a, b, c = c, -b, a
            M = _mul(M, ((0, -1), (1, 0)))
            continue
        if a == c and b < 0:
            b = -b
            M = _mul(M, ((0, -1), (1, 0)))
        return BQF(a, b, c), M


def reduce_neg(f):
    return reduce_neg_with_transform(f)[0]


def is_reduced_neg(f):
    a, b, c = f
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def reduced_forms_neg(d, primitive=True):
    """All reduced forms of discriminant d < 0, with the b >= 0 boundary convention."""
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a negative discriminant")
    out = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if primitive and math.gcd(a, b, c) != 1:
                continue
            out.append(BQF(a, b, c))
        a += 1
    return out


def class_number_neg(d, allow_nonfundamental=False):
    """(h, reduced forms) for a negative fundamental discriminant d."""
    if not allow_nonfundamental and not is_fundamental(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    forms = reduced_forms_neg(d)
    return len(forms), forms


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def compose(f, g):
    """Gauss composition of two primitive forms of the same negative discriminant, reduced."""
    D = f.disc
    if g.disc != D:
        raise ValueError("discriminants differ")
    a1, b1, c1 = f
    a2, b2, c2 = g
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, u, v = _xgcd(s, d)
        x2, y2 = u, -v
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    h = BQF(a3, b3, c3)
    assert h.disc == D
    return reduce_neg(h)


def principal_form(d):
    if d % 4 == 0:
        return BQF(1, 0, -d // 4)
    return BQF(1, 1, (1 - d) // 4)


def form_power(f, k):
    result = principal_form(f.disc)
    base = f
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def form_order(f):
    e = principal_form(f.disc)
    g, k = reduce_neg(f), 1
    while g != e:
        g = compose(g, f)
        k += 1
    return k


@dataclass(frozen=True)
class ClassGroupStructure:
    discriminant: int
    invariant_factors: tuple  # d1 | d2 | ..., all > 1
    reduced_forms: tuple

    @property
    def h(self):
        return len(self.reduced_forms)


def _p_part_factors(orders, p):
    """Invariant p-power factors of a finite abelian group from its element orders."""
    sizes = [1]  # sizes[k] = |G[p^k]|
    while True:
        k = len(sizes)
        sizes.append(sum(1 for o in orders if p**k % o == 0))
        if sizes[-1] == sizes[-2]:
            break
    # ranks[k-1] = number of cyclic factors of order >= p^k
    ranks = []
    for k in range(1, len(sizes)):
        ratio, r = sizes[k] // sizes[k - 1], 0
        while ratio > 1:
            ratio //= p
            r += 1
        ranks.append(r)
    ranks.append(0)
    factors = []
    for k in range(len(ranks) - 1):
        factors.extend([p ** (k + 1)] * (ranks[k] - ranks[k + 1]))
    return sorted(factors)


def group_structure(d):
    h, forms = class_number_neg(d)
    orders = [form_order(f) for f in forms]
    primes = sorted(factor(h).primes) if h > 1 else []
    by_prime = {p: _p_part_factors(orders, p) for p in primes}
    # assemble invariant factors d1 | d2 | ... from the p-parts (largest last)
    length = max((len(v) for v in by_prime.values()), default=0)
    inv = []
    for idx in range(length):
        val = 1
        for fs in by_prime.values():
            pad = [1] * (length - len(fs)) + fs
            val *= pad[idx]
        inv.append(val)
    return ClassGroupStructure(d, tuple(inv), tuple(forms))


def odd_part(n):
    while n % 2 == 0:
        n //= 2
    return n


def h_parts(d, n=2):
    """(h, h_odd, h_n) from the invariant factors of the class group."""
    if n < 1:
        raise ValueError("n must be >= 1")
    G = group_structure(d)
    h_odd = 1
    h_n = 1
    for di in G.invariant_factors:
        h_odd *= odd_part(di)
        h_n *= math.gcd(n, di)
    return G.h, h_odd, h_n


def n_torsion_count(d, n):
    """#{x : x^n = 1}, counted directly by exponentiation."""
    _, forms = class_number_neg(d)
    e = principal_form(d)
    return sum(1 for f in forms if form_power(f, n) == e)


def _sminus_term(d, mode, n):
    if mode == "odd":
        return odd_part(len(reduced_forms_neg(d)))
    return n_torsion_count(d, n)


def S_minus(X, mode="odd", n=None, jobs=1):
    """Sum of h_odd (or h_n) over fundamental discriminants -X < d < 0."""
    if X < 3:
        raise ValueError("X must be >= 3")
    if mode not in ("odd", "torsion"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "torsion" and (n is None or n < 1):
        raise ValueError("torsion mode needs n >= 1")
    ds = fundamental_discriminants(-X, 0)
    return sum(ordered_map(partial(_sminus_term, mode=mode, n=n), ds, jobs))


def sminus_rows(grid, jobs=1):
    rows = []
    for X in grid:
        s = S_minus(X, "odd", jobs=jobs)
        rows.append({"X": X, "S_minus_odd": s, "ratio": s * math.sqrt(math.log(X)) / X**1.5})
    return rows


SMINUS_FIELDS = ["X", "S_minus_odd", "ratio"]


def sminus_csv(rows):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SMINUS_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({**r, "ratio": f"{r['ratio']:.6f}"})
    return buf.getvalue()


def count_representations(f, B):
    """#{(x, y) != (0, 0) : f(x, y) <= B} for positive definite f."""
    D = f.disc
    if D >= 0 or f.a <= 0:
        raise ValueError(f"{f} is not positive definite")
    if B <= 0:
        return 0
    a, b, c = f
    # 4a f = (2ax + by)^2 + |D| y^2
    ymax = math.isqrt(4 * a * B // -D) + 1
    total = 0
    for y in range(-ymax, ymax + 1):
        rest = 4 * a * B + D * y * y
        if rest < 0:
            continue
        s = math.isqrt(rest)
        # |2ax + by| <= s
        lo = -((s + b * y) // (2 * a))
        hi = (s - b * y) // (2 * a)
        for x in range(lo - 1, hi + 2):
            if (x, y) != (0, 0) and f(x, y) <= B:
                total += 1
    return total


def reduced_pos_enumerate(d):
    """Reduced indefinite forms: 0 < b < sqrt d, sqrt d - b < 2|a| < sqrt d + b."""
    if d <= 0 or d % 4 not in (0, 1) or is_square(d):
        raise ValueError(f"{d} is not a positive non-square discriminant")
    out = []
    r = math.isqrt(d)
    for b in range(1, r + 1):
        if (b - d) % 2:
            continue
        num = b * b - d  # = 4ac < 0
        for A in range(1, r + 1):
            # sqrt d < 2A + b  and  2A - b < sqrt d
            if not (2 * A + b) ** 2 > d:
                continue
            if 2 * A - b > 0 and (2 * A - b) ** 2 >= d:
                continue
            if num % (4 * A):
                continue
            C = -num // (4 * A)
            for a, c in ((A, -C), (-A, C)):
                g = BQF(a, b, c)
                assert (2 * abs(c) + b) ** 2 > d and (2 * abs(c) - b <= 0 or (2 * abs(c) - b) ** 2 < d)
                assert a * a < d and b * b < d and c * c < d
                out.append(g)
    return out
