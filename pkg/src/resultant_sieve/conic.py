"""Ternary conics attached to a quadratic, rational solubility and the set Omega."""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

from .ntheory import factor, hilbert_symbol, is_square, jacobi, relevant_places, squarefree_part
from .resultant import IntPoly, QuadTriple, cross_coefficient, d_term, lemma21_witness, resultant


@dataclass(frozen=True)
class TernaryConic:
    """q1 X^2 + q2 XY + q3 Y^2 = m Z^2."""

    q1: int
    q2: int
    q3: int
    m: int

    def __post_init__(self):
        if self.q1 == self.q2 == self.q3 == 0:
            raise ValueError("binary part of the conic is identically zero")

    def evaluate(self, X, Y, Z):
        return self.q1 * X * X + self.q2 * X * Y + self.q3 * Y * Y - self.m * Z * Z

    def contains(self, point):
        X, Y, Z = point
        return (X, Y, Z) != (0, 0, 0) and self.evaluate(X, Y, Z) == 0

    def normal_form(self):
        """(D, c) with X^2 - D Y^2 = c Z^2 equivalent over Q (requires q1 != 0).

        Completing the square on 4 q1 (q1 X^2 + q2 XY + q3 Y^2) gives
        U^2 - (q2^2 - 4 q1 q3) Y^2 = 4 q1 m Z^2, and 4 is a square.
        """
        if self.q1 == 0:
            raise ValueError("normal form needs q1 != 0")
        if self.q2 == 0 and self.q1 == 1:
            return -self.q3, self.m
        return self.q2 * self.q2 - 4 * self.q1 * self.q3, self.q1 * self.m

    def __str__(self):
        return f"{self.q1}*X^2 + {self.q2}*X*Y + {self.q3}*Y^2 = {self.m}*Z^2"


def conic_C(Q):
    return TernaryConic(1, 0, -Q.disc, Q.c)


def conic_Cij(Q, n, i, j):
    """c^k X^2 + (-1)^k (d_k - ac d_{k-2}) XY + a^k Y^2 = a^(i-1) c^(n-j+1) Z^2."""
    k = j - i
    if not 1 <= i < j <= n + 1:
        raise ValueError("need 1 <= i < j <= n+1")
    return TernaryConic(Q.c**k, cross_coefficient(Q, k), Q.a**k, Q.a ** (i - 1) * Q.c ** (n - j + 1))


@lru_cache(maxsize=1 << 18)
def soluble_normal_form(D, c):
    """Whether X^2 - D Y^2 = c Z^2 (c != 0) has a rational point."""
    if D == 0 or is_square(D):
        return True
    return all(hilbert_symbol(D, c, v) == 1 for v in relevant_places(D, c))


def has_rational_point(C):
    """Decide C(Q) != empty by local symbols at infinity and the primes dividing 2Dc."""
    if C.m == 0:
        raise ValueError("m = 0 is excluded")
    if C.q1 == 0:
        return True  # (1, 0, 0)
    D, c = C.normal_form()
    return soluble_normal_form(D, c)


def omega_member(Q):
    """Whether every prime exactly dividing b^2 - 4ac has (c/p) != -1."""
    D = Q.disc
    if D == 0:
        return True
    for p, e in factor(D).factors:
        if e == 1 and jacobi(Q.c, p) == -1:
            return False
    return True


def omega_violations(Q):
    """Primes p with v_p(disc) = 1 and (c/p) = -1, for reporting."""
    D = Q.disc
    if D == 0:
        return []
    return [p for p, e in factor(D).factors if e == 1 and jacobi(Q.c, p) == -1]


# --- bounded point search -------------------------------------------------


@lru_cache(maxsize=None)
def _squares_mod(m):
    return frozenset(x * x % m for x in range(m))


def _residue_obstruction(D, c):
    """True if X^2 - D Y^2 = c Z^2 has no primitive solution modulo some p^k.

    Brute-force residue enumeration on the squarefree reduction; used only
    to cut the exhaustive search short, never to decide solubility.
    """
    D0, c0 = squarefree_part(D), squarefree_part(c)
    if D0 < 0 and c0 < 0:
        return True  # X^2 + |D| Y^2 + |c| Z^2 = 0 is definite
    primes = set(factor(D0).primes) | set(factor(c0).primes) | {2}
    for p in sorted(primes):
        mod = 256 if p == 2 else p * p
        sq = _squares_mod(mod)
        ok = False
        # projective (Y : Z) mod p^k: either Z = 1, or p | Z and Y = 1
        for Y in range(mod):
            if (D0 * Y * Y + c0) % mod in sq:
                ok = True
                break
        if not ok:
            for Z in range(0, mod, p):
                if (D0 + c0 * Z * Z) % mod in sq:
                    ok = True
                    break
        if not ok:
            return True
    return False


def _solve_x(C, Y, Z):
    """Integer X with C(X, Y, Z) = 0, in increasing order."""
    q1, q2, q3, m = C.q1, C.q2, C.q3, C.m
    const = q3 * Y * Y - m * Z * Z
    if q1 == 0:
        if q2 * Y == 0:
            return [] if const else None  # None: any X works
        num = -const
        return [num // (q2 * Y)] if num % (q2 * Y) == 0 else []
    disc = q2 * q2 * Y * Y - 4 * q1 * const
    if disc < 0:
        return []
    s = math.isqrt(disc)
    if s * s != disc:
        return []
    out = set()
    for num in (-q2 * Y + s, -q2 * Y - s):
        if num % (2 * q1) == 0:
            out.add(num // (2 * q1))
    return sorted(out)


def _solve_z(C, X, Y):
    if C.m == 0:
        return []
    num = C.q1 * X * X + C.q2 * X * Y + C.q3 * Y * Y
    if num % C.m:
        return []
    z2 = num // C.m
    if z2 < 0 or not is_square(z2):
        return []
    z = math.isqrt(z2)
    return sorted({z, -z})


def _height_layer(C, h):
    """Points of C with max(|X|, |Y|, |Z|) == h, in a fixed order."""
    found = []
    ring = [(y, z) for y in range(-h, h + 1) for z in range(-h, h + 1) if max(abs(y), abs(z)) == h]
    for Y, Z in ring:
        xs = _solve_x(C, Y, Z)
        if xs is None:
            xs = range(-h, h + 1)
        found.extend((X, Y, Z) for X in xs if abs(X) <= h)
    for X in (-h, h):
        for Y in range(-h + 1, h):
            found.extend((X, Y, Z) for Z in _solve_z(C, X, Y) if abs(Z) < h)
    return found


def _canonical(point):
    X, Y, Z = point
    if (Z, Y, X) < (0, 0, 0):
        return (-X, -Y, -Z)
    return point


def find_point(C, bound=None):
    """Smallest-height nontrivial integral point with coordinates at most ``bound``.

    The default bound is 4|Dc| + 4 for the normal form X^2 - D Y^2 = c Z^2.
    Returns None when the box holds no point.
    """
    if C.q1 != 0 and C.m != 0:
        D, c = C.normal_form()
        if bound is None:
            bound = 4 * abs(D * c) + 4
        if D != 0 and not is_square(D) and _residue_obstruction(D, c):
            return None
    elif bound is None:
        bound = 4 * (abs(C.q1) + abs(C.q2) + abs(C.q3) + abs(C.m)) + 4
    for h in range(1, bound + 1):
        layer = _height_layer(C, h)
        if layer:
            if C.q2 == 0:
                layer = [tuple(map(abs, p)) for p in layer]
            pts = sorted({_canonical(p) for p in layer}, key=lambda p: (abs(p[2]), abs(p[1]), abs(p[0]), p))
            return pts[0]
    return None


# --- witnesses from a unit resultant --------------------------------------


def _primitive(vec):
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (Fraction(v).denominator for v in vec), 1)
    ints = [int(Fraction(v) * den) for v in vec]
    g = reduce(math.gcd, ints, 0) or 1
    return tuple(v // g for v in ints)


def witness_point_from_resultant(R, Q):
    """Explicit point on X^2 - D Y^2 = c Z^2 from an R with Res(R, Q) = +-1.

    Res = -1 is handled by negating (a, b, c), which flips the sign of the
    resultant for odd deg R. Returns (Q', (X, Y, Z)) where Q' is the triple
    whose conic carries the point.
    """
    n = R.degree
    if n % 2 == 0:
        raise ValueError("R must have odd degree")
    res = resultant(R, Q)
    if res not in (1, -1):
        raise ValueError(f"Res(R, Q) = {res}, not a unit")
    if res == -1:
        Q = -Q
    if Q.c == 0:
        raise ValueError("c = 0 gives a degenerate conic")
    C = conic_C(Q)
    half = Q.c ** ((n - 1) // 2)
    for j in range(2, n + 2):
        w = lemma21_witness(R, Q, 1, j)
        if w is None:
            continue
        k = j - 1
        P = Q.c ** (n - j + 1)
        # (P X, P Y, 1) lies on C_{1,j}; completing the square maps it to C
        U = 2 * Q.c**k * P * w.X + cross_coefficient(Q, k) * P * w.Y
        V = d_term(Q, k - 1) * P * w.Y
        point = _primitive((U, V, 2 * half))
        if C.contains(point):
            return Q, point
    raise ArithmeticError(f"no usable witness for R={R}, Q={Q}")
