"""Resultants of an integer polynomial against a quadratic.

The resultant is defined as the determinant of the (n+2)x(n+2) matrix whose
first two columns hold the coefficients of R (shifted by one row) and whose
remaining n columns form the banded matrix ``A_n`` built from (a, b, c).
No other sign convention is used anywhere in the package.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact_arith import delete_rows, det_exact, solve_linear_exact


@dataclass(frozen=True)
class IntPoly:
    """R = r0 x^n + r1 x^(n-1) + ... + rn, coefficients in descending order.

    ``degree`` is the formal degree len(coeffs) - 1; r0 may be zero when the
    caller only needs a formal polynomial of that size.
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(r) for r in self.coeffs))
        if not self.coeffs:
            raise ValueError("empty coefficient list")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for r in self.coeffs:
            acc = acc * x + r
        return acc

    def __str__(self):
        return format_poly(self.coeffs)

    @classmethod
    def parse(cls, text):
        return cls(tuple(int(t) for t in text.split(",")))


@dataclass(frozen=True)
class QuadTriple:
    """Q = a x^2 + b x + c."""

    a: int
    b: int
    c: int

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def __neg__(self):
        return QuadTriple(-self.a, -self.b, -self.c)

    @classmethod
    def parse(cls, text):
        a, b, c = (int(t) for t in text.split(","))
        return cls(a, b, c)


@dataclass(frozen=True)
class IndexPair:
    i: int
    j: int
    n: int

    def __post_init__(self):
        if not 1 <= self.i < self.j <= self.n + 1:
            raise ValueError(f"need 1 <= i < j <= n+1, got i={self.i}, j={self.j}, n={self.n}")

    @property
    def k(self):
        return self.j - self.i


@dataclass(frozen=True)
class Lemma21Witness:
    X: Fraction
    Y: Fraction
    lam: tuple


def format_poly(coeffs, var="x"):
    n = len(coeffs) - 1
    parts = []
    for k, r in enumerate(coeffs):
        if r == 0:
            continue
        e = n - k
        mag = abs(r)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if r > 0 else f"-{body}")
        else:
            parts.append(("+ " if r > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def index_pairs(n):
    return [IndexPair(i, j, n) for i in range(1, n + 2) for j in range(i + 1, n + 2)]


def banded_matrix(Q, k):
    """The (k+2) x k matrix A_k: column t carries (a, b, c) starting at row t."""
    a, b, c = Q
    m = [[0] * k for _ in range(k + 2)]
    for t in range(k):
        m[t][t] = a
        m[t + 1][t] = b
        m[t + 2][t] = c
    return m


def sylvester_matrix(R, Q):
    n = R.degree
    if n < 1:
        raise ValueError("R must have degree >= 1")
    size = n + 2
    A = banded_matrix(Q, n)
    m = [[0] * size for _ in range(size)]
    for t, r in enumerate(R.coeffs):
        m[t][0] = r
        m[t + 1][1] = r
    for row in range(size):
        m[row][2:] = A[row]
    return m


def resultant(R, Q):
    return det_exact(sylvester_matrix(R, Q))


def resultant_cubic_expanded(Q, r):
    """Closed-form quintic for Res(R, Q) with R cubic, r = (r0, r1, r2, r3)."""
    a, b, c = Q
    r0, r1, r2, r3 = r
    return (
        a**3 * r3**2
        - a**2 * b * r2 * r3
        - 2 * a**2 * c * r1 * r3
        + a**2 * c * r2**2
        + a * b**2 * r1 * r3
        + 3 * a * b * c * r0 * r3
        - a * b * c * r1 * r2
        - 2 * a * c**2 * r0 * r2
        + a * c**2 * r1**2
        - b**3 * r0 * r3
        + b**2 * c * r0 * r2
        - b * c**2 * r0 * r1
        + c**3 * r0**2
    )


def d_seq(Q, kmax):
    """d_0 .. d_kmax with d_k = b d_{k-1} - ac d_{k-2}, d_{-1} = 0, d_0 = 1."""
    a, b, c = Q
    out = [1]
    prev, cur = 0, 1
    for _ in range(kmax):
        prev, cur = cur, b * cur - a * c * prev
        out.append(cur)
    return out


def d_term(Q, k):
    """d_k, including the convention d_{-1} = 0."""
    if k == -1:
        return 0
    if k < -1:
        raise ValueError("d_k undefined for k < -1")
    return d_seq(Q, k)[k]


def tridiagonal(Q, k):
    """The k x k matrix with b on the diagonal, a above and c below."""
    a, b, c = Q
    m = [[0] * k for _ in range(k)]
    for t in range(k):
        m[t][t] = b
        if t + 1 < k:
            m[t][t + 1] = a
            m[t + 1][t] = c
    return m


def power_sum(Q, k):
    """alpha^k + beta^k for the roots of x^2 - b x + ac."""
    a, b, c = Q
    if k < 0:
        raise ValueError("k must be non-negative")
    s_prev, s = 2, b
    if k == 0:
        return 2
    for _ in range(k - 1):
        s_prev, s = s, b * s - a * c * s_prev
    return s


def cross_coefficient(Q, k):
    """(-1)^k (d_k - ac d_{k-2}), the XY coefficient of the k-th form."""
    a, _, c = Q
    return (-1) ** k * (d_term(Q, k) - a * c * d_term(Q, k - 2))


def witness_system(R, Q, i, j):
    """The square system B_{n-1,i,j} lam = c_{i,j} solved in the witness."""
    n = R.degree
    IndexPair(i, j, n)
    B = delete_rows(banded_matrix(Q, n - 1), (i - 1, j - 1))
    rhs = [r for t, r in enumerate(R.coeffs) if t not in (i - 1, j - 1)]
    return B, rhs


def lemma21_witness(R, Q, i, j) -> Optional[Lemma21Witness]:
    """Clear all but rows i, j of the first column of the resultant matrix.

    Solves B_{n-1,i,j} lam = c_{i,j} and reads off the surviving entries
    X (row i) and Y (row j). Returns None when B_{n-1,i,j} is singular.
    """
    n = R.degree
    B, rhs = witness_system(R, Q, i, j)
    lam = solve_linear_exact(B, rhs) if B else []
    if lam is None:
        return None
    ext = list(lam) + [0]
    A = banded_matrix(Q, n)
    r = R.coeffs
    X = r[i - 1] - sum(A[i - 1][t] * ext[t] for t in range(n))
    Y = r[j - 1] - sum(A[j - 1][t] * ext[t] for t in range(n))
    return Lemma21Witness(Fraction(X), Fraction(Y), tuple(lam))


def witness_prefactor(Q, n, i, j):
    return Q.a ** (i - 1) * Q.c ** (n - j + 1)


def lemma22_value(Q, n, i, j, X, Y):
    """a^(i-1) c^(n-j+1) (c^k X^2 + (-1)^k (d_k - ac d_{k-2}) XY + a^k Y^2)."""
    IndexPair(i, j, n)
    k = j - i
    a, _, c = Q
    X, Y = Fraction(X), Fraction(Y)
    form = c**k * X * X + cross_coefficient(Q, k) * X * Y + a**k * Y * Y
    return witness_prefactor(Q, n, i, j) * form
