"""Exact integer polynomial and matrix kernel.

A polynomial is a dense sequence of arbitrary-precision integer coefficients,
constant term first, with no stored trailing zeros; the zero polynomial has an
empty coefficient sequence.  Matrices are row-major integer arrays.  All
arithmetic here is exact; nothing in this module touches floating point.

The text format used throughout the package (and by the CLI) writes a
polynomial as comma-separated coefficients from the constant term upward, so
"5,-3,1" is T^2 - 3T + 5 and the empty string is the zero polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "IntPoly",
    "IntMatrix",
    "PolyFormatError",
    "parse_poly",
    "format_poly",
    "cyclotomic",
    "cyclotomic_multiplicity",
    "euler_phi",
    "divisors",
    "charpoly",
    "companion",
    "compound_matrix",
    "poly_gcd",
    "squarefree_part",
    "squarefree_decomposition",
]


@dataclass(frozen=True, init=False)
class IntPoly:
    """Dense integer polynomial; ``coeffs[i]`` is the coefficient of T^i.

    Values are immutable and safe to share between threads.

    >>> IntPoly([-6, -1, 1])
    IntPoly('T^2 - T - 6')
    >>> IntPoly([0, 0]).is_zero()
    True
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: "tuple[int, ...] | list[int]" = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = IntPoly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x: int) -> int:
        """Evaluate at an integer point (Horner)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scale_variable(self, s: int) -> "IntPoly":
        """Return f(sT), i.e. multiply the T^i coefficient by s^i."""
        out, power = [], 1
        for c in self.coeffs:
            out.append(c * power)
            power *= s
        return IntPoly(out)

    def reciprocal(self) -> "IntPoly":
        """Reverse the coefficients: T^deg * f(1/T)."""
        return IntPoly(list(reversed(self.coeffs)))

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __divmod__(self, other: "IntPoly") -> "tuple[IntPoly, IntPoly]":
        """Euclidean division over the integers.

        With a monic divisor this always succeeds and deg(remainder) is less
        than deg(divisor).  With a non-monic divisor every elimination step
        must divide exactly, otherwise ValueError is raised.
        """
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.coeffs
        dn = len(d)
        lead = d[-1]
        if len(rem) < dn:
            return IntPoly(), IntPoly(rem)
        quo = [0] * (len(rem) - dn + 1)
        for i in range(len(rem) - dn, -1, -1):
            top = rem[i + dn - 1]
            if top == 0:
                continue
            if lead != 1:
                q, r = divmod(top, lead)
                if r:
                    raise ValueError("inexact division by non-monic divisor")
            else:
                q = top
            quo[i] = q
            for j, c in enumerate(d):
                rem[i + j] -= q * c
        return IntPoly(quo), IntPoly(rem)

    def __floordiv__(self, other: "IntPoly") -> "IntPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError(f"{self} is not divisible by {other}")
        return q

    def pretty(self, var: str = "T") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = " - " if c < 0 else (" + " if parts else "")
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                t = var if i == 1 else f"{var}^{i}"
                term = t if mag == 1 else f"{mag}{t}"
            if not parts and c < 0:
                sign = "-"
            parts.append(sign + term)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"IntPoly('{self.pretty()}')"


class PolyFormatError(ValueError):
    """Raised for malformed polynomial text."""


def parse_poly(text: str) -> IntPoly:
    """Parse the comma-separated coefficient format (constant term first).

    Whitespace around commas is ignored, a leading "+" is forbidden, and the
    empty string is the zero polynomial.
    """
    s = text.strip()
    if not s:
        return IntPoly()
    out = []
    for tok in s.split(","):
        tok = tok.strip()
        body = tok[1:] if tok.startswith("-") else tok
        if not body or not body.isdigit():
            raise PolyFormatError(f"bad coefficient {tok!r}: expected an integer like -3 (no leading '+')")
        out.append(int(tok))
    return IntPoly(out)


def format_poly(f: IntPoly) -> str:
    """Inverse of parse_poly; the zero polynomial becomes the empty string."""
    return ",".join(str(c) for c in f.coeffs)


# ---------------------------------------------------------------------------
# elementary number theory helpers

@lru_cache(maxsize=None)
def _factorization(n: int) -> tuple[tuple[int, int], ...]:
    if n < 1:
        raise ValueError("positive integer required")
    out = []
    m = n
    for p in itertools.chain((2,), itertools.count(3, 2)):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    if m > 1:
        out.append((m, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    phi = 1
    for p, e in _factorization(n):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n."""
    out = [1]
    for p, e in _factorization(n):
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


# ---------------------------------------------------------------------------
# cyclotomic polynomials

# Entries with index up to this bound are memoized; the lru_cache lock gives
# one consistent value per entry under concurrent access.
CYCLOTOMIC_CACHE_MAX = 10_000


def cyclotomic(m: int) -> IntPoly:
    """The m-th cyclotomic polynomial, monic of degree phi(m).

    Computed by dividing T^m - 1 by the cyclotomic polynomials of the proper
    divisors of m; every division is exact.

    >>> cyclotomic(12)
    IntPoly('T^4 - T^2 + 1')
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m <= CYCLOTOMIC_CACHE_MAX:
        return _cyclotomic_cached(m)
    return _cyclotomic_of(m)


@lru_cache(maxsize=None)
def _cyclotomic_cached(m: int) -> IntPoly:
    return _cyclotomic_of(m)


def _cyclotomic_of(m: int) -> IntPoly:
    f = IntPoly([-1] + [0] * (m - 1) + [1])
    for d in divisors(m):
        if d == m:
            continue
        f, rem = divmod(f, cyclotomic(d))
        assert rem.is_zero()
    return f


def cyclotomic_multiplicity(f: IntPoly, m: int) -> int:
    """Largest e such that the m-th cyclotomic polynomial to the e divides f.

    >>> cyclotomic_multiplicity(IntPoly([1, -1, -1, 1]), 1)   # (T-1)^2 (T+1)
    2
    """
    if f.is_zero():
        raise ValueError("zero polynomial has infinite multiplicity")
    phi = cyclotomic(m)
    if phi.degree > f.degree:
        return 0
    e = 0
    while True:
        q, r = divmod(f, phi)
        if not r.is_zero():
            return e
        e += 1
        f = q
        if f.degree < phi.degree:
            return e


# ---------------------------------------------------------------------------
# integer matrices

@dataclass(frozen=True, init=False)
class IntMatrix:
    """Immutable row-major integer matrix."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __init__(self, rows: int, cols: int, entries):
        if rows < 1 or cols < 1:
            raise ValueError("matrix dimensions must be positive")
        ent = tuple(entries)
        if len(ent) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(ent)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)

    @staticmethod
    def from_rows(rows_of_entries) -> "IntMatrix":
        rows = [list(r) for r in rows_of_entries]
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return IntMatrix(len(rows), ncols, [c for r in rows for c in r])

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.at(i, j)

    def to_lists(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        a, b = self.to_lists(), other.to_lists()
        bt = list(zip(*b))
        ent = []
        for row in a:
            for col in bt:
                ent.append(sum(x * y for x, y in zip(row, col)))
        return IntMatrix(self.rows, other.cols, ent)

    def pow(self, e: int) -> "IntMatrix":
        """Exact matrix power, e >= 0 (square matrices only)."""
        if not self.is_square:
            raise ValueError("matrix power requires a square matrix")
        if e < 0:
            raise ValueError("negative matrix power")
        result = IntMatrix.identity(self.rows)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, {self.to_lists()})"


def companion(f: IntPoly) -> IntMatrix:
    """Companion matrix of a monic polynomial of degree >= 1.

    charpoly(companion(f)) == f by construction.
    """
    if f.degree < 1 or not f.is_monic():
        raise ValueError("companion matrix requires a monic polynomial of degree >= 1")
    n = f.degree
    ent = [0] * (n * n)
    for i in range(n):
        ent[i * n + n - 1] = -f.coeffs[i]
    for i in range(1, n):
        ent[i * n + i - 1] = 1
    return IntMatrix(n, n, ent)


def charpoly(M: IntMatrix) -> IntPoly:
    """Monic characteristic polynomial det(T*I - M) by the Berkowitz method.

    Division-free: every intermediate value is an integer.
    """
    if not M.is_square:
        raise ValueError("characteristic polynomial requires a square matrix")
    A = M.to_lists()
    n = M.rows
    p = [1]  # coefficients in descending powers of T
    for k in range(n):
        a = A[k][k]
        R = A[k][:k]
        C = [A[i][k] for i in range(k)]
        col = [1, -a]
        v = C
        for _ in range(k):
            col.append(-sum(r * x for r, x in zip(R, v)))
            v = [sum(A[i][j] * v[j] for j in range(k)) for i in range(k)]
        newp = [0] * (k + 2)
        for i in range(k + 2):
            s = 0
            for j in range(max(0, i - k - 1), min(i, k) + 1):
                s += col[i - j] * p[j]
            newp[i] = s
        p = newp
    return IntPoly(list(reversed(p)))


def _det_inplace(a: list[list[int]]) -> int:
    # Bareiss fraction-free elimination; consumes its argument.
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    sign, prev = 1, 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for t in range(i + 1, n):
                if a[t][i]:
                    a[i], a[t] = a[t], a[i]
                    sign = -sign
                    break
            else:
                return 0
        pii = a[i][i]
        rowi = a[i]
        for j in range(i + 1, n):
            rowj = a[j]
            aji = rowj[i]
            for kk in range(i + 1, n):
                rowj[kk] = (rowj[kk] * pii - aji * rowi[kk]) // prev
            rowj[i] = 0
        prev = pii
    return sign * a[n - 1][n - 1]


def compound_matrix(M: IntMatrix, r: int) -> IntMatrix:
    """The r-th compound (exterior power) matrix of a square matrix.

    Rows and columns are indexed by the lexicographically ordered r-element
    subsets of the row/column indices; entry (I, J) is the minor with rows I
    and columns J.  Its eigenvalues are the r-fold products of the eigenvalues
    of M.
    """
    if not M.is_square:
        raise ValueError("compound matrix requires a square matrix")
    s = M.rows
    if not 1 <= r <= s:
        raise ValueError(f"compound order must satisfy 1 <= r <= {s}")
    if r == 1:
        return M
    A = M.to_lists()
    subsets = list(itertools.combinations(range(s), r))
    ent = []
    for I in subsets:
        rowsI = [A[i] for i in I]
        for J in subsets:
            ent.append(_det_inplace([[row[j] for j in J] for row in rowsI]))
    m = len(subsets)
    return IntMatrix(m, m, ent)


# ---------------------------------------------------------------------------
# gcd and squarefree structure (used by the numeric validation/oracle layers)

def _frac(f: IntPoly) -> list[Fraction]:
    return [Fraction(c) for c in f.coeffs]


def _fr_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fr_divmod(a: list[Fraction], b: list[Fraction]):
    if not b:
        raise ZeroDivisionError
    rem = list(a)
    q = [Fraction(0)] * max(0, len(rem) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(rem) - len(b), -1, -1):
        c = rem[i + len(b) - 1] * inv
        if c == 0:
            continue
        q[i] = c
        for j, bb in enumerate(b):
            rem[i + j] -= c * bb
    return _fr_trim(q), _fr_trim(rem)


def _fr_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _fr_trim(list(a)), _fr_trim(list(b))
    while b:
        _, r = _fr_divmod(a, b)
        a, b = b, r
    if a:
        inv = 1 / a[-1]
        a = [c * inv for c in a]  # monic normalization
    return a


def _fr_derivative(a: list[Fraction]) -> list[Fraction]:
    return _fr_trim([i * c for i, c in enumerate(a)][1:])


def _fr_to_primitive(a: list[Fraction]) -> IntPoly:
    if not a:
        return IntPoly()
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    content = 0
    for c in ints:
        content = gcd(content, c)
    if ints[-1] < 0:
        content = -content
    return IntPoly([c // content for c in ints])


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Greatest common divisor over the integers, primitive with positive
    leading coefficient."""
    if a.is_zero():
        return _fr_to_primitive(_frac(b))
    if b.is_zero():
        return _fr_to_primitive(_frac(a))
    return _fr_to_primitive(_fr_gcd(_frac(a), _frac(b)))


def squarefree_part(f: IntPoly) -> IntPoly:
    """The product of the distinct irreducible factors of f (primitive)."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return IntPoly([1])
    g = poly_gcd(f, f.derivative())
    q, _ = _fr_divmod(_frac(f), _frac(g))
    return _fr_to_primitive(q)


def squarefree_decomposition(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun decomposition: pairs (g, e) with the g squarefree, pairwise coprime,
    and prod g^e equal to f up to a rational constant.

    Primitive integer factors with positive leading coefficient are returned;
    only the root structure is preserved, not the content.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return []
    fa = _frac(f)
    da = _fr_derivative(fa)
    a = _fr_gcd(fa, da)
    b, _ = _fr_divmod(fa, a)
    c, _ = _fr_divmod(da, a)
    d = _fr_trim([x - y for x, y in itertools.zip_longest(c, _fr_derivative(b), fillvalue=Fraction(0))])
    out: list[tuple[IntPoly, int]] = []
    i = 1
    while len(b) > 1:
        g = _fr_gcd(b, d)
        if len(g) > 1:
            out.append((_fr_to_primitive(g), i))
        b, _ = _fr_divmod(b, g)
        c, _ = _fr_divmod(d, g)
        d = _fr_trim([x - y for x, y in itertools.zip_longest(c, _fr_derivative(b), fillvalue=Fraction(0))])
        i += 1
    assert sum(g.degree * e for g, e in out) == f.degree
    return out
