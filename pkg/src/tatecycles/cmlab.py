"""Desk-scale surveys over the rational primes.

E x E surveys for CM and non-CM elliptic curves (Tate-class ranks over the
prime field and over the algebraic closure), splitting densities, empirical
least-non-split primes, and prime-ideal counts for imaginary and real
quadratic fields.

Frobenius traces for the nine class-number-one CM discriminants come from
Cornacchia-style representations; only |a_p| is used, since all of the
degree-2 eigenvalue products feeding the E x E ranks are invariant under
negating both H^1 roots.  Naive point counting over F_p provides the
independent trace oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt

import mpmath
from mpmath import mp

from .bounds import RATIONALS, BoundReport, FieldParams, least_nonsplit_bound
from .tate import stable_tate_dim, tate_dim
from .weil import product_variety, weil_from_trace

__all__ = [
    "BudgetExceededError",
    "InternalError",
    "EllipticCurve",
    "SurveyRow",
    "DensityReport",
    "NonCmReport",
    "NonSplitResult",
    "PiKResult",
    "CLASS_NUMBER_ONE_DISCS",
    "primes_up_to",
    "kronecker_symbol",
    "kronecker",
    "fundamental_discriminant",
    "is_fundamental_discriminant",
    "fundamental_discriminants",
    "ap_pointcount",
    "ap_cm",
    "exe_survey",
    "noncm_rank_check",
    "least_nonsplit_search",
    "pi_K_count",
]

CLASS_NUMBER_ONE_DISCS = (-3, -4, -7, -8, -11, -19, -43, -67, -163)

POINTCOUNT_BUDGET = 10**6
SURVEY_BUDGET = 10**7
NONCM_BUDGET = 10**4
PIK_BUDGET = 10**8


class BudgetExceededError(Exception):
    """A requested computation exceeds the naive-enumeration budget."""


class InternalError(Exception):
    """An invariant that should hold for valid inputs failed."""


# ---------------------------------------------------------------------------
# primes and quadratic symbols

def primes_up_to(n: int) -> list[int]:
    """All primes <= n (simple byte sieve)."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start:n + 1:p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, v in enumerate(sieve) if v]


def _prime_stream():
    yield 2
    n = 3
    while True:
        if is_prime(n):
            yield n
        n += 2


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def kronecker_symbol(a: int, n: int) -> int:
    """The Kronecker symbol (a|n)."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _squarefree_part(n: int) -> int:
    """Largest squarefree divisor structure: n with all square factors removed,
    sign preserved."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    sign = -1 if n < 0 else 1
    m = abs(n)
    out = 1
    for p in itertools.chain((2,), itertools.count(3, 2)):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e % 2:
                out *= p
    return sign * out * m


def fundamental_discriminant(D: int) -> int:
    """Discriminant of Q(sqrt(D)): the squarefree part s of D if s = 1 mod 4,
    otherwise 4s."""
    if D == 0:
        raise ValueError("D must be nonzero")
    s = _squarefree_part(D)
    return s if s % 4 == 1 else 4 * s


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return _squarefree_part(D) == D
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree_part(m) == m
    return False


def fundamental_discriminants(limit: int) -> list[int]:
    """All fundamental discriminants with 1 < |D| <= limit, by |D| then sign."""
    out = []
    for a in range(2, limit + 1):
        for D in (-a, a):
            if is_fundamental_discriminant(D):
                out.append(D)
    return out


def kronecker(D: int, p: int) -> int:
    """Splitting of the prime p in Q(sqrt(D)): +1 split, -1 inert, 0 ramified.

    Computed as the Kronecker symbol of the fundamental discriminant of
    Q(sqrt(D)) at p.
    """
    if D == 0:
        raise ValueError("D must be nonzero")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return kronecker_symbol(fundamental_discriminant(D), p)


# ---------------------------------------------------------------------------
# square roots mod p and Cornacchia representations

def _sqrt_mod_p(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # p = 1 mod 4: Tonelli-Shanks
    t, s = p - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    g = pow(z, t, p)
    x = pow(a, (t + 1) // 2, p)
    b = pow(a, t, p)
    r = s
    while b != 1:
        m, bb = 0, b
        while bb != 1:
            bb = bb * bb % p
            m += 1
        w = pow(g, 1 << (r - m - 1), p)
        g = w * w % p
        x = x * w % p
        b = b * g % p
        r = m
    return x


def _cornacchia(d: int, p: int) -> tuple[int, int]:
    """Solve x^2 + d y^2 = p for an odd prime p with (-d|p) = 1, d >= 1."""
    r = _sqrt_mod_p(-d % p, p)
    if 2 * r < p:
        r = p - r
    a, b = p, r
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    t = p - b * b
    if t % d:
        raise InternalError(f"no representation x^2 + {d}y^2 = {p}")
    y2 = t // d
    y = isqrt(y2)
    if y * y != y2:
        raise InternalError(f"no representation x^2 + {d}y^2 = {p}")
    return b, y


def _cornacchia_4p(D: int, p: int) -> tuple[int, int]:
    """Solve x^2 + |D| y^2 = 4p for fundamental D < 0 and an odd prime p that
    splits in Q(sqrt(D))."""
    r = _sqrt_mod_p(D % p, p)
    if (r - D) % 2:
        r = p - r  # parity so that r^2 = D mod 4p
    a, b = 2 * p, r
    limit = isqrt(4 * p)
    while b > limit:
        a, b = b, a % b
    t = 4 * p - b * b
    if t % (-D):
        raise InternalError(f"no representation x^2 + {-D}y^2 = {4 * p}")
    y2 = t // (-D)
    y = isqrt(y2)
    if y * y != y2:
        raise InternalError(f"no representation x^2 + {-D}y^2 = {4 * p}")
    return b, y


# ---------------------------------------------------------------------------
# elliptic curves over Q and their traces

@dataclass(frozen=True)
class EllipticCurve:
    """Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
    with integer coefficients and nonzero discriminant."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    label: str = ""

    def __post_init__(self):
        if self.discriminant() == 0:
            raise ValueError("singular Weierstrass model (discriminant 0)")

    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants()
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @classmethod
    def parse(cls, text: str, label: str = "") -> "EllipticCurve":
        parts = [t.strip() for t in text.split(",")]
        if len(parts) != 5:
            raise ValueError("curve format is a1,a2,a3,a4,a6")
        try:
            a = [int(t) for t in parts]
        except ValueError as exc:
            raise ValueError(f"curve coefficients must be integers: {exc}") from None
        return cls(*a, label=label)


def ap_pointcount(E: EllipticCurve, p: int) -> int | None:
    """Frobenius trace a_p = p + 1 - #E(F_p) by direct enumeration, or None at
    a prime of bad reduction.

    For odd p the count uses the completed-square form and a quadratic-residue
    table; p = 2 enumerates the four affine points directly.
    """
    if p > POINTCOUNT_BUDGET:
        raise BudgetExceededError(f"point counting capped at p <= {POINTCOUNT_BUDGET}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if E.discriminant() % p == 0:
        return None
    if p == 2:
        affine = 0
        for x in range(2):
            for y in range(2):
                lhs = y * y + E.a1 * x * y + E.a3 * y
                rhs = x**3 + E.a2 * x * x + E.a4 * x + E.a6
                if (lhs - rhs) % 2 == 0:
                    affine += 1
        return 2 + 1 - (affine + 1)
    b2, b4, b6, _ = E.b_invariants()
    square = bytearray(p)
    for t in range((p // 2) + 1):
        square[t * t % p] = 1
    total = 0
    for x in range(p):
        g = (((4 * x + b2) * x + 2 * b4) * x + b6) % p
        if g:
            total += 1 if square[g] else -1
    return -total


def ap_cm(D: int, p: int) -> tuple[str, int]:
    """Splitting type and |a_p| for the CM elliptic curve with discriminant D.

    Inert primes are supersingular with a_p = 0.  Split primes are ordinary;
    |a_p| comes from the Cornacchia representation 4p = x^2 + |D| y^2, with
    the unit ambiguity for D = -4 and D = -3 resolved to the curves
    y^2 = x^3 + x and y^2 = x^3 + 1 (the odd component of p = x^2 + y^2,
    respectively the representation p = a^2 + 3 b^2).
    """
    if D not in CLASS_NUMBER_ONE_DISCS:
        raise ValueError(f"D must be one of {CLASS_NUMBER_ONE_DISCS}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if (2 * D) % p == 0:
        raise ValueError(f"p = {p} divides 2D")
    chi = kronecker(D, p)
    if chi == -1:
        return "supersingular", 0
    if D == -4:
        x, y = _cornacchia(1, p)
        odd = x if x % 2 else y
        a = 2 * odd
    elif D == -3:
        x, _ = _cornacchia(3, p)
        a = 2 * x
    else:
        x, _ = _cornacchia_4p(D, p)
        a = x
    if a * a > 4 * p:
        raise InternalError(f"trace bound violated: {a}^2 > 4*{p}")
    return "ordinary", a


# ---------------------------------------------------------------------------
# surveys

@dataclass(frozen=True)
class SurveyRow:
    """One prime of an E x E survey."""

    p: int
    kronecker: int | None
    a_p: int | None
    reduction_type: str  # ordinary | supersingular | bad-or-excluded | bad
    rank_base: int | None
    rank_stable: int | None
    stable_degree: int | None

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "kronecker": self.kronecker,
            "a_p": self.a_p,
            "reduction_type": self.reduction_type,
            "rank_base": self.rank_base,
            "rank_stable": self.rank_stable,
            "stable_degree": self.stable_degree,
        }


@dataclass(frozen=True)
class DensityReport:
    p_max: int
    counts: tuple[tuple[str, int], ...]
    fractions: tuple[tuple[str, float], ...]
    reference_fraction: float

    def to_record(self) -> dict:
        return {
            "p_max": self.p_max,
            "counts": dict(self.counts),
            "fractions": {k: repr(v) for k, v in self.fractions},
            "reference_fraction": repr(self.reference_fraction),
        }


def _exe_ranks(a: int, p: int) -> tuple[int, int, int]:
    """Tate ranks in codimension 1 for E x E with trace a over F_p."""
    e = weil_from_trace(a, p)
    w = product_variety(e, e)
    rank_base = tate_dim(w, 1, 1)
    rank_stable, stable_degree = stable_tate_dim(w, 1)
    return rank_base, rank_stable, stable_degree


def exe_survey(D: int, p_max: int) -> tuple[list[SurveyRow], DensityReport]:
    """Survey E x E for the CM curve of discriminant D over every prime
    p <= p_max.

    Good primes (p >= 5, p not dividing D) get exact ranks over the prime
    field and over the algebraic closure; p = 2, 3 and divisors of D are
    excluded from the density denominators.
    """
    if D not in CLASS_NUMBER_ONE_DISCS:
        raise ValueError(f"D must be one of {CLASS_NUMBER_ONE_DISCS}")
    if p_max > SURVEY_BUDGET:
        raise BudgetExceededError(f"survey capped at p_max <= {SURVEY_BUDGET}")
    rows = []
    n_split = n_inert = n_excluded = n_rank4 = n_rank6 = 0
    for p in primes_up_to(p_max):
        chi = kronecker(D, p)
        if p in (2, 3) or D % p == 0:
            rows.append(SurveyRow(p, chi, None, "bad-or-excluded", None, None, None))
            n_excluded += 1
            continue
        typ, a = ap_cm(D, p)
        rank_base, rank_stable, stable_degree = _exe_ranks(a, p)
        rows.append(SurveyRow(p, chi, a, typ, rank_base, rank_stable, stable_degree))
        if chi == 1:
            n_split += 1
        else:
            n_inert += 1
        if rank_stable == 4:
            n_rank4 += 1
        elif rank_stable == 6:
            n_rank6 += 1
    good = n_split + n_inert
    counts = (
        ("split", n_split),
        ("inert", n_inert),
        ("excluded", n_excluded),
        ("rank_stable_4", n_rank4),
        ("rank_stable_6", n_rank6),
    )
    fractions = (
        ("split", n_split / good if good else 0.0),
        ("inert", n_inert / good if good else 0.0),
    )
    density = DensityReport(p_max=p_max, counts=counts, fractions=fractions, reference_fraction=0.5)
    return rows, density


@dataclass(frozen=True)
class NonCmReport:
    curve: EllipticCurve
    p_max: int
    rows: tuple[SurveyRow, ...]
    all_rank_base_4: bool
    exceptional_primes: tuple[int, ...]  # good primes with stable rank > 4


def noncm_rank_check(E: EllipticCurve, p_max: int) -> NonCmReport:
    """Check that E x E has Tate rank exactly 4 over every good prime field
    p <= p_max, and report the sporadic primes whose stable rank exceeds 4
    (root-of-unity eigenvalue ratios, possible at tiny primes)."""
    if p_max > NONCM_BUDGET:
        raise BudgetExceededError(f"non-CM sweep capped at p_max <= {NONCM_BUDGET}")
    rows = []
    exceptional = []
    all4 = True
    for p in primes_up_to(p_max):
        a = ap_pointcount(E, p)
        if a is None:
            rows.append(SurveyRow(p, None, None, "bad", None, None, None))
            continue
        typ = "supersingular" if a % p == 0 else "ordinary"
        rank_base, rank_stable, stable_degree = _exe_ranks(a, p)
        rows.append(SurveyRow(p, None, a, typ, rank_base, rank_stable, stable_degree))
        if rank_base != 4:
            all4 = False
        if rank_stable > 4:
            exceptional.append(p)
    return NonCmReport(
        curve=E,
        p_max=p_max,
        rows=tuple(rows),
        all_rank_base_4=all4,
        exceptional_primes=tuple(exceptional),
    )


# ---------------------------------------------------------------------------
# least non-split prime and prime-ideal counting

@dataclass(frozen=True)
class NonSplitResult:
    D: int
    found_prime: int
    bound: BoundReport
    satisfied: bool

    @property
    def theoretical_log_bound(self):
        return self.bound.log_value


def least_nonsplit_search(D: int, fp: FieldParams = RATIONALS, c=1) -> NonSplitResult:
    """Least unramified rational prime that does not split in Q(sqrt(D)),
    together with the theoretical norm bound (relative degree 2 over the
    rationals) and whether the found prime satisfies it."""
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    found = None
    for p in _prime_stream():
        if kronecker_symbol(D, p) == -1:
            found = p
            break
    with mp.workprec(256):
        log_d_L = mp.log(abs(D))
        report = least_nonsplit_bound(fp, log_d_L, n=2, c=c)
        satisfied = mp.log(found) <= report.log_value
    return NonSplitResult(D=D, found_prime=found, bound=report, satisfied=bool(satisfied))


@dataclass(frozen=True)
class PiKResult:
    D: int
    x: int
    count: int
    li_x: float
    ratio: float | None

    def to_record(self) -> dict:
        return {
            "D": self.D,
            "x": self.x,
            "count": self.count,
            "li_x": repr(self.li_x),
            "ratio": repr(self.ratio) if self.ratio is not None else None,
        }


def pi_K_count(D: int, x: int) -> PiKResult:
    """Number of prime ideals of Q(sqrt(D)) of norm <= x, with the
    logarithmic-integral comparison.

    Split rational primes p <= x contribute two ideals of norm p, ramified
    primes one, and inert primes one ideal of norm p^2 (counted when
    p^2 <= x).
    """
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    if x > PIK_BUDGET:
        raise BudgetExceededError(f"prime-ideal counting capped at x <= {PIK_BUDGET}")
    count = 0
    for p in primes_up_to(x):
        chi = kronecker_symbol(D, p)
        if chi == 1:
            count += 2
        elif chi == 0:
            count += 1
        elif p * p <= x:
            count += 1
    li = float(mpmath.li(x, offset=True)) if x >= 2 else float("-inf")
    ratio = count / li if li > 0 else None
    return PiKResult(D=D, x=x, count=count, li_x=li, ratio=ratio)
