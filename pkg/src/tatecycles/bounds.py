"""Effective bounds, evaluated in natural-log space at high precision.

The absolute effective constants that the underlying estimates leave
unspecified are exposed as parameters (default 1) and echoed in every report,
so the formulas are runnable without inventing constants.  Factorials and
powers of two are exact integers; everything else is mpmath real arithmetic
at a per-call working precision (default 256 bits).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from mpmath import mp

__all__ = [
    "FieldParams",
    "BoundReport",
    "RATIONALS",
    "f_of_K",
    "hensel_log_disc",
    "hensel_galois_log_disc",
    "least_nonsplit_bound",
    "bound_B",
    "bound_C",
    "DEFAULT_PRECISION_BITS",
]

DEFAULT_PRECISION_BITS = 256
EXACT_VALUE_MAX_BITS = 4096
LOG_VALUE_DIGITS = 30

_EXCEPTIONAL_FLAGS = ("yes", "no", "unknown")


@dataclass(frozen=True)
class FieldParams:
    """Degree and log-discriminant of a number field K, with a three-valued
    exceptional-zero flag ("unknown" is treated as "yes" for upper bounds)."""

    n_K: int
    log_abs_disc: object = 0  # int/float/mpf, natural log of |d_K|
    has_exceptional_zero: str = "no"

    def __post_init__(self):
        if self.n_K < 1:
            raise ValueError("field degree must be >= 1")
        if self.has_exceptional_zero not in _EXCEPTIONAL_FLAGS:
            raise ValueError(f"has_exceptional_zero must be one of {_EXCEPTIONAL_FLAGS}")
        if mp.mpf(self.log_abs_disc) < 0:
            raise ValueError("log |d_K| must be >= 0")
        if self.n_K == 1 and mp.mpf(self.log_abs_disc) != 0:
            raise ValueError("the rationals have |d_K| = 1, so log |d_K| must be 0")


RATIONALS = FieldParams(1, 0, "no")


@dataclass(frozen=True)
class BoundReport:
    """Log-space value of a named bound with every input echoed.

    ``exact_value`` is the integer ceiling of the bound when it fits in 4096
    bits (adjusted to the floor in the rare case the ceiling is more than a
    relative 1/exact_value away from the true value).
    """

    name: str
    inputs: tuple[tuple[str, str], ...]
    log_value: object  # mpf
    exact_value: int | None = None

    def log_value_str(self) -> str:
        return mp.nstr(self.log_value, LOG_VALUE_DIGITS)

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "inputs": dict(self.inputs),
            "log_value": self.log_value_str(),
            "exact_value": str(self.exact_value) if self.exact_value is not None else None,
        }


def _fp_inputs(fp: FieldParams) -> list[tuple[str, str]]:
    return [
        ("n_K", str(fp.n_K)),
        ("log_abs_disc_K", mp.nstr(mp.mpf(fp.log_abs_disc), LOG_VALUE_DIGITS)),
        ("has_exceptional_zero", fp.has_exceptional_zero),
    ]


def _exact_value(log_value) -> int | None:
    if log_value > EXACT_VALUE_MAX_BITS * mp.log(2):
        return None
    need = int(log_value / mp.log(2)) + 80
    with mp.workprec(max(need, mp.prec)):
        v = mp.exp(mp.mpf(log_value))
        c = int(mp.ceil(v))
        if c >= 1 and mp.log(c) - log_value > mp.mpf("1e-20") + mp.log1p(mp.mpf(1) / c):
            c = int(mp.floor(v))
    return c


def f_of_K(fp: FieldParams, precision_bits: int = DEFAULT_PRECISION_BITS):
    """The field constant: n_K^2 without an exceptional zero, otherwise
    max(n_K! * log|d_K|, |d_K|^{1/n_K}) + n_K^2.

    f of the rationals is exactly 1.
    """
    with mp.workprec(precision_bits):
        nk = fp.n_K
        if fp.has_exceptional_zero == "no":
            return mp.mpf(nk * nk)
        logd = mp.mpf(fp.log_abs_disc)
        a = factorial(nk) * logd
        b = mp.exp(logd / nk)
        return (a if a > b else b) + nk * nk


def _check_primes(ps) -> list[int]:
    out = sorted(set(ps))
    for p in out:
        if p < 2 or any(p % f == 0 for f in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
    return out


def hensel_log_disc(n_L: int, ramified_primes, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Upper bound for log d_L from the degree and the ramified primes:
    (n_L - 1) * sum log p + n_L * log(n_L) * #primes."""
    if n_L < 1:
        raise ValueError("degree must be >= 1")
    ps = _check_primes(ramified_primes)
    with mp.workprec(precision_bits):
        total = (n_L - 1) * mp.fsum(mp.log(p) for p in ps)
        total += n_L * mp.log(n_L) * len(ps)
        return total


def hensel_galois_log_disc(
    n_L: int,
    n_K: int,
    log_d_K,
    ramified_primes_over_K,
    precision_bits: int = DEFAULT_PRECISION_BITS,
):
    """Sharper bound when L/K is Galois:
    (n_L - n_K) * sum log p + n_L * (log n_L - log n_K) + (n_L/n_K) * log d_K."""
    if n_K < 1 or n_L < 1:
        raise ValueError("degrees must be >= 1")
    if n_L % n_K:
        raise ValueError(f"n_K = {n_K} does not divide n_L = {n_L}")
    ps = _check_primes(ramified_primes_over_K)
    with mp.workprec(precision_bits):
        total = (n_L - n_K) * mp.fsum(mp.log(p) for p in ps)
        total += n_L * (mp.log(n_L) - mp.log(n_K))
        total += mp.mpf(n_L) / n_K * mp.mpf(log_d_K)
        return total


def least_nonsplit_bound(
    fp: FieldParams,
    log_d_L,
    n: int,
    c=1,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> BoundReport:
    """Norm bound for a degree-1 prime of K that does not split completely in
    a degree-n Galois extension L/K: max(55, e^{c f(K)} |d_L|^{5/(2(n-1))}).

    Both branches and the active one are echoed in the report.
    """
    if n < 2:
        raise ValueError("relative degree must be >= 2")
    with mp.workprec(precision_bits):
        fk = f_of_K(fp, precision_bits)
        log_formula = mp.mpf(c) * fk + mp.mpf(5) / (2 * (n - 1)) * mp.mpf(log_d_L)
        log_const = mp.log(55)
        active = "formula" if log_formula > log_const else "constant_55"
        log_value = log_formula if log_formula > log_const else log_const
        inputs = _fp_inputs(fp) + [
            ("log_abs_disc_L", mp.nstr(mp.mpf(log_d_L), LOG_VALUE_DIGITS)),
            ("n", str(n)),
            ("c", mp.nstr(mp.mpf(c), LOG_VALUE_DIGITS)),
            ("constants_pinned", "no"),  # c is an unspecified absolute constant
            ("f_K", mp.nstr(fk, LOG_VALUE_DIGITS)),
            ("branch_constant_log", mp.nstr(log_const, LOG_VALUE_DIGITS)),
            ("branch_formula_log", mp.nstr(log_formula, LOG_VALUE_DIGITS)),
            ("active_branch", active),
        ]
        return BoundReport(
            name="least_nonsplit_bound",
            inputs=tuple(inputs),
            log_value=log_value,
            exact_value=_exact_value(log_value),
        )


def _log_B(N, fp: FieldParams, m: int, d: int, precision_bits: int = DEFAULT_PRECISION_BITS):
    """log of e^{f(K)} N^{m n_K d^2} (f(K) + n_K log N)^{m n_K d^2 + 1}.

    N may be a positive real: the formula only uses N through log N.  The
    final log factor is clamped below at 0 when its argument drops under 1,
    which keeps the bound a total function for pathological parameters.
    """
    NN = mp.mpf(N)
    if NN <= 0:
        raise ValueError("conductor argument must be positive")
    fk = f_of_K(fp, precision_bits)
    exponent = m * fp.n_K * d * d
    logN = mp.log(NN)
    inner = fk + fp.n_K * logN
    log_inner = mp.log(inner) if inner > 1 else mp.mpf(0)
    return fk + exponent * logN + (exponent + 1) * log_inner, fk


def bound_B(
    N,
    fp: FieldParams,
    m: int,
    d: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> BoundReport:
    """The norm cutoff B(N, K, m, d): checking that Frobenius elements of norm
    up to (a constant power of) B act as scalars on a compatible family of
    conductor N, field degree m and dimension d certifies that the whole
    Galois group acts as scalars.

    >>> r = bound_B(2, RATIONALS, 1, 1)
    >>> 15.5 < float(mp.exp(r.log_value)) < 15.7
    True
    """
    if m < 1 or d < 1:
        raise ValueError("m and d must be >= 1")
    with mp.workprec(precision_bits):
        log_value, fk = _log_B(N, fp, m, d, precision_bits)
        inputs = [
            ("N", mp.nstr(mp.mpf(N), LOG_VALUE_DIGITS)),
            ("m", str(m)),
            ("d", str(d)),
        ] + _fp_inputs(fp) + [("f_K", mp.nstr(fk, LOG_VALUE_DIGITS))]
        return BoundReport(
            name="bound_B",
            inputs=tuple(inputs),
            log_value=log_value,
            exact_value=_exact_value(log_value),
        )


def bound_C(
    N,
    d: int,
    log_d_F,
    fp: FieldParams,
    c=1,
    c1=1,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> BoundReport:
    """The headline cutoff C = c1 * B(2^{4d} (2d+1)! N log d_F, K, (2d)!, 2^{2d})^c:
    to certify that a cohomology class on a CM abelian variety (dimension d,
    conductor N, multiplication field F) is a Tate class, it suffices to check
    the Frobenius action at primes of norm up to C.

    The composite first argument of B is a real number; factorials and the
    powers of two are exact.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    with mp.workprec(precision_bits):
        ldf = mp.mpf(log_d_F)
        if ldf <= 0:
            raise ValueError("log |d_F| must be positive")
        n_prime = mp.mpf(2 ** (4 * d)) * factorial(2 * d + 1) * mp.mpf(N) * ldf
        log_b, fk = _log_B(n_prime, fp, factorial(2 * d), 2 ** (2 * d), precision_bits)
        log_value = mp.log(mp.mpf(c1)) + mp.mpf(c) * log_b
        inputs = [
            ("N", mp.nstr(mp.mpf(N), LOG_VALUE_DIGITS)),
            ("d", str(d)),
            ("log_abs_disc_F", mp.nstr(ldf, LOG_VALUE_DIGITS)),
            ("c", mp.nstr(mp.mpf(c), LOG_VALUE_DIGITS)),
            ("c1", mp.nstr(mp.mpf(c1), LOG_VALUE_DIGITS)),
            ("constants_pinned", "no"),  # c, c1 are unspecified absolute constants
            ("B_first_argument", mp.nstr(n_prime, LOG_VALUE_DIGITS)),
            ("B_m", str(factorial(2 * d))),
            ("B_d", str(2 ** (2 * d))),
            ("log_B", mp.nstr(log_b, LOG_VALUE_DIGITS)),
        ] + _fp_inputs(fp) + [("f_K", mp.nstr(fk, LOG_VALUE_DIGITS))]
        return BoundReport(
            name="bound_C",
            inputs=tuple(inputs),
            log_value=log_value,
            exact_value=_exact_value(log_value),
        )
