"""Weil polynomial model.

A Weil polynomial here is the monic characteristic polynomial det(T - Frob) of
Frobenius acting on H^1 of an abelian variety over a field with q elements:
integer coefficients, degree 2d, constant term q^d, and every complex root of
modulus sqrt(q).  The classical reciprocal form prod(1 - alpha_i T) is the
coefficient-reversed polynomial and is produced only at display time (see
``reciprocal_form``).

Validation is a two-stage gate: the functional equation is checked exactly in
integer arithmetic, and the root moduli are then checked numerically on the
squarefree part at configurable precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mp

from .polycore import (
    IntPoly,
    charpoly,
    companion,
    compound_matrix,
    squarefree_decomposition,
    squarefree_part,
)

__all__ = [
    "WeilPoly",
    "CohomPoly",
    "WeilValidationError",
    "validate_weil",
    "weil_from_trace",
    "product_variety",
    "h_charpoly",
    "base_change",
    "reciprocal_form",
    "complex_roots",
]

DEFAULT_ROOT_PRECISION_BITS = 128
# absolute tolerance on |alpha|^2 - q, scaled by q
ROOT_MODULUS_TOL_BITS = 64


class WeilValidationError(ValueError):
    """Validation failure; ``reason`` is the name of the violated invariant.

    Reasons: NotPrimePower, NotMonic, OddDegree, FunctionalEquationFails,
    RootModulusFails.
    """

    def __init__(self, reason: str, detail: str):
        self.reason = reason
        super().__init__(f"{reason}: {detail}")


@dataclass(frozen=True)
class WeilPoly:
    """Validated Weil polynomial with field size q = p^e and dimension d."""

    poly: IntPoly
    q: int
    p: int
    d: int

    def __repr__(self) -> str:
        return f"WeilPoly({self.poly.pretty()}, q={self.q}, d={self.d})"


@dataclass(frozen=True)
class CohomPoly:
    """Characteristic polynomial of Frobenius on H^r; roots have modulus q^(r/2)."""

    poly: IntPoly
    r: int
    q: int

    @property
    def weight(self) -> int:
        return self.r

    def __repr__(self) -> str:
        return f"CohomPoly({self.poly.pretty()}, r={self.r}, q={self.q})"


def _prime_power_split(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p^e, or None if q is not a prime power."""
    if q < 2:
        return None
    p = None
    if q % 2 == 0:
        p = 2
    else:
        f = 3
        while f * f <= q:
            if q % f == 0:
                p = f
                break
            f += 2
        else:
            return q, 1  # q itself is prime
    e, m = 0, q
    while m % p == 0:
        m //= p
        e += 1
    return (p, e) if m == 1 else None


def _coeff_bits(f: IntPoly) -> int:
    return max(abs(c).bit_length() for c in f.coeffs)


def complex_roots(f: IntPoly, precision_bits: int):
    """All complex roots of f with multiplicity, as mpmath complex numbers.

    Roots are found on the squarefree factors (so repeated roots do not
    degrade accuracy) and replicated according to the Yun multiplicities.
    Must be called inside an mp.workprec context at least as wide as
    ``precision_bits``.
    """
    roots = []
    for g, e in squarefree_decomposition(f):
        if g.degree == 0:
            continue
        desc = [mp.mpf(c) for c in reversed(g.coeffs)]
        found = mpmath.polyroots(desc, maxsteps=200, extraprec=precision_bits + _coeff_bits(g))
        for r in found:
            roots.extend([mp.mpc(r)] * e)
    assert len(roots) == f.degree
    return roots


def _root_moduli_ok(f: IntPoly, q: int, precision_bits: int) -> bool:
    work = max(precision_bits, 64) + _coeff_bits(f) + 2 * q.bit_length() + 32
    with mp.workprec(work):
        sf = squarefree_part(f)
        desc = [mp.mpf(c) for c in reversed(sf.coeffs)]
        roots = mpmath.polyroots(desc, maxsteps=200, extraprec=work)
        tol = mp.mpf(2) ** (-ROOT_MODULUS_TOL_BITS) * q
        return all(abs(abs(mp.mpc(r)) ** 2 - q) <= tol for r in roots)


def validate_weil(f: IntPoly, q: int, precision_bits: int = DEFAULT_ROOT_PRECISION_BITS) -> WeilPoly:
    """Validate f as a Weil q-polynomial and return the typed value.

    Checks, in order: q is a prime power, f is monic of positive even degree,
    constant term q^d, the exact functional equation
    T^{2d} f(q/T) = q^d f(T), and numerically that every root has modulus
    sqrt(q).

    >>> validate_weil(IntPoly([5, 0, 1]), 5).d
    1
    """
    pe = _prime_power_split(q)
    if pe is None:
        raise WeilValidationError("NotPrimePower", f"q = {q} is not a prime power")
    p, _ = pe
    if f.is_zero() or not f.is_monic():
        raise WeilValidationError("NotMonic", "leading coefficient must be 1")
    if f.degree < 2 or f.degree % 2:
        raise WeilValidationError("OddDegree", f"degree {f.degree} is not a positive even integer")
    d = f.degree // 2
    c = f.coeffs
    if c[0] != q**d:
        raise WeilValidationError(
            "FunctionalEquationFails", f"constant term {c[0]} != q^d = {q**d}"
        )
    # coefficient form of T^{2d} f(q/T) = q^d f(T):  c_j = q^{d-j} c_{2d-j}
    for j in range(d + 1):
        if c[j] != q ** (d - j) * c[2 * d - j]:
            raise WeilValidationError(
                "FunctionalEquationFails",
                f"coefficient {j}: {c[j]} != q^{d - j} * {c[2 * d - j]}",
            )
    if not _root_moduli_ok(f, q, precision_bits):
        raise WeilValidationError("RootModulusFails", f"some root does not have modulus sqrt({q})")
    return WeilPoly(poly=f, q=q, p=p, d=d)


def weil_from_trace(a: int, q: int) -> WeilPoly:
    """The elliptic Weil polynomial T^2 - aT + q; the Hasse bound a^2 <= 4q is
    checked exactly, so no numerics are involved."""
    pe = _prime_power_split(q)
    if pe is None:
        raise WeilValidationError("NotPrimePower", f"q = {q} is not a prime power")
    if a * a > 4 * q:
        raise WeilValidationError("RootModulusFails", f"|{a}| exceeds the Hasse bound 2*sqrt({q})")
    return WeilPoly(poly=IntPoly([q, -a, 1]), q=q, p=pe[0], d=1)


def product_variety(a: WeilPoly, b: WeilPoly) -> WeilPoly:
    """Weil polynomial of a product variety: H^1 adds, so polynomials multiply."""
    if a.q != b.q:
        raise ValueError(f"field sizes differ: {a.q} != {b.q}")
    return WeilPoly(poly=a.poly * b.poly, q=a.q, p=a.p, d=a.d + b.d)


@lru_cache(maxsize=1024)
def _subset_product_charpoly(coeffs: tuple[int, ...], r: int) -> IntPoly:
    f = IntPoly(coeffs)
    return charpoly(compound_matrix(companion(f), r))


def h_charpoly(w: WeilPoly, r: int) -> CohomPoly:
    """Characteristic polynomial of Frobenius on H^r.

    Its roots are exactly the products of r distinct-index H^1 eigenvalues
    (the eigenvalues of the r-th compound of the companion matrix); degree
    binom(2d, r).  r = 0 gives T - 1.
    """
    if not 0 <= r <= 2 * w.d:
        raise ValueError(f"cohomology degree r = {r} out of range 0..{2 * w.d}")
    if r == 0:
        return CohomPoly(poly=IntPoly([-1, 1]), r=0, q=w.q)
    return CohomPoly(poly=_subset_product_charpoly(w.poly.coeffs, r), r=r, q=w.q)


def base_change(w: WeilPoly, n: int) -> WeilPoly:
    """Weil polynomial over the degree-n extension: roots are the alpha_i^n.

    Computed as the characteristic polynomial of the exact n-th power of the
    companion matrix.

    >>> base_change(weil_from_trace(0, 5), 2).poly
    IntPoly('T^2 + 10T + 25')
    """
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if n == 1:
        return w
    f = charpoly(companion(w.poly).pow(n))
    return WeilPoly(poly=f, q=w.q**n, p=w.p, d=w.d)


def reciprocal_form(f: IntPoly) -> IntPoly:
    """Reciprocal-root convention prod(1 - alpha_i T): the reversed coefficients.

    Display-only; every computation in this package uses the monic form.
    """
    return f.reciprocal()
