"""Shared helpers: seeded random generators for valid Weil polynomials."""

from __future__ import annotations

import random
from math import isqrt

from tatecycles.polycore import IntPoly
from tatecycles.weil import (
    WeilPoly,
    WeilValidationError,
    product_variety,
    validate_weil,
    weil_from_trace,
)

SEED = 20260810


def _prime_powers(limit: int) -> list[int]:
    def is_pp(q):
        for p in range(2, q + 1):
            if p * p > q and q > 1:
                return True  # prime
            if q % p == 0:
                while q % p == 0:
                    q //= p
                return q == 1
        return False

    return [q for q in range(2, limit + 1) if is_pp(q)]


PRIME_POWERS_97 = _prime_powers(97)


def random_elliptic(rng: random.Random, q: int) -> WeilPoly:
    amax = isqrt(4 * q)
    return weil_from_trace(rng.randint(-amax, amax), q)


def random_quartic(rng: random.Random, q: int) -> WeilPoly | None:
    """Rejection-sample a symmetric quartic through the full validation gate;
    not every draw is a Weil polynomial."""
    amax = 4 * isqrt(q) + 1
    for _ in range(60):
        a = rng.randint(-amax, amax)
        b = rng.randint(-6 * q, 6 * q)
        f = IntPoly([q * q, q * a, b, a, 1])
        try:
            return validate_weil(f, q)
        except WeilValidationError:
            continue
    return None


def random_weil(rng: random.Random, d_max: int = 3, q_max: int = 97) -> WeilPoly:
    """A random valid Weil polynomial: products of elliptic factors over a
    common q, with symmetric quartic factors mixed in."""
    q = rng.choice([qq for qq in PRIME_POWERS_97 if qq <= q_max])
    d = rng.randint(1, d_max)
    w = None
    remaining = d
    if remaining >= 2 and rng.random() < 0.4:
        quartic = random_quartic(rng, q)
        if quartic is not None:
            w = quartic
            remaining -= 2
    while remaining > 0:
        factor = random_elliptic(rng, q)
        w = factor if w is None else product_variety(w, factor)
        remaining -= 1
    return w


def instance_suite(count: int, d_max: int = 3, q_max: int = 97, seed: int = SEED) -> list[WeilPoly]:
    rng = random.Random(seed)
    return [random_weil(rng, d_max=d_max, q_max=q_max) for _ in range(count)]
