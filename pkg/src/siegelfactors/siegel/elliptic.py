"""Degree-1 oracle: q-expansions of Eisenstein series, Delta and the
normalized eigenforms f = Delta * E_(k-12) of the one-dimensional cusp spaces."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from operator import mul

import numpy as np

from .arith import bernoulli, primes_up_to

__all__ = [
    "eisenstein_q",
    "delta_from_eisenstein",
    "delta_product",
    "delta_q",
    "eigenform_q",
    "eigenform_prime_coefficients",
    "eigenform_coefficients",
    "ONE_DIMENSIONAL_CUSP_WEIGHTS",
]

ONE_DIMENSIONAL_CUSP_WEIGHTS = (12, 16, 18, 20, 22, 26)


def _sigma_table(n: int, r: int) -> list:
    out = [0] * (n + 1)
    for d in range(1, n + 1):
        dr = d ** r
        for m in range(d, n + 1, d):
            out[m] += dr
    return out


def eisenstein_q(k: int, n: int) -> list:
    """Coefficients 0..n of the normalized weight-k Eisenstein series (exact)."""
    c = -Fraction(2 * k) / bernoulli(k)
    sig = _sigma_table(n, k - 1)
    out = [Fraction(1)] + [c * sig[m] for m in range(1, n + 1)]
    return [int(x) if x.denominator == 1 else x for x in out]


def _mul_series(a: list, b: list, n: int) -> list:
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j in range(0, n + 1 - i):
                out[i + j] += x * b[j]
    return out


def delta_from_eisenstein(n: int) -> list:
    """(E4^3 - E6^2) / 1728, coefficients 0..n."""
    e4 = eisenstein_q(4, n)
    e6 = eisenstein_q(6, n)
    e4c = _mul_series(_mul_series(e4, e4, n), e4, n)
    e6s = _mul_series(e6, e6, n)
    return [Fraction(x - y, 1728) for x, y in zip(e4c, e6s)]


def delta_product(n: int) -> list:
    """q prod (1 - q^m)^24, coefficients 0..n, by direct expansion."""
    series = [0] * (n + 1)
    series[0] = 1
    for m in range(1, n + 1):
        for _ in range(24):
            for i in range(n, m - 1, -1):
                series[i] -= series[i - m]
    return [0] + series[:n]


@lru_cache(maxsize=None)
def delta_q(n: int) -> tuple:
    """tau(0..n) via Jacobi's identity prod (1 - q^m)^3 = sum (-1)^j (2j+1) q^(j(j+1)/2)."""
    cube = np.zeros(n + 1, dtype=object)
    cube[:] = 0
    j = 0
    while j * (j + 1) // 2 <= n:
        cube[j * (j + 1) // 2] = (-1) ** j * (2 * j + 1)
        j += 1
    support = [(i, int(c)) for i, c in enumerate(cube) if c]
    acc = np.zeros(n + 1, dtype=object)
    acc[:] = 0
    acc[0] = 1
    for _ in range(8):
        nxt = np.zeros(n + 1, dtype=object)
        nxt[:] = 0
        for shift, c in support:
            nxt[shift:] += c * acc[: n + 1 - shift]
        acc = nxt
    return tuple([0] + [int(x) for x in acc[:n]])


def eigenform_q(k: int, n: int) -> list:
    """Normalized eigenform Delta * E_(k-12) for weights with one-dimensional cusp space."""
    if k not in ONE_DIMENSIONAL_CUSP_WEIGHTS:
        raise ValueError(f"weight {k} does not have a one-dimensional cusp space")
    tau = list(delta_q(n))
    if k == 12:
        return tau
    return [int(x) for x in _mul_series(tau, eisenstein_q(k - 12, n), n)]


@lru_cache(maxsize=None)
def eigenform_prime_coefficients(k: int, n: int) -> dict:
    """a_f(p) for primes p <= n, each as one convolution sum."""
    if k not in ONE_DIMENSIONAL_CUSP_WEIGHTS:
        raise ValueError(f"weight {k} does not have a one-dimensional cusp space")
    tau = list(delta_q(n))
    if k == 12:
        return {p: tau[p] for p in primes_up_to(n)}
    e = [int(x) for x in eisenstein_q(k - 12, n)]
    out = {}
    for p in primes_up_to(n):
        out[p] = sum(map(mul, tau[1: p + 1], reversed(e[: p])))
    return out


def eigenform_coefficients(k: int, n: int) -> list:
    """a_f(0..n) by multiplicativity from the prime coefficients."""
    ap = eigenform_prime_coefficients(k, n)
    a = [0] * (n + 1)
    a[1] = 1
    for p in ap:
        # prime powers by the Hecke recursion
        pk, prev, cur = p, 1, ap[p]
        while pk <= n:
            a[pk] = cur
            prev, cur = cur, ap[p] * cur - p ** (k - 1) * prev
            pk *= p
    for m in range(2, n + 1):
        if a[m] or m in ap:
            continue
        # m = p^e * rest with gcd 1
        p = next(q for q in ap if m % q == 0)
        pe = 1
        while m % (pe * p) == 0:
            pe *= p
        if pe != m:
            a[m] = a[pe] * a[m // pe]
    return a
