"""Elementary arithmetic: Bernoulli numbers, divisor sums, Kronecker symbols,
fundamental discriminants and Cohen's function H(r, N)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt

__all__ = [
    "bernoulli",
    "bernoulli_poly",
    "divisors",
    "sigma",
    "mobius",
    "factorize",
    "kronecker",
    "fundamental_part",
    "is_fundamental_discriminant",
    "generalized_bernoulli",
    "dirichlet_l_negative",
    "cohen_h",
    "zeta_negative",
    "primes_up_to",
]


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number with B_1 = -1/2."""
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    return -sum(comb(n + 1, j) * bernoulli(j) for j in range(n)) / (n + 1)


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    return sum(comb(n, j) * bernoulli(j) * x ** (n - j) for j in range(n + 1))


def zeta_negative(m: int) -> Fraction:
    """zeta(1 - m) = -B_m / m for m >= 2, zeta(0) = -1/2."""
    if m == 1:
        return Fraction(-1, 2)
    return -bernoulli(m) / m


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple:
    """Prime factorization of |n| as ((p, e), ...)."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list:
    out = [1]
    for p, e in factorize(n):
        out = [d * p ** i for d in out for i in range(e + 1)]
    return sorted(out)


def sigma(n: int, r: int) -> int:
    return sum(d ** r for d in divisors(n))


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def primes_up_to(n: int) -> list:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, f in enumerate(sieve) if f]


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
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


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D / n) for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * _jacobi(D, n)


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return all(e == 1 for _, e in factorize(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and all(e == 1 for _, e in factorize(m))
    return False


@lru_cache(maxsize=None)
def fundamental_part(D: int) -> tuple:
    """(D0, f) with D = D0 * f**2 and D0 a fundamental discriminant (D = 0, 1 mod 4)."""
    if D % 4 not in (0, 1) or D == 0:
        raise ValueError(f"{D} is not a nonzero discriminant")
    sign = -1 if D < 0 else 1
    square = 1
    core = sign
    for p, e in factorize(D):
        square *= p ** (e // 2)
        if e % 2:
            core *= p
    D0 = core if core % 4 == 1 else 4 * core
    f2 = D // D0
    f = isqrt(f2)
    if f * f != f2:
        raise ValueError(f"{D} has no fundamental decomposition")
    return D0, f


@lru_cache(maxsize=None)
def generalized_bernoulli(r: int, D: int) -> Fraction:
    """B_{r, chi_D} = |D|**(r-1) * sum_{a=1}^{|D|} chi_D(a) B_r(a/|D|)."""
    m = abs(D)
    total = Fraction(0)
    for a in range(1, m + 1):
        c = kronecker(D, a)
        if c:
            total += c * bernoulli_poly(r, Fraction(a, m))
    return Fraction(m) ** (r - 1) * total


def dirichlet_l_negative(r: int, D: int) -> Fraction:
    """L(1 - r, chi_D) = -B_{r, chi_D} / r."""
    if D == 1:
        return zeta_negative(r)
    return -generalized_bernoulli(r, D) / r


@lru_cache(maxsize=None)
def cohen_h(r: int, N: int) -> Fraction:
    """Cohen's function H(r, N) for N >= 0 (zero unless N = 0, 3 mod 4)."""
    if N == 0:
        return zeta_negative(2 * r)
    if N % 4 not in (0, 3):
        return Fraction(0)
    D0, f = fundamental_part(-N)
    total = 0
    for d in divisors(f):
        mu = mobius(d)
        if mu:
            total += Fraction(mu * kronecker(D0, d)) * Fraction(d) ** (r - 1) * sigma(f // d, 2 * r - 1)
    return dirichlet_l_negative(r, D0) * total
