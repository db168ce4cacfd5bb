"""Siegel Eisenstein series of degree 2 via Cohen's function.

For a definite index T with discriminant D = 4 det T and content e,

    a(T) = 2 / (zeta(1-k) zeta(3-2k)) * sum_{d | e} d^(k-1) H(k-1, D/d^2),

and the rank-1 coefficients are those of the elliptic Eisenstein series
-2k/B_k sigma_{k-1}(n).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import bernoulli, cohen_h, divisors, sigma, zeta_negative
from .forms import FourierExpansion, UnsupportedWeight, reduced_forms

__all__ = ["eisenstein_coefficient", "eisenstein_expansion", "elliptic_eisenstein_coefficient"]


def elliptic_eisenstein_coefficient(k: int, n: int) -> Fraction:
    """n-th coefficient of the normalized degree-1 Eisenstein series of weight k."""
    if n == 0:
        return Fraction(1)
    return -Fraction(2 * k) / bernoulli(k) * sigma(n, k - 1)


@lru_cache(maxsize=None)
def eisenstein_coefficient(k: int, a: int, b: int, c: int) -> Fraction:
    disc = 4 * a * c - b * b
    if disc < 0:
        raise ValueError("index is not positive semi-definite")
    if disc == 0:
        return elliptic_eisenstein_coefficient(k, gcd(gcd(a, b), c))
    scale = Fraction(2) / (zeta_negative(k) * zeta_negative(2 * k - 2))
    e = gcd(gcd(a, b), c)
    return scale * sum(Fraction(d) ** (k - 1) * cohen_h(k - 1, disc // (d * d)) for d in divisors(e))


def eisenstein_expansion(k: int, det_bound) -> FourierExpansion:
    if k % 2 or k < 4:
        raise UnsupportedWeight(f"Eisenstein series needs even weight >= 4, got {k}")
    coeffs = {}
    for key in reduced_forms(det_bound):
        v = eisenstein_coefficient(k, *key)
        if v:
            coeffs[key] = v
    return FourierExpansion(k, det_bound, coeffs, name=f"E{k}")
