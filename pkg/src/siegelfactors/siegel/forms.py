"""Half-integral binary forms, GL2(Z) reduction and Fourier expansion containers.

A form ``(a, b, c)`` stands for the matrix [[a, b/2], [b/2, c]]. Its
discriminant ``4ac - b^2`` is four times the determinant. Fourier coefficients
of even-weight full-level forms are invariant under S -> tU S U for every
U in GL2(Z), so expansions store only reduced representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Callable, Iterator

__all__ = [
    "InsufficientPrecision",
    "UnsupportedWeight",
    "HalfIntegralForm",
    "reduce_form",
    "reduced_forms",
    "disc_bound_of",
    "FourierExpansion",
    "transform",
]


class InsufficientPrecision(ValueError):
    """The stored coefficient window is too small for the requested computation."""


class UnsupportedWeight(ValueError):
    pass


@lru_cache(maxsize=1 << 20)
def reduce_form(a: int, b: int, c: int) -> tuple:
    """Canonical GL2(Z) representative of a positive semi-definite form.

    Definite forms map to 0 <= b <= a <= c. Rank-1 forms map to (g, 0, 0) where
    g is the content, and the zero form maps to itself.
    """
    disc = 4 * a * c - b * b
    if disc < 0 or a < 0 or c < 0:
        raise ValueError(f"form {(a, b, c)} is not positive semi-definite")
    if disc == 0:
        return (gcd(gcd(a, b), c), 0, 0)
    while True:
        if a > c:
            a, c = c, a
        if -a < b <= a:
            break
        # translate x -> x + k y to bring b into (-a, a]
        k = (a - b) // (2 * a)
        c = a * k * k + b * k + c
        b = b + 2 * a * k
    # y -> -y flips the sign of b
    return (a, abs(b), c)


def disc_bound_of(det_bound) -> int:
    """Largest discriminant 4ac - b^2 allowed by a determinant bound."""
    return int(4 * Fraction(det_bound))


def reduced_forms(det_bound) -> list:
    """All reduced forms with determinant at most ``det_bound``.

    Sorted by (discriminant, a, b, c). Rank-1 representatives (n, 0, 0) have
    determinant zero and appear for 0 <= n <= det_bound, which covers every
    rank-1 form dominated by a stored definite one.
    """
    dmax = disc_bound_of(det_bound)
    out = [(0, 0, 0)] + [(n, 0, 0) for n in range(1, int(det_bound) + 1)]
    for a in range(1, isqrt(dmax // 3) + 1):
        for b in range(0, a + 1):
            c = a
            while 4 * a * c - b * b <= dmax:
                out.append((a, b, c))
                c += 1
    out.sort(key=lambda t: (4 * t[0] * t[2] - t[1] ** 2, t))
    return out


def transform(form: tuple, U) -> tuple:
    """The form tU S U for an integer matrix U = ((p, q), (r, s))."""
    a, b, c = form
    (p, q), (r, s) = U
    return (
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )


@dataclass(frozen=True)
class HalfIntegralForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if 4 * self.a * self.c - self.b ** 2 < 0:
            raise ValueError("form is not positive semi-definite")

    @property
    def disc(self) -> int:
        return 4 * self.a * self.c - self.b ** 2

    @property
    def det(self) -> Fraction:
        return Fraction(self.disc, 4)

    @property
    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def reduced(self) -> "HalfIntegralForm":
        return HalfIntegralForm(*reduce_form(self.a, self.b, self.c))

    def astuple(self) -> tuple:
        return (self.a, self.b, self.c)


@dataclass
class FourierExpansion:
    """Coefficients of a weight-k form on all reduced indices with det <= det_bound.

    ``coefficients`` maps reduced triples (a, b, c) to exact values (Fraction, or
    number-field elements for eigenforms). Absent keys inside the window are zero.
    """

    weight: int
    det_bound: Fraction
    coefficients: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.det_bound = Fraction(self.det_bound)

    @property
    def disc_bound(self) -> int:
        return disc_bound_of(self.det_bound)

    def in_window(self, form: tuple) -> bool:
        a, b, c = form
        disc = 4 * a * c - b * b
        if disc == 0:
            return gcd(gcd(a, b), c) <= self.det_bound
        return disc <= self.disc_bound

    def __getitem__(self, form) -> object:
        if isinstance(form, HalfIntegralForm):
            form = form.astuple()
        key = reduce_form(*form)
        if not self.in_window(key):
            raise InsufficientPrecision(f"index {form} outside det_bound {self.det_bound}")
        return self.coefficients.get(key, 0)

    def indices(self) -> list:
        return reduced_forms(self.det_bound)

    def items(self) -> Iterator:
        for key in self.indices():
            yield key, self.coefficients.get(key, 0)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coefficients.values())

    def is_cuspidal(self) -> bool:
        return all(self.coefficients.get(key, 0) == 0 for key in self.indices() if key[1] == key[2] == 0)

    def truncate(self, det_bound) -> "FourierExpansion":
        det_bound = Fraction(det_bound)
        if det_bound > self.det_bound:
            raise InsufficientPrecision(f"cannot extend window from {self.det_bound} to {det_bound}")
        keep = set(reduced_forms(det_bound))
        return FourierExpansion(self.weight, det_bound,
                                {k: v for k, v in self.coefficients.items() if k in keep}, self.name)

    def map(self, fn: Callable) -> "FourierExpansion":
        return FourierExpansion(self.weight, self.det_bound,
                                {k: fn(v) for k, v in self.coefficients.items()}, self.name)

    def scale(self, factor) -> "FourierExpansion":
        return self.map(lambda v: v * factor)

    def __add__(self, other: "FourierExpansion") -> "FourierExpansion":
        if self.weight != other.weight:
            raise ValueError("weights differ")
        bound = min(self.det_bound, other.det_bound)
        keys = reduced_forms(bound)
        return FourierExpansion(self.weight, bound,
                                {k: self.coefficients.get(k, 0) + other.coefficients.get(k, 0) for k in keys})

    def __sub__(self, other: "FourierExpansion") -> "FourierExpansion":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FourierExpansion):
            return NotImplemented
        if self.weight != other.weight:
            return False
        bound = min(self.det_bound, other.det_bound)
        return all(self.coefficients.get(k, 0) == other.coefficients.get(k, 0) for k in reduced_forms(bound))


def linear_combination(coeffs, forms) -> FourierExpansion:
    """Sum of c_i * F_i over the common window."""
    bound = min(F.det_bound for F in forms)
    keys = reduced_forms(bound)
    out = {}
    for key in keys:
        total = 0
        for c, F in zip(coeffs, forms):
            v = F.coefficients.get(key, 0)
            if v and c:
                total = total + c * v
        if total != 0:
            out[key] = total
    return FourierExpansion(forms[0].weight, bound, out)


__all__.append("linear_combination")
