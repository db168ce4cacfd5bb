"""Satake parameters, weight multisets of the small Sp4 representations, and Euler factors.

A Satake quadruple is the inversion-closed multiset {a, b, 1/a, 1/b}.  The
weight multisets of the 5, 10, 14 and 16 dimensional representations are
produced from the 4 dimensional one by exterior square, symmetric square and
tensor product of multisets, followed by removal of the smaller constituent.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from typing import Any, Iterable, Optional, Sequence

from .algebra import SymbolicFunction, const

__all__ = [
    "UnknownRepresentation",
    "MultisetError",
    "WeightMultiset",
    "SatakeQuadruple",
    "LocalFactor",
    "rep_weights",
    "spin_local_factor",
    "rep_local_factor",
    "ext_square",
    "sym_square",
    "tensor_factor",
    "gsp4_gl2_unramified_factor",
    "divide_factor",
    "rep_factor_from_spin",
    "REPRESENTATION_DIMENSIONS",
]

REPRESENTATION_DIMENSIONS = (1, 4, 5, 10, 14, 16)


class UnknownRepresentation(ValueError):
    """Requested representation dimension is not one of 1, 4, 5, 10, 14, 16."""


class MultisetError(ValueError):
    """Multiset subtraction where the subtrahend is not contained."""


@dataclass(frozen=True)
class WeightMultiset:
    """Multiset of Laurent monomials a**i * b**j, stored as exponent pairs."""

    counts: tuple  # sorted ((i, j), multiplicity) pairs

    @classmethod
    def of(cls, entries: Iterable[tuple]) -> "WeightMultiset":
        return cls._from_counter(Counter(entries))

    @classmethod
    def _from_counter(cls, c: Counter) -> "WeightMultiset":
        return cls(tuple(sorted((k, m) for k, m in c.items() if m)))

    def counter(self) -> Counter:
        return Counter(dict(self.counts))

    def entries(self) -> list:
        return [k for k, m in self.counts for _ in range(m)]

    def __len__(self) -> int:
        return sum(m for _, m in self.counts)

    def __contains__(self, weight) -> bool:
        return weight in dict(self.counts)

    def multiplicity(self, weight) -> int:
        return dict(self.counts).get(weight, 0)

    def __add__(self, other: "WeightMultiset") -> "WeightMultiset":
        return WeightMultiset._from_counter(self.counter() + other.counter())

    def __sub__(self, other: "WeightMultiset") -> "WeightMultiset":
        mine, theirs = self.counter(), other.counter()
        for k, m in theirs.items():
            if mine.get(k, 0) < m:
                raise MultisetError(f"weight {k} with multiplicity {m} is not contained")
        mine.subtract(theirs)
        return WeightMultiset._from_counter(mine)

    def ext_square(self) -> "WeightMultiset":
        e = self.entries()
        return WeightMultiset.of(_add(x, y) for x, y in combinations(e, 2))

    def sym_square(self) -> "WeightMultiset":
        e = self.entries()
        return WeightMultiset.of(_add(x, y) for x, y in combinations_with_replacement(e, 2))

    def tensor(self, other: "WeightMultiset") -> "WeightMultiset":
        return WeightMultiset.of(_add(x, y) for x, y in product(self.entries(), other.entries()))

    def is_inversion_closed(self) -> bool:
        c = self.counter()
        return all(c[(-i, -j)] == m for (i, j), m in c.items())

    def __str__(self) -> str:
        def power(name, e):
            return "" if e == 0 else (name if e == 1 else f"{name}^{e}")

        return "{" + ", ".join((power("a", i) + power("b", j)) or "1" for i, j in self.entries()) + "}"


def _add(x, y):
    return (x[0] + y[0], x[1] + y[1])


_TRIVIAL = WeightMultiset.of([(0, 0)])
_SPIN = WeightMultiset.of([(1, 0), (0, 1), (-1, 0), (0, -1)])


def rep_weights(n: int) -> WeightMultiset:
    """Weights of the n-dimensional irreducible representation of Sp4(C)."""
    if n == 1:
        return _TRIVIAL
    if n == 4:
        return _SPIN
    if n == 5:
        return _SPIN.ext_square() - _TRIVIAL
    if n == 10:
        return _SPIN.sym_square()
    if n == 14:
        return rep_weights(5).sym_square() - _TRIVIAL
    if n == 16:
        return _SPIN.tensor(rep_weights(5)) - _SPIN
    raise UnknownRepresentation(f"no irreducible representation of dimension {n} is modelled")


def _is_zero(x) -> bool:
    if isinstance(x, SymbolicFunction):
        return x.is_zero()
    return x == 0


def _one_like(x):
    if isinstance(x, SymbolicFunction):
        return const(1)
    return x * 0 + 1


def _elementary(roots: Sequence) -> list:
    """Coefficients of prod(1 - r X), low degree first."""
    coeffs = [_one_like(roots[0]) if roots else const(1)]
    for r in roots:
        nxt = list(coeffs) + [coeffs[0] * 0]
        for i in range(len(coeffs)):
            nxt[i + 1] = nxt[i + 1] - r * coeffs[i]
        coeffs = nxt
    return coeffs


@dataclass(frozen=True)
class LocalFactor:
    """An Euler factor 1 / (c0 + c1 X + ... + cd X^d) with c0 = 1.

    ``roots`` holds the reciprocal roots when they are known exactly; the
    denominator coefficients are always present.  Coefficients may be
    rationals, symbolic functions or elements of a number field.
    """

    denominator: tuple
    roots: Optional[tuple] = None

    @classmethod
    def from_roots(cls, roots: Iterable) -> "LocalFactor":
        roots = tuple(roots)
        return cls(tuple(_elementary(roots)), roots)

    @classmethod
    def from_denominator(cls, coeffs: Sequence) -> "LocalFactor":
        coeffs = list(coeffs)
        while len(coeffs) > 1 and _is_zero(coeffs[-1]):
            coeffs.pop()
        return cls(tuple(coeffs), None)

    @classmethod
    def trivial(cls) -> "LocalFactor":
        return cls((const(1),), ())

    @property
    def degree(self) -> int:
        return len(self.denominator) - 1

    def denominator_polynomial(self, var: str = "X") -> SymbolicFunction:
        X = SymbolicFunction.var(var)
        acc = const(0)
        for i, c in enumerate(self.denominator):
            acc = acc + SymbolicFunction.coerce(c) * X ** i
        return acc

    def rational_form(self, var: str = "X") -> SymbolicFunction:
        return self.denominator_polynomial(var).inverse()

    def __mul__(self, other: "LocalFactor") -> "LocalFactor":
        if self.roots is not None and other.roots is not None:
            return LocalFactor.from_roots(self.roots + other.roots)
        a, b = self.denominator, other.denominator
        out = [a[0] * 0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return LocalFactor.from_denominator(out)

    def same_factor(self, other: "LocalFactor") -> bool:
        """Equality of the Euler factors as rational functions."""
        if self.degree != other.degree:
            return False
        return all(_is_zero(x - y) for x, y in zip(self.denominator, other.denominator))

    def is_palindromic(self) -> bool:
        """Denominator coefficients satisfy c_k = +-c_d * c_(d-k) with a common sign."""
        c = self.denominator
        d = self.degree
        for sign in (1, -1):
            if all(_is_zero(c[k] * c[d] * sign - c[d - k]) for k in range(d + 1)):
                return True
        return False

    def power_sums(self, n: int) -> list:
        """Power sums p_1..p_n of the reciprocal roots, by Newton's identities."""
        zero = self.denominator[0] * 0
        e = [self.denominator[k] * (-1) ** k if k <= self.degree else zero for k in range(n + 1)]
        p = []
        for k in range(1, n + 1):
            acc = e[k] * k * (-1) ** (k - 1)
            for i in range(1, k):
                acc = acc + (-1) ** (i - 1) * e[i] * p[k - i - 1]
            p.append(acc)
        return p

    @classmethod
    def from_power_sums(cls, p: Sequence, degree: int) -> "LocalFactor":
        zero = p[0] * 0 if p else const(0)
        e = [zero + 1]
        for k in range(1, degree + 1):
            acc = zero
            for i in range(1, k + 1):
                acc = acc + (-1) ** (i - 1) * e[k - i] * p[i - 1]
            e.append(acc * Fraction(1, k))
        return cls.from_denominator([e[k] * (-1) ** k for k in range(degree + 1)])


@dataclass(frozen=True)
class SatakeQuadruple:
    """Spin Satake parameters {a, b, c/a, c/b} with chi1 = ab and chi2 = b/a.

    ``similitude`` is the value c of the central character at the prime; it is
    1 for trivial central character, where the multiset is inversion-closed.
    """

    a: Any
    b: Any
    similitude: Any = 1

    @classmethod
    def symbolic(cls, a: str = "a", b: str = "b") -> "SatakeQuadruple":
        return cls(SymbolicFunction.var(a), SymbolicFunction.var(b))

    def multiset(self) -> tuple:
        return (self.a, self.b, self.similitude / self.a, self.similitude / self.b)

    @property
    def chi1(self):
        return self.a * self.b

    @property
    def chi2(self):
        return self.b / self.a

    def evaluate(self, weight: tuple):
        i, j = weight
        return _pow(self.a, i) * _pow(self.b, j)

    def inverted(self) -> "SatakeQuadruple":
        c = self.similitude
        # an integer similitude stays exact; 1 / 1 would silently become a float
        inverse = Fraction(1, c) if isinstance(c, int) else 1 / c
        if inverse == 1:
            inverse = 1
        return SatakeQuadruple(1 / self.a, 1 / self.b, inverse)


def _pow(x, e: int):
    if e >= 0:
        return x ** e
    return (1 / x) ** (-e)


def spin_local_factor(s: SatakeQuadruple) -> LocalFactor:
    return LocalFactor.from_roots(s.multiset())


def rep_local_factor(s: SatakeQuadruple, n: int) -> LocalFactor:
    return LocalFactor.from_roots(s.evaluate(w) for w in rep_weights(n).entries())


def _from_power_sum_rule(f: LocalFactor, degree: int, rule) -> LocalFactor:
    p = f.power_sums(2 * degree)
    return LocalFactor.from_power_sums([rule(p[k - 1], p[2 * k - 1]) for k in range(1, degree + 1)], degree)


def ext_square(f: LocalFactor) -> LocalFactor:
    if f.roots is not None:
        return LocalFactor.from_roots(x * y for x, y in combinations(f.roots, 2))
    d = f.degree
    return _from_power_sum_rule(f, d * (d - 1) // 2, lambda pk, p2k: (pk * pk - p2k) * Fraction(1, 2))


def sym_square(f: LocalFactor) -> LocalFactor:
    if f.roots is not None:
        return LocalFactor.from_roots(x * y for x, y in combinations_with_replacement(f.roots, 2))
    d = f.degree
    return _from_power_sum_rule(f, d * (d + 1) // 2, lambda pk, p2k: (pk * pk + p2k) * Fraction(1, 2))


def tensor_factor(f: LocalFactor, g: LocalFactor) -> LocalFactor:
    if f.roots is not None and g.roots is not None:
        return LocalFactor.from_roots(x * y for x, y in product(f.roots, g.roots))
    degree = f.degree * g.degree
    p, q = f.power_sums(degree), g.power_sums(degree)
    return LocalFactor.from_power_sums([x * y for x, y in zip(p, q)], degree)


def gsp4_gl2_unramified_factor(s: SatakeQuadruple, t1, t2=None) -> LocalFactor:
    """Factor with reciprocal roots gamma * t over the quadruple and the GL2 values."""
    ts = (t1,) if t2 is None else (t1, t2)
    return LocalFactor.from_roots(g * t for t in ts for g in s.multiset())


def divide_factor(f: LocalFactor, g: LocalFactor) -> LocalFactor:
    """The factor h with f = g * h as Euler factors (exact polynomial division)."""
    num = list(f.denominator)
    den = list(g.denominator)
    if len(den) > len(num):
        raise ValueError("divisor has larger degree")
    quotient = [num[0] * 0] * (len(num) - len(den) + 1)
    # divide from the constant term upward (both constant terms are 1)
    for i in range(len(quotient)):
        c = num[i] / den[0]
        quotient[i] = c
        for j, d in enumerate(den):
            num[i + j] = num[i + j] - c * d
    if not all(_is_zero(x) for x in num):
        raise ValueError("factor is not divisible")
    return LocalFactor.from_denominator(quotient)


def rep_factor_from_spin(spin: LocalFactor, n: int) -> LocalFactor:
    """Factor for rho_n obtained from a degree-4 spin factor with trivial similitude."""
    one = spin.denominator[0] * 0 + 1
    trivial = LocalFactor.from_denominator([one, -one])
    if n == 1:
        return trivial
    if n == 4:
        return spin
    rho5 = divide_factor(ext_square(spin), trivial)
    if n == 5:
        return rho5
    if n == 10:
        return sym_square(spin)
    if n == 14:
        return divide_factor(sym_square(rho5), trivial)
    if n == 16:
        return divide_factor(tensor_factor(spin, rho5), spin)
    raise UnknownRepresentation(f"no irreducible representation of dimension {n} is modelled")
