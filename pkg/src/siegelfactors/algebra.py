"""Exact rational-function arithmetic over the rationals with named symbols.

Values are reduced fractions of multivariate polynomials.  Polynomials live in
sympy sparse polynomial rings over QQ with graded lexicographic order; the
ring for a value is determined by the set of symbols it uses, ordered by a
fixed global priority list followed by alphabetical order.  A reduced value
has a monic denominator, which makes the representation canonical.

Conventions used throughout the package: the symbol ``v`` stands for the
square root of the residue field size q, and ``X`` stands for q**(-s).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

__all__ = [
    "Rat",
    "Sym",
    "SymbolicFunction",
    "TruncatedSeries",
    "ZeroDenominator",
    "NonUnitDenominator",
    "rf_normalize",
    "series_coefficients",
    "substitute",
    "symbols",
    "const",
    "symbol_sort_key",
]

Rat = Fraction

# Symbols listed here come first, in this order; every other name sorts
# alphabetically after them.
SYMBOL_PRIORITY = (
    "X", "Z", "y", "v", "s", "p", "a", "b", "w", "u",
    "L", "L1", "L2", "B1", "B2", "Om", "W", "x",
)


class ZeroDenominator(ZeroDivisionError):
    """A denominator is (or became) the zero polynomial."""


class NonUnitDenominator(ValueError):
    """A power-series expansion was requested around a pole."""


def symbol_sort_key(name: str):
    try:
        return (0, SYMBOL_PRIORITY.index(name), "")
    except ValueError:
        return (1, 0, name)


@lru_cache(maxsize=None)
def _ring(names: tuple):
    if not names:
        R = ring("_one", QQ, grlex)[0]
        return R
    return ring(",".join(names), QQ, grlex)[0]


def _names_of(R) -> tuple:
    names = tuple(str(g) for g in R.symbols)
    return () if names == ("_one",) else names


def _ordered(names: Iterable[str]) -> tuple:
    return tuple(sorted(set(names), key=symbol_sort_key))


def _lift(poly: PolyElement, names: tuple) -> PolyElement:
    """Re-express ``poly`` in the ring generated by ``names`` (a superset)."""
    src = _names_of(poly.ring)
    R = _ring(names)
    if src == names:
        return poly
    if not src:
        return R(poly.LC) if poly else R.zero
    pos = [names.index(n) for n in src]
    n = len(names) if names else 1
    terms = {}
    for mon, c in poly.items():
        new = [0] * n
        for i, e in zip(pos, mon):
            new[i] = e
        terms[tuple(new)] = c
    return R.from_dict(terms) if terms else R.zero


def _used_names(poly: PolyElement) -> set:
    names = _names_of(poly.ring)
    used = set()
    for mon in poly.keys():
        for n, e in zip(names, mon):
            if e:
                used.add(n)
    return used


@dataclass(frozen=True)
class Sym:
    """A named formal symbol."""

    name: str

    def __str__(self) -> str:
        return self.name

    def as_function(self) -> "SymbolicFunction":
        return SymbolicFunction.var(self.name)


Scalar = Union[int, Fraction]


class SymbolicFunction:
    """A reduced rational function num/den over QQ with a monic denominator."""

    __slots__ = ("_num", "_den", "_names", "_hash")

    def __init__(self, num: PolyElement, den: PolyElement, _reduced: bool = False):
        if not den:
            raise ZeroDenominator("denominator is the zero polynomial")
        if not _reduced:
            names = _ordered(_names_of(num.ring) + _names_of(den.ring))
            num, den = _lift(num, names), _lift(den, names)
            num, den = num.cancel(den)
            lc = den.LC
            if lc != 1:
                num = num.quo_ground(lc)
                den = den.quo_ground(lc)
            used = _ordered(_used_names(num) | _used_names(den))
            if used != names:
                num, den = _shrink(num, used), _shrink(den, used)
        self._num = num
        self._den = den
        self._names = _names_of(num.ring)
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, value: Scalar) -> "SymbolicFunction":
        R = _ring(())
        return cls(R(QQ.convert(Fraction(value))), R.one, _reduced=True)

    @classmethod
    def var(cls, name: Union[str, Sym]) -> "SymbolicFunction":
        name = str(name)
        R = _ring((name,))
        return cls(R.gens[0], R.one, _reduced=True)

    @classmethod
    def coerce(cls, value) -> "SymbolicFunction":
        if isinstance(value, SymbolicFunction):
            return value
        if isinstance(value, Sym):
            return cls.var(value.name)
        if isinstance(value, (int, Rational)):
            return cls.const(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} to SymbolicFunction")

    @classmethod
    def from_terms(cls, terms: Mapping[tuple, Scalar]) -> "SymbolicFunction":
        """Polynomial from ``{((name, exp), ...): coeff}`` with exp possibly negative."""
        out = cls.const(0)
        for mon, c in terms.items():
            t = cls.const(c)
            for name, e in mon:
                t = t * cls.var(name) ** e
            out = out + t
        return out

    # accessors
    @property
    def symbols(self) -> tuple:
        return self._names

    @property
    def numerator(self) -> PolyElement:
        return self._num

    @property
    def denominator(self) -> PolyElement:
        return self._den

    def numerator_terms(self) -> dict:
        return _terms(self._num)

    def denominator_terms(self) -> dict:
        return _terms(self._den)

    def is_zero(self) -> bool:
        return not self._num

    def is_polynomial(self) -> bool:
        return self._den.is_ground

    def is_constant(self) -> bool:
        return self._num.is_ground and self._den.is_ground

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        if not self._num:
            return Fraction(0)
        return _frac(self._num.LC) / _frac(self._den.LC)

    # arithmetic
    def _pair(self, other):
        other = SymbolicFunction.coerce(other)
        if self._names == other._names:
            return other, self._names
        names = _ordered(self._names + other._names)
        return other, names

    def __add__(self, other):
        try:
            other, names = self._pair(other)
        except TypeError:
            return NotImplemented
        a, b = _lift(self._num, names), _lift(self._den, names)
        c, d = _lift(other._num, names), _lift(other._den, names)
        if b == d:
            return SymbolicFunction(a + c, b)
        return SymbolicFunction(a * d + b * c, b * d)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicFunction(-self._num, self._den, _reduced=True)

    def __sub__(self, other):
        try:
            other = SymbolicFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return SymbolicFunction.coerce(other) - self

    def __mul__(self, other):
        try:
            other, names = self._pair(other)
        except TypeError:
            return NotImplemented
        return SymbolicFunction(
            _lift(self._num, names) * _lift(other._num, names),
            _lift(self._den, names) * _lift(other._den, names),
        )

    __rmul__ = __mul__

    def inverse(self) -> "SymbolicFunction":
        if not self._num:
            raise ZeroDenominator("inverse of zero")
        return SymbolicFunction(self._den, self._num)

    def __truediv__(self, other):
        try:
            other = SymbolicFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return SymbolicFunction.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return SymbolicFunction(self._num ** e, self._den ** e, _reduced=True)

    def __eq__(self, other):
        try:
            other = SymbolicFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self._names == other._names and self._num == other._num and self._den == other._den

    def cross_equal(self, other) -> bool:
        """Equality decided by cross-multiplication, independent of reduction."""
        other = SymbolicFunction.coerce(other)
        names = _ordered(self._names + other._names)
        return _lift(self._num, names) * _lift(other._den, names) == _lift(other._num, names) * _lift(
            self._den, names)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._names, frozenset(_terms(self._num).items()),
                               frozenset(_terms(self._den).items())))
        return self._hash

    # structure in a single variable
    def degree_in(self, name: str) -> int:
        if not self.is_polynomial():
            raise ValueError("degree_in requires a polynomial")
        if name not in self._names or not self._num:
            return 0
        i = self._names.index(name)
        return max(m[i] for m in self._num.keys())

    def coefficients_in(self, name: str) -> list:
        """Coefficients of a polynomial (after clearing nothing) in ``name``, low to high."""
        name = str(name)
        if name not in self._names:
            return [self]
        i = self._names.index(name)
        num_parts = _split(self._num, i)
        den_parts = _split(self._den, i)
        if len(den_parts) != 1:
            raise ValueError(f"denominator depends on {name}")
        den = SymbolicFunction(den_parts[0], self._den.ring.one, _reduced=False)
        return [SymbolicFunction(c, self._den.ring.one) / den for c in num_parts]

    def __repr__(self):
        return f"SymbolicFunction({self})"

    def __str__(self):
        n = str(self._num.as_expr()) if self._names else str(self.to_fraction())
        if self._den.is_ground:
            return n if self._names else n
        return f"({n})/({self._den.as_expr()})"


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _terms(poly: PolyElement) -> dict:
    names = _names_of(poly.ring)
    out = {}
    for mon, c in poly.items():
        key = tuple((n, e) for n, e in zip(names, mon) if e)
        out[key] = _frac(c)
    return out


def _shrink(poly: PolyElement, used: tuple) -> PolyElement:
    names = _names_of(poly.ring)
    R = _ring(used)
    if not used:
        return R(poly.LC) if poly else R.zero
    pos = [names.index(n) for n in used]
    return R.from_dict({tuple(mon[i] for i in pos): c for mon, c in poly.items()}) if poly else R.zero


def _split(poly: PolyElement, i: int) -> list:
    parts = {}
    for mon, c in poly.items():
        e = mon[i]
        parts.setdefault(e, {})[mon[:i] + (0,) + mon[i + 1:]] = c
    top = max(parts) if parts else 0
    R = poly.ring
    return [R.from_dict(parts[e]) if e in parts else R.zero for e in range(top + 1)]


def symbols(spec: str) -> tuple:
    """``symbols("v X a")`` returns the corresponding SymbolicFunction generators."""
    return tuple(SymbolicFunction.var(n) for n in spec.replace(",", " ").split())


def const(value: Scalar) -> SymbolicFunction:
    return SymbolicFunction.const(value)


def rf_normalize(numerator, denominator=1) -> SymbolicFunction:
    """Canonical reduced form of numerator/denominator."""
    num = SymbolicFunction.coerce(numerator)
    den = SymbolicFunction.coerce(denominator)
    if den.is_zero():
        raise ZeroDenominator("denominator is the zero polynomial")
    return num / den


@dataclass(frozen=True)
class TruncatedSeries:
    """The first ``len(coefficients)`` Taylor coefficients in ``variable``."""

    variable: str
    coefficients: tuple

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, i: int) -> SymbolicFunction:
        return self.coefficients[i]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.variable != other.variable:
            raise ValueError("series in different variables")
        n = min(self.order, other.order)
        out = []
        for k in range(n):
            acc = const(0)
            for i in range(k + 1):
                acc = acc + self.coefficients[i] * other.coefficients[k - i]
            out.append(acc)
        return TruncatedSeries(self.variable, tuple(out))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(self.variable, tuple(self.coefficients[i] + other.coefficients[i]
                                                     for i in range(n)))

    def polynomial(self) -> SymbolicFunction:
        x = SymbolicFunction.var(self.variable)
        acc = const(0)
        for i, c in enumerate(self.coefficients):
            acc = acc + c * x ** i
        return acc


def series_coefficients(f, var, n: int) -> TruncatedSeries:
    """Taylor coefficients of ``f`` at ``var = 0`` up to order ``n`` (exclusive)."""
    f = SymbolicFunction.coerce(f)
    name = str(var)
    if name not in f.symbols:
        coeffs = [f] + [const(0)] * (n - 1)
        return TruncatedSeries(name, tuple(coeffs[:n]))
    i = f.symbols.index(name)
    one = f.numerator.ring.one
    num = [SymbolicFunction(c, one) for c in _split(f.numerator, i)]
    den = [SymbolicFunction(c, one) for c in _split(f.denominator, i)]
    if den[0].is_zero():
        raise NonUnitDenominator(f"denominator vanishes at {name}=0")
    inv0 = den[0].inverse()
    out = []
    for k in range(n):
        acc = num[k] if k < len(num) else const(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv0)
    return TruncatedSeries(name, tuple(out))


def substitute(f, bindings: Mapping) -> SymbolicFunction:
    """Replace symbols by values (numbers or rational functions) and reduce."""
    f = SymbolicFunction.coerce(f)
    vals = {str(k): SymbolicFunction.coerce(v) for k, v in bindings.items() if str(k) in f.symbols}
    if not vals:
        return f
    keep = tuple(n for n in f.symbols if n not in vals)
    order = list(vals)
    # common exponent bound per substituted symbol, so numerator and denominator
    # can both be cleared by the same product of binding denominators
    bound = {}
    for name in order:
        j = f.symbols.index(name)
        bound[name] = max([m[j] for m in f.numerator.keys()] + [m[j] for m in f.denominator.keys()])
    names = _ordered(keep + sum((v.symbols for v in vals.values()), ()))
    R = _ring(names)
    bnum = {n: _lift(vals[n].numerator, names) for n in order}
    bden = {n: _lift(vals[n].denominator, names) for n in order}
    keep_pos = [(f.symbols.index(n), names.index(n)) for n in keep]
    sub_pos = [(f.symbols.index(n), n) for n in order]
    cache = {}

    def power(n, k):
        key = (n, k)
        if key not in cache:
            lo = bnum[n] ** k if k else R.one
            hi = bden[n] ** (bound[n] - k) if bound[n] - k else R.one
            cache[key] = lo * hi
        return cache[key]

    def image(poly):
        acc = R.zero
        for mon, c in poly.items():
            base = [0] * len(names)
            for src, dst in keep_pos:
                base[dst] = mon[src]
            term = R.from_dict({tuple(base): c}) if names else R(c)
            for src, n in sub_pos:
                term = term * power(n, mon[src])
            acc += term
        return acc

    num, den = image(f.numerator), image(f.denominator)
    if not den:
        raise ZeroDenominator("substitution makes the denominator vanish")
    return SymbolicFunction(num, den)
