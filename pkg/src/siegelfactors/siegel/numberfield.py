"""Exact arithmetic in simple algebraic extensions K[t]/(g(t)).

The base field K is the rationals (Fraction) or another ``NumberField``, so
towers such as Q(theta)(sqrt p) are available. Each field carries a chosen
complex embedding of its generator, located by the minimal polynomial plus an
isolating disc around a numerically refined root.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import mpmath

__all__ = ["NumberField", "NFElement", "to_complex", "quadratic_sqrt_field"]


def _base_zero(base):
    return Fraction(0) if base is None else base.zero()


def _coerce_base(base, x):
    if base is None:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into the rationals")
    return base(x)


def to_complex(x, dps: int = 50):
    """Numeric value of a rational or number-field element under the chosen embeddings."""
    if isinstance(x, NFElement):
        return x.to_complex(dps)
    with mpmath.workdps(dps):
        return mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpmathify(x)


class NumberField:
    """K[t]/(g) for a monic irreducible g over the base field K."""

    def __init__(self, modulus: Sequence, name: str = "t", base: Optional["NumberField"] = None,
                 root_index: int = 0, root=None):
        self.base = base
        coeffs = [_coerce_base(base, c) for c in modulus]
        lead = coeffs[-1]
        self.modulus = tuple(c / lead for c in coeffs)
        self.degree = len(self.modulus) - 1
        if self.degree < 1:
            raise ValueError("modulus must have positive degree")
        self.name = name
        self._root = root
        self.root_index = root_index

    # -- embedding -------------------------------------------------------
    def numeric_roots(self, dps: int = 50) -> list:
        with mpmath.workdps(dps + 20):
            coeffs = [to_complex(c, dps + 20) for c in reversed(self.modulus)]
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=4 * dps)
            roots = sorted(roots, key=lambda z: (float(mpmath.re(z)), float(mpmath.im(z))))
        return roots

    def root(self, dps: int = 50):
        if self._root is not None:
            return self._root
        return self.numeric_roots(dps)[self.root_index]

    def isolating_radius(self, dps: int = 50):
        roots = self.numeric_roots(dps)
        r = roots[self.root_index]
        others = [abs(r - z) for i, z in enumerate(roots) if i != self.root_index]
        return min(others) / 3 if others else mpmath.mpf(1)

    def conjugates(self) -> list:
        """The same field with each embedding of the generator."""
        if self._root is not None:
            return [self]
        return [NumberField(self.modulus, self.name, self.base, i) for i in range(self.degree)]

    # -- elements ----------------------------------------------------------
    def __call__(self, x) -> "NFElement":
        if isinstance(x, NFElement):
            if x.field is self:
                return x
            if self.base is not None:
                return NFElement(self, (self.base(x),) + (self.base.zero(),) * (self.degree - 1))
            raise TypeError("element belongs to a different field")
        return NFElement(self, (_coerce_base(self.base, x),) + (_base_zero(self.base),) * (self.degree - 1))

    def zero(self) -> "NFElement":
        return self(0)

    def one(self) -> "NFElement":
        return self(1)

    def gen(self) -> "NFElement":
        z = _base_zero(self.base)
        coeffs = [z] * self.degree
        if self.degree == 1:
            return NFElement(self, (-self.modulus[0],))
        coeffs[1] = coeffs[1] + 1
        return NFElement(self, tuple(coeffs))

    def __repr__(self) -> str:
        poly = " + ".join(f"({c})*{self.name}^{i}" for i, c in enumerate(self.modulus) if c != 0)
        return f"NumberField({poly})"

    def polynomial_str(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (self.name if i == 1 else f"{self.name}^{i}")
            if i and c == 1:
                terms.append(mono)
            else:
                terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms)


def _trim(c: list) -> list:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a: list, b: list):
    a = list(a)
    b = _trim(list(b))
    zero = b[0] * 0
    if len(a) < len(b):
        return [zero], a
    q = [zero] * (len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] * inv
        q[i] = coef
        if coef != 0:
            for j, bj in enumerate(b):
                a[i + j] = a[i + j] - coef * bj
    return q, _trim(a[: len(b) - 1] or [zero])


def _poly_mul(a: list, b: list) -> list:
    zero = a[0] * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    zero = (a[0] if a else b[0]) * 0
    a = list(a) + [zero] * (n - len(a))
    b = list(b) + [zero] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _depth(field) -> int:
    d = 0
    while field is not None:
        d += 1
        field = field.base
    return d


class NFElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        """('scalar', base value), ('elem', same-field element) or None when other lives higher."""
        if isinstance(other, NFElement):
            if other.field is self.field:
                return "elem", other
            if _depth(other.field) > _depth(self.field):
                return None
            return "scalar", _coerce_base(self.field.base, other)
        if isinstance(other, (int, Fraction)):
            return "scalar", _coerce_base(self.field.base, other)
        return None

    def _reduce(self, poly: list) -> "NFElement":
        _, r = _poly_divmod(poly, list(self.field.modulus))
        z = _base_zero(self.field.base)
        r = list(r) + [z] * (self.field.degree - len(r))
        return NFElement(self.field, tuple(r[: self.field.degree]))

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return other + self
        kind, o = c
        if kind == "scalar":
            return NFElement(self.field, (self.coeffs[0] + o,) + self.coeffs[1:])
        return NFElement(self.field, tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return (-other) + self
        return self + (-c[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return other * self
        kind, o = c
        if kind == "scalar":
            return NFElement(self.field, tuple(x * o for x in self.coeffs))
        return self._reduce(_poly_mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if self == 0:
            raise ZeroDivisionError("inverse of zero in a number field")
        # extended Euclid: s * self + t * g = 1
        g = list(self.field.modulus)
        a = _trim(list(self.coeffs))
        one = a[0] * 0 + 1
        zero = a[0] * 0
        r0, r1 = g, a
        s0, s1 = [zero], [one]
        while not (len(r1) == 1 and r1[0] == 0):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant
        inv = 1 / r0[0]
        return self._reduce([c * inv for c in s0])

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return other.inverse() * self
        kind, o = c
        if kind == "scalar":
            return self * (1 / o)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            c = self._coerce(other)
        except TypeError:
            return NotImplemented
        if c is None:
            return other == self
        kind, o = c
        if kind == "scalar":
            return self.coeffs[0] == o and all(x == 0 for x in self.coeffs[1:])
        return all(x == y for x, y in zip(self.coeffs, o.coeffs))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __bool__(self):
        return any(c != 0 for c in self.coeffs)

    def __hash__(self):
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:]) and (
            self.field.base is None or (not isinstance(self.coeffs[0], NFElement)) or self.coeffs[0].is_rational())

    def rational_value(self) -> Fraction:
        c = self.coeffs[0]
        return c.rational_value() if isinstance(c, NFElement) else c

    def to_complex(self, dps: int = 50):
        with mpmath.workdps(dps + 10):
            t = self.field.root(dps + 10)
            total = mpmath.mpc(0)
            for i, c in enumerate(self.coeffs):
                total += to_complex(c, dps + 10) * t ** i
        return total

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else (self.field.name if i == 1 else f"{self.field.name}^{i}")
            parts.append(f"({c})" + (f"*{mono}" if mono else "") if mono else f"{c}")
        return " + ".join(parts) if parts else "0"

    __str__ = __repr__


def quadratic_sqrt_field(n, base: Optional[NumberField] = None, name: Optional[str] = None) -> NumberField:
    """K(sqrt n) with the positive square root as embedding (n > 0 rational)."""
    n = Fraction(n)
    with mpmath.workdps(80):
        root = mpmath.sqrt(mpmath.mpf(n.numerator) / n.denominator)
    return NumberField([-n, 0, 1], name or f"sqrt{n}", base, root=root)
