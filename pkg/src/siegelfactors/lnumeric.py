"""High-precision evaluation of Euler products, Dirichlet coefficients and Gamma products."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import mpmath

from .algebra import SymbolicFunction, substitute
from .arch import GammaProduct
from .satake import LocalFactor
from .siegel.arith import primes_up_to
from .siegel.numberfield import NFElement, to_complex

__all__ = [
    "ConvergenceDomain",
    "PoleHit",
    "MissingPrime",
    "EulerProductSpec",
    "PartialL",
    "GUARD_BITS",
    "dirichlet_coefficients",
    "dirichlet_convolution",
    "evaluate_partial_L",
    "evaluate_dirichlet_series",
    "gamma_eval",
    "zeta_spec",
    "shifted_zeta_spec",
    "product_spec",
    "constant_roots_spec",
    "elliptic_spec",
    "sk_spin_spec",
    "gsp4_gl2_spec",
]

GUARD_BITS = 32


class ConvergenceDomain(ValueError):
    """The requested point lies outside the half-plane of absolute convergence."""


class PoleHit(ValueError):
    pass


class MissingPrime(KeyError):
    pass


@dataclass(frozen=True)
class EulerProductSpec:
    """An Euler product given by a per-prime local factor supplier.

    ``local_factor(p)`` returns a LocalFactor in X = p^-s. ``max_prime`` bounds
    the primes for which the supplier is defined (None means all primes).
    """

    local_factor: Callable[[int], LocalFactor]
    degree: int
    name: str = ""
    gamma: Optional[GammaProduct] = None
    sign: object = 1
    max_prime: Optional[int] = None

    def factor(self, p: int) -> LocalFactor:
        if self.max_prime is not None and p > self.max_prime:
            raise MissingPrime(f"{self.name or 'Euler product'} has no local factor at p = {p}")
        return self.local_factor(p)


@dataclass(frozen=True)
class PartialL:
    """Value of a partial Euler product with its working precision and a tail estimate."""

    value: object
    tail_bound: object
    primes_up_to: int
    precision: int


def _numeric(x, dps: int):
    if isinstance(x, NFElement) or isinstance(x, Fraction):
        return to_complex(x, dps)
    if isinstance(x, int):
        return mpmath.mpf(x)
    return mpmath.mpmathify(x)


def _exact(coeffs) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in coeffs)


def _local_series(factor: LocalFactor, terms: int, dps: int) -> list:
    """Coefficients 0..terms of 1 / P(X)."""
    c = list(factor.denominator)
    if _exact(c):
        c = [Fraction(x) for x in c]
        zero = Fraction(0)
    else:
        c = [_numeric(x, dps) for x in c]
        zero = mpmath.mpf(0)
    out = [zero + 1]
    for n in range(1, terms + 1):
        acc = zero
        for j in range(1, min(n, len(c) - 1) + 1):
            acc -= c[j] * out[n - j]
        out.append(acc / c[0])
    return out


def dirichlet_coefficients(spec: EulerProductSpec, N: int, dps: int = 50) -> list:
    """Coefficients a(0..N) (a(0) = 0) of the Dirichlet series of the product."""
    with mpmath.workdps(dps):
        smallest = list(range(N + 1))
        for p in primes_up_to(math.isqrt(N)):
            for n in range(p * p, N + 1, p):
                if smallest[n] == n:
                    smallest[n] = p
        local = {}
        for p in primes_up_to(N):
            e = 0
            pk = p
            while pk <= N:
                pk *= p
                e += 1
            local[p] = _local_series(spec.factor(p), e, dps)
        a = [0] * (N + 1)
        if N >= 1:
            a[1] = 1
        # multiplicativity: n = p^e m with p the smallest prime factor and p coprime to m
        for n in range(2, N + 1):
            p = smallest[n]
            m, e = n // p, 1
            while m % p == 0:
                m //= p
                e += 1
            a[n] = a[m] * local[p][e]
        return a


def dirichlet_convolution(a: list, b: list, dps: int = 50) -> list:
    """Coefficients of the product of two Dirichlet series, truncated to the shorter list."""
    N = min(len(a), len(b)) - 1
    out = [0] * (N + 1)
    with mpmath.workdps(dps):
        for i in range(1, N + 1):
            if a[i] == 0:
                continue
            for j in range(1, N // i + 1):
                out[i * j] += a[i] * b[j]
    return out


def evaluate_dirichlet_series(coeffs: list, s, dps: int = 50):
    with mpmath.workdps(dps):
        s = mpmath.mpf(s) if not isinstance(s, Fraction) else mpmath.mpf(s.numerator) / s.denominator
        return mpmath.fsum(_numeric(c, dps) * mpmath.power(n, -s) for n, c in enumerate(coeffs) if n and c)


def evaluate_partial_L(spec: EulerProductSpec, s, N: int, precision: int = 128) -> PartialL:
    """prod over p <= N of the local factors at X = p^-s (s real, s > 1)."""
    bits = precision + GUARD_BITS
    with mpmath.workprec(bits):
        s = mpmath.mpf(s.numerator) / s.denominator if isinstance(s, Fraction) else mpmath.mpf(s)
        if s <= 1:
            raise ConvergenceDomain(f"s = {s} is not in the region of absolute convergence Re(s) > 1")
        dps = int(bits * 0.30103) + 5
        value = mpmath.mpf(1)
        for p in primes_up_to(N):
            X = mpmath.power(p, -s)
            c = spec.factor(p).denominator
            denom = mpmath.fsum(_numeric(cj, dps) * X ** j for j, cj in enumerate(c))
            value /= denom
        # unit-modulus roots: |log tail| <= d * sum_{p > N} p^-s / (1 - p^-s) <= d * 2 * N^(1-s) / (s - 1)
        tail = spec.degree * 2 * mpmath.power(max(N, 2), 1 - s) / (s - 1)
        return PartialL(value, tail, N, precision)


def _to_exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(str(x))


def gamma_eval(g: GammaProduct, s, precision: int = 128, bindings: Optional[dict] = None):
    """Numeric value of a Gamma product at s; ``bindings`` supplies values for other symbols and atoms."""
    bindings = dict(bindings or {})
    bits = precision + GUARD_BITS
    with mpmath.workprec(bits):
        exact_bindings = {k: _to_exact(v) for k, v in bindings.items() if not isinstance(v, complex)}
        exact_bindings["s"] = _to_exact(s)

        def value(f: SymbolicFunction):
            f = substitute(f, exact_bindings)
            if not f.is_constant():
                raise ValueError(f"unbound symbols in {f}")
            q = f.to_fraction()
            return mpmath.mpf(q.numerator) / q.denominator

        try:
            total = mpmath.mpc(value(g.rational))
        except ZeroDivisionError as exc:
            raise PoleHit("rational part has a pole at the evaluation point") from exc
        total *= mpmath.mpc(0, 1) ** g.i_power
        for base, e in g.powers:
            ev = value(e)
            if base == "pi":
                total *= mpmath.power(mpmath.pi, ev)
            elif base == "D":
                if "D" not in bindings:
                    raise ValueError("no value bound for D")
                total *= mpmath.power(mpmath.mpf(_to_exact(bindings["D"])), ev)
            else:
                total *= mpmath.power(int(base), ev)
        for name, m in g.atoms:
            if name not in bindings:
                raise ValueError(f"no value bound for atom {name}")
            total *= mpmath.mpmathify(bindings[name]) ** m
        for (kind, arg), m in g.gammas:
            z = value(arg)
            inner = z / 2 if kind == "R" else z
            if inner <= 0 and inner == mpmath.floor(inner):
                raise PoleHit(f"Gamma pole at argument {z}")
            if kind == "R":
                factor = mpmath.power(mpmath.pi, -z / 2) * mpmath.gamma(z / 2)
            elif kind == "C":
                factor = 2 * mpmath.power(2 * mpmath.pi, -z) * mpmath.gamma(z)
            else:
                factor = mpmath.gamma(z)
            total *= factor ** m
        if mpmath.im(total) == 0:
            return mpmath.re(total)
        return total


# -- standard specs -------------------------------------------------------------

def zeta_spec() -> EulerProductSpec:
    return EulerProductSpec(lambda p: LocalFactor.from_roots([Fraction(1)]), 1, "zeta")


def shifted_zeta_spec(shift: Fraction) -> EulerProductSpec:
    """zeta(s + shift) as a product of 1/(1 - p^-shift X); uses Q(sqrt p) for half-integral shifts."""
    from .siegel.numberfield import quadratic_sqrt_field
    shift = Fraction(shift)

    def factor(p):
        if shift.denominator == 1:
            return LocalFactor.from_roots([Fraction(p) ** int(-shift)])
        if shift.denominator != 2:
            raise ValueError("only integral or half-integral shifts are exact")
        L = quadratic_sqrt_field(p)
        return LocalFactor.from_roots([L.gen() ** int(-2 * shift)])

    return EulerProductSpec(factor, 1, f"zeta(s{'+' if shift >= 0 else ''}{shift})")


def product_spec(*specs: EulerProductSpec) -> EulerProductSpec:
    def factor(p):
        out = specs[0].factor(p)
        for sp in specs[1:]:
            out = _numeric_safe_product(out, sp.factor(p))
        return out
    return EulerProductSpec(factor, sum(sp.degree for sp in specs), "*".join(sp.name for sp in specs))


def _numeric_safe_product(f: LocalFactor, g: LocalFactor) -> LocalFactor:
    fe, ge = _field_of(f), _field_of(g)
    if fe is not None and ge is not None and fe is not ge:
        dps = 60
        f = LocalFactor.from_denominator([_numeric(c, dps) for c in f.denominator])
        g = LocalFactor.from_denominator([_numeric(c, dps) for c in g.denominator])
    a, b = f.denominator, g.denominator
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return LocalFactor.from_denominator(out)


def _field_of(f: LocalFactor):
    for c in f.denominator:
        if isinstance(c, NFElement):
            return c.field
    return None


def constant_roots_spec(roots: tuple, name: str = "") -> EulerProductSpec:
    return EulerProductSpec(lambda p: LocalFactor.from_roots(list(roots)), len(roots), name)


def elliptic_spec(k: int, N: int) -> EulerProductSpec:
    """L(s, f) for the normalized eigenform of weight k, analytic normalization, p <= N."""
    from .siegel.elliptic import eigenform_prime_coefficients
    from .siegel.numberfield import quadratic_sqrt_field
    ap = eigenform_prime_coefficients(k, N)

    def factor(p):
        if p not in ap:
            raise MissingPrime(f"a_f({p}) not computed")
        L = quadratic_sqrt_field(p)
        s = L.gen()
        return LocalFactor.from_denominator([L.one(), -L(ap[p]) * s ** (1 - k), L.one()])

    return EulerProductSpec(factor, 2, f"L(s,f{k})", max_prime=N)


def sk_spin_spec(record, N: int) -> EulerProductSpec:
    """Spin L-function of a Saito-Kurokawa eigenform of weight k, primes <= N.

    Primes where the record carries T(p) and T(p^2) eigenvalues use them
    directly. Elsewhere lambda(p) comes from the lift law a_f(p) + p^(k-1) + p^(k-2)
    and lambda(p^2) from the middle coefficient of the lifted quartic.
    """
    from .siegel.eigen import spin_factor_from_eigenvalues
    from .siegel.elliptic import eigenform_prime_coefficients
    k = record.weight
    ap = eigenform_prime_coefficients(2 * k - 2, N)

    def factor(p):
        if p in record.eigenvalues and p * p in record.eigenvalues:
            return spin_factor_from_eigenvalues(record.eigenvalues[p], record.eigenvalues[p * p], k, p)
        if p not in ap:
            raise MissingPrime(f"a_f({p}) not computed")
        lam = ap[p] + p ** (k - 1) + p ** (k - 2)
        middle = 2 * p ** (2 * k - 3) + ap[p] * (p ** (k - 1) + p ** (k - 2))
        lam2 = lam * lam - p ** (2 * k - 4) - middle
        return spin_factor_from_eigenvalues(lam, lam2, k, p)

    return EulerProductSpec(factor, 4, f"L(s,{record.label},spin)", max_prime=N)


def gsp4_gl2_spec(satake_of_p: Callable[[int], tuple], gl2_of_p: Callable[[int], tuple], name: str = "") -> EulerProductSpec:
    """Degree-8 factor with reciprocal roots gamma * t for the spin quadruple and the GL2 pair."""
    def factor(p):
        quad = satake_of_p(p)
        t = gl2_of_p(p)
        return LocalFactor.from_roots([g * x for x in t for g in quad])
    return EulerProductSpec(factor, 8, name)
