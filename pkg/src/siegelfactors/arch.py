"""Archimedean Gamma factors, a normal form for products of them, and the
archimedean intertwining constant, zeta-integral correction factor and X(s).

A GammaProduct is a formal product

    rational(s) * i**k * pi**e_pi * 2**e_2 * D**e_D * prod(atoms) * prod Gamma_kind(arg)**m

where ``kind`` is ``"R"`` (Gamma_R(z) = pi**(-z/2) Gamma(z/2)), ``"C"``
(Gamma_C(z) = 2 (2 pi)**(-z) Gamma(z)) or ``"G"`` (the Euler Gamma function),
arguments and exponents are affine in ``s`` with coefficients that may involve
the symbols ``p`` and ``q``, and atoms are formal unknown constants.

The normal form is described in ``gamma_normalize``; two products are equal
when the normal form of their quotient is 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .algebra import SymbolicFunction, const, substitute
from .satake import UnknownRepresentation

__all__ = [
    "CaseMismatch",
    "GammaProduct",
    "DiscreteSeries",
    "PrincipalSeries",
    "ArchTauType",
    "gamma_normalize",
    "gamma_R",
    "gamma_C",
    "euler_gamma",
    "arch_pi_tau_factor",
    "arch_triple_factor",
    "arch_rho_factor",
    "arch_K",
    "arch_Y",
    "arch_Y_term",
    "arch_X",
    "arch_X_check",
    "kappa_atom",
    "kappa_ratio",
    "S",
]

S = SymbolicFunction.var("s")


class CaseMismatch(ValueError):
    """The parameters are inconsistent with the requested archimedean case."""


def _sf(x) -> SymbolicFunction:
    if isinstance(x, str):
        return SymbolicFunction.var(x)
    return SymbolicFunction.coerce(x)


def _constant_part(z: SymbolicFunction) -> Fraction:
    if not z.is_polynomial():
        raise ValueError(f"Gamma argument {z} is not a polynomial")
    return z.numerator_terms().get((), Fraction(0)) / z.denominator_terms()[()]


@dataclass(frozen=True)
class GammaProduct:
    rational: SymbolicFunction = field(default_factory=lambda: const(1))
    gammas: tuple = ()  # sorted ((kind, argument), multiplicity)
    powers: tuple = ()  # sorted (base, exponent); bases "pi", "D" or primes as strings
    i_power: int = 0
    atoms: tuple = ()  # sorted (name, multiplicity)

    # construction ---------------------------------------------------------
    @classmethod
    def make(cls, rational=1, gammas=None, powers=None, i_power=0, atoms=None) -> "GammaProduct":
        g = {}
        for key, m in (gammas or {}).items():
            kind, arg = key
            g[(kind, _sf(arg))] = g.get((kind, _sf(arg)), 0) + m
        pw = {}
        for b, e in (powers or {}).items():
            for prime, k in _prime_split(b):
                pw[prime] = pw.get(prime, const(0)) + _sf(e) * k
        return cls(_sf(rational), _sorted_items(g), _sorted_powers(pw), i_power % 4,
                   _sorted_items(dict(atoms or {})))

    @classmethod
    def constant(cls, value) -> "GammaProduct":
        return cls.make(value)

    @classmethod
    def power(cls, base, exponent) -> "GammaProduct":
        """base**exponent for base "pi", "D" or a positive integer."""
        return cls.make(1, powers={base: exponent})

    @classmethod
    def i(cls, k: int = 1) -> "GammaProduct":
        return cls.make(1, i_power=k)

    @classmethod
    def atom(cls, name: str, k: int = 1) -> "GammaProduct":
        return cls.make(1, atoms={name: k})

    # algebra --------------------------------------------------------------
    def __mul__(self, other) -> "GammaProduct":
        if not isinstance(other, GammaProduct):
            other = GammaProduct.make(other)
        g = dict(self.gammas)
        for k, m in other.gammas:
            g[k] = g.get(k, 0) + m
        pw = dict(self.powers)
        for b, e in other.powers:
            pw[b] = pw.get(b, const(0)) + e
        at = dict(self.atoms)
        for a, m in other.atoms:
            at[a] = at.get(a, 0) + m
        return GammaProduct(self.rational * other.rational, _sorted_items(g), _sorted_powers(pw),
                            (self.i_power + other.i_power) % 4, _sorted_items(at))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GammaProduct":
        return GammaProduct(
            self.rational ** k,
            tuple((key, m * k) for key, m in self.gammas),
            tuple((b, e * k) for b, e in self.powers),
            (self.i_power * k) % 4,
            tuple((a, m * k) for a, m in self.atoms),
        )

    def inverse(self) -> "GammaProduct":
        return self ** -1

    def __truediv__(self, other) -> "GammaProduct":
        if not isinstance(other, GammaProduct):
            other = GammaProduct.make(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "GammaProduct":
        return GammaProduct.make(other) * self.inverse()

    def substitute(self, bindings: dict) -> "GammaProduct":
        """Substitute symbols (typically s -> -s) everywhere."""
        return GammaProduct.make(
            substitute(self.rational, bindings),
            {(k, substitute(a, bindings)): m for (k, a), m in self.gammas},
            {b: substitute(e, bindings) for b, e in self.powers},
            self.i_power,
            dict(self.atoms),
        )

    def normalize(self) -> "GammaProduct":
        return gamma_normalize(self)

    def is_one(self) -> bool:
        n = self.normalize()
        return n.rational == 1 and not n.gammas and not n.powers and n.i_power == 0 and not n.atoms

    def equals(self, other: "GammaProduct") -> bool:
        return (self / other).is_one()

    def __str__(self) -> str:
        parts = [] if self.rational == 1 else [f"({self.rational})"]
        if self.i_power:
            parts.append(f"i^{self.i_power}")
        parts += [f"{b}^({e})" for b, e in self.powers]
        parts += [f"{a}^{m}" if m != 1 else a for a, m in self.atoms]
        name = {"R": "Gamma_R", "C": "Gamma_C", "G": "Gamma"}
        parts += [f"{name[k]}({a})" + (f"^{m}" if m != 1 else "") for (k, a), m in self.gammas]
        return "*".join(parts) or "1"


def _sorted_items(d: dict) -> tuple:
    return tuple(sorted(((k, m) for k, m in d.items() if m), key=lambda t: str(t[0])))


def _sorted_powers(d: dict) -> tuple:
    return tuple(sorted(((b, e) for b, e in d.items() if not e.is_zero()), key=lambda t: t[0]))


def gamma_R(z, m: int = 1) -> GammaProduct:
    return GammaProduct.make(1, {("R", _sf(z)): m})


def gamma_C(z, m: int = 1) -> GammaProduct:
    return GammaProduct.make(1, {("C", _sf(z)): m})


def euler_gamma(z, m: int = 1) -> GammaProduct:
    return GammaProduct.make(1, {("G", _sf(z)): m})


def gamma_normalize(g: GammaProduct) -> GammaProduct:
    """Canonical form of a Gamma product; idempotent.

    Every factor is rewritten through the Euler Gamma function.  Arguments
    whose s-coefficient is nonzero are brought to the common coefficient
    +-1/B (B the least common multiple of the coefficient denominators) by the
    Gauss multiplication formula; the rational constant part of every argument
    is then moved into (0, 1] with Gamma(z + 1) = z Gamma(z).  Gamma(1) = 1 and
    Gamma(1/2) = pi**(1/2) are evaluated, integer bases are split into primes
    with integral constant exponents folded into the rational part, and i**2 = -1.
    """
    rational = g.rational
    powers = {b: e for b, e in g.powers}
    euler = {}

    def add_power(base, e):
        for b, k in _prime_split(base):
            powers[b] = powers.get(b, const(0)) + _sf(e) * k

    def add_euler(z, m):
        euler[z] = euler.get(z, 0) + m

    for (kind, z), m in g.gammas:
        if kind == "G":
            add_euler(z, m)
        elif kind == "C":
            # Gamma_C(z) = 2 (2 pi)**(-z) Gamma(z)
            rational = rational * Fraction(2) ** m
            add_power(2, -z * m)
            add_power("pi", -z * m)
            add_euler(z, m)
        else:
            # Gamma_R(z) = pi**(-z/2) Gamma(z/2)
            add_power("pi", -z * m / 2)
            add_euler(z / 2, m)

    coeffs = [_s_coefficient(z) for z, m in euler.items() if m]
    B = 1
    for c in coeffs:
        if c != 0:
            B = B * c.denominator // _gcd(B, c.denominator)

    multiplied = {}
    for z, m in euler.items():
        if m == 0:
            continue
        c = _s_coefficient(z)
        n = abs(c) * B if c != 0 else 1
        n = int(n)
        if n == 1:
            multiplied[z] = multiplied.get(z, 0) + m
            continue
        # Gamma(n u) = (2 pi)**((1 - n)/2) n**(n u - 1/2) prod_k Gamma(u + k/n)
        u = z / n
        add_power(2, Fraction(1 - n, 2) * m)
        add_power("pi", Fraction(1 - n, 2) * m)
        add_power(n, (z - Fraction(1, 2)) * m)
        for k in range(n):
            w = u + Fraction(k, n)
            multiplied[w] = multiplied.get(w, 0) + m

    reduced = {}
    for z, m in multiplied.items():
        if m == 0:
            continue
        c = _constant_part(z)
        shift = -((-c).numerator // (-c).denominator) - 1  # c = c0 + shift with 0 < c0 <= 1
        base = z - shift
        if shift > 0:
            for j in range(shift):
                rational = rational * (base + j) ** m
        elif shift < 0:
            for j in range(1, -shift + 1):
                rational = rational / (base - j) ** m
        if base == 1:
            continue
        if base == Fraction(1, 2):
            add_power("pi", Fraction(m, 2))
            continue
        reduced[base] = reduced.get(base, 0) + m

    for b in list(powers):
        if b in ("pi", "D"):
            continue
        e = powers[b]
        c = _constant_part(e)
        whole = c.numerator // c.denominator
        if whole:
            rational = rational * Fraction(int(b)) ** whole
            powers[b] = e - whole
    i_power = g.i_power % 4
    if i_power >= 2:
        rational = -rational
        i_power -= 2
    gammas = {("G", z): m for z, m in reduced.items() if m}
    return GammaProduct(rational, _sorted_items(gammas), _sorted_powers(powers), i_power,
                        _sorted_items(dict(g.atoms)))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _s_coefficient(z: SymbolicFunction) -> Fraction:
    if "s" not in z.symbols:
        return Fraction(0)
    coeffs = z.coefficients_in("s")
    if len(coeffs) != 2 or not coeffs[1].is_constant():
        raise ValueError(f"Gamma argument {z} is not affine in s with a rational slope")
    return coeffs[1].to_fraction()


def _prime_split(base):
    """[(prime or symbolic base name, multiplicity)] for a power base."""
    if isinstance(base, str) and not base.isdigit():
        return [(base, 1)]
    n = int(base)
    if n < 1:
        raise ValueError("integer bases must be positive")
    out = []
    d = 2
    while d * d <= n:
        k = 0
        while n % d == 0:
            n //= d
            k += 1
        if k:
            out.append((str(d), k))
        d += 1
    if n > 1:
        out.append((str(n), 1))
    return out


# archimedean representations ------------------------------------------------------

@dataclass(frozen=True)
class DiscreteSeries:
    """Discrete series with Harish-Chandra parameter p >= 1 and central parameter mu = q/2."""

    p: int
    q: Union[int, Fraction, SymbolicFunction] = 0

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 1:
            raise ValueError("a discrete series needs an integer p >= 1")

    @property
    def mu(self):
        return _sf(self.q) / 2

    def weight_parity(self) -> int:
        return (self.p + 1) % 2

    def has_weight(self, k: int) -> bool:
        return abs(k) >= self.p + 1 and (k - self.p - 1) % 2 == 0


@dataclass(frozen=True)
class PrincipalSeries:
    """beta1 x beta2 with beta1(a) = a**((q+p)/2), beta2(a) = a**((q-p)/2) for a > 0,
    and weights of the given parity."""

    p: Union[int, Fraction, SymbolicFunction] = field(default_factory=lambda: SymbolicFunction.var("p"))
    q: Union[int, Fraction, SymbolicFunction] = 0
    parity: int = 0

    def weight_parity(self) -> int:
        return self.parity % 2

    def has_weight(self, k: int) -> bool:
        return (k - self.parity) % 2 == 0


ArchTauType = Union[DiscreteSeries, PrincipalSeries]


def _abs(x) -> Fraction:
    x = _sf(x)
    if not x.is_constant():
        raise CaseMismatch(f"|{x}| needs a numeric value")
    return abs(x.to_fraction())


def arch_pi_tau_factor(l: int, tau: ArchTauType, s=S):
    """(L(s, pi x tau~), eps(s, pi x tau~, psi**-1)) for the scalar weight-l lowest weight pi."""
    s = _sf(s)
    if l < 2:
        raise ValueError("the minimal weight l must be >= 2")
    if isinstance(tau, DiscreteSeries):
        p, mu = tau.p, tau.mu
        h = Fraction(1, 2)
        L = (gamma_C(s - mu + Fraction(p, 2) + h) * gamma_C(s - mu + Fraction(p, 2) - h)
             * gamma_C(s - mu + l - Fraction(3, 2) + Fraction(p, 2))
             * gamma_C(s - mu + abs(l - Fraction(3, 2) - Fraction(p, 2))))
        return L, GammaProduct.i(2 * l + 3 * p - 3 + abs(2 * l - 3 - p))
    p, q = _sf(tau.p), _sf(tau.q)
    L = (gamma_C(s + (1 - q - p) / 2) * gamma_C(s + (1 - q + p) / 2)
         * gamma_C(s + l - (q + p + 3) / 2) * gamma_C(s + l - (q - p + 3) / 2))
    return L, GammaProduct()


def arch_triple_factor(tau: ArchTauType, s=S):
    """(L, eps) for tau x AI(Lambda) x chi with Lambda trivial."""
    s = _sf(s)
    if isinstance(tau, DiscreteSeries):
        return gamma_C(s - tau.mu + Fraction(tau.p, 2), 2), GammaProduct.make((-1) ** (tau.p + 1))
    p, q = _sf(tau.p), _sf(tau.q)
    return gamma_C(s - (q + p) / 2) * gamma_C(s - (q - p) / 2), GammaProduct.make(-1)


def arch_rho_factor(l: int, n: int, s=S):
    """(L(s, pi_infinity, rho_n), eps) for the weight-l lowest weight representation."""
    s = _sf(s)
    h = Fraction(1, 2)
    if n == 1:
        return gamma_R(s), GammaProduct()
    if n == 4:
        return gamma_C(s + h) * gamma_C(s + l - 3 * h), GammaProduct.make((-1) ** l)
    if n == 5:
        return gamma_R(s) * gamma_C(s + l - 1) * gamma_C(s + l - 2), GammaProduct()
    if n == 10:
        return (gamma_R(s + 1, 2) * gamma_C(s + 1) * gamma_C(s + l - 1) * gamma_C(s + l - 2)
                * gamma_C(s + 2 * l - 3)), GammaProduct()
    if n == 14:
        return (gamma_R(s, 2) * gamma_C(s + 1) * gamma_C(s + l - 1) * gamma_C(s + l - 2)
                * gamma_C(s + 2 * l - 2) * gamma_C(s + 2 * l - 3) * gamma_C(s + 2 * l - 4)), GammaProduct()
    if n == 16:
        return (gamma_C(s + h, 2) * gamma_C(s + l - h) * gamma_C(s + l - 3 * h, 2) * gamma_C(s + l - 5 * h)
                * gamma_C(s + 2 * l - 5 * h) * gamma_C(s + 2 * l - 7 * h)), GammaProduct.make(-1)
    raise UnknownRepresentation(f"no table row for dimension {n}")


# intertwining constant and zeta integral -----------------------------------------

def _case_of(l: int, tau: ArchTauType) -> str:
    if tau.has_weight(l):
        return "B"
    if tau.has_weight(l - 1):
        return "C"
    return "A"


def arch_K(case: str, l: int, tau: ArchTauType, s=S) -> GammaProduct:
    """The archimedean intertwining constant K(s) in Case A, B or C."""
    s = _sf(s)
    if _case_of(l, tau) != case:
        raise CaseMismatch(f"tau and l={l} are in Case {_case_of(l, tau)}, not {case}")
    p, q = _sf(tau.p), _sf(tau.q)
    h = Fraction(1, 2)
    t = 3 * s - q / 2
    head = GammaProduct.make(4, powers={"pi": Fraction(5, 2)}) * euler_gamma(t + h) * euler_gamma(t)
    if case == "A":
        l1 = tau.p + 1
        return (head * GammaProduct.i(2 * l - l1)
                / (GammaProduct.make((t + Fraction(l1, 2) - h) ** 2)
                   * euler_gamma(t + Fraction(l1, 2) + 3 * h - l) * euler_gamma(t + l - Fraction(l1, 2) - h)))
    if case == "B":
        return (head * GammaProduct.i(l)
                / (GammaProduct.make((t + p / 2) * (t - p / 2))
                   * euler_gamma(t - Fraction(l, 2) + h) * euler_gamma(t + Fraction(l, 2) + h)))
    ratio = (t - Fraction(l, 2)) * (t - 1 - p / 2) / ((t + 1 + p / 2) * (t + p / 2) * (t - p / 2))
    return (head * GammaProduct.make(-ratio, i_power=l + 1)
            / (euler_gamma(t + 1 - Fraction(l, 2)) * euler_gamma(t + 1 + Fraction(l, 2))))


def kappa_atom(l1: int) -> str:
    """Name of the formal product kappa * a_plus at GL2 weight l1."""
    return f"kappa*a+[{l1}]"


def kappa_ratio(l: int, tau: ArchTauType) -> SymbolicFunction:
    """kappa*a+ at weight l-1 divided by kappa*a+ at weight l+1 (when l has the other parity)."""
    if tau.has_weight(l):
        raise CaseMismatch("the ratio needs l of the other parity than the weights of tau")
    return -(_sf(tau.p) + l) / 2


def arch_Y_term(l: int, l1: int, tau: ArchTauType, s=S) -> GammaProduct:
    """Y_{l, l1, p, q}(s) with kappa*a+ at weight l1 as a formal atom."""
    s = _sf(s)
    p, q = _sf(tau.p), _sf(tau.q)
    h = Fraction(1, 2)
    u = 0 if l1 % 2 == 0 else h
    dist = abs(l - l1)
    common = (GammaProduct.atom(kappa_atom(l1))
              * GammaProduct.make(1, powers={"D": -3 * s - Fraction(l, 2) + q / 2,
                                             "pi": 1 + q / 2 + Fraction(l1, 2)}))
    lin = 3 * s + Fraction(l + dist, 2) - h - q / 2
    if isinstance(tau, DiscreteSeries):
        return (common * GammaProduct.make((3 * s - q / 2 + p / 2) / lin,
                                           powers={"2": q - l + Fraction(l1, 2) + u})
                * gamma_C(3 * s + l - 1 - p / 2 - q / 2) * gamma_C(3 * s + h - q / 2 + u)
                / (gamma_C(3 * s + h - q / 2 + abs(l - Fraction(3, 2) - Fraction(tau.p, 2)))
                   * gamma_C(3 * s + l - Fraction(l1, 2) - h - q / 2)))
    return (common * GammaProduct.make(1 / lin, powers={"2": q - 1 - l + Fraction(l1, 2) + u})
            * gamma_C(3 * s + h - q / 2 + u) / gamma_C(3 * s + l - Fraction(l1, 2) - h - q / 2))


def arch_Y(case: str, l: int, tau: ArchTauType, s=S):
    """Y(s) for the distinguished vector of the case.

    Cases A and B give a single GammaProduct.  Case C gives a list of two terms
    whose sum is Y(s); the second is rewritten with the kappa ratio so that
    both carry the atom at weight l + 1.
    """
    s = _sf(s)
    if _case_of(l, tau) != case:
        raise CaseMismatch(f"tau and l={l} are in Case {_case_of(l, tau)}, not {case}")
    if case == "A":
        return arch_Y_term(l, tau.p + 1, tau, s)
    if case == "B":
        return arch_Y_term(l, l, tau, s)
    first = arch_Y_term(l, l + 1, tau, s)
    second = arch_Y_term(l, l - 1, tau, s) * GammaProduct.make(3 * s - (_sf(tau.p) + _sf(tau.q)) / 2)
    second = second / GammaProduct.atom(kappa_atom(l - 1)) * GammaProduct.atom(kappa_atom(l + 1))
    second = second * GammaProduct.make(kappa_ratio(l, tau))
    return [first, second]


def _chi_data(tau: ArchTauType, s):
    """L and eps of chi restricted to R^x = omega_tau**-1 = sgn**k (q = 0)."""
    k = tau.weight_parity()
    return (lambda z: gamma_R(z + k)), GammaProduct.i(k), k


def arch_X(case: str, l: int, tau: ArchTauType) -> GammaProduct:
    """X(s) assembled from K, the L- and eps-tables and Y-hat(-s)/Y(s), for q = 0."""
    if case not in ("A", "B"):
        raise CaseMismatch("the X factor is assembled only in Cases A and B")
    if _sf(tau.q) != 0:
        raise CaseMismatch("the X factor check assumes q = 0")
    s = S
    K = arch_K(case, l, tau, s)
    chi_L, chi_eps, _ = _chi_data(tau, s)
    T_up, T_eps = arch_triple_factor(tau, 3 * s + 1)
    T_down, _ = arch_triple_factor(tau, 3 * s)
    bracket = chi_L(6 * s + 1) * T_up / (chi_L(6 * s) * T_down)
    Y = arch_Y(case, l, tau, s)
    # the dual data twist tau by omega_tau**-1, which keeps p and q = 0
    Y_hat_minus = Y.substitute({"s": -s})
    return K * bracket * chi_eps * T_eps * Y_hat_minus / Y


def arch_X_target(l: int, tau: ArchTauType) -> GammaProduct:
    """-omega_tau(-D)**-1 eps(s, pi~ x tau~, psi**-1) D**(6s) with q = 0."""
    k = tau.weight_parity()
    _, eps = arch_pi_tau_factor(l, tau)
    return GammaProduct.make(-((-1) ** k), powers={"D": 6 * S}) * eps


def arch_X_check(case: str, l: int, tau: ArchTauType):
    """(equal, X, target) for the archimedean X-factor identity."""
    X = arch_X(case, l, tau)
    target = arch_X_target(l, tau)
    return X.equals(target), X.normalize(), target.normalize()
