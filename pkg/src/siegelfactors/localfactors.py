"""Non-archimedean L- and epsilon-factor evaluators.

Everything is expressed in the symbols ``v`` (square root of the residue field
size q) and ``X`` (q**(-s)).  Character values at a uniformizer are symbolic
functions, usually plain symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Union

from .algebra import SymbolicFunction, const, substitute
from .satake import LocalFactor

__all__ = [
    "NegativeIndex",
    "UnknownConductor",
    "LExtensionType",
    "INERT",
    "SPLIT",
    "ramified_extension",
    "RamChar",
    "UnramPS",
    "RamPS",
    "UnramTwistSteinberg",
    "RamTwistSteinberg",
    "Supercuspidal",
    "BothRamPS",
    "GL2Type",
    "UnramLambda",
    "GL1Char",
    "Affine",
    "EpsilonAtom",
    "EpsilonMonomial",
    "gl1_factor",
    "newform_whittaker_value",
    "triple_conv_factor",
    "epsilon_shift",
    "twist",
    "central_character",
    "central_conductor",
    "at_shift",
    "V",
    "X",
]

V = SymbolicFunction.var("v")
X = SymbolicFunction.var("X")


class NegativeIndex(ValueError):
    """Whittaker values were requested at a negative index."""


class UnknownConductor(ValueError):
    """An epsilon factor cannot be moved because its conductor is unknown."""


def _sf(x) -> SymbolicFunction:
    if isinstance(x, str):
        return SymbolicFunction.var(x)
    return SymbolicFunction.coerce(x)


# quadratic extension data ---------------------------------------------------

@dataclass(frozen=True)
class LExtensionType:
    """Behaviour of the prime in the quadratic extension."""

    kind: str
    delta: int = 0

    def __post_init__(self):
        if self.kind not in ("inert", "split", "ramified"):
            raise ValueError(f"unknown extension kind {self.kind!r}")
        if self.kind == "ramified" and self.delta < 1:
            raise ValueError("a ramified extension has discriminant valuation >= 1")
        if self.kind != "ramified" and self.delta != 0:
            raise ValueError("discriminant valuation is 0 unless ramified")

    @property
    def legendre(self) -> int:
        return {"inert": -1, "split": 1, "ramified": 0}[self.kind]

    @property
    def quadratic_character_at_uniformizer(self) -> int:
        """Value of the quadratic character of the extension at a uniformizer (unramified cases)."""
        if self.kind == "ramified":
            raise ValueError("the quadratic character is ramified")
        return self.legendre


INERT = LExtensionType("inert")
SPLIT = LExtensionType("split")


def ramified_extension(delta: int = 1) -> LExtensionType:
    return LExtensionType("ramified", delta)


@dataclass(frozen=True)
class UnramLambda:
    """Unramified character of the quadratic extension, by its values at uniformizers.

    inert: ``values = (Lambda(varpi),)``; ramified: ``(Lambda(varpi_L),)``;
    split: ``(Lambda_1, Lambda_2)`` for the two primes above p.
    """

    kind: str
    values: tuple

    @classmethod
    def symbolic(cls, ext: LExtensionType) -> "UnramLambda":
        if ext.kind == "split":
            return cls("split", (_sf("L1"), _sf("L2")))
        return cls(ext.kind, (_sf("L"),))

    @classmethod
    def trivial_on_base(cls, ext: LExtensionType, sign: int = 1) -> "UnramLambda":
        """A character with trivial restriction to the base field.

        In the ramified case the value at a uniformizer of the extension squares
        to 1; ``sign`` picks it.
        """
        if ext.kind == "split":
            L1 = _sf("L1")
            return cls("split", (L1, 1 / L1))
        if ext.kind == "inert":
            return cls("inert", (const(1),))
        if sign not in (1, -1):
            raise ValueError("sign must be 1 or -1")
        return cls("ramified", (const(sign),))

    @property
    def base_value(self) -> SymbolicFunction:
        """Value of the restriction to the base field at a uniformizer."""
        if self.kind == "inert":
            return self.values[0]
        if self.kind == "ramified":
            return self.values[0] ** 2
        return self.values[0] * self.values[1]


@dataclass(frozen=True)
class GL1Char:
    """A character of the base field: unramified with a value, or ramified."""

    value: Optional[SymbolicFunction] = None
    ramified: bool = False


def gl1_factor(char: GL1Char) -> LocalFactor:
    if char.ramified:
        return LocalFactor.trivial()
    return LocalFactor.from_roots([_sf(char.value)])


# GL2 representations ----------------------------------------------------------

@dataclass(frozen=True)
class RamChar:
    """A ramified character: value at the uniformizer, conductor exponent, and
    whether its twist by the quadratic character of a ramified extension is unramified."""

    value: SymbolicFunction
    conductor: int = 1
    unramified_after_quadratic_twist: bool = False

    def __post_init__(self):
        if self.conductor < 1:
            raise ValueError("a ramified character has conductor exponent >= 1")


@dataclass(frozen=True)
class UnramPS:
    b1: SymbolicFunction
    b2: SymbolicFunction

    conductor = 0

    @property
    def central_value(self):
        return self.b1 * self.b2


@dataclass(frozen=True)
class RamPS:
    """beta1 x beta2 with beta1 unramified and beta2 ramified."""

    b1: SymbolicFunction
    beta2: RamChar

    @property
    def conductor(self) -> int:
        return self.beta2.conductor

    @property
    def central_value(self):
        return self.b1 * self.beta2.value


@dataclass(frozen=True)
class UnramTwistSteinberg:
    omega: SymbolicFunction

    conductor = 1

    @property
    def central_value(self):
        return self.omega ** 2


@dataclass(frozen=True)
class RamTwistSteinberg:
    conductor: int = 2
    central_value: SymbolicFunction = field(default_factory=lambda: _sf("W"))
    central_conductor: Optional[int] = None  # None: unknown; 0: unramified central character


@dataclass(frozen=True)
class Supercuspidal:
    conductor: int = 2
    central_value: SymbolicFunction = field(default_factory=lambda: _sf("W"))
    central_conductor: Optional[int] = None  # None: unknown; 0: unramified central character


@dataclass(frozen=True)
class BothRamPS:
    beta1: RamChar
    beta2: RamChar

    @property
    def conductor(self) -> int:
        return self.beta1.conductor + self.beta2.conductor

    @property
    def central_value(self):
        return self.beta1.value * self.beta2.value


GL2Type = Union[UnramPS, RamPS, UnramTwistSteinberg, RamTwistSteinberg, Supercuspidal, BothRamPS]


def central_character(tau: GL2Type) -> GL1Char:
    """Central character of ``tau`` as a base-field character."""
    return GL1Char(tau.central_value, central_conductor(tau) != 0)


def central_conductor(tau: GL2Type) -> Optional[int]:
    """Conductor exponent of the central character, or None when it is not determined."""
    if isinstance(tau, (UnramPS, UnramTwistSteinberg)):
        return 0
    if isinstance(tau, RamPS):
        return tau.beta2.conductor
    if isinstance(tau, BothRamPS):
        return None
    return tau.central_conductor


def twist(tau: GL2Type, c) -> GL2Type:
    """Twist by the unramified character with value ``c`` at the uniformizer."""
    c = _sf(c)
    if isinstance(tau, UnramPS):
        return UnramPS(tau.b1 * c, tau.b2 * c)
    if isinstance(tau, RamPS):
        return RamPS(tau.b1 * c, replace(tau.beta2, value=tau.beta2.value * c))
    if isinstance(tau, UnramTwistSteinberg):
        return UnramTwistSteinberg(tau.omega * c)
    if isinstance(tau, BothRamPS):
        return BothRamPS(replace(tau.beta1, value=tau.beta1.value * c),
                         replace(tau.beta2, value=tau.beta2.value * c))
    return replace(tau, central_value=tau.central_value * c ** 2)


def newform_whittaker_value(tau: GL2Type, l: int) -> SymbolicFunction:
    """Value of the normalized newform Whittaker function at diag(varpi**l, 1)."""
    if l < 0:
        raise NegativeIndex(f"index {l} < 0")
    if isinstance(tau, UnramPS):
        total = const(0)
        for k in range(l + 1):
            total = total + tau.b1 ** k * tau.b2 ** (l - k)
        return V ** (-l) * total
    if isinstance(tau, RamPS):
        return tau.beta2.value ** l * V ** (-l)
    if isinstance(tau, UnramTwistSteinberg):
        return tau.omega ** l * V ** (-2 * l)
    return const(1) if l == 0 else const(0)


def triple_conv_factor(tau: GL2Type, lam: UnramLambda, ext: LExtensionType) -> LocalFactor:
    """L(s, tau x AI(Lambda) x chi) in X = q**(-s), with chi on the base field the
    inverse of (central value of pi) * (central character of tau), where the
    central value of pi is Lambda restricted to the base field."""
    if lam.kind != ext.kind:
        raise ValueError("Lambda data does not match the extension type")
    w = lam.base_value
    # unramified constituents of tau twisted by chi, as (value, extra q-power shift in v)
    if isinstance(tau, UnramPS):
        parts = [(1 / (w * tau.b1), 0), (1 / (w * tau.b2), 0)]
        ramified_partner = []
    elif isinstance(tau, RamPS):
        parts = [(1 / (w * tau.b1), 0)]
        ramified_partner = [1 / (w * tau.beta2.value)] if tau.beta2.unramified_after_quadratic_twist else []
    elif isinstance(tau, UnramTwistSteinberg):
        parts = [(1 / (w * tau.omega), -1)]
        ramified_partner = []
    else:
        return LocalFactor.trivial()
    out = LocalFactor.trivial()
    for r, vshift in parts:
        r = r * V ** vshift
        if ext.kind == "inert":
            out = out * LocalFactor.from_denominator([const(1), const(0), -lam.values[0] * r ** 2])
        elif ext.kind == "split":
            out = out * LocalFactor.from_roots([r * lam.values[0], r * lam.values[1]])
        else:
            out = out * LocalFactor.from_roots([r * lam.values[0]])
    if ext.kind == "ramified":
        for r in ramified_partner:
            out = out * LocalFactor.from_roots([r * lam.values[0]])
    return out


def at_shift(f: LocalFactor, x_power: int, v_power: int) -> SymbolicFunction:
    """Rational form of ``f`` evaluated at q**(-(x_power*s + v_power/2))."""
    return substitute(f.rational_form(), {"X": X ** x_power * V ** (-v_power)})


# epsilon factors ----------------------------------------------------------------

@dataclass(frozen=True)
class Affine:
    """alpha*s + beta with exact rational coefficients."""

    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)

    @classmethod
    def of(cls, alpha=0, beta=0) -> "Affine":
        return cls(Fraction(alpha), Fraction(beta))

    def __add__(self, o: "Affine") -> "Affine":
        return Affine(self.alpha + o.alpha, self.beta + o.beta)

    def __sub__(self, o: "Affine") -> "Affine":
        return Affine(self.alpha - o.alpha, self.beta - o.beta)

    def __neg__(self) -> "Affine":
        return Affine(-self.alpha, -self.beta)

    def scale(self, k) -> "Affine":
        return Affine(self.alpha * k, self.beta * k)

    def __str__(self) -> str:
        if self.alpha == 0:
            return str(self.beta)
        a = "" if self.alpha == 1 else ("-" if self.alpha == -1 else f"{self.alpha}*")
        b = "" if self.beta == 0 else (f"+{self.beta}" if self.beta > 0 else f"{self.beta}")
        return f"{a}s{b}"


CENTER = Affine.of(0, Fraction(1, 2))


@dataclass(frozen=True)
class EpsilonAtom:
    """A formal epsilon factor eps(argument, rep, additive character) with known or unknown conductor."""

    rep: str
    argument: Affine = CENTER
    additive: str = "psi^-1"
    conductor: Optional[int] = None
    central_power: Optional[int] = None  # central character = omega_tau ** central_power

    def __str__(self):
        return f"eps({self.argument},{self.rep},{self.additive})"


@dataclass(frozen=True)
class EpsilonMonomial:
    """coefficient * prod(atom**e) * q**(q_exponent).

    Atoms are either EpsilonAtom instances or strings naming formal unit
    constants such as character values ``"omega_tau(c)"``.
    """

    coefficient: SymbolicFunction = field(default_factory=lambda: const(1))
    atoms: tuple = ()  # sorted (atom, exponent) pairs, exponents nonzero
    q_exponent: Affine = Affine()

    @classmethod
    def make(cls, coefficient=1, atoms=None, q_exponent: Affine = Affine()) -> "EpsilonMonomial":
        items = {}
        for atom, e in (atoms or {}).items():
            items[atom] = items.get(atom, 0) + e
        return cls(_sf(coefficient), _canon(items), q_exponent)

    @classmethod
    def atom(cls, atom, exponent: int = 1) -> "EpsilonMonomial":
        return cls.make(1, {atom: exponent})

    @classmethod
    def q_power(cls, alpha=0, beta=0) -> "EpsilonMonomial":
        return cls.make(1, None, Affine.of(alpha, beta))

    def atom_dict(self) -> dict:
        return dict(self.atoms)

    def __mul__(self, o: "EpsilonMonomial") -> "EpsilonMonomial":
        items = self.atom_dict()
        for a, e in o.atoms:
            items[a] = items.get(a, 0) + e
        return EpsilonMonomial(self.coefficient * o.coefficient, _canon(items), self.q_exponent + o.q_exponent)

    def __pow__(self, k: int) -> "EpsilonMonomial":
        return EpsilonMonomial(self.coefficient ** k, tuple((a, e * k) for a, e in self.atoms),
                               self.q_exponent.scale(k))

    def inverse(self) -> "EpsilonMonomial":
        return self ** -1

    def __truediv__(self, o: "EpsilonMonomial") -> "EpsilonMonomial":
        return self * o.inverse()

    def specialize(self, atom, value) -> "EpsilonMonomial":
        """Replace a formal atom by an explicit value."""
        items = self.atom_dict()
        e = items.pop(atom, 0)
        return EpsilonMonomial(self.coefficient * _sf(value) ** e, _canon(items), self.q_exponent)

    def unit_part(self) -> "EpsilonMonomial":
        return EpsilonMonomial(self.coefficient, self.atoms, Affine())

    def __str__(self):
        parts = [] if self.coefficient == 1 else [f"({self.coefficient})"]
        parts += [f"{a}^{e}" if e != 1 else str(a) for a, e in self.atoms]
        if self.q_exponent != Affine():
            parts.append(f"q^({self.q_exponent})")
        return "*".join(parts) or "1"


def _canon(items: dict) -> tuple:
    return tuple(sorted(((a, e) for a, e in items.items() if e), key=lambda t: (str(type(t[0])), str(t[0]))))


def epsilon_shift(e: EpsilonMonomial, to_s: Affine = CENTER) -> EpsilonMonomial:
    """Move every epsilon atom to the argument ``to_s`` using
    eps(s1) = q**((s2 - s1) * conductor) * eps(s2)."""
    out = EpsilonMonomial(e.coefficient, (), e.q_exponent)
    for atom, k in e.atoms:
        if isinstance(atom, EpsilonAtom) and atom.argument != to_s:
            if atom.conductor is None:
                raise UnknownConductor(f"conductor of {atom.rep} is unknown")
            shift = (to_s - atom.argument).scale(atom.conductor * k)
            moved = replace(atom, argument=to_s)
            out = out * EpsilonMonomial.make(1, {moved: k}, shift)
        else:
            out = out * EpsilonMonomial.make(1, {atom: k})
    return out
