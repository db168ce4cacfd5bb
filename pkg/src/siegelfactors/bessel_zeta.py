"""Spherical Bessel generating function, the non-archimedean local zeta integral,
the intertwining constant K(s) and the functional-equation factor X(s).

All non-archimedean quantities are rational functions in ``v`` (with q = v**2)
and ``X`` (= q**(-s)), together with symbols for Satake parameters and
character values.  The local zeta integral is computed twice: once as a power
series assembled from the Bessel generating function and the newform
Whittaker values, and once from the closed form as a product of L-factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .algebra import SymbolicFunction, TruncatedSeries, const, series_coefficients, substitute
from .localfactors import (
    CENTER,
    INERT,
    SPLIT,
    Affine,
    BothRamPS,
    EpsilonAtom,
    EpsilonMonomial,
    GL1Char,
    GL2Type,
    LExtensionType,
    RamPS,
    RamTwistSteinberg,
    Supercuspidal,
    UnramLambda,
    UnramPS,
    UnramTwistSteinberg,
    V,
    X,
    at_shift,
    central_character,
    central_conductor,
    epsilon_shift,
    gl1_factor,
    newform_whittaker_value,
    triple_conv_factor,
    twist,
)
from .satake import LocalFactor, SatakeQuadruple, gsp4_gl2_unramified_factor

__all__ = [
    "UnsupportedTau",
    "UnsupportedCombination",
    "ReconstructionMismatch",
    "SuganoData",
    "ZetaContext",
    "sugano_series",
    "sugano_generating_function",
    "local_zeta_series",
    "zeta_closed_form",
    "y_factor",
    "chi_base",
    "intertwining_K",
    "x_factor",
    "x_lemma_target",
    "compare_x",
    "normalize_additive",
    "DEFAULT_ORDER",
    "Y_VAR",
    "Z_VAR",
]

DEFAULT_ORDER = 13
Y_VAR = SymbolicFunction.var("y")
Z_VAR = SymbolicFunction.var("Z")  # stands for X**3 in the zeta sum


class UnsupportedTau(ValueError):
    """The zeta integral for unramified tau needs Bessel values off the l-axis."""


class UnsupportedCombination(ValueError):
    """No closed form is available for this combination of tau and extension type."""


class ReconstructionMismatch(ArithmeticError):
    """The reconstructed rational function disagrees with extra series terms."""


@dataclass(frozen=True)
class SuganoData:
    """Unramified GSp4 data for the spherical Bessel function.

    The Satake parameters are {a, b, w/a, w/b} where w is the central value,
    forced to equal the restriction of Lambda to the base field at a uniformizer.
    """

    ext: LExtensionType
    lam: UnramLambda
    a: SymbolicFunction = field(default_factory=lambda: SymbolicFunction.var("a"))
    b: SymbolicFunction = field(default_factory=lambda: SymbolicFunction.var("b"))

    @classmethod
    def symbolic(cls, ext: LExtensionType) -> "SuganoData":
        return cls(ext, UnramLambda.symbolic(ext))

    @property
    def central(self) -> SymbolicFunction:
        return self.lam.base_value

    @property
    def satake(self) -> SatakeQuadruple:
        return SatakeQuadruple(self.a, self.b, self.central)

    def numerator(self, y: SymbolicFunction = Y_VAR) -> SymbolicFunction:
        """H(y): depends only on the extension type and Lambda."""
        L = self.lam.values
        if self.ext.kind == "inert":
            return 1 - V ** -8 * L[0] * y ** 2
        if self.ext.kind == "ramified":
            return 1 - V ** -4 * L[0] * y
        return 1 - V ** -4 * (L[0] + L[1]) * y + V ** -8 * L[0] * L[1] * y ** 2

    def denominator(self, y: SymbolicFunction = Y_VAR) -> SymbolicFunction:
        """Q(y) = prod over the Satake parameters of (1 - gamma q**(-3/2) y)."""
        out = const(1)
        for g in self.satake.multiset():
            out = out * (1 - g * V ** -3 * y)
        return out


def sugano_generating_function(d: SuganoData, y: SymbolicFunction = Y_VAR) -> SymbolicFunction:
    return d.numerator(y) / d.denominator(y)


def sugano_series(d: SuganoData, n: int) -> TruncatedSeries:
    """First n values B(h(l, 0)) as coefficients of the generating function in y."""
    return series_coefficients(sugano_generating_function(d), "y", n)


@dataclass(frozen=True)
class ZetaContext:
    sugano: SuganoData
    tau: GL2Type
    order: int = DEFAULT_ORDER

    @property
    def omega_pi(self) -> SymbolicFunction:
        return self.sugano.central


def chi_base(tau: GL2Type, omega_pi) -> GL1Char:
    """Restriction of chi to the base field: the inverse of omega_pi * omega_tau."""
    c = central_character(tau)
    if c.ramified:
        return GL1Char(None, True)
    return GL1Char(1 / (SymbolicFunction.coerce(omega_pi) * c.value), False)


def _w_sharp_ratio_sequence(ctx: ZetaContext, n: int) -> list:
    """Coefficients c_l with the zeta sum equal to sum B(l) c_l, written in Z = X**3."""
    w = ctx.omega_pi
    W = ctx.tau.central_value
    step = V ** 3 * Z_VAR / (w * W)  # q**(3l) q**(-3(s+1/2)l) (omega_pi omega_tau)(varpi)**(-l)
    return [step ** l * newform_whittaker_value(ctx.tau, l) for l in range(n)]


def _geometric_ratio(seq: list) -> SymbolicFunction:
    """Ratio t with seq[l] = t**l, verified on every supplied term."""
    if seq[0] != 1:
        raise ReconstructionMismatch("the l=0 term is not 1")
    t = seq[1]
    power = const(1)
    for l, c in enumerate(seq):
        if c != power:
            raise ReconstructionMismatch(f"term {l} is not the {l}-th power of {t}")
        power = power * t
    return t


def local_zeta_series(ctx: ZetaContext) -> SymbolicFunction:
    """The local zeta integral from the Bessel generating function and Whittaker values.

    The Whittaker sequence is a geometric progression in X**3 for every
    ramified tau.  Its ratio is detected from ``order`` terms and checked on two
    more; the generating function is then composed with it and the composition
    is checked against the termwise product series on ``order + 2`` terms.
    """
    if isinstance(ctx.tau, UnramPS):
        raise UnsupportedTau("unramified tau needs Bessel values B(h(l, m)) with m > 0")
    n = ctx.order + 2
    seq = _w_sharp_ratio_sequence(ctx, n)
    t = _geometric_ratio(seq)
    composed = sugano_generating_function(ctx.sugano, t)
    expected = sugano_series(ctx.sugano, n)
    got = series_coefficients(composed, "Z", n)
    for l in range(n):
        if got[l] != expected[l] * seq[l] / Z_VAR ** l:
            raise ReconstructionMismatch(f"coefficient {l} of the zeta sum disagrees")
    return substitute(composed, {"Z": X ** 3})


def _tau_dual_roots(tau: GL2Type) -> list:
    """Reciprocal roots of L(s, tau~) at unramified constituents (q-shift included)."""
    if isinstance(tau, UnramPS):
        return [1 / tau.b1, 1 / tau.b2]
    if isinstance(tau, RamPS):
        return [1 / tau.b1]
    if isinstance(tau, UnramTwistSteinberg):
        return [1 / tau.omega * V ** -1]
    return []


def pi_tau_factor(ctx: ZetaContext) -> LocalFactor:
    """L(s, pi~ x tau~) as a factor in X."""
    inv = ctx.sugano.satake.inverted()
    out = LocalFactor.trivial()
    for t in _tau_dual_roots(ctx.tau):
        out = out * gsp4_gl2_unramified_factor(inv, t)
    return out


def _l6(chi: GL1Char, x_power: int = 6, v_power: int = 2) -> SymbolicFunction:
    return at_shift(gl1_factor(chi), x_power, v_power)


def y_factor(ctx: ZetaContext) -> SymbolicFunction:
    """Y(s) from the case table of the local zeta integral."""
    tau, ext, lam = ctx.tau, ctx.sugano.ext, ctx.sugano.lam
    chi = chi_base(tau, ctx.omega_pi)
    if isinstance(tau, UnramPS):
        return const(1)
    l6 = _l6(chi)
    if isinstance(tau, RamPS):
        if ext.kind == "ramified" and tau.beta2.unramified_after_quadratic_twist:
            root = lam.values[0] / (ctx.omega_pi * tau.beta2.value)
            return l6 / (1 - root * X ** 3 * V ** -2)
        return l6
    if isinstance(tau, UnramTwistSteinberg):
        return l6
    return l6 * at_shift(triple_conv_factor(tau, lam, ext), 3, 2)


def zeta_closed_form(ctx: ZetaContext) -> SymbolicFunction:
    """L(3s+1/2, pi~ x tau~) / (L(6s+1, chi) L(3s+1, tau x AI(Lambda) x chi)) * Y(s)."""
    if isinstance(ctx.tau, UnramPS):
        raise UnsupportedTau("unramified tau needs Bessel values B(h(l, m)) with m > 0")
    chi = chi_base(ctx.tau, ctx.omega_pi)
    main = at_shift(pi_tau_factor(ctx), 3, 1)
    l6 = _l6(chi)
    tri = at_shift(triple_conv_factor(ctx.tau, ctx.sugano.lam, ctx.sugano.ext), 3, 2)
    return main / (l6 * tri) * y_factor(ctx)


# intertwining constant and the X factor -----------------------------------------

OMEGA_C = "omega_tau(c)"
OMEGA_D = "omega_tau(d)"
QUAD_CHAR_MINUS_ONE = "chi_L/F(-1)"


def _eps_tau_dual(argument: Affine, additive: str, n: int) -> EpsilonAtom:
    return EpsilonAtom("tau~", argument, additive, n, -1)


def _eps_omega_inverse(argument: Affine, additive: str, tau: GL2Type) -> EpsilonAtom:
    return EpsilonAtom("omega_tau^-1", argument, additive, central_conductor(tau), -1)


def _lam_for(ext: LExtensionType, lam: Optional[UnramLambda]) -> UnramLambda:
    return lam if lam is not None else UnramLambda.trivial_on_base(ext)


def intertwining_K(tau: GL2Type, ext: LExtensionType, lam: Optional[UnramLambda] = None):
    """K(s) as (rational part in X and v, epsilon monomial).

    For unramified tau this is the Gindikin-Karpelevich ratio times q**(-delta);
    for ramified tau over an unramified or split extension it is the ratio with
    L(1-6s, chi**-1) in the denominator, times the explicit epsilon data.
    """
    lam = _lam_for(ext, lam)
    chi = chi_base(tau, lam.base_value)
    tri = triple_conv_factor(tau, lam, ext)
    n = tau.conductor
    upper = _l6(chi, 6, 0) * at_shift(tri, 3, 0)
    if n == 0:
        rational = upper / (_l6(chi, 6, 2) * at_shift(tri, 3, 2))
        return rational, EpsilonMonomial.q_power(0, -ext.delta)
    if ext.kind == "ramified":
        raise UnsupportedCombination("K(s) for ramified tau over a ramified extension is not available")
    dual_l6 = _l6(GL1Char(None if chi.ramified else 1 / chi.value, chi.ramified), -6, 2)
    rational = upper / (dual_l6 * at_shift(tri, 3, 2))
    eps = EpsilonMonomial.make(
        ext.quadratic_character_at_uniformizer ** n,
        {
            OMEGA_C: 2,
            OMEGA_D: -1,
            _eps_tau_dual(Affine.of(3, 1), "psi^-c", n): 2,
            _eps_omega_inverse(Affine.of(6, 0), "psi^-c", tau): -1,
        },
    )
    return rational, eps


def _dual_y_at_minus_s(tau: GL2Type, ext: LExtensionType, lam: UnramLambda) -> SymbolicFunction:
    """Y for the data (chi_bar**-1, chi chi_bar chi_0, chi tau), evaluated at -s."""
    chi = chi_base(tau, lam.base_value)
    if chi.ramified:
        if isinstance(tau, RamPS) and ext.kind == "ramified" and tau.beta2.unramified_after_quadratic_twist:
            raise UnsupportedCombination("the dual Y factor needs a ramified twist of tau")
        dual = ZetaContext(SuganoData(ext, lam), tau)
        y = y_factor(dual) if isinstance(tau, (UnramPS, RamPS)) else at_shift(triple_conv_factor(tau, lam, ext), 3, 2)
    else:
        dual = ZetaContext(SuganoData(ext, lam), twist(tau, chi.value))
        y = y_factor(dual)
    return substitute(y, {"X": 1 / X})


def _y_for_x(tau: GL2Type, ext: LExtensionType, lam: UnramLambda) -> SymbolicFunction:
    return y_factor(ZetaContext(SuganoData(ext, lam), tau))


def _eps_triple(tau: GL2Type, ext: LExtensionType, lam: UnramLambda) -> EpsilonMonomial:
    """eps(3s, tau x AI(Lambda) x chi, psi**-1)."""
    n = tau.conductor
    if n > 0:
        if ext.kind == "ramified":
            raise UnsupportedCombination("triple epsilon for ramified tau over a ramified extension")
        return EpsilonMonomial.make(
            ext.quadratic_character_at_uniformizer ** n,
            {_eps_tau_dual(Affine.of(3, 0), "psi^-1", n): 2},
        )
    if ext.kind != "ramified":
        return EpsilonMonomial()
    # tau chi is a sum of two unramified characters mu_j; each twist of AI(Lambda)
    # contributes mu_j(varpi)**delta times eps(3s, AI(Lambda)).
    chi = chi_base(tau, lam.base_value)
    mu_product = tau.central_value * chi.value ** 2
    atom = EpsilonAtom("AI(Lambda)", Affine.of(3, 0), "psi^-1", ext.delta, None)
    return EpsilonMonomial.make(mu_product ** ext.delta, {atom: 2})


def _eps_chi(tau: GL2Type) -> EpsilonMonomial:
    """eps(6s, chi restricted to the base field, psi**-1); chi = omega_tau**-1 here."""
    if tau.conductor == 0:
        return EpsilonMonomial()
    return EpsilonMonomial.atom(_eps_omega_inverse(Affine.of(6, 0), "psi^-1", tau))


def normalize_additive(e: EpsilonMonomial) -> EpsilonMonomial:
    """Rewrite eps(., rho, psi**-c) as omega_rho(c) eps(., rho, psi**-1).

    The central character of every rho here is a power of omega_tau, recorded
    on the atom, so the correction is a power of the formal atom omega_tau(c).
    """
    out = EpsilonMonomial(e.coefficient, (), e.q_exponent)
    for atom, k in e.atoms:
        if isinstance(atom, EpsilonAtom) and atom.additive == "psi^-c":
            if atom.central_power is None:
                raise UnsupportedCombination(f"central character of {atom.rep} is not recorded")
            moved = replace(atom, additive="psi^-1")
            out = out * EpsilonMonomial.make(1, {moved: k, OMEGA_C: atom.central_power * k})
        else:
            out = out * EpsilonMonomial.make(1, {atom: k})
    return out


def x_factor(tau: GL2Type, ext: LExtensionType, lam: Optional[UnramLambda] = None, c_is_one: bool = True):
    """X(s) as (rational part, epsilon monomial with all atoms at s = 1/2 and psi**-1).

    With ``c_is_one`` the unit c of the Bessel matrix is 1 (as for the matrices
    S(-D) used globally), so omega_tau(c) = 1.
    """
    lam = _lam_for(ext, lam)
    k_rat, k_eps = intertwining_K(tau, ext, lam)
    chi = chi_base(tau, lam.base_value)
    tri = triple_conv_factor(tau, lam, ext)
    bracket = (_l6(chi, 6, 2) * at_shift(tri, 3, 2)) / (_l6(chi, 6, 0) * at_shift(tri, 3, 0))
    rational = k_rat * bracket * _dual_y_at_minus_s(tau, ext, lam) / _y_for_x(tau, ext, lam)
    eps = k_eps * _eps_chi(tau) * _eps_triple(tau, ext, lam)
    eps = epsilon_shift(normalize_additive(eps), CENTER)
    if c_is_one:
        eps = eps.specialize(OMEGA_C, 1)
    return rational, eps


def x_lemma_target(tau: GL2Type, ext: LExtensionType, lam: Optional[UnramLambda] = None,
                   c_is_one: bool = True) -> EpsilonMonomial:
    """The closed form asserted for X(s) (its rational part is 1)."""
    lam = _lam_for(ext, lam)
    n = tau.conductor
    if isinstance(tau, UnramPS):
        if ext.kind != "ramified":
            return EpsilonMonomial()
        chi = chi_base(tau, lam.base_value)
        return EpsilonMonomial.make(chi.value ** ext.delta, {QUAD_CHAR_MINUS_ONE: 1},
                                    Affine.of(-6 * ext.delta, 0))
    if ext.kind == "ramified":
        raise UnsupportedCombination("no closed form for ramified tau over a ramified extension")
    target = EpsilonMonomial.make(
        1,
        {OMEGA_C: 2, OMEGA_D: -1, _eps_tau_dual(CENTER, "psi^-1", n): 4},
        Affine.of(-12 * n, 0),
    )
    if c_is_one:
        target = target.specialize(OMEGA_C, 1)
    return target


def compare_x(tau: GL2Type, ext: LExtensionType, lam: Optional[UnramLambda] = None,
              c_is_one: bool = True):
    """Compare X(s) with the asserted closed form.

    Returns ``(status, witness)`` with status ``"pass"`` when the rational part
    is 1 and the epsilon monomials agree, ``"flagged"`` when they agree in the
    rational part, the q-exponent and the coefficient but differ in formal unit
    atoms that the formulas do not pin down, and ``"fail"`` otherwise.
    """
    rational, eps = x_factor(tau, ext, lam, c_is_one)
    target = x_lemma_target(tau, ext, lam, c_is_one)
    if rational != 1:
        return "fail", f"rational part {rational}"
    if eps == target:
        return "pass", str(eps)
    if eps.q_exponent == target.q_exponent and eps.coefficient == target.coefficient:
        return "flagged", f"{eps} vs {target}"
    return "fail", f"{eps} vs {target}"
