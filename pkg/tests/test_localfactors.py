from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegelfactors.algebra import SymbolicFunction, const, symbols
from siegelfactors.localfactors import (
    INERT,
    SPLIT,
    Affine,
    BothRamPS,
    EpsilonAtom,
    EpsilonMonomial,
    GL1Char,
    LExtensionType,
    NegativeIndex,
    RamChar,
    RamPS,
    RamTwistSteinberg,
    Supercuspidal,
    UnknownConductor,
    UnramLambda,
    UnramPS,
    UnramTwistSteinberg,
    at_shift,
    epsilon_shift,
    gl1_factor,
    newform_whittaker_value,
    ramified_extension,
    triple_conv_factor,
)
from siegelfactors.satake import LocalFactor

v, X, u, L, B1, B2, W = symbols("v X u L B1 B2 W")
HALF = Affine.of(0, Fraction(1, 2))


def test_unramified_character_factor():
    assert gl1_factor(GL1Char(const(1))).same_factor(LocalFactor.from_roots([const(1)]))


def test_ramified_character_factor_is_trivial():
    assert gl1_factor(GL1Char(ramified=True)).degree == 0


def test_character_factor_at_shifted_argument():
    value = at_shift(gl1_factor(GL1Char(1 / u)), 6, 2)
    assert value == 1 / (1 - X ** 6 / (u * v ** 2))


def test_supercuspidal_whittaker_values():
    assert newform_whittaker_value(Supercuspidal(), 0) == const(1)
    assert newform_whittaker_value(Supercuspidal(), 1) == const(0)


def test_steinberg_whittaker_value():
    # Omega(varpi)**2 * q**-2 with q = v**2
    assert newform_whittaker_value(UnramTwistSteinberg(W), 2) == W ** 2 / v ** 4


def test_spherical_whittaker_value():
    assert newform_whittaker_value(UnramPS(const(1), const(1)), 1) == 2 / v


def test_negative_index_rejected():
    with pytest.raises(NegativeIndex):
        newform_whittaker_value(UnramPS(B1, B2), -1)


@pytest.mark.parametrize("l", range(1, 7))
def test_spherical_whittaker_recursion(l):
    tau = UnramPS(B1, B2)
    lhs = newform_whittaker_value(tau, l + 1)
    rhs = (B1 + B2) / v * newform_whittaker_value(tau, l) - B1 * B2 / v ** 2 * newform_whittaker_value(tau, l - 1)
    assert lhs == rhs


def test_triple_factor_inert_ramified_principal_series():
    lam = UnramLambda.symbolic(INERT)
    f = triple_conv_factor(RamPS(B1, RamChar(B2)), lam, INERT)
    # the central value of pi is Lambda on the base field, here L
    assert f.denominator_polynomial() == 1 - L * (L * B1) ** -2 * X ** 2


def test_triple_factor_supercuspidal_is_trivial():
    f = triple_conv_factor(Supercuspidal(), UnramLambda.symbolic(INERT), INERT)
    assert f.degree == 0


def test_triple_factor_ramified_extension_partner_root():
    ext = ramified_extension(1)
    tau = RamPS(B1, RamChar(B2, 1, unramified_after_quadratic_twist=True))
    f = triple_conv_factor(tau, UnramLambda.symbolic(ext), ext)
    assert f.degree == 2
    partner = L / (L ** 2 * B2)
    assert any(r == partner for r in f.roots)


@pytest.mark.parametrize("tau, ext, degree", [
    (UnramPS(B1, B2), INERT, 4),
    (UnramPS(B1, B2), SPLIT, 4),
    (UnramPS(B1, B2), ramified_extension(1), 2),
    (RamPS(B1, RamChar(B2)), INERT, 2),
    (RamPS(B1, RamChar(B2)), SPLIT, 2),
    (RamPS(B1, RamChar(B2)), ramified_extension(1), 1),
    (UnramTwistSteinberg(W), INERT, 2),
    (RamTwistSteinberg(), SPLIT, 0),
    (Supercuspidal(), ramified_extension(2), 0),
    (BothRamPS(RamChar(B1), RamChar(B2)), INERT, 0),
])
def test_triple_factor_degrees(tau, ext, degree):
    assert triple_conv_factor(tau, UnramLambda.symbolic(ext), ext).degree == degree


def test_triple_factor_rejects_mismatched_character():
    with pytest.raises(ValueError):
        triple_conv_factor(UnramPS(B1, B2), UnramLambda.symbolic(SPLIT), INERT)


def test_extension_validation():
    with pytest.raises(ValueError):
        LExtensionType("ramified", 0)
    with pytest.raises(ValueError):
        LExtensionType("inert", 1)


def test_shift_with_unramified_data_keeps_exponent():
    atom = EpsilonAtom("rho", Affine.of(3, 1), conductor=0)
    shifted = epsilon_shift(EpsilonMonomial.atom(atom))
    assert shifted.q_exponent == Affine()


@pytest.mark.parametrize("n", [1, 2, 5])
def test_shift_of_twisted_dual_to_center(n):
    atom = EpsilonAtom("tau~", Affine.of(3, 1), "psi^-c", conductor=n)
    shifted = epsilon_shift(EpsilonMonomial.atom(atom))
    assert shifted.q_exponent == (HALF - Affine.of(3, 1)).scale(n)


@pytest.mark.parametrize("a", [1, 3])
def test_shift_of_central_character_to_center(a):
    atom = EpsilonAtom("omega_tau^-1", Affine.of(6, 0), "psi^-c", conductor=a)
    shifted = epsilon_shift(EpsilonMonomial.atom(atom))
    assert shifted.q_exponent == (HALF - Affine.of(6, 0)).scale(a)


def test_shift_needs_known_conductor():
    atom = EpsilonAtom("pi", Affine.of(1, 0))
    with pytest.raises(UnknownConductor):
        epsilon_shift(EpsilonMonomial.atom(atom))


affine = st.builds(Affine.of, st.integers(-6, 6), st.fractions(-3, 3, max_denominator=4))


@settings(max_examples=50, deadline=None)
@given(affine, affine, st.integers(0, 5), st.integers(-3, 3).filter(bool))
def test_shift_to_center_and_back_is_identity(start, elsewhere, conductor, power):
    atom = EpsilonAtom("tau", start, conductor=conductor)
    e = EpsilonMonomial.atom(atom, power)
    there = epsilon_shift(e, elsewhere)
    back = epsilon_shift(there, start)
    assert back == e


def test_monomial_algebra():
    atom = EpsilonAtom("tau", HALF, conductor=2)
    e = EpsilonMonomial.make(u, {atom: 2}, Affine.of(-12, 0))
    assert (e * e.inverse()) == EpsilonMonomial.make()
    assert e.specialize(atom, 1) == EpsilonMonomial.make(u, None, Affine.of(-12, 0))
    assert e.unit_part().q_exponent == Affine()


def test_trivial_on_base_split_character():
    lam = UnramLambda.trivial_on_base(SPLIT)
    assert lam.base_value == const(1)
    assert UnramLambda.trivial_on_base(ramified_extension(1), -1).base_value == const(1)
