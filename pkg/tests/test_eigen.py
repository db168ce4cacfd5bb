from fractions import Fraction

import mpmath
import pytest
import sympy

from siegelfactors.satake import LocalFactor
from siegelfactors.siegel.eigen import (
    CalibrationFailure,
    EigenformRecord,
    InconsistentClassification,
    PairingFailure,
    bessel_data_scan,
    classical_spin_polynomial,
    has_pole_pair,
    maass_relation_holds,
    satake_from_factor,
    sk_classify,
    sk_product_factor,
    spin_factor_from_eigenvalues,
)
from siegelfactors.siegel.elliptic import delta_product, eigenform_q
from siegelfactors.siegel.eisenstein import eisenstein_expansion
from siegelfactors.siegel.forms import FourierExpansion
from siegelfactors.siegel.numberfield import NFElement, quadratic_sqrt_field, to_complex


def single(records, weight):
    (rec,) = records(weight)
    return rec


def non_sk(records):
    (rec,) = [r for r in records(20) if sk_classify(r) == "nonSK"]
    return rec


def test_weight_ten_eigenvalues(records):
    rec = single(records, 10)
    assert rec.field is None
    assert {m: rec.eigenvalue(m) for m in (2, 3, 4, 9)} == {2: 240, 3: 21960, 4: 135424, 9: 293343849}


def test_weight_twelve_eigenvalues(records):
    rec = single(records, 12)
    assert (rec.eigenvalue(2), rec.eigenvalue(3)) == (2784, 107352)


def test_weight_twenty_classes(records):
    recs = records(20)
    assert sorted(len(r.minimal_polynomial) - 1 for r in recs) == [1, 2]
    rec = non_sk(records)
    assert rec.eigenvalue(2) == -840960
    assert rec.eigenvalue(3) == 346935960
    assert rec.eigenvalue(4) == 248256200704
    assert rec.eigenvalue(9) == -452051040393665991


def test_missing_eigenvalue(records):
    with pytest.raises(KeyError):
        single(records, 10).eigenvalue(5)


def weight_38_hecke_polynomial():
    """Characteristic polynomial of T(2) on elliptic cusp forms of weight 38, from q-expansions."""
    n = 40
    E4 = [1] + [240 * sympy.divisor_sigma(m, 3) for m in range(1, n)]
    E6 = [1] + [-504 * sympy.divisor_sigma(m, 5) for m in range(1, n)]
    delta = delta_product(n - 1)
    mul = lambda a, b: [sum(a[i] * b[m - i] for i in range(m + 1)) for m in range(n)]
    E4_5_E6, E4_2_E6_3 = E4, E4
    for _ in range(4):
        E4_5_E6 = mul(E4_5_E6, E4)
    E4_5_E6 = mul(E4_5_E6, E6)
    E4_2_E6_3 = mul(mul(mul(mul(E4, E6), E6), E6), E4)
    basis = [mul(delta, E4_5_E6), mul(delta, E4_2_E6_3)]
    image = [[f[2 * m] + (2 ** 37 * f[m // 2] if m % 2 == 0 else 0) for m in range(n // 2)] for f in basis]
    A = sympy.Matrix([[f[1], f[2]] for f in basis])
    B = sympy.Matrix([[g[1], g[2]] for g in image])
    M = B * A.inv()  # image rows in the coordinates of the basis rows, read at q and q^2
    for g, coords in zip(image, (M.row(0), M.row(1))):
        assert all(g[m] == coords[0] * basis[0][m] + coords[1] * basis[1][m] for m in range(1, n // 2))
    return M.charpoly(sympy.symbols("x"))


def test_saito_kurokawa_pair_matches_weight_38(records):
    (pair,) = [r for r in records(20) if len(r.minimal_polynomial) == 3]
    x = sympy.symbols("x")
    shift = 2 ** 19 + 2 ** 18
    expected = sympy.Poly(weight_38_hecke_polynomial().as_expr().subs(x, x - shift), x)
    got = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x ** i
                         for i, c in enumerate(pair.minimal_polynomial)), x)
    assert got == expected
    assert got == sympy.Poly(x ** 2 - 1378464 * x + 328189501440, x)


# -- spin factors ----------------------------------------------------------------------

def evaluate(factor, x):
    total = 0
    for i, c in enumerate(factor.denominator):
        total = total + c * x ** i
    return total


def test_weight_ten_spin_factor_has_the_pole_pair(records):
    rec = single(records, 10)
    factor = rec.spin_factor(2)
    s = factor.denominator[1].field.gen()
    assert evaluate(factor, 1 / s) == 0 and evaluate(factor, s) == 0
    assert has_pole_pair(factor, 2)


@pytest.mark.parametrize("weight, p", [(10, 2), (10, 3), (12, 2), (12, 3)])
def test_spin_factor_equals_product_form(records, weight, p):
    rec = single(records, weight)
    ap = eigenform_q(2 * weight - 2, p + 1)[p]
    factor = rec.spin_factor(p, elliptic_ap=ap)
    assert factor.same_factor(sk_product_factor(ap, weight, p, factor.denominator[1].field))


def test_wrong_elliptic_coefficient_is_rejected(records):
    rec = single(records, 10)
    with pytest.raises(CalibrationFailure):
        rec.spin_factor(2, elliptic_ap=-527)


def test_wrong_square_eigenvalue_is_rejected_by_the_product_form():
    ap = eigenform_q(18, 3)[2]
    spin_factor_from_eigenvalues(240, 135424, 10, 2, elliptic_ap=ap)
    with pytest.raises(CalibrationFailure):
        spin_factor_from_eigenvalues(240, 135425, 10, 2, elliptic_ap=ap)


def test_non_sk_spin_factor_is_exact_and_pole_free(records):
    factor = non_sk(records).spin_factor(2)
    assert factor.degree == 4
    assert all(isinstance(c, NFElement) for c in factor.denominator)
    assert not has_pole_pair(factor, 2)
    assert factor.is_palindromic()


def test_trivial_parameters_give_fourth_power():
    p = 5
    coeffs = classical_spin_polynomial(Fraction(4), 10 - Fraction(1, p), Fraction(3, 2), p)
    assert coeffs == [1, -4, 6, -4, 1]


def test_half_integral_weight_checked():
    with pytest.raises(ValueError):
        classical_spin_polynomial(1, 1, Fraction(5, 4), 2)


# -- Satake parameters ----------------------------------------------------------------------

def test_satake_of_trivial_factor():
    quad = satake_from_factor(LocalFactor.from_roots([Fraction(1)] * 4))
    for z in quad.multiset():
        assert abs(z - 1) < 1e-20


def test_sk_form_violates_unit_modulus(records):
    quad = satake_from_factor(single(records, 10).spin_factor(2))
    with mpmath.workdps(40):
        moduli = sorted(abs(z) for z in quad.multiset())
        expected = [1 / mpmath.sqrt(2), 1, 1, mpmath.sqrt(2)]
        assert all(abs(m - e) < mpmath.mpf(10) ** -20 for m, e in zip(moduli, expected))


@pytest.mark.parametrize("p", [2, 3])
def test_non_sk_roots_lie_on_the_unit_circle(records, p):
    quad = satake_from_factor(non_sk(records).spin_factor(p))
    with mpmath.workdps(40):
        assert max(abs(abs(z) - 1) for z in quad.multiset()) < mpmath.mpf(10) ** -10


def test_pairing_needs_a_palindromic_quartic():
    with pytest.raises(PairingFailure):
        satake_from_factor(LocalFactor.from_roots([Fraction(2), Fraction(3), Fraction(1, 2), Fraction(1, 5)]))
    with pytest.raises(PairingFailure):
        satake_from_factor(LocalFactor.from_roots([Fraction(1)] * 3))


# -- classification --------------------------------------------------------------------------

def test_classification(records):
    assert sk_classify(single(records, 10)) == "SK"
    assert sk_classify(single(records, 12)) == "SK"
    assert sorted(sk_classify(r) for r in records(20)) == ["SK", "nonSK"]


def test_maass_relations(chi10, chi12, records):
    assert maass_relation_holds(chi10) and maass_relation_holds(chi12)
    assert not maass_relation_holds(non_sk(records).expansion)


def test_zero_form_cannot_be_classified():
    zero = EigenformRecord(10, "zero", (0, 1), None, (), (), FourierExpansion(10, 40))
    with pytest.raises(ValueError):
        sk_classify(zero)


def test_mismatched_evidence_is_reported(records):
    rec = single(records, 10)
    nonsk = non_sk(records)
    forged = EigenformRecord(20, "forged", rec.minimal_polynomial, None, (), (),
                             nonsk.expansion, dict(single(records, 10).eigenvalues))
    forged.weight = 10
    forged.expansion = rec.expansion.map(lambda v: v)
    forged.expansion.coefficients[(1, 1, 2)] += 1  # Maass relation now fails, pole pair remains
    with pytest.raises(InconsistentClassification):
        sk_classify(forged)


# -- Bessel data --------------------------------------------------------------------------------

def test_bessel_scan_small(chi10):
    assert set(bessel_data_scan(chi10, 4)) & {3, 4}


def test_bessel_scan_weight_ten(chi10):
    assert bessel_data_scan(chi10, 20) == [3, 4, 7, 8, 11, 15, 19, 20]


def test_bessel_scan_of_zero_and_eisenstein():
    assert bessel_data_scan(FourierExpansion(10, 10), 20) == []
    assert bessel_data_scan(eisenstein_expansion(4, 10), 20)


def test_bessel_scan_window_check(chi10):
    from siegelfactors.siegel.forms import InsufficientPrecision
    with pytest.raises(InsufficientPrecision):
        bessel_data_scan(chi10.truncate(4), 20)


def test_numeric_embedding_of_spin_coefficients(records):
    factor = single(records, 10).spin_factor(2)
    K = quadratic_sqrt_field(2)
    assert abs(to_complex(factor.denominator[4]) - 1) < 1e-30
    assert abs(to_complex(K.gen()) - mpmath.sqrt(2)) < 1e-15
